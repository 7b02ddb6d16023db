//! Dense univariate polynomials over Q and Sturm-sequence root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;

/// Coefficients in ascending degree order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[dd];
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / lead;
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let d = self.degree().expect("zero polynomial has no root bound");
        let lead = self.coeffs[d].abs();
        let max = self.coeffs[..d]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        BigRational::one() + max
    }
}

/// The Sturm chain `f, f', -rem(f, f'), ...`.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(f: &Poly) -> Self {
        let mut chain = vec![f.clone()];
        let mut next = f.derivative();
        while !next.is_zero() {
            let prev = chain.last().unwrap().clone();
            chain.push(next.clone());
            next = prev.rem(&next).neg();
        }
        Self { chain }
    }

    pub fn sign_changes(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

/// Isolates all real roots of a squarefree polynomial. Interval endpoints are
/// never roots, so every returned interval is open and carries a sign change.
pub fn isolate_real_roots(f: &Poly) -> Result<Vec<RationalInterval>> {
    let sturm = SturmSequence::new(f);
    let bound = f.cauchy_bound().ceil();
    let mut pending = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match sturm.count_roots(&lo, &hi) {
            0 => {}
            1 => found.push(shrink_to_unit(f, RationalInterval::new(lo, hi))?),
            _ => {
                let mid = split_point(f, &lo, &hi)?;
                pending.push((lo, mid.clone()));
                pending.push((mid, hi));
            }
        }
    }
    found.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(found)
}

/// Narrows an isolating interval with integer endpoints to width at most one
/// by splitting at integers.
fn shrink_to_unit(f: &Poly, mut iv: RationalInterval) -> Result<RationalInterval> {
    let one = BigRational::one();
    while iv.width() > one {
        let mid = iv.midpoint().floor();
        if &mid <= iv.lo() || &mid >= iv.hi() {
            break;
        }
        let fm = f.eval(&mid);
        if fm.is_zero() {
            // Keep the exact root as a point rather than an open interval.
            return Ok(RationalInterval::point(mid));
        }
        let flo = f.eval(iv.lo());
        iv = if flo.is_positive() == fm.is_positive() {
            RationalInterval::new(mid, iv.hi().clone())
        } else {
            RationalInterval::new(iv.lo().clone(), mid)
        };
    }
    Ok(iv)
}

/// A point strictly inside `(lo, hi)` at which `f` does not vanish; prefers
/// integers, then the midpoint.
fn split_point(f: &Poly, lo: &BigRational, hi: &BigRational) -> Result<BigRational> {
    let mid = (lo + hi) / BigRational::from_integer(2.into());
    let floor = mid.floor();
    let mut candidates = vec![];
    if &floor > lo && &floor < hi {
        candidates.push(floor);
    }
    candidates.push(mid.clone());
    let quarter = (hi - lo) / BigRational::from_integer(4.into());
    candidates.push(&mid + &quarter);
    candidates.push(&mid - &quarter);
    candidates
        .into_iter()
        .find(|x| !f.eval(x).is_zero())
        .ok_or_else(|| Error::Internal("no root-free split point found".into()))
}

/// Halves an isolating interval of a simple root, keeping the half that
/// carries the sign change.
pub fn bisect_root(f: &Poly, iv: &RationalInterval) -> RationalInterval {
    let lo = iv.lo();
    let hi = iv.hi();
    let mid = iv.midpoint();
    let fm = f.eval(&mid);
    if fm.is_zero() {
        // Rational root: a point enclosure is exact.
        return RationalInterval::point(mid);
    }
    let flo = f.eval(lo);
    if flo.is_positive() == fm.is_positive() {
        RationalInterval::new(mid, hi.clone())
    } else {
        RationalInterval::new(lo.clone(), mid)
    }
}
