//! The short-vector bound `C(r, n)` and its halves `B1`, `B2`.
//!
//! For `n >= 3` the value mixes powers of pi with square roots. Writing
//! `V_m = pi^(m/2) / Gamma(m/2 + 1)` for the volume of the unit `m`-ball,
//! `V_{2k} = pi^k / k!` and `V_{2k+1} = 2 k! (4 pi)^k / (2k+1)!`, so only
//! pi and `sqrt(n)`, `1/sqrt(det)` need enclosing. All terms are positive,
//! which keeps the interval evaluation monotone.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{pi_enclosure, rational, sqrt_enclosure, EnclosureSummary, RationalInterval};

pub const DEFAULT_PRECISION_BITS: u32 = 64;
pub const MAX_PRECISION_BITS: u32 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    C,
    B1,
    B2,
}

/// A certified enclosure of `factor * C(r, n)` evaluated at a given
/// determinant. `upper()` is the reported value (rounded upward).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub r: u64,
    pub n: u64,
    pub det: BigRational,
    pub factor: BigRational,
    pub bits: u32,
    enclosure: RationalInterval,
}

impl BoundValue {
    fn evaluate(r: u64, n: u64, det: BigRational, factor: BigRational, bits: u32) -> Self {
        let raw = c_enclosure(r, n, &det, bits);
        let enclosure = raw.scale(&factor);
        let enclosure = if enclosure.is_point() {
            enclosure
        } else {
            enclosure.round_outward(bits)
        };
        Self {
            r,
            n,
            det,
            factor,
            bits,
            enclosure,
        }
    }

    pub fn enclosure(&self) -> &RationalInterval {
        &self.enclosure
    }

    /// Upward-rounded value, never below the exact bound.
    pub fn upper(&self) -> &BigRational {
        self.enclosure.hi()
    }

    pub fn lower(&self) -> &BigRational {
        self.enclosure.lo()
    }

    pub fn is_exact(&self) -> bool {
        self.enclosure.is_point()
    }

    pub fn refined(&self, bits: u32) -> Self {
        Self::evaluate(self.r, self.n, self.det.clone(), self.factor.clone(), bits)
    }

    /// Exact comparison of the bound with a rational, refining the enclosure
    /// as needed.
    pub fn compare(&self, x: &BigRational) -> Result<Ordering> {
        let mut current = self.clone();
        loop {
            if current.is_exact() {
                return Ok(current.upper().cmp(x));
            }
            if current.lower() > x {
                return Ok(Ordering::Greater);
            }
            if current.upper() < x {
                return Ok(Ordering::Less);
            }
            if current.bits >= MAX_PRECISION_BITS {
                return Err(Error::PrecisionExhausted(current.bits));
            }
            current = current.refined(current.bits * 2);
        }
    }

    pub fn compare_integer(&self, m: &BigInt) -> Result<Ordering> {
        self.compare(&BigRational::from_integer(m.clone()))
    }

    pub fn summary(&self) -> BoundSummary {
        BoundSummary {
            r: self.r,
            n: self.n,
            det: self.det.to_string(),
            factor: self.factor.to_string(),
            exact: self.is_exact(),
            precision_bits: self.bits,
            rounding: if self.is_exact() { "exact" } else { "upward" },
            value: self.upper().to_string(),
            value_f64: crate::interval::rational_to_f64(self.upper()),
            enclosure: EnclosureSummary::from(&self.enclosure),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoundSummary {
    pub r: u64,
    pub n: u64,
    pub det: String,
    pub factor: String,
    pub exact: bool,
    pub precision_bits: u32,
    pub rounding: &'static str,
    pub value: String,
    pub value_f64: f64,
    pub enclosure: EnclosureSummary,
}

/// `C(r, n)` at determinant `det` (use 1 when the Gram matrix is unknown).
pub fn bound_c(r: u64, n: u64, det: &BigRational, bits: u32) -> Result<BoundValue> {
    if r == 0 || n == 0 {
        return Err(Error::Precondition("C(r, n) needs r >= 1 and n >= 1".into()));
    }
    if det < &BigRational::one() {
        return Err(Error::Precondition(format!(
            "determinant {det} < 1 is impossible for a classical positive definite lattice"
        )));
    }
    if bits == 0 {
        return Err(Error::Precondition("precision must be at least 1 bit".into()));
    }
    Ok(BoundValue::evaluate(r, n, det.clone(), BigRational::one(), bits))
}

/// `B1(R, n) = C(3R, n) / 2` at determinant 1.
pub fn bound_b1(rank: u64, n: u64, bits: u32) -> Result<BoundValue> {
    half_bound(rank, n, bits)
}

/// `B2(R, n) = C(3R, 2n) / 2` at determinant 1.
pub fn bound_b2(rank: u64, n: u64, bits: u32) -> Result<BoundValue> {
    half_bound(rank, 2 * n, bits)
}

fn half_bound(rank: u64, n: u64, bits: u32) -> Result<BoundValue> {
    if rank == 0 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    let mut v = bound_c(3 * rank, n, &BigRational::one(), bits)?;
    v = BoundValue::evaluate(v.r, v.n, v.det, BigRational::new(1.into(), 2.into()), bits);
    Ok(v)
}

pub fn bound(kind: BoundKind, r: u64, n: u64, det: &BigRational, bits: u32) -> Result<BoundValue> {
    match kind {
        BoundKind::C => bound_c(r, n, det, bits),
        BoundKind::B1 => bound_b1(r, n, bits),
        BoundKind::B2 => bound_b2(r, n, bits),
    }
}

fn c_enclosure(r: u64, n: u64, det: &BigRational, bits: u32) -> RationalInterval {
    match n {
        1 => RationalInterval::from_integer(2 * r),
        2 => {
            let r = BigInt::from(r);
            let v = (BigInt::from(2) * &r * (&r - BigInt::one())).max(BigInt::from(480));
            RationalInterval::from_integer(v)
        }
        _ => large_norm_enclosure(r, n, det, bits),
    }
}

fn large_norm_enclosure(r: u64, n: u64, det: &BigRational, bits: u32) -> RationalInterval {
    // Fixed point with scale 2^work; lower ends rounded down, upper ends up.
    // Guard bits absorb the error growth along the term recurrences.
    let work = bits + 32 + 2 * (64 - r.leading_zeros());
    let scale = BigInt::one() << work as usize;
    let fixed = |iv: &RationalInterval| -> (BigInt, BigInt) {
        let s = BigRational::from_integer(scale.clone());
        ((iv.lo() * &s).floor().to_integer(), (iv.hi() * &s).ceil().to_integer())
    };
    let (pi_lo, pi_hi) = fixed(&pi_enclosure(work));
    let (sq_lo, sq_hi) = fixed(&sqrt_enclosure(&rational(n as i64), work));
    let (id_lo, id_hi) = fixed(&sqrt_enclosure(&(BigRational::one() / det), work));
    let n_big = BigInt::from(n);

    // t_m = binom(r, m) V_m n^(m/2), with t_m / t_(m-2) =
    // (r-m+2)(r-m+1) / (m(m-1)) * 2 pi n / m.
    let mut terms: Vec<(BigInt, BigInt)> = Vec::with_capacity(r as usize + 1);
    terms.push((scale.clone(), scale.clone()));
    let two_r = BigInt::from(2 * r);
    terms.push((&two_r * &sq_lo, &two_r * &sq_hi));
    for m in 2..=r {
        let num = BigInt::from((r - m + 2) * (r - m + 1)) * 2u32 * &n_big;
        let den = BigInt::from(m * (m - 1) * m) * &scale;
        let (lo, hi) = &terms[(m - 2) as usize];
        let lo = (lo * &num * &pi_lo).div_floor(&den);
        let hi = Integer::div_ceil(&(hi * &num * &pi_hi), &den);
        terms.push((lo, hi));
    }
    let (last_lo, last_hi) = terms.pop().expect("r >= 1");
    let mut lo = last_lo * &id_lo;
    let mut hi = last_hi * &id_hi;
    let mut head_lo = BigInt::zero();
    let mut head_hi = BigInt::zero();
    for (tl, th) in &terms {
        head_lo += tl;
        head_hi += th;
    }
    lo += head_lo * &scale;
    hi += head_hi * &scale;
    let s2 = &scale * &scale;
    RationalInterval::new(BigRational::new(lo, s2.clone()), BigRational::new(hi, s2))
}

/// Floating-point estimate of `C(r, n)` at determinant 1, for steering
/// searches; never used for a verdict. Overflow gives infinity.
pub(crate) fn estimate_c(r: u64, n: u64) -> f64 {
    match n {
        1 => 2.0 * r as f64,
        2 => (2.0 * r as f64 * (r as f64 - 1.0)).max(480.0),
        _ => {
            let (rf, nf) = (r as f64, n as f64);
            let mut prev = [1.0, 2.0 * rf * nf.sqrt()];
            let mut total = if r == 1 { 1.0 + prev[1] } else { prev[0] + prev[1] };
            for m in 2..=r {
                let mf = m as f64;
                let t = prev[(m % 2) as usize] * (rf - mf + 2.0) * (rf - mf + 1.0) / (mf * (mf - 1.0))
                    * 2.0
                    * std::f64::consts::PI
                    * nf
                    / mf;
                prev[(m % 2) as usize] = t;
                total += t;
                if !total.is_finite() {
                    return f64::INFINITY;
                }
            }
            total
        }
    }
}

/// Number of lattice vectors of norm `n` compared against `C(r, n, det(G))`.
#[derive(Clone, Debug, Serialize)]
pub struct CountBoundCheck {
    pub count: u64,
    pub determinant: String,
    pub bound: BoundSummary,
    pub holds: bool,
}

pub fn verify_count_bound(g: &super::GramMatrix, n: u64, bits: u32) -> Result<CountBoundCheck> {
    let sv = super::count_short_vectors(g, n, false)?;
    let det = g.determinant();
    if !det.is_positive() {
        return Err(Error::Internal(format!("positive definite matrix with determinant {det}")));
    }
    let bound = bound_c(g.rank() as u64, n, &BigRational::from_integer(det.clone()), bits)?;
    let holds = bound.compare_integer(&BigInt::from(sv.count))? != Ordering::Less;
    Ok(CountBoundCheck {
        count: sv.count,
        determinant: det.to_string(),
        bound: bound.summary(),
        holds,
    })
}
