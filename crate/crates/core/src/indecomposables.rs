//! Candidate totally positive indecomposables of the three families, their
//! codifferent trace certificates, and a brute-force indecomposability
//! oracle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cubic_order::{CubicOrder, Family, OrderElement};
use crate::error::{Error, Result};

/// Which index ranges to use: the ones stated for total positivity, or the
/// narrower ones the rank theorems actually certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeMode {
    Lemma,
    Theorem,
}

impl std::str::FromStr for RangeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma" => Ok(RangeMode::Lemma),
            "theorem" => Ok(RangeMode::Theorem),
            other => Err(Error::Precondition(format!("unknown range mode `{other}`"))),
        }
    }
}

impl fmt::Display for RangeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RangeMode::Lemma => "lemma",
            RangeMode::Theorem => "theorem",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum CandidateIndex {
    Pair { v: i64, w: i64 },
    Single { w: i64 },
}

impl fmt::Display for CandidateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateIndex::Pair { v, w } => write!(f, "(v={v}, w={w})"),
            CandidateIndex::Single { w } => write!(f, "(w={w})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub family: Family,
    pub a: i64,
    pub index: CandidateIndex,
    pub element: OrderElement,
}

impl Candidate {
    /// `-v - w rho + (v+1) rho^2`.
    pub fn shanks(a: i64, v: i64, w: i64) -> Self {
        Self {
            family: Family::Shanks,
            a,
            index: CandidateIndex::Pair { v, w },
            element: OrderElement::new(-v, -w, v + 1),
        }
    }

    /// `1 + w rho + rho^2`.
    pub fn ennola(a: i64, w: i64) -> Self {
        Self {
            family: Family::Ennola,
            a,
            index: CandidateIndex::Single { w },
            element: OrderElement::new(1, w, 1),
        }
    }

    /// `-1 + ((a+2) w + 1) rho - w rho^2`.
    pub fn family3(a: i64, w: i64) -> Self {
        let a_big = BigInt::from(a);
        let w_big = BigInt::from(w);
        Self {
            family: Family::Family3,
            a,
            index: CandidateIndex::Single { w },
            element: OrderElement::new(-1, (a_big + 2) * &w_big + 1, -w_big),
        }
    }

    /// Builds the candidate for the given index in the order's family.
    pub fn with_index(order: &CubicOrder, index: CandidateIndex) -> Result<Self> {
        let a = order.a();
        match (order.family(), index) {
            (Family::Shanks, CandidateIndex::Pair { v, w }) => Ok(Self::shanks(a, v, w)),
            (Family::Ennola, CandidateIndex::Single { w }) => Ok(Self::ennola(a, w)),
            (Family::Family3, CandidateIndex::Single { w }) => Ok(Self::family3(a, w)),
            (family, index) => Err(Error::Precondition(format!(
                "index {index} does not fit the {family} family"
            ))),
        }
    }

    pub fn in_range(&self, mode: RangeMode) -> bool {
        let a = self.a;
        match (self.family, self.index) {
            (Family::Shanks, CandidateIndex::Pair { v, w }) => match mode {
                RangeMode::Lemma => (0..=a).contains(&v) && (v * (a + 2) + 1..=(a + 1) * (v + 1)).contains(&w),
                RangeMode::Theorem => {
                    (0..=(a - 1) / 3).contains(&v) && (v * (a + 3) + 1..=a * (v + 1)).contains(&w)
                }
            },
            (Family::Ennola, CandidateIndex::Single { w }) => match mode {
                RangeMode::Lemma => (1..a).contains(&w),
                RangeMode::Theorem => (3..a).contains(&w),
            },
            (Family::Family3, CandidateIndex::Single { w }) => (a..2 * a).contains(&w),
            _ => false,
        }
    }

    fn check_order(&self, order: &CubicOrder) -> Result<()> {
        if self.family == order.family() && self.a == order.a() {
            Ok(())
        } else {
            Err(Error::OrderMismatch)
        }
    }
}

/// All candidates of the given range mode, in increasing index order.
pub fn candidates(order: &CubicOrder, mode: RangeMode) -> Vec<Candidate> {
    let a = order.a();
    match order.family() {
        Family::Shanks => {
            let (v_max, w_range): (i64, fn(i64, i64) -> (i64, i64)) = match mode {
                RangeMode::Lemma => (a, |a, v| (v * (a + 2) + 1, (a + 1) * (v + 1))),
                // v is an integer, so (a-1)/3 is floored.
                RangeMode::Theorem => ((a - 1) / 3, |a, v| (v * (a + 3) + 1, a * (v + 1))),
            };
            (0..=v_max)
                .flat_map(|v| {
                    let (lo, hi) = w_range(a, v);
                    (lo..=hi).map(move |w| Candidate::shanks(a, v, w))
                })
                .collect()
        }
        Family::Ennola => {
            let lo = match mode {
                RangeMode::Lemma => 1,
                RangeMode::Theorem => 3,
            };
            (lo..a).map(|w| Candidate::ennola(a, w)).collect()
        }
        Family::Family3 => (a..2 * a).map(|w| Candidate::family3(a, w)).collect(),
    }
}

/// The counting quantity `a'` exactly as the family's remark states it:
/// `(a+1)(a+2)/2` for Shanks, `a` for the other two families.
pub fn aprime(family: Family, a: i64) -> Result<u128> {
    if a < crate::cubic_order::MIN_PARAMETER {
        return Err(Error::ParameterRange(a));
    }
    Ok(aprime_unchecked(family, a as u128))
}

pub(crate) fn aprime_unchecked(family: Family, a: u128) -> u128 {
    match family {
        Family::Shanks => (a + 1) * (a + 2) / 2,
        Family::Ennola | Family::Family3 => a,
    }
}

/// Number of candidates the range mode actually produces, in closed form.
pub fn enumerated_count(family: Family, a: i64, mode: RangeMode) -> u128 {
    let a = a as u128;
    match (family, mode) {
        (Family::Shanks, RangeMode::Lemma) => (a + 1) * (a + 2) / 2,
        (Family::Shanks, RangeMode::Theorem) => (0..=(a - 1) / 3).map(|v| a - 3 * v).sum(),
        (Family::Ennola, RangeMode::Lemma) => a - 1,
        (Family::Ennola, RangeMode::Theorem) => a - 3,
        (Family::Family3, _) => a,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityEntry {
    pub candidate: Candidate,
    pub in_range: bool,
    pub totally_positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub mode: RangeMode,
    pub entries: Vec<PositivityEntry>,
    pub passed: usize,
    pub failed: usize,
    /// Every in-range entry is totally positive. Out-of-range probes are
    /// reported but never affect this verdict.
    pub verdict: bool,
}

/// Checks total positivity of every candidate. Candidates outside `mode`'s
/// range act as probes: reported, but excluded from the verdict.
pub fn verify_total_positivity(
    order: &CubicOrder,
    candidates: &[Candidate],
    mode: RangeMode,
) -> Result<PositivityReport> {
    let entries = candidates
        .par_iter()
        .map(|c| {
            c.check_order(order)?;
            Ok(PositivityEntry {
                candidate: c.clone(),
                in_range: c.in_range(mode),
                totally_positive: order.is_totally_positive(&c.element),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = entries.iter().filter(|e| e.totally_positive).count();
    let failed = entries.len() - passed;
    let verdict = entries.iter().filter(|e| e.in_range).all(|e| e.totally_positive);
    Ok(PositivityReport {
        mode,
        entries,
        passed,
        failed,
        verdict,
    })
}

/// `delta = h(rho) / f'(rho)` together with the trace value it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub h: OrderElement,
    pub target: i64,
}

impl Certificate {
    /// Re-checks both defining properties from scratch.
    pub fn verify(&self, order: &CubicOrder, element: &OrderElement) -> bool {
        order.is_dual_totally_positive(&self.h)
            && order.dual_trace_pairing(element, &self.h) == BigInt::from(self.target)
    }
}

pub const DEFAULT_COEFF_BOUND_FACTOR: i64 = 2;

/// Searches `h` in `[-bound, bound]^3`, lexicographically, for a totally
/// positive `delta = h(rho)/f'(rho)` with `Tr(element * delta) = target`.
/// `None` only means the box holds no certificate.
pub fn find_certificate(
    order: &CubicOrder,
    candidate: &Candidate,
    target: i64,
    coeff_bound: i64,
) -> Result<Option<Certificate>> {
    candidate.check_order(order)?;
    if !(1..=2).contains(&target) {
        return Err(Error::Precondition(format!("certificate target must be 1 or 2, got {target}")));
    }
    if coeff_bound < 1 {
        return Err(Error::Precondition(format!("coefficient bound must be at least 1, got {coeff_bound}")));
    }
    // Tr(alpha h / f') = c . h with c the rho^2 row of the multiplication
    // matrix of alpha; solve for h.z and test positivity of the hits.
    let m = order.mul_matrix(&candidate.element);
    let [c0, c1, c2] = m[2].clone();
    let target_big = BigInt::from(target);
    let hit = (-coeff_bound..=coeff_bound).into_par_iter().find_map_first(|hx| {
        for hy in -coeff_bound..=coeff_bound {
            let rest = &target_big - &c0 * hx - &c1 * hy;
            let zs: Vec<i64> = if c2.is_zero() {
                if rest.is_zero() {
                    (-coeff_bound..=coeff_bound).collect()
                } else {
                    vec![]
                }
            } else {
                let (q, r) = rest.div_rem(&c2);
                match (r.is_zero(), q.to_i64()) {
                    (true, Some(hz)) if hz.abs() <= coeff_bound => vec![hz],
                    _ => vec![],
                }
            };
            for hz in zs {
                let h = OrderElement::new(hx, hy, hz);
                if order.is_dual_totally_positive(&h) {
                    return Some(h);
                }
            }
        }
        None
    });
    Ok(hit.map(|h| Certificate { h, target }))
}

/// The certificate target used by the rank theorems: 1 for Shanks, 2 for the
/// other families.
pub fn theorem_target(family: Family) -> i64 {
    match family {
        Family::Shanks => 1,
        Family::Ennola | Family::Family3 => 2,
    }
}

/// Trace-dual basis numerators `b_j` with `Tr(rho^i b_j / f'(rho)) = [i == j]`,
/// from `f(x) / (x - rho) = b_0 + b_1 x + b_2 x^2`.
pub fn dual_basis_numerators(order: &CubicOrder) -> [OrderElement; 3] {
    // f = x^3 + p2 x^2 + p1 x + p0
    let [_, p2, p1, _] = order.minpoly_coeffs();
    [
        OrderElement::new(p1.clone(), p2.clone(), 1),
        OrderElement::new(p2.clone(), 1, 0),
        OrderElement::one(),
    ]
}

/// Integer box containing every `beta` with `0 < sigma_i(beta) < sigma_i(alpha)`
/// for all three embeddings.
pub fn dominated_box(order: &CubicOrder, alpha: &OrderElement) -> Result<[(BigInt, BigInt); 3]> {
    let width = BigRational::new(1.into(), 8.into());
    let numerators = dual_basis_numerators(order);
    let mut out: Vec<(BigInt, BigInt)> = Vec::with_capacity(3);
    for b in &numerators {
        // coordinate_j(beta) = sum_i t_i sigma_i(alpha b_j / f') with t_i in (0, 1)
        let scaled = order.dual_element(&order.mul(alpha, b));
        let mut lower = BigRational::zero();
        let mut upper = BigRational::zero();
        for root in order.isolate_roots() {
            let e = order.embed_enclosure(&scaled, root, &width)?;
            if e.lo().is_negative() {
                lower += e.lo();
            }
            if e.hi().is_positive() {
                upper += e.hi();
            }
        }
        out.push((lower.ceil().to_integer(), upper.floor().to_integer()));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Every totally positive `beta` in the order with `alpha - beta` totally
/// positive, in lexicographic order.
pub fn enumerate_dominated(order: &CubicOrder, alpha: &OrderElement) -> Result<Vec<OrderElement>> {
    if !order.is_totally_positive(alpha) {
        return Err(Error::Precondition(format!("{alpha} is not totally positive")));
    }
    let [(x_lo, x_hi), (y_lo, y_hi), (z_lo, z_hi)] = dominated_box(order, alpha)?;
    let to_i64 = |b: &BigInt| {
        b.to_i64()
            .ok_or_else(|| Error::Precondition("dominated box exceeds the enumerable range".into()))
    };
    let (x_lo, x_hi, y_lo, y_hi, z_lo, z_hi) = (
        to_i64(&x_lo)?,
        to_i64(&x_hi)?,
        to_i64(&y_lo)?,
        to_i64(&y_hi)?,
        to_i64(&z_lo)?,
        to_i64(&z_hi)?,
    );
    // 0 < Tr(beta) < Tr(alpha) with Tr(beta) = 3x + t1 y + t2 z and t2 > 0
    // narrows the innermost coordinate.
    let t1 = order.trace_int(&OrderElement::rho());
    let t2 = order.trace_int(&OrderElement::new(0, 0, 1));
    let tr_alpha = order.trace_int(alpha);
    let found: Vec<Vec<OrderElement>> = (x_lo..=x_hi)
        .into_par_iter()
        .map(|x| {
            let mut hits = Vec::new();
            for y in y_lo..=y_hi {
                let partial = BigInt::from(3 * x) + &t1 * y;
                let lo: BigInt = Integer::div_ceil(&(BigInt::from(1) - &partial), &t2);
                let hi: BigInt = Integer::div_floor(&(&tr_alpha - BigInt::from(1) - &partial), &t2);
                let lo = lo.to_i64().map_or(z_lo, |v| v.max(z_lo));
                let hi = hi.to_i64().map_or(z_hi, |v| v.min(z_hi));
                for z in lo..=hi {
                    let beta = OrderElement::new(x, y, z);
                    if order.is_totally_positive(&beta) && order.is_totally_positive(&(alpha - &beta)) {
                        hits.push(beta);
                    }
                }
            }
            hits
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Whether `alpha` is not a sum of two totally positive elements of the order.
pub fn is_indecomposable(order: &CubicOrder, alpha: &OrderElement) -> Result<bool> {
    Ok(enumerate_dominated(order, alpha)?.is_empty())
}

/// Per-candidate outcome of the indecomposability oracle.
#[derive(Clone, Debug, Serialize)]
pub struct IndecomposabilityEntry {
    pub candidate: Candidate,
    pub indecomposable: bool,
    /// A witness `beta` with `alpha = beta + (alpha - beta)`, when decomposable.
    pub witness: Option<OrderElement>,
}

pub fn check_indecomposable(order: &CubicOrder, candidate: &Candidate) -> Result<IndecomposabilityEntry> {
    candidate.check_order(order)?;
    let dominated = enumerate_dominated(order, &candidate.element)?;
    Ok(IndecomposabilityEntry {
        candidate: candidate.clone(),
        indecomposable: dominated.is_empty(),
        witness: dominated.into_iter().next(),
    })
}
