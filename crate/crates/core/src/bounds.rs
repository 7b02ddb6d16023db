//! Rank lower bounds from the candidate count `a'`, density counts over
//! `7 <= a <= X`, and the finite-`X` exceptional-set counts.
//!
//! Every comparison against an irrational quantity is decided exactly:
//! square roots and fractional powers are removed by raising integers to
//! powers, and `C(r, n)` is compared through its refining enclosure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::cubic_order::{Family, MIN_PARAMETER};
use crate::error::{Error, Result};
use crate::indecomposables::{aprime_unchecked, enumerated_count, RangeMode};
use crate::interval::{nth_root_enclosure, rational, sqrt_enclosure, EnclosureSummary, RationalInterval};
use crate::lattice::{bound_b1, bound_b2, estimate_c, BoundKind, BoundSummary, BoundValue, DEFAULT_PRECISION_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankBoundQuery {
    pub family: Family,
    pub a: i64,
    pub k: u64,
    pub classical: bool,
}

impl RankBoundQuery {
    pub fn new(family: Family, a: i64, k: u64, classical: bool) -> Self {
        Self { family, a, k, classical }
    }

    /// Multiplier after the doubling reduction: `(L, 2Q)` is classical and
    /// `2k`-universal of the same rank.
    pub fn k_eff(&self) -> u64 {
        if self.classical {
            self.k
        } else {
            2 * self.k
        }
    }

    pub fn bound_kind(&self) -> BoundKind {
        bound_kind(self.family)
    }
}

pub fn bound_kind(family: Family) -> BoundKind {
    match family {
        Family::Shanks => BoundKind::B1,
        Family::Ennola | Family::Family3 => BoundKind::B2,
    }
}

/// `B1(R, k)` for Shanks, `B2(R, k)` otherwise.
pub fn family_bound(family: Family, rank: u64, k: u64, bits: u32) -> Result<BoundValue> {
    match bound_kind(family) {
        BoundKind::B2 => bound_b2(rank, k, bits),
        _ => bound_b1(rank, k, bits),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankBound {
    pub query: RankBoundQuery,
    pub k_eff: u64,
    pub bound_kind: BoundKind,
    pub aprime: u128,
    /// Size of the theorem-range candidate list, for comparison with `a'`.
    pub enumerated_candidates: u128,
    /// Smallest rank `R` with `Bound(R, k_eff) > a'`.
    pub rank: u64,
    /// `Bound(rank, k_eff)`, certified above `a'`.
    pub bound_at_rank: BoundSummary,
    /// `Bound(rank - 1, k_eff)`, certified at most `a'` (absent when `rank = 1`).
    pub bound_below_rank: Option<BoundSummary>,
}

/// Every `kO_K`-universal lattice (classical unless the query says
/// otherwise) over the given field has rank at least the returned value.
pub fn rank_lower_bound(q: &RankBoundQuery) -> Result<RankBound> {
    if q.a < MIN_PARAMETER {
        return Err(Error::ParameterRange(q.a));
    }
    if q.k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let k_eff = q.k_eff();
    let ap = aprime_unchecked(q.family, q.a as u128);
    let ap_int = BigInt::from(ap);
    let exceeds = |r: u64| -> Result<bool> {
        let b = family_bound(q.family, r, k_eff, DEFAULT_PRECISION_BITS)?;
        Ok(b.compare_integer(&ap_int)? == Ordering::Greater)
    };

    // Bound(R) >= C(3R, 1)/2 = 3R, so R = a'/3 + 1 always exceeds a'.
    let cap = (ap / 3 + 1) as u64;
    let norm = match q.bound_kind() {
        BoundKind::B2 => 2 * k_eff,
        _ => k_eff,
    };
    let estimate_exceeds = |r: u64| estimate_c(3 * r, norm) / 2.0 > ap as f64;
    // Locate the threshold on the estimate (gallop, then bisect), then
    // settle it with exact comparisons on both sides.
    let mut hi = 1u64;
    let mut lo = 0u64;
    while hi < cap && !estimate_exceeds(hi) {
        lo = hi;
        hi = (hi * 2).min(cap);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if estimate_exceeds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    while !exceeds(hi)? {
        hi += 1;
    }
    while hi > 1 && exceeds(hi - 1)? {
        hi -= 1;
    }
    let rank = hi;
    let bound_at_rank = family_bound(q.family, rank, k_eff, DEFAULT_PRECISION_BITS)?;
    if bound_at_rank.compare_integer(&ap_int)? != Ordering::Greater {
        return Err(Error::Internal(format!("rank search ended at {rank} without exceeding a' = {ap}")));
    }
    let bound_below_rank = if rank > 1 {
        Some(family_bound(q.family, rank - 1, k_eff, DEFAULT_PRECISION_BITS)?.summary())
    } else {
        None
    };
    Ok(RankBound {
        query: *q,
        k_eff,
        bound_kind: q.bound_kind(),
        aprime: ap,
        enumerated_candidates: enumerated_count(q.family, q.a, RangeMode::Theorem),
        rank,
        bound_at_rank: bound_at_rank.summary(),
        bound_below_rank,
    })
}

fn check_x(x: u64) -> Result<()> {
    if x < MIN_PARAMETER as u64 {
        return Err(Error::Precondition(format!("X = {x} must be at least 7")));
    }
    Ok(())
}

/// `#{7 <= a <= X : a' <= m}` for an integer threshold `m`.
fn count_aprime_at_most(family: Family, x: u64, m: &BigInt) -> u64 {
    if m.is_negative() {
        return 0;
    }
    let m = m.to_u128().unwrap_or(u128::MAX);
    // a' is nondecreasing in a, so the set is an initial segment.
    let mut count = 0;
    for a in MIN_PARAMETER as u64..=x {
        if aprime_unchecked(family, a as u128) > m {
            break;
        }
        count += 1;
    }
    count
}

/// Exact `#{7 <= a <= X : a'(a) <= B}`.
pub fn density_count(family: Family, x: u64, b: &BigRational) -> Result<u64> {
    check_x(x)?;
    Ok(count_aprime_at_most(family, x, &b.floor().to_integer()))
}

/// Density count with `B` given by a certified bound value; `a' <= B` is
/// decided exactly through the enclosure.
pub fn density_count_for_bound(family: Family, x: u64, b: &BoundValue) -> Result<u64> {
    check_x(x)?;
    let mut m = b.upper().floor().to_integer();
    while b.compare_integer(&m)? == Ordering::Less {
        m -= 1;
    }
    Ok(count_aprime_at_most(family, x, &m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVerdict {
    Pass,
    Fail,
    PreconditionNotSatisfied,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingLemmaReport {
    pub family: Family,
    pub x: u64,
    pub b: String,
    pub precondition: String,
    pub precondition_holds: bool,
    pub count: u64,
    /// `sqrt(2X)` for Shanks, `sqrt(X)` otherwise.
    pub limit: String,
    pub limit_enclosure: EnclosureSummary,
    pub verdict: LemmaVerdict,
}

/// Checks `#{a : a' <= B} < sqrt(2X)` (Shanks) or `< sqrt(X)` (Ennola,
/// Family3), gated on the stated lower bound for `X`.
pub fn verify_counting_lemma(family: Family, x: u64, b: &BigRational) -> Result<CountingLemmaReport> {
    check_x(x)?;
    let xq = BigRational::from_integer(x.into());
    let seven = rational(7);
    let (precondition, gate) = match family {
        Family::Shanks => ("X > max{B, 7}", b.clone()),
        Family::Ennola => ("X > max{B^2, 7}", b * b),
        Family::Family3 => ("X > max{B^2 + 1, 7}", b * b + BigRational::one()),
    };
    let precondition_holds = xq > gate && xq > seven;
    let count = density_count(family, x, b)?;
    let c2 = BigInt::from(count) * BigInt::from(count);
    let (limit, radicand) = match family {
        Family::Shanks => ("sqrt(2X)", BigInt::from(2 * x as u128)),
        _ => ("sqrt(X)", BigInt::from(x)),
    };
    let verdict = if !precondition_holds {
        LemmaVerdict::PreconditionNotSatisfied
    } else if c2 < radicand {
        LemmaVerdict::Pass
    } else {
        LemmaVerdict::Fail
    };
    Ok(CountingLemmaReport {
        family,
        x,
        b: b.to_string(),
        precondition: precondition.to_string(),
        precondition_holds,
        count,
        limit: limit.to_string(),
        limit_enclosure: EnclosureSummary::from(&sqrt_enclosure(&BigRational::from_integer(radicand), 64)),
        verdict,
    })
}

fn split_eps(eps: &BigRational) -> Result<(u32, u32)> {
    if !eps.is_positive() || eps >= &BigRational::one() {
        return Err(Error::Precondition(format!("eps = {eps} must satisfy 0 < eps < 1")));
    }
    let p = eps.numer().to_u32();
    let q = eps.denom().to_u32();
    match (p, q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::Precondition(format!("eps = {eps} has an oversized denominator"))),
    }
}

/// Whether the machinery leaves `a` exceptional: `rank_lower_bound <= a^(2 - 2 eps)`,
/// decided as `rank^q <= a^(2(q - p))` for `eps = p/q`.
pub fn is_exceptional(family: Family, a: i64, eps: &BigRational, k: u64, classical: bool) -> Result<bool> {
    let (p, q) = split_eps(eps)?;
    let rb = rank_lower_bound(&RankBoundQuery::new(family, a, k, classical))?;
    Ok(BigInt::from(rb.rank).pow(q) <= BigInt::from(a).pow(2 * (q - p)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub family: Family,
    pub x: u64,
    pub eps: String,
    pub k: u64,
    pub classical: bool,
    pub count: u64,
    /// `sqrt(2) X^(1 - eps)` for Shanks, `X^(1 - eps)` otherwise.
    pub budget: String,
    pub budget_enclosure: EnclosureSummary,
    /// `count < budget`, decided exactly.
    pub within_budget: bool,
}

/// Enclosure of the exceptional-set budget.
pub fn exceptional_budget(family: Family, x: u64, eps: &BigRational, bits: u32) -> Result<RationalInterval> {
    let (p, q) = split_eps(eps)?;
    let xq = BigRational::from_integer(BigInt::from(x).pow(q - p));
    let root = nth_root_enclosure(&xq, q, bits);
    Ok(match family {
        Family::Shanks => (&root * &sqrt_enclosure(&rational(2), bits)).round_outward(bits),
        _ => root,
    })
}

/// Counts `7 <= a <= X` not yet shown to have rank above `a^(2 - 2 eps)`
/// and compares with the corollary's budget.
pub fn exceptional_count(family: Family, x: u64, eps: &BigRational, k: u64, classical: bool) -> Result<ExceptionalReport> {
    check_x(x)?;
    let (p, q) = split_eps(eps)?;
    let flags: Vec<bool> = (MIN_PARAMETER..=x as i64)
        .into_par_iter()
        .map(|a| is_exceptional(family, a, eps, k, classical))
        .collect::<Result<_>>()?;
    let count = flags.iter().filter(|&&f| f).count() as u64;
    Ok(ExceptionalReport {
        family,
        x,
        eps: eps.to_string(),
        k,
        classical,
        count,
        budget: match family {
            Family::Shanks => format!("sqrt(2) * {x}^({})", BigRational::one() - eps),
            _ => format!("{x}^({})", BigRational::one() - eps),
        },
        budget_enclosure: EnclosureSummary::from(&exceptional_budget(family, x, eps, 64)?),
        within_budget: count_below_budget(family, count, x, p, q),
    })
}

/// `count < sqrt(2) X^(1-p/q)` iff `count^(2q) < 2^q X^(2(q-p))` (Shanks);
/// `count < X^(1-p/q)` iff `count^q < X^(q-p)` otherwise.
pub fn count_below_budget(family: Family, count: u64, x: u64, p: u32, q: u32) -> bool {
    let c = BigInt::from(count);
    let xb = BigInt::from(x);
    match family {
        Family::Shanks => c.pow(2 * q) < (BigInt::one() << q as usize) * xb.pow(2 * (q - p)),
        _ => c.pow(q) < xb.pow(q - p),
    }
}
