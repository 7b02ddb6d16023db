//! Closed intervals with exact rational endpoints.
//!
//! Every operation returns an interval that contains the exact image of its
//! inputs. Transcendental constants and square roots are enclosed at a
//! requested number of fractional bits and rounded outward to dyadic
//! rationals, so enclosures stay small while remaining sound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strictly positive on the whole interval.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn disjoint(&self, other: &RationalInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Tight enclosure of `{x^2 : x in self}`.
    pub fn square(&self) -> Self {
        let l2 = &self.lo * &self.lo;
        let h2 = &self.hi * &self.hi;
        if self.lo.is_negative() && self.hi.is_positive() {
            Self::new(BigRational::zero(), l2.max(h2))
        } else if l2 <= h2 {
            Self::new(l2, h2)
        } else {
            Self::new(h2, l2)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        Self::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(BigRational::zero);
        RationalInterval::new(lo, hi)
    }
}

/// Serializable view of an enclosure with its rounding direction spelled out.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EnclosureSummary {
    pub lower: String,
    pub upper: String,
    pub lower_f64: f64,
    pub upper_f64: f64,
}

impl From<&RationalInterval> for EnclosureSummary {
    fn from(iv: &RationalInterval) -> Self {
        let (lower_f64, upper_f64) = iv.to_f64_pair();
        Self {
            lower: iv.lo.to_string(),
            upper: iv.hi.to_string(),
            lower_f64,
            upper_f64,
        }
    }
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // Shift so that numerator and denominator both fit comfortably in f64.
    let num = x.numer();
    let den = x.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = (nb - db) - 60;
    let scaled = if shift > 0 {
        num / (den << (shift as usize))
    } else {
        (num << ((-shift) as usize)) / den
    };
    let mant: f64 = scaled.to_string().parse().unwrap_or(f64::NAN);
    mant * 2f64.powi(shift as i32)
}

pub fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (x * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

pub fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (x * BigRational::from_integer(scale.clone())).ceil();
    BigRational::new(scaled.to_integer(), scale)
}

/// Floor of the square root of a nonnegative rational.
pub fn floor_sqrt(x: &BigRational) -> BigInt {
    assert!(!x.is_negative(), "square root of a negative number");
    // floor(sqrt(p/q)) = floor(isqrt(p*q) / q)
    let pq = x.numer() * x.denom();
    pq.sqrt().div_floor(x.denom())
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// Enclosure of `sqrt(x)` of width at most `2^-bits` (a point when the root
/// is rational).
pub fn sqrt_enclosure(x: &BigRational, bits: u32) -> RationalInterval {
    if let Some(r) = exact_sqrt(x) {
        return RationalInterval::point(r);
    }
    let scale = BigInt::one() << bits as usize;
    let scaled = x * BigRational::from_integer(&scale * &scale);
    let lo = floor_sqrt(&scaled);
    let hi = &lo + 1;
    RationalInterval::new(
        BigRational::new(lo, scale.clone()),
        BigRational::new(hi, scale),
    )
}

/// Enclosure of `x^(1/n)` for a nonnegative rational `x`, width at most
/// `2^-bits`.
pub fn nth_root_enclosure(x: &BigRational, n: u32, bits: u32) -> RationalInterval {
    assert!(n >= 1);
    assert!(!x.is_negative());
    let rn = x.numer().nth_root(n);
    let rd = x.denom().nth_root(n);
    if rn.pow(n) == *x.numer() && rd.pow(n) == *x.denom() {
        return RationalInterval::point(BigRational::new(rn, rd));
    }
    let scale = BigInt::one() << bits as usize;
    let scaled = (x * BigRational::from_integer(scale.pow(n))).floor().to_integer();
    let lo = scaled.nth_root(n);
    let hi = &lo + 1;
    RationalInterval::new(
        BigRational::new(lo, scale.clone()),
        BigRational::new(hi, scale),
    )
}

/// Enclosure of `atan(1/x)` by the alternating Taylor series, tight to about
/// `2^-(bits + 8)`.
fn atan_inv_enclosure(x: u64, bits: u32) -> RationalInterval {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize + 8));
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < tol {
            return if next < sum {
                RationalInterval::new(next, sum)
            } else {
                RationalInterval::new(sum, next)
            };
        }
        sum = next;
        power *= &x2;
        k += 1;
    }
}

/// Enclosure of pi with dyadic endpoints at `bits` fractional bits
/// (Machin's formula).
pub fn pi_enclosure(bits: u32) -> RationalInterval {
    let a = atan_inv_enclosure(5, bits);
    let b = atan_inv_enclosure(239, bits);
    let pi = &a.scale(&rational(16)) - &b.scale(&rational(4));
    pi.round_outward(bits)
}
