//! Floating-point oracles, kept independent of the library's exact code.
#![allow(dead_code)]

use std::f64::consts::PI;

use cubiclat::{Family, OrderElement};
use num_traits::ToPrimitive;

/// `(c2, c1, c0)` of the monic defining cubic, written out from the family
/// definitions.
pub fn cubic(family: Family, a: i64) -> (f64, f64, f64) {
    let a = a as f64;
    match family {
        Family::Shanks => (-a, -(a + 3.0), -1.0),
        Family::Ennola => (a - 1.0, -a, -1.0),
        Family::Family3 => (-(2.0 * a + 2.0), a * (a + 2.0), -1.0),
    }
}

/// The three real roots, ascending (trigonometric method plus Newton polish).
pub fn roots(family: Family, a: i64) -> [f64; 3] {
    let (c2, c1, c0) = cubic(family, a);
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let m = 2.0 * (-p / 3.0).sqrt();
    let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
    let mut r: Vec<f64> = (0..3)
        .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - c2 / 3.0)
        .map(|mut x| {
            for _ in 0..4 {
                let f = ((x + c2) * x + c1) * x + c0;
                let df = (3.0 * x + 2.0 * c2) * x + c1;
                x -= f / df;
            }
            x
        })
        .collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    [r[0], r[1], r[2]]
}

pub fn rho(family: Family, a: i64) -> f64 {
    let r = roots(family, a);
    match family {
        Family::Shanks => r[2],
        _ => r[0],
    }
}

pub fn coords(e: &OrderElement) -> [f64; 3] {
    [e.x.to_f64().unwrap(), e.y.to_f64().unwrap(), e.z.to_f64().unwrap()]
}

pub fn embed(e: &OrderElement, root: f64) -> f64 {
    let [x, y, z] = coords(e);
    x + root * (y + root * z)
}

pub fn fprime(family: Family, a: i64, root: f64) -> f64 {
    let (c2, c1, _) = cubic(family, a);
    (3.0 * root + 2.0 * c2) * root + c1
}

/// `Tr(alpha * h(rho) / f'(rho))` summed over the real embeddings.
pub fn dual_trace(family: Family, a: i64, alpha: &OrderElement, h: &OrderElement) -> f64 {
    roots(family, a)
        .iter()
        .map(|&r| embed(alpha, r) * embed(h, r) / fprime(family, a, r))
        .sum()
}

/// `Some(sign)` when every embedding is clearly away from zero.
pub fn all_positive(values: &[f64], tol: f64) -> Option<bool> {
    if values.iter().any(|v| v.abs() <= tol) {
        None
    } else {
        Some(values.iter().all(|&v| v > 0.0))
    }
}
