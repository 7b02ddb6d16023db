//! Fincke–Pohst enumeration over an exact LDL factorization.
//!
//! Coordinates are fixed from the last to the first. At each level the
//! admissible integers form an interval around a rational center, computed
//! exactly from the remaining budget. Only vectors whose last nonzero
//! coordinate is positive are visited; counts are doubled for the `±` pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::gram::{GramMatrix, Ldl};
use crate::error::{Error, Result};
use crate::interval::floor_sqrt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortVectors {
    pub norm: u64,
    /// Number of nonzero `v` with `v^T G v = norm` (always even).
    pub count: u64,
    /// Both members of each `±` pair, lexicographically sorted; only in list
    /// mode.
    pub vectors: Option<Vec<Vec<i64>>>,
}

/// Exact number of nonzero lattice vectors of norm exactly `n`.
pub fn count_short_vectors(g: &GramMatrix, n: u64, list_mode: bool) -> Result<ShortVectors> {
    if n == 0 {
        return Err(Error::Precondition("norm must be at least 1".into()));
    }
    let ldl = g.ldl()?;
    let bound = BigRational::from_integer(n.into());
    let r = g.rank();
    let top = r - 1;
    let top_range = level_range(&ldl, top, &vec![0; r], &bound);
    // Half-space: the last nonzero coordinate is positive, so the top
    // coordinate is nonnegative. Each top value is an independent subtree.
    let halves: Vec<(u64, Vec<Vec<i64>>)> = top_range
        .into_iter()
        .filter(|&x| x >= 0)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x_top| {
            let mut search = Search {
                ldl: &ldl,
                x: vec![0; r],
                count: 0,
                list: list_mode.then(Vec::new),
            };
            search.x[top] = x_top;
            let spent = level_term(&ldl, top, &search.x);
            let rem = &bound - spent;
            if rem >= BigRational::zero() {
                search.descend(top, rem, x_top == 0);
            }
            (search.count, search.list.unwrap_or_default())
        })
        .collect();

    let count: u64 = halves.iter().map(|(c, _)| c).sum::<u64>() * 2;
    let vectors = list_mode.then(|| {
        let mut all: Vec<Vec<i64>> = halves
            .into_iter()
            .flat_map(|(_, vs)| vs)
            .flat_map(|v| {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                [v, neg]
            })
            .collect();
        all.sort();
        all
    });
    Ok(ShortVectors {
        norm: n,
        count,
        vectors,
    })
}

struct Search<'a> {
    ldl: &'a Ldl,
    x: Vec<i64>,
    count: u64,
    list: Option<Vec<Vec<i64>>>,
}

impl Search<'_> {
    /// Coordinates `level..` are fixed; `rem` is the budget left for the
    /// coordinates below `level`.
    fn descend(&mut self, level: usize, rem: BigRational, zero_above: bool) {
        if level == 0 {
            if !zero_above && rem.is_zero() {
                self.count += 1;
                if let Some(list) = self.list.as_mut() {
                    list.push(self.x.clone());
                }
            }
            return;
        }
        let i = level - 1;
        for xi in level_range(self.ldl, i, &self.x, &rem) {
            if zero_above && xi < 0 {
                continue;
            }
            self.x[i] = xi;
            let spent = level_term(self.ldl, i, &self.x);
            let next = &rem - spent;
            self.descend(i, next, zero_above && xi == 0);
        }
        self.x[i] = 0;
    }
}

/// `c_i = -sum_{j>i} l_ji x_j`.
fn center(ldl: &Ldl, i: usize, x: &[i64]) -> BigRational {
    let mut c = BigRational::zero();
    for (j, &xj) in x.iter().enumerate().skip(i + 1) {
        if xj != 0 {
            c -= &ldl.l[j][i] * BigRational::from_integer(xj.into());
        }
    }
    c
}

/// `d_i (x_i - c_i)^2` for the current coordinates.
fn level_term(ldl: &Ldl, i: usize, x: &[i64]) -> BigRational {
    let t = BigRational::from_integer(x[i].into()) - center(ldl, i, x);
    &ldl.d[i] * &t * &t
}

/// All integers `x_i` with `d_i (x_i - c_i)^2 <= rem`.
fn level_range(ldl: &Ldl, i: usize, x: &[i64], rem: &BigRational) -> Vec<i64> {
    if rem < &BigRational::zero() {
        return vec![];
    }
    let c = center(ldl, i, x);
    let t = rem / &ldl.d[i];
    let s = floor_sqrt(&t);
    let base = c.floor().to_integer();
    let lo: BigInt = &base - &s - 1i32;
    let hi: BigInt = &base + &s + 1i32;
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        return vec![];
    };
    (lo..=hi)
        .filter(|&xi| {
            let diff = BigRational::from_integer(BigInt::from(xi)) - &c;
            &diff * &diff <= t
        })
        .collect()
}
