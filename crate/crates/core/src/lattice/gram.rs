use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serde_int::Int;

/// Gram matrix of a classical integral lattice. Symmetry is enforced on
/// construction; positive definiteness is checked by [`GramMatrix::ldl`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = entries.len();
        if r == 0 {
            return Err(Error::Dimension("Gram matrix must have rank at least 1".into()));
        }
        if let Some(bad) = entries.iter().position(|row| row.len() != r) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {r}",
                entries[bad].len()
            )));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            entries: (0..rank)
                .map(|i| (0..rank).map(|j| BigInt::from(u8::from(i == j))).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    /// `v^T G v`.
    pub fn quadratic_value(&self, v: &[BigInt]) -> BigInt {
        assert_eq!(v.len(), self.rank());
        let mut total = BigInt::zero();
        for (i, row) in self.entries.iter().enumerate() {
            let dot: BigInt = row.iter().zip(v).map(|(g, x)| g * x).sum();
            total += &v[i] * dot;
        }
        total
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rank();
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `G = L D L^T` with `L` unit lower triangular, over Q. Fails unless every
    /// pivot is positive.
    pub fn ldl(&self) -> Result<Ldl> {
        let n = self.rank();
        let mut l = vec![vec![BigRational::zero(); n]; n];
        let mut d = vec![BigRational::zero(); n];
        for j in 0..n {
            let mut dj = BigRational::from_integer(self.entries[j][j].clone());
            for k in 0..j {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
            if !dj.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    pivot: dj.to_string(),
                });
            }
            l[j][j] = BigRational::one();
            for i in (j + 1)..n {
                let mut s = BigRational::from_integer(self.entries[i][j].clone());
                for k in 0..j {
                    s -= &l[i][k] * &l[j][k] * &d[k];
                }
                l[i][j] = s / &dj;
            }
            d[j] = dj;
        }
        Ok(Ldl { l, d })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.ldl().is_ok()
    }
}

/// Serialized as the bare row-major array of integers.
impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Int<'_>>> = self.entries.iter().map(|row| row.iter().map(Int).collect()).collect();
        rows.serialize(s)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Square-root-free Cholesky factors: `x^T G x = sum_k d_k (x_k + sum_{i>k} l_ik x_i)^2`.
#[derive(Clone, Debug)]
pub struct Ldl {
    /// `l[i][k]`, unit lower triangular.
    pub l: Vec<Vec<BigRational>>,
    /// Positive pivots.
    pub d: Vec<BigRational>,
}

impl Ldl {
    pub fn determinant(&self) -> BigRational {
        self.d.iter().fold(BigRational::one(), |acc, x| acc * x)
    }
}
