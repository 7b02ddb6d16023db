//! Viewing a rank-`R` quadratic `O_K`-lattice as a rank-`3R` `Z`-lattice
//! through `v -> Tr(delta Q(v))`, with `delta = h(rho)/f'(rho)` in the
//! codifferent.

use num_bigint::BigInt;
use serde::Serialize;

use super::gram::GramMatrix;
use crate::cubic_order::{CubicOrder, Family, OrderElement};
use crate::error::{Error, Result};

/// Symmetric Gram matrix with entries in `Z[rho]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OkGramMatrix {
    pub family: Family,
    pub a: i64,
    entries: Vec<Vec<OrderElement>>,
}

impl OkGramMatrix {
    /// Validates squareness, symmetry and total positivity of the diagonal.
    pub fn new(order: &CubicOrder, entries: Vec<Vec<OrderElement>>) -> Result<Self> {
        let r = entries.len();
        if r == 0 {
            return Err(Error::Dimension("O_K-Gram matrix must have rank at least 1".into()));
        }
        if entries.iter().any(|row| row.len() != r) {
            return Err(Error::Dimension("O_K-Gram matrix is not square".into()));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
            if !order.is_totally_positive(&entries[i][i]) {
                return Err(Error::Precondition(format!(
                    "diagonal entry {i} = {} is not totally positive",
                    entries[i][i]
                )));
            }
        }
        Ok(Self {
            family: order.family(),
            a: order.a(),
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<OrderElement>] {
        &self.entries
    }

    /// `Q(u) = sum_{s,s'} u_s u_s' B_ss'`.
    pub fn quadratic_value(&self, order: &CubicOrder, u: &[OrderElement]) -> OrderElement {
        let mut total = OrderElement::zero();
        for (s, row) in self.entries.iter().enumerate() {
            for (t, b) in row.iter().enumerate() {
                let term = order.mul(&order.mul(&u[s], &u[t]), b);
                total = &total + &term;
            }
        }
        total
    }
}

/// The `Z`-coordinates `(x_{3s}, x_{3s+1}, x_{3s+2})` of `u_s = x_{3s} + x_{3s+1} rho + x_{3s+2} rho^2`.
pub fn ok_vector_from_coords(coords: &[BigInt]) -> Vec<OrderElement> {
    coords
        .chunks(3)
        .map(|c| OrderElement::new(c[0].clone(), c[1].clone(), c[2].clone()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceLattice {
    pub gram: GramMatrix,
    pub h: OrderElement,
    pub delta_totally_positive: bool,
    pub positive_definite: bool,
}

/// Gram matrix of `v -> Tr(delta Q(v))` in the basis `e_s rho^t`
/// (row index `3s + t`): entry `Tr(delta B_ss' rho^(t+t'))`.
pub fn trace_transfer(order: &CubicOrder, lattice: &OkGramMatrix, h: &OrderElement) -> Result<TraceLattice> {
    if lattice.family != order.family() || lattice.a != order.a() {
        return Err(Error::OrderMismatch);
    }
    let r = lattice.rank();
    let rho_powers: Vec<OrderElement> = (0..5).map(|e| order.rho_pow(e)).collect();
    let mut rows = vec![vec![BigInt::default(); 3 * r]; 3 * r];
    for s in 0..r {
        for s2 in 0..r {
            let b = &lattice.entries[s][s2];
            for t in 0..3 {
                for t2 in 0..3 {
                    let elem = order.mul(b, &rho_powers[t + t2]);
                    rows[3 * s + t][3 * s2 + t2] = order.dual_trace_pairing(&elem, h);
                }
            }
        }
    }
    let gram = GramMatrix::new(rows)?;
    let positive_definite = gram.is_positive_definite();
    Ok(TraceLattice {
        gram,
        h: h.clone(),
        delta_totally_positive: order.is_dual_totally_positive(h),
        positive_definite,
    })
}
