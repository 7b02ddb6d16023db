//! Lower-bound machinery for the rank of universal quadratic lattices over
//! three parametric families of totally real cubic fields.
//!
//! * [`cubic_order`]: exact arithmetic in `Z[rho]`, total positivity, root
//!   isolation and the codifferent trace pairing.
//! * [`indecomposables`]: the candidate totally positive elements, trace
//!   certificates and a brute-force indecomposability oracle.
//! * [`lattice`]: exact short-vector counts, the bound `C(r, n)` and the
//!   trace transfer from `O_K`-lattices to `Z`-lattices.
//! * [`bounds`]: rank lower bounds, density and exceptional-set counts.

pub mod bounds;
pub mod cubic_order;
pub mod error;
pub mod indecomposables;
pub mod interval;
pub mod lattice;
mod serde_int;

pub use cubic_order::{CubicOrder, Family, FieldVector, IsolatingInterval, OrderElement};
pub use error::{Error, Result};
