//! Classical positive definite `Z`-lattices: exact short-vector counts, the
//! bound `C(r, n)`, and the trace transfer from `O_K`-lattices.

mod bound;
mod corpus;
mod enumerate;
mod gram;
mod transfer;

pub use bound::{
    bound, bound_b1, bound_b2, bound_c, verify_count_bound, BoundKind, BoundSummary, BoundValue, CountBoundCheck,
    DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS,
};
pub(crate) use bound::estimate_c;
pub use corpus::{default_corpus, random_positive_definite, DEFAULT_CORPUS_MAX_RANK, DEFAULT_CORPUS_SEED, DEFAULT_CORPUS_SIZE};
pub use enumerate::{count_short_vectors, ShortVectors};
pub use gram::{GramMatrix, Ldl};
pub use transfer::{ok_vector_from_coords, trace_transfer, OkGramMatrix, TraceLattice};
