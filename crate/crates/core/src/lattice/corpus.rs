use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gram::GramMatrix;

pub const DEFAULT_CORPUS_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_CORPUS_SIZE: usize = 20;
pub const DEFAULT_CORPUS_MAX_RANK: usize = 5;

/// Deterministic pseudo-random positive definite integer Gram matrices with
/// small entries, so that norms up to about 10 are well populated.
pub fn random_positive_definite(seed: u64, count: usize, max_rank: usize) -> Vec<GramMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(1..=max_rank.max(1));
        let mut m = vec![vec![0i64; r]; r];
        for i in 0..r {
            m[i][i] = rng.gen_range(1..=4);
            for j in 0..i {
                let v = rng.gen_range(-2..=2);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let g = GramMatrix::new(
            m.into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .expect("symmetric by construction");
        if g.is_positive_definite() {
            out.push(g);
        }
    }
    out
}

pub fn default_corpus() -> Vec<GramMatrix> {
    random_positive_definite(DEFAULT_CORPUS_SEED, DEFAULT_CORPUS_SIZE, DEFAULT_CORPUS_MAX_RANK)
}
