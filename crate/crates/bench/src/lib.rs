//! Deterministic workloads shared by the benchmarks.

use grcone::{BigInt, HnType, SplitBundle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` split bundles of rank `rank` with exponents in `[-10, 10]`.
pub fn split_corpus(seed: u64, count: usize, rank: usize) -> Vec<SplitBundle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let exps = (0..rank)
                .map(|_| BigInt::from(rng.gen_range(-10i64..=10)))
                .collect();
            SplitBundle::new(exps).expect("rank >= 2")
        })
        .collect()
}

/// An HN type with `blocks` blocks of rank 2 and slopes `blocks, blocks-1, …` halved.
pub fn staircase_hn(blocks: usize) -> HnType {
    HnType::from_pairs((0..blocks).map(|i| (2usize, BigInt::from(2 * (blocks - i) as i64 - 1))))
        .expect("slopes strictly decrease")
}
