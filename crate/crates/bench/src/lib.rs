//! Fixtures shared by the benchmarks.

use pucodes::{haar_sample, PhaseClass, RandomStream};

/// `count` Haar-random classes of `PU_n` from a fixed stream.
pub fn haar_classes(n: usize, count: usize, seed: u64) -> Vec<PhaseClass> {
    let mut rng = RandomStream::new(seed, 0);
    (0..count)
        .map(|_| haar_sample(n, &mut rng).expect("n >= 1"))
        .collect()
}
