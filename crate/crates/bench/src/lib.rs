//! Inputs shared by the benchmarks.

use bridgelen::PeriodicSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bcc() -> PeriodicSet {
    PeriodicSet::from_parts(
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        vec![vec![0.0; 3], vec![0.5; 3]],
    )
    .expect("valid set")
}

/// `m` uniform random points in a fixed, mildly sheared 3D cell.
pub fn random_motif(m: usize, seed: u64) -> PeriodicSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = vec![
        vec![1.0, 0.1, 0.0],
        vec![0.0, 1.1, 0.2],
        vec![0.1, 0.0, 0.9],
    ];
    loop {
        let motif = (0..m)
            .map(|_| (0..3).map(|_| rng.random_range(0.0..1.0)).collect())
            .collect();
        if let Ok(set) = PeriodicSet::from_parts(basis.clone(), motif) {
            return set;
        }
    }
}

/// Random integer matrix with entries in `[-9, 9]`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-9..=9)).collect())
        .collect()
}
