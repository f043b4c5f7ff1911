#![allow(dead_code)]

use std::path::PathBuf;

use bridgelen::ingest::parse_json_set;
use bridgelen::{cell_metrics, PeriodicSet};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_ASPECT: f64 = 2.0;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> PeriodicSet {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture is readable");
    parse_json_set(&text).expect("fixture parses")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Perturbed scaled identity; `None` when the cell is too elongated.
pub fn basis_from(n: usize, scale: f64, noise: &[f64]) -> Option<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| scale * (f64::from(u8::from(i == j)) + noise[i * n + j]))
                .collect()
        })
        .collect();
    let basis = bridgelen::LatticeBasis::new(rows.clone()).ok()?;
    (cell_metrics(&basis).aspect <= MAX_ASPECT).then_some(rows)
}

pub fn random_set(rng: &mut impl Rng, n: usize, m: usize) -> PeriodicSet {
    loop {
        let scale = rng.random_range(0.5..3.0);
        let noise: Vec<f64> = (0..n * n).map(|_| rng.random_range(-0.35..0.35)).collect();
        let Some(basis) = basis_from(n, scale, &noise) else {
            continue;
        };
        let motif: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0.0..1.0)).collect())
            .collect();
        if let Ok(set) = PeriodicSet::from_parts(basis, motif) {
            return set;
        }
    }
}

/// Random set with `n ∈ {1, 2, 3}` and `1 ≤ m ≤ max_m`.
pub fn random_small_set(rng: &mut impl Rng, max_m: usize) -> PeriodicSet {
    let n = rng.random_range(1..=3);
    let m = rng.random_range(1..=max_m);
    random_set(rng, n, m)
}

pub fn arb_set(dims: std::ops::RangeInclusive<usize>, max_m: usize) -> impl Strategy<Value = PeriodicSet> {
    dims.prop_flat_map(move |n| {
        (
            0.5..3.0f64,
            prop::collection::vec(-0.35..0.35f64, n * n),
            prop::collection::vec(prop::collection::vec(0.0..1.0f64, n), 1..=max_m),
        )
            .prop_filter_map("elongated or repeated", move |(scale, noise, motif)| {
                let basis = basis_from(n, scale, &noise)?;
                PeriodicSet::from_parts(basis, motif).ok()
            })
    })
}

/// Haar-ish random orthogonal matrix from the QR factor of a Gaussian-like
/// matrix, returned row-major.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    loop {
        let a = DMatrix::<f64>::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        if a.determinant().abs() < 1e-3 {
            continue;
        }
        let q = a.qr().q();
        return (0..n).map(|i| (0..n).map(|j| q[(i, j)]).collect()).collect();
    }
}
