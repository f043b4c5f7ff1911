//! The bridge length of a periodic point set.
//!
//! Edge classes arrive shortest first. Each one either joins two components
//! of the quotient forest, or closes a cycle whose cycle sum is tested
//! against the lattice already generated by earlier cycle sums. The run
//! stops as soon as the quotient graph is connected and the cycle sums
//! generate all of `ℤⁿ`; the edge that completed both conditions has the
//! bridge length. Edges that close a zero cycle, or whose cycle sum is
//! already generated, add no connection to the lifted graph and are skipped.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::edges::{CandidateEdge, EdgeGenerator};
use crate::error::BridgeError;
use crate::geometry::{cell_metrics, distance, PeriodicSet};
use crate::intlin::{IntMatrix, OnlineSnfState};
use crate::quotient::{EdgeOutcome, QuotientState};

/// Default cap on retained trace entries.
pub const DEFAULT_TRACE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeOptions {
    /// Maximum number of forest plus cycle edges kept in the report.
    pub trace_cap: usize,
}

impl Default for BridgeOptions {
    fn default() -> Self {
        BridgeOptions {
            trace_cap: DEFAULT_TRACE_CAP,
        }
    }
}

/// An edge that closed a cycle with a new cycle sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleEdge {
    pub edge: CandidateEdge,
    pub cycle_sum: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BridgeReport {
    pub beta: f64,
    pub last_edge: CandidateEdge,
    pub forest_edges: Vec<CandidateEdge>,
    pub basis_cycle_edges: Vec<CycleEdge>,
    /// Set when the trace hit [`BridgeOptions::trace_cap`].
    pub trace_truncated: bool,
    /// Columns of the translational matrix, in insertion order.
    pub translational_basis: Vec<Vec<i64>>,
    pub invariant_factors: Vec<String>,
    pub r_upper: f64,
    pub atom_count: usize,
    pub shells_enumerated: usize,
    pub edges_examined: usize,
    pub translational_basis_size: usize,
    pub elapsed: Duration,
}

impl BridgeReport {
    /// The translational matrix `A` (cycle sums as columns).
    pub fn translational_matrix(&self) -> IntMatrix {
        let n = self.last_edge.translation.len();
        IntMatrix::from_columns(n, &self.translational_basis)
    }

    /// Equality of everything except wall-clock time.
    pub fn same_result(&self, other: &BridgeReport) -> bool {
        self.beta.to_bits() == other.beta.to_bits()
            && self.last_edge == other.last_edge
            && self.forest_edges == other.forest_edges
            && self.basis_cycle_edges == other.basis_cycle_edges
            && self.trace_truncated == other.trace_truncated
            && self.translational_basis == other.translational_basis
            && self.invariant_factors == other.invariant_factors
            && self.r_upper.to_bits() == other.r_upper.to_bits()
            && self.shells_enumerated == other.shells_enumerated
            && self.edges_examined == other.edges_examined
    }
}

/// Computes the bridge length of `set`.
pub fn bridge_length(set: &PeriodicSet, options: BridgeOptions) -> Result<BridgeReport, BridgeError> {
    let start = Instant::now();
    let n = set.dim();
    let m = set.motif_len();
    let mut edges = EdgeGenerator::new(set.clone());
    let mut quotient = QuotientState::new(m, n);
    let mut lattice = OnlineSnfState::new(n);

    let mut forest_edges = Vec::new();
    let mut cycle_edges = Vec::new();
    let mut basis = Vec::new();
    let mut truncated = false;
    let mut examined = 0usize;

    let last = loop {
        let e = edges.next_edge()?;
        examined += 1;
        let accepted = match quotient.classify_edge(&e) {
            EdgeOutcome::ForestEdge => {
                if forest_edges.len() + cycle_edges.len() < options.trace_cap {
                    forest_edges.push(e.clone());
                } else {
                    truncated = true;
                }
                true
            }
            EdgeOutcome::CycleSum(c) => {
                if lattice.add(&c) {
                    quotient.record_cycle_edge(&e);
                    basis.push(c.clone());
                    if forest_edges.len() + cycle_edges.len() < options.trace_cap {
                        cycle_edges.push(CycleEdge {
                            edge: e.clone(),
                            cycle_sum: c,
                        });
                    } else {
                        truncated = true;
                    }
                    true
                } else {
                    false
                }
            }
            EdgeOutcome::ZeroCycle => false,
        };
        if accepted && quotient.connected() && lattice.is_complete() {
            break e;
        }
    };

    Ok(BridgeReport {
        beta: last.length,
        last_edge: last,
        forest_edges,
        basis_cycle_edges: cycle_edges,
        trace_truncated: truncated,
        translational_basis_size: basis.len(),
        translational_basis: basis,
        invariant_factors: lattice.factors().iter().map(|f| f.to_string()).collect(),
        r_upper: edges.metrics().r_u,
        atom_count: m,
        shells_enumerated: edges.shells_enumerated(),
        edges_examined: examined,
        elapsed: start.elapsed(),
    })
}

/// The upper bound `r(U) = max(b, d/2)` on the bridge length.
pub fn r_upper_bound(set: &PeriodicSet) -> f64 {
    cell_metrics(set.basis()).r_u
}

/// Longest edge of a Euclidean minimum spanning tree (Prim, `O(N²)`), which
/// is the bridge length of a finite point set.
pub fn mst_longest_edge(points: &[Vec<f64>]) -> Result<f64, BridgeError> {
    if points.is_empty() {
        return Err(BridgeError::EmptyInput);
    }
    let n = points.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut longest: f64 = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !in_tree[i])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .expect("a vertex remains outside the tree");
        in_tree[u] = true;
        longest = longest.max(best[u]);
        for v in 0..n {
            if !in_tree[v] {
                best[v] = best[v].min(distance(&points[u], &points[v]));
            }
        }
    }
    Ok(longest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LatticeBasis;

    #[test]
    fn integer_lattices() {
        for n in 1..=4 {
            let r = bridge_length(&PeriodicSet::integer_lattice(n).unwrap(), Default::default())
                .unwrap();
            assert_eq!(r.beta, 1.0);
            assert_eq!(r.translational_basis_size, n);
            assert!(r.forest_edges.is_empty());
        }
    }

    #[test]
    fn body_centred_cubic() {
        let bcc = PeriodicSet::from_parts(
            LatticeBasis::identity(3).unwrap().vectors().to_vec(),
            vec![vec![0.0; 3], vec![0.5; 3]],
        )
        .unwrap();
        let r = bridge_length(&bcc, Default::default()).unwrap();
        assert!((r.beta - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(r.forest_edges.len(), 1);
        assert!(r.beta <= r.r_upper);
    }

    #[test]
    fn trace_cap_truncates() {
        let z3 = PeriodicSet::integer_lattice(3).unwrap();
        let r = bridge_length(&z3, BridgeOptions { trace_cap: 1 }).unwrap();
        assert!(r.trace_truncated);
        assert_eq!(r.basis_cycle_edges.len(), 1);
        assert_eq!(r.translational_basis_size, 3);
    }

    #[test]
    fn mst_examples() {
        let pts: Vec<Vec<f64>> = [0.0, 1.0, 2.0, 5.0].iter().map(|&x| vec![x]).collect();
        assert_eq!(mst_longest_edge(&pts).unwrap(), 3.0);
        assert_eq!(mst_longest_edge(&[vec![1.0, 2.0]]).unwrap(), 0.0);
        assert_eq!(mst_longest_edge(&[]), Err(BridgeError::EmptyInput));
    }

    #[test]
    fn r_upper_examples() {
        assert_eq!(r_upper_bound(&PeriodicSet::integer_lattice(3).unwrap()), 1.0);
        let rect = PeriodicSet::from_parts(
            vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            vec![vec![0.0, 0.0]],
        )
        .unwrap();
        assert_eq!(r_upper_bound(&rect), 2.0);
    }
}
