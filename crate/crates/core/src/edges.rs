//! Lazy stream of lattice-classes of edges in non-decreasing length order.
//!
//! Edges are discovered shell by shell: shell `s` holds every translation
//! `t ∈ ℤⁿ` with `max |t_i| = s`, and for each such translation the stream
//! measures all `m²` distances from the central motif to the translated
//! motif. Discovered edges wait in a min-heap until no undiscovered edge can
//! be shorter.
//!
//! # Release bound
//!
//! An edge `source → dest + t` in shell `s' ≥ s` has some axis `i` with
//! `|t_i| = s'`. Its fractional displacement along that axis is at least
//! `s' - w_i`, where `w_i` is the spread of the motif's `i`-th fractional
//! coordinate, so its length is at least `(s - w_i)·h_i` with `h_i` the
//! cell height across the facets not containing `v_i`. The minimum over `i`
//! bounds every edge not yet enumerated. In orthogonal cells `h_i = |v_i|`
//! and `(1 - w_i)|v_i|` is exactly the sum of the shortest distances from
//! the motif to the two opposite faces along `v_i`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::EdgeStreamError;
use crate::geometry::{cell_metrics, distance, CellMetrics, PeriodicSet};

const RELEASE_MARGIN: f64 = 1e-12;

/// One class of straight-line edges `source → dest + Σ t_i v_i` under
/// lattice translations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateEdge {
    pub source: usize,
    pub dest: usize,
    pub translation: Vec<i64>,
    pub length: f64,
}

impl CandidateEdge {
    fn sort_key(&self) -> (u64, usize, usize, &[i64]) {
        // Lengths are non-negative, so the bit pattern orders like the value.
        (
            self.length.to_bits(),
            self.source,
            self.dest,
            &self.translation,
        )
    }

    /// Recomputes the length from the endpoints.
    pub fn recompute_length(&self, set: &PeriodicSet) -> f64 {
        let zero = vec![0; set.dim()];
        let a = set
            .cartesian_position(self.source, &zero)
            .expect("edge endpoints index the motif");
        let b = set
            .cartesian_position(self.dest, &self.translation)
            .expect("edge endpoints index the motif");
        distance(&a, &b)
    }
}

impl PartialEq for CandidateEdge {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key()
    }
}

impl Eq for CandidateEdge {}

impl PartialOrd for CandidateEdge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CandidateEdge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// `true` for the single orientation under which the stream reports a class.
pub fn is_canonical(source: usize, dest: usize, translation: &[i64]) -> bool {
    match source.cmp(&dest) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => translation
            .iter()
            .find(|&&c| c != 0)
            .is_some_and(|&c| c > 0),
    }
}

/// Resumable generator of edge classes, shortest first.
#[derive(Debug, Clone)]
pub struct EdgeGenerator {
    set: PeriodicSet,
    metrics: CellMetrics,
    positions: Vec<Vec<f64>>,
    heights: Vec<f64>,
    spreads: Vec<f64>,
    shells_enumerated: usize,
    pending: BinaryHeap<Reverse<CandidateEdge>>,
    last_batch_min: f64,
    shell_cap: Option<usize>,
    yielded: usize,
    failed: bool,
}

impl EdgeGenerator {
    /// Generator capped at shell `⌈a(U)⌉ + 2`.
    pub fn new(set: PeriodicSet) -> Self {
        let metrics = cell_metrics(set.basis());
        let cap = metrics.aspect_ceil() + 2;
        let mut gen = Self::unbounded(set);
        gen.shell_cap = Some(cap);
        gen
    }

    /// Generator that enumerates as many shells as requested.
    pub fn unbounded(set: PeriodicSet) -> Self {
        let n = set.dim();
        let metrics = cell_metrics(set.basis());
        let heights = set.basis().heights();
        let spreads = (0..n)
            .map(|i| {
                let (lo, hi) = set
                    .motif()
                    .points()
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                        (lo.min(p[i]), hi.max(p[i]))
                    });
                hi - lo
            })
            .collect();
        EdgeGenerator {
            positions: set.motif_cartesian(),
            set,
            metrics,
            heights,
            spreads,
            shells_enumerated: 0,
            pending: BinaryHeap::new(),
            last_batch_min: f64::INFINITY,
            shell_cap: None,
            yielded: 0,
            failed: false,
        }
    }

    /// Raises (or removes, with `None`) the shell cap.
    pub fn set_shell_cap(&mut self, cap: Option<usize>) {
        self.shell_cap = cap;
        self.failed = false;
    }

    pub fn shell_cap(&self) -> Option<usize> {
        self.shell_cap
    }

    pub fn set(&self) -> &PeriodicSet {
        &self.set
    }

    pub fn metrics(&self) -> &CellMetrics {
        &self.metrics
    }

    /// Number of shells enumerated so far (shell 0 included).
    pub fn shells_enumerated(&self) -> usize {
        self.shells_enumerated
    }

    /// L∞ radius of the outermost enumerated shell, if any.
    pub fn supercell_size(&self) -> Option<usize> {
        self.shells_enumerated.checked_sub(1)
    }

    pub fn yielded(&self) -> usize {
        self.yielded
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    /// Minimum length over the most recently enumerated shell (infinite if
    /// that shell produced no edge).
    pub fn release_bound_simple(&self) -> f64 {
        self.last_batch_min
    }

    /// Lower bound on the length of every edge outside the enumerated shells.
    pub fn release_bound_fast(&self) -> f64 {
        let s = self.shells_enumerated as f64;
        self.heights
            .iter()
            .zip(&self.spreads)
            .map(|(h, w)| (s - w) * h)
            .fold(f64::INFINITY, f64::min)
    }

    /// The coarser bound `(s - 1)·h(U)` for the next shell `s`.
    pub fn release_bound_guard(&self) -> f64 {
        (self.shells_enumerated as f64 - 1.0) * self.metrics.h
    }

    /// Next shortest edge class not yet yielded.
    pub fn next_edge(&mut self) -> Result<CandidateEdge, EdgeStreamError> {
        loop {
            // Keep a relative margin so rounding in the bound never lets a
            // shorter edge from an unseen shell overtake a released one.
            let bound = self.release_bound_fast();
            let bound = bound - RELEASE_MARGIN * bound.abs();
            if let Some(Reverse(top)) = self.pending.peek() {
                if top.length < bound {
                    let Reverse(edge) = self.pending.pop().expect("peeked");
                    self.yielded += 1;
                    return Ok(edge);
                }
            }
            self.enumerate_next_shell()?;
        }
    }

    /// Pushes every canonical edge of the next shell into the buffer.
    pub fn enumerate_next_shell(&mut self) -> Result<(), EdgeStreamError> {
        let shell = self.shells_enumerated;
        if let Some(cap) = self.shell_cap {
            if shell > cap {
                return Err(EdgeStreamError::ShellCapExceeded { shell, cap });
            }
        }
        let n = self.set.dim();
        let m = self.set.motif_len();
        let s = shell as i64;
        let mut batch_min = f64::INFINITY;
        let mut t = vec![-s; n];
        loop {
            if t.iter().any(|c| c.abs() == s) {
                let offset = self.set.basis().to_cartesian(
                    &t.iter().map(|&c| c as f64).collect::<Vec<_>>(),
                );
                for source in 0..m {
                    for dest in source..m {
                        if !is_canonical(source, dest, &t) {
                            continue;
                        }
                        let target: Vec<f64> = self.positions[dest]
                            .iter()
                            .zip(&offset)
                            .map(|(p, o)| p + o)
                            .collect();
                        let length = distance(&self.positions[source], &target);
                        batch_min = batch_min.min(length);
                        self.pending.push(Reverse(CandidateEdge {
                            source,
                            dest,
                            translation: t.clone(),
                            length,
                        }));
                    }
                }
            }
            // Odometer over [-s, s]^n.
            let mut axis = n;
            loop {
                if axis == 0 {
                    self.last_batch_min = batch_min;
                    self.shells_enumerated += 1;
                    return Ok(());
                }
                axis -= 1;
                if t[axis] < s {
                    t[axis] += 1;
                    break;
                }
                t[axis] = -s;
            }
        }
    }
}

/// Yields edges until the shell cap is hit; the cap error is reported once
/// and then the iterator ends.
impl Iterator for EdgeGenerator {
    type Item = Result<CandidateEdge, EdgeStreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.next_edge();
        self.failed = item.is_err();
        Some(item)
    }
}
