//! Brute-force reference for the bridge length on a finite patch.
//!
//! The patch holds every motif copy in the cells `[-K, K]ⁿ`. Candidate
//! thresholds are the distinct distances (up to `r(U)`) from the central
//! motif to any point of the patch. The answer is the smallest threshold at
//! which, in the patch graph joining points at most that far apart,
//!
//! 1. all central motif points lie in one component, and
//! 2. central point 0 is joined to its translate by `+v_i` for every `i`.
//!
//! Together these connect the infinite set: by periodicity every point is
//! joined to the copy of point 0 in its own cell (condition 1), and those
//! copies are joined along every basis direction (condition 2), hence to
//! each other. Conversely, when the infinite graph at threshold `t` is
//! connected, both conditions hold as soon as the connecting paths fit
//! inside the patch, which the generous half-width `K ≥ 2⌈a(U)⌉ + 3` is
//! meant to ensure. If no threshold up to `r(U)` passes, the patch is
//! reported as inconclusive instead of guessing.
//!
//! This module shares no code path with the edge stream, the quotient
//! forest or the Smith form.

use crate::error::OracleError;
use crate::geometry::{cell_metrics, distance, PeriodicSet};

/// All motif copies in the cells `[-K, K]ⁿ`.
#[derive(Debug, Clone)]
pub struct PatchGraph {
    half_width: usize,
    dim: usize,
    motif_len: usize,
    points: Vec<Vec<f64>>,
}

impl PatchGraph {
    pub fn new(set: &PeriodicSet, half_width: usize) -> Self {
        let n = set.dim();
        let m = set.motif_len();
        let side = 2 * half_width + 1;
        let cells = side.pow(n as u32);
        let mut points = Vec::with_capacity(cells * m);
        for c in 0..cells {
            let cell = Self::decode(c, n, half_width);
            for p in 0..m {
                points.push(set.cartesian_position(p, &cell).expect("in range"));
            }
        }
        PatchGraph {
            half_width,
            dim: n,
            motif_len: m,
            points,
        }
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn side(&self) -> usize {
        2 * self.half_width + 1
    }

    fn decode(mut c: usize, n: usize, k: usize) -> Vec<i64> {
        let side = 2 * k + 1;
        let mut cell = vec![0i64; n];
        for x in cell.iter_mut().rev() {
            *x = (c % side) as i64 - k as i64;
            c /= side;
        }
        cell
    }

    /// Index of motif point `p` in `cell`, if the cell is inside the patch.
    pub fn index(&self, p: usize, cell: &[i64]) -> Option<usize> {
        let k = self.half_width as i64;
        let mut c = 0usize;
        for &x in cell {
            if x < -k || x > k {
                return None;
            }
            c = c * self.side() + (x + k) as usize;
        }
        Some(c * self.motif_len + p)
    }

    fn cells(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.side().pow(self.dim as u32)).map(|c| Self::decode(c, self.dim, self.half_width))
    }
}

/// Smallest patch half-width accepted by [`oracle_bridge_length`].
pub fn required_half_width(set: &PeriodicSet) -> usize {
    2 * cell_metrics(set.basis()).aspect.ceil() as usize + 3
}

/// Bridge length of `set` decided on the patch of half-width `half_width`.
pub fn oracle_bridge_length(set: &PeriodicSet, half_width: usize) -> Result<f64, OracleError> {
    let required = required_half_width(set);
    if half_width < required {
        return Err(OracleError::PatchTooSmall {
            given: half_width,
            required,
        });
    }
    let metrics = cell_metrics(set.basis());
    let r = metrics.r_u;
    let n = set.dim();
    let m = set.motif_len();

    // Any translation with L∞ norm s gives length ≥ (s-1)·h, so norms above
    // ⌈a⌉ + 1 cannot reach r.
    let reach = metrics.aspect.ceil() as i64 + 1;
    let mut classes: Vec<(f64, usize, usize, Vec<i64>)> = Vec::new();
    let side = (2 * reach + 1) as usize;
    for c in 0..side.pow(n as u32) {
        let t = PatchGraph::decode(c, n, reach as usize);
        for p in 0..m {
            let from = set.cartesian_position(p, &vec![0; n]).expect("in range");
            for q in p..m {
                if p == q && t.iter().find(|&&x| x != 0).is_none_or(|&x| x < 0) {
                    continue;
                }
                let to = set.cartesian_position(q, &t).expect("in range");
                let len = distance(&from, &to);
                if len <= r * (1.0 + 1e-12) {
                    classes.push((len, p, q, t.clone()));
                }
            }
        }
    }
    classes.sort_by(|a, b| a.0.total_cmp(&b.0));

    let patch = PatchGraph::new(set, half_width);
    let mut dsu = Dsu::new(patch.len());
    let cells: Vec<Vec<i64>> = patch.cells().collect();
    let centre = vec![0i64; n];
    let mut i = 0;
    while i < classes.len() {
        let threshold = classes[i].0;
        while i < classes.len() && classes[i].0 == threshold {
            let (_, p, q, ref t) = classes[i];
            for cell in &cells {
                let moved: Vec<i64> = cell.iter().zip(t).map(|(a, b)| a + b).collect();
                if let (Some(a), Some(b)) = (patch.index(p, cell), patch.index(q, &moved)) {
                    dsu.union(a, b);
                }
            }
            i += 1;
        }
        let origin = patch.index(0, &centre).expect("centre cell");
        let motif_joined = (1..m).all(|p| {
            let idx = patch.index(p, &centre).expect("centre cell");
            dsu.same(origin, idx)
        });
        let axes_joined = (0..n).all(|axis| {
            let mut unit = centre.clone();
            unit[axis] = 1;
            let idx = patch.index(0, &unit).expect("neighbour cell");
            dsu.same(origin, idx)
        });
        if motif_joined && axes_joined {
            return Ok(threshold);
        }
    }
    Err(OracleError::Inconclusive {
        cells: 2 * half_width + 1,
        r_upper: r,
    })
}

/// Plain union-find, path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
