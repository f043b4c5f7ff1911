//! The growing labelled quotient graph and its spanning forest.
//!
//! Vertices are motif indices. Each vertex stores an integer offset: the path
//! sum of translation labels from the vertex to its union-find root along
//! forest edges. With that, the path sum between any two vertices of one
//! component is `offset(u) - offset(w)`, and the cycle sum closed by a new
//! edge is a constant-time expression.
//!
//! Orientation: an edge `(source, dest, v)` is directed `source → dest`, so
//! walking it forwards adds `v` and backwards subtracts `v`. The cycle sum of
//! an edge `e` that closes a cycle is the forest path sum from `source` to
//! `dest` followed by `e` walked backwards: `path_sum(source, dest) - v(e)`.

use serde::{Deserialize, Serialize};

use crate::edges::CandidateEdge;

/// What adding an edge to the forest would do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOutcome {
    /// Joined two components; the edge is now part of the forest.
    ForestEdge,
    /// Closed a cycle with a nonzero cycle sum.
    CycleSum(Vec<i64>),
    /// Closed a cycle whose sum is zero.
    ZeroCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeRole {
    Forest,
    Cycle,
}

#[derive(Debug, Clone)]
pub struct QuotientState {
    dim: usize,
    parent: Vec<usize>,
    size: Vec<usize>,
    offset: Vec<Vec<i64>>,
    components: usize,
    edges: Vec<(CandidateEdge, EdgeRole)>,
}

impl QuotientState {
    /// `m` isolated vertices, labels in `ℤ^dim`.
    pub fn new(m: usize, dim: usize) -> Self {
        assert!(m >= 1 && dim >= 1, "need at least one vertex and one axis");
        QuotientState {
            dim,
            parent: (0..m).collect(),
            size: vec![1; m],
            offset: vec![vec![0; dim]; m],
            components: m,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn connected(&self) -> bool {
        self.components == 1
    }

    /// Edges accepted into the quotient graph, in acceptance order.
    pub fn edges(&self) -> &[(CandidateEdge, EdgeRole)] {
        &self.edges
    }

    /// The spanning forest; at termination this is a minimal tree on the
    /// lattice classes of the motif.
    pub fn forest(&self) -> impl Iterator<Item = &CandidateEdge> {
        self.edges
            .iter()
            .filter(|(_, r)| *r == EdgeRole::Forest)
            .map(|(e, _)| e)
    }

    /// Root of `u`, compressing the path and composing offsets on the way.
    fn find(&mut self, u: usize) -> usize {
        let p = self.parent[u];
        if p == u {
            return u;
        }
        let root = self.find(p);
        if root != p {
            // offset(p) now points at the root; chain it onto u.
            let via_parent = self.offset[p].clone();
            for (a, b) in self.offset[u].iter_mut().zip(&via_parent) {
                *a += b;
            }
            self.parent[u] = root;
        }
        root
    }

    /// Sum of labels along the forest path from `u` to `w`, or `None` when
    /// they lie in different components.
    pub fn path_sum(&mut self, u: usize, w: usize) -> Option<Vec<i64>> {
        if self.find(u) != self.find(w) {
            return None;
        }
        Some(sub(&self.offset[u], &self.offset[w]))
    }

    /// Classifies `e`; a forest edge is merged and recorded immediately.
    /// Cycle edges are left for the caller to [`record_cycle_edge`] once it
    /// decides the cycle sum is new.
    ///
    /// [`record_cycle_edge`]: QuotientState::record_cycle_edge
    pub fn classify_edge(&mut self, e: &CandidateEdge) -> EdgeOutcome {
        assert_eq!(e.translation.len(), self.dim, "label dimension");
        let (s, d) = (e.source, e.dest);
        let rs = self.find(s);
        let rd = self.find(d);
        if rs == rd {
            let cycle = sub(&sub(&self.offset[s], &self.offset[d]), &e.translation);
            return if cycle.iter().all(|&c| c == 0) {
                EdgeOutcome::ZeroCycle
            } else {
                EdgeOutcome::CycleSum(cycle)
            };
        }
        // Want offset(s) - offset(d) = v after the merge.
        if self.size[rs] >= self.size[rd] {
            // path_sum(rd, rs) = -offset(d) - v + offset(s)
            let o = sub(&sub(&self.offset[s], &self.offset[d]), &e.translation);
            self.offset[rd] = o;
            self.parent[rd] = rs;
            self.size[rs] += self.size[rd];
        } else {
            // path_sum(rs, rd) = -offset(s) + v + offset(d)
            let o = sub(&add(&self.offset[d], &e.translation), &self.offset[s]);
            self.offset[rs] = o;
            self.parent[rs] = rd;
            self.size[rd] += self.size[rs];
        }
        self.components -= 1;
        self.edges.push((e.clone(), EdgeRole::Forest));
        EdgeOutcome::ForestEdge
    }

    pub fn record_cycle_edge(&mut self, e: &CandidateEdge) {
        self.edges.push((e.clone(), EdgeRole::Cycle));
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
