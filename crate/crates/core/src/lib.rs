//! Exact bridge length of periodic point sets.
//!
//! The bridge length `β(S)` of a point set `S` is the smallest step length
//! that lets any two points of `S` be joined by a chain of steps no longer
//! than it. For a periodic set `S = Λ + M` it is computed exactly by
//! [`bridge_length`]: edge classes are streamed in increasing length
//! ([`edges`]), folded into a labelled quotient graph with a spanning forest
//! ([`quotient`]), and the cycle sums closed by extra edges are certified to
//! generate `ℤⁿ` with an incremental Smith Normal Form ([`intlin`]).
//!
//! ```
//! use bridgelen::{bridge_length, PeriodicSet};
//!
//! let bcc = PeriodicSet::from_parts(
//!     vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
//!     vec![vec![0.0, 0.0, 0.0], vec![0.5, 0.5, 0.5]],
//! )?;
//! let report = bridge_length(&bcc, Default::default())?;
//! assert!((report.beta - 0.75f64.sqrt()).abs() < 1e-12);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bridge;
pub mod edges;
pub mod error;
pub mod geometry;
pub mod ingest;
pub mod intlin;
pub mod oracle;
pub mod quotient;

pub use bridge::{
    bridge_length, mst_longest_edge, r_upper_bound, BridgeOptions, BridgeReport, CycleEdge,
};
pub use edges::{CandidateEdge, EdgeGenerator};
pub use error::{BridgeError, EdgeStreamError, GeometryError, IngestError, OracleError};
pub use geometry::{cell_metrics, CellMetrics, LatticeBasis, Motif, PeriodicSet};
pub use intlin::{in_span, snf, spans_lattice, IntMatrix, OnlineSnfState, SnfResult};
pub use oracle::{oracle_bridge_length, required_half_width};
pub use quotient::{EdgeOutcome, QuotientState};
