//! Loading periodic sets from CIF and from a lossless JSON format.

mod cif;
mod json;
mod symop;

pub use cif::{parse_cif, parse_cif_number, CrystalDocument, Site};
pub use json::{parse_json_set, write_json_set};
pub use symop::SymOp;

use std::path::Path;

use crate::error::IngestError;
use crate::geometry::{wrap_unit, wrapped_distance, LatticeBasis, Motif, PeriodicSet};

/// Default tolerance for merging symmetry images (fractional, wrap-aware).
pub const SYMMETRY_DEDUP_TOL: f64 = 1e-3;

/// Cartesian basis from cell parameters: `a` along x, `b` in the xy-plane.
pub fn cell_basis(lengths: [f64; 3], angles_deg: [f64; 3]) -> Result<LatticeBasis, IngestError> {
    let [a, b, c] = lengths;
    if lengths.iter().any(|&l| !l.is_finite() || l <= 0.0) {
        return Err(IngestError::InvalidCell(format!(
            "cell lengths must be positive, got {lengths:?}"
        )));
    }
    if angles_deg.iter().any(|&t| !(t > 0.0 && t < 180.0)) {
        return Err(IngestError::InvalidCell(format!(
            "cell angles must lie in (0, 180), got {angles_deg:?}"
        )));
    }
    let [alpha, beta, gamma] = angles_deg.map(f64::to_radians);
    let (cos_a, cos_b) = (alpha.cos(), beta.cos());
    let (sin_g, cos_g) = gamma.sin_cos();
    let cy = (cos_a - cos_b * cos_g) / sin_g;
    let cz2 = 1.0 - cos_b * cos_b - cy * cy;
    if cz2.is_nan() || cz2 <= 1e-12 {
        return Err(IngestError::InvalidCell(
            "metric tensor is not positive definite".into(),
        ));
    }
    Ok(LatticeBasis::new(vec![
        vec![a, 0.0, 0.0],
        vec![b * cos_g, b * sin_g, 0.0],
        vec![c * cos_b, c * cy, c * cz2.sqrt()],
    ])?)
}

/// Applies every operation to every point, wraps into `[0, 1)` and merges
/// images closer than `tol`.
pub fn expand_sites(points: &[[f64; 3]], ops: &[SymOp], tol: f64) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for p in points {
        for op in ops {
            let image = op.apply(p).map(wrap_unit);
            if !out.iter().any(|q| wrapped_distance(q, &image) < tol) {
                out.push(image);
            }
        }
    }
    out
}

/// Builds the periodic set described by `doc`.
pub fn to_periodic_set(
    doc: &CrystalDocument,
    expand_symmetry: bool,
    dedup_tol: f64,
) -> Result<PeriodicSet, IngestError> {
    let basis = cell_basis(doc.cell_lengths, doc.cell_angles)?;
    let sites: Vec<[f64; 3]> = doc.sites.iter().map(|s| s.fractional).collect();
    let points = match (&doc.symmetry_ops, expand_symmetry) {
        (Some(ops), true) => {
            let ops = ops
                .iter()
                .map(|s| SymOp::parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            expand_sites(&sites, &ops, dedup_tol)
        }
        _ => sites,
    };
    let motif = Motif::new(points.into_iter().map(|p| p.to_vec()).collect(), 3)?;
    Ok(PeriodicSet::new(basis, motif)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Cif,
    Json,
}

impl InputFormat {
    /// Guesses the format from the file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "cif" => Some(InputFormat::Cif),
            "json" => Some(InputFormat::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadOptions {
    /// Overrides the extension-based guess.
    pub format: Option<InputFormat>,
    pub expand_symmetry: bool,
    pub dedup_tol: f64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            format: None,
            expand_symmetry: true,
            dedup_tol: SYMMETRY_DEDUP_TOL,
        }
    }
}

/// Reads a CIF or JSON file into a periodic set.
pub fn load_file(path: &Path, options: &LoadOptions) -> Result<PeriodicSet, IngestError> {
    let shown = path.display().to_string();
    let format = options
        .format
        .or_else(|| InputFormat::from_path(path))
        .ok_or_else(|| IngestError::UnknownFormat(shown.clone()))?;
    let text = std::fs::read_to_string(path).map_err(|e| IngestError::Io {
        path: shown,
        message: e.to_string(),
    })?;
    match format {
        InputFormat::Json => parse_json_set(&text),
        InputFormat::Cif => {
            let doc = parse_cif(&text)?;
            to_periodic_set(&doc, options.expand_symmetry, options.dedup_tol)
        }
    }
}
