//! JSON form of a periodic set:
//!
//! ```json
//! {"dim": 2, "basis": [[1, 0], [0, 1]], "motif_fractional": [[0, 0]]}
//! ```
//!
//! Basis rows are the Cartesian lattice vectors. Numbers are written with
//! 17 significant digits so that a write/parse round trip is bit-exact.

use std::fmt::Write;

use serde::Deserialize;

use crate::error::IngestError;
use crate::geometry::PeriodicSet;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFile {
    dim: usize,
    basis: Vec<Vec<f64>>,
    motif_fractional: Vec<Vec<f64>>,
}

pub fn parse_json_set(text: &str) -> Result<PeriodicSet, IngestError> {
    let file: SetFile =
        serde_json::from_str(text).map_err(|e| IngestError::parse(e.line(), e.to_string()))?;
    let schema = |message: String| IngestError::parse(0, message);
    if file.basis.len() != file.dim {
        return Err(schema(format!(
            "dim is {} but basis has {} rows",
            file.dim,
            file.basis.len()
        )));
    }
    for (what, rows) in [("basis", &file.basis), ("motif_fractional", &file.motif_fractional)] {
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != file.dim) {
            return Err(schema(format!(
                "{what}[{i}] has {} entries, expected {}",
                row.len(),
                file.dim
            )));
        }
    }
    Ok(PeriodicSet::from_parts(file.basis, file.motif_fractional)?)
}

pub fn write_json_set(set: &PeriodicSet) -> String {
    fn rows(out: &mut String, rows: &[Vec<f64>]) {
        out.push('[');
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                write!(out, "{x:.16e}").expect("writing to a String");
            }
            out.push(']');
        }
        out.push(']');
    }
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"dim\": {},", set.dim()).unwrap();
    out.push_str("  \"basis\": ");
    rows(&mut out, set.basis().vectors());
    out.push_str(",\n  \"motif_fractional\": ");
    rows(&mut out, set.motif().points());
    out.push_str("\n}\n");
    out
}
