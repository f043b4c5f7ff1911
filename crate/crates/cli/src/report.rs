use std::io::Write;

use bridgelen::BridgeReport;
use serde::Serialize;

pub const HEADER: [&str; 8] = [
    "id",
    "atoms",
    "beta",
    "r_upper",
    "ratio",
    "basis_size",
    "ms",
    "error",
];

/// One line of the batch table. Failed inputs keep only `id` and `error`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub atoms: Option<usize>,
    pub beta: Option<f64>,
    pub r_upper: Option<f64>,
    pub ratio: Option<f64>,
    pub basis_size: Option<usize>,
    pub elapsed_ms: Option<f64>,
    pub error: Option<String>,
}

impl ReportRow {
    pub fn from_report(id: String, report: &BridgeReport) -> Self {
        ReportRow {
            id,
            atoms: Some(report.atom_count),
            beta: Some(report.beta),
            r_upper: Some(report.r_upper),
            ratio: (report.beta > 0.0).then(|| report.r_upper / report.beta),
            basis_size: Some(report.translational_basis_size),
            elapsed_ms: Some(report.elapsed.as_secs_f64() * 1e3),
            error: None,
        }
    }

    pub fn failed(id: String, error: String) -> Self {
        ReportRow {
            id,
            atoms: None,
            beta: None,
            r_upper: None,
            ratio: None,
            basis_size: None,
            elapsed_ms: None,
            error: Some(error),
        }
    }

    fn fields(&self, precision: usize, timing: bool) -> [String; 8] {
        let real = |x: Option<f64>| x.map(|v| format!("{v:.precision$}")).unwrap_or_default();
        let int = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.id.clone(),
            int(self.atoms),
            real(self.beta),
            real(self.r_upper),
            real(self.ratio),
            int(self.basis_size),
            self.elapsed_ms
                .filter(|_| timing)
                .map(|v| format!("{v:.3}"))
                .unwrap_or_default(),
            self.error.clone().unwrap_or_default(),
        ]
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

pub fn write_csv(
    out: impl Write,
    rows: &[ReportRow],
    precision: usize,
    timing: bool,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields(precision, timing))?;
    }
    w.flush()?;
    Ok(())
}

/// Means over the rows that succeeded, or `None` if none did.
pub fn mean_line(rows: &[ReportRow]) -> Option<String> {
    let ok: Vec<&ReportRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    if ok.is_empty() {
        return None;
    }
    let n = ok.len() as f64;
    let mean = |f: &dyn Fn(&ReportRow) -> f64| ok.iter().map(|r| f(r)).sum::<f64>() / n;
    Some(format!(
        "mean over {} files: atoms {:.1}, beta {:.6}, r_upper {:.6}",
        ok.len(),
        mean(&|r| r.atoms.unwrap_or(0) as f64),
        mean(&|r| r.beta.unwrap_or(0.0)),
        mean(&|r| r.r_upper.unwrap_or(0.0)),
    ))
}
