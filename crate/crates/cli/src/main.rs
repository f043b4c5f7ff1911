mod report;

use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bridgelen::ingest::{load_file, InputFormat, LoadOptions, SYMMETRY_DEDUP_TOL};
use bridgelen::{
    bridge_length, oracle_bridge_length, required_half_width, BridgeError, BridgeReport,
    IngestError, OracleError, PeriodicSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use report::{mean_line, write_csv, ReportRow};

/// Exact bridge length of periodic point sets.
#[derive(Parser)]
#[command(name = "bridgelen", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bridge length of one CIF or JSON file.
    Compute {
        file: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute bridge lengths for every CIF or JSON file in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Print JSON instead of CSV.
    #[arg(long)]
    json: bool,
    /// Recompute with the brute-force oracle and compare.
    #[arg(long)]
    verify: bool,
    /// Keep the CIF atom sites as listed, without applying symmetry operations.
    #[arg(long)]
    no_symmetry: bool,
    /// Fractional distance below which symmetry images are merged.
    #[arg(long, default_value_t = SYMMETRY_DEDUP_TOL)]
    tol: f64,
    /// Decimals printed for real-valued columns.
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Input format; guessed from the extension by default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Leave the `ms` column empty so that output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Cif,
    Json,
}

impl CommonArgs {
    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            format: self.format.map(|f| match f {
                Format::Cif => InputFormat::Cif,
                Format::Json => InputFormat::Json,
            }),
            expand_symmetry: !self.no_symmetry,
            dedup_tol: self.tol,
        }
    }
}

const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug)]
enum Failure {
    Ingest(IngestError),
    Bridge(BridgeError),
    Oracle(OracleError),
    Mismatch { beta: f64, oracle: f64 },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Ingest(e) if e.is_degenerate_cell() => 2,
            Failure::Ingest(_) | Failure::Bridge(_) => 1,
            Failure::Mismatch { .. } => 3,
            Failure::Oracle(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Ingest(e) => write!(f, "{e}"),
            Failure::Bridge(e) => write!(f, "{e}"),
            Failure::Oracle(e) => write!(f, "oracle: {e}"),
            Failure::Mismatch { beta, oracle } => {
                write!(f, "verify failed: beta {beta:e} but oracle gives {oracle:e}")
            }
        }
    }
}

struct Outcome {
    report: BridgeReport,
    oracle: Option<f64>,
}

fn run_one(path: &Path, args: &CommonArgs) -> Result<Outcome, Failure> {
    let set = load_file(path, &args.load_options()).map_err(Failure::Ingest)?;
    let report = bridge_length(&set, Default::default()).map_err(Failure::Bridge)?;
    let oracle = if args.verify {
        Some(verify(&set, report.beta)?)
    } else {
        None
    };
    Ok(Outcome { report, oracle })
}

fn verify(set: &PeriodicSet, beta: f64) -> Result<f64, Failure> {
    let oracle = oracle_bridge_length(set, required_half_width(set)).map_err(Failure::Oracle)?;
    if (oracle - beta).abs() > VERIFY_TOL * beta.abs().max(oracle.abs()) {
        return Err(Failure::Mismatch { beta, oracle });
    }
    Ok(oracle)
}

fn file_id(path: &Path) -> String {
    path.file_stem()
        .or(path.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Serialize)]
struct ComputeJson<'a> {
    id: String,
    report: &'a BridgeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_beta: Option<f64>,
}

fn compute(file: &Path, args: &CommonArgs) -> ExitCode {
    let outcome = match run_one(file, args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(e.exit_code());
        }
    };
    let id = file_id(file);
    let printed = if args.json {
        let doc = ComputeJson {
            id,
            report: &outcome.report,
            oracle_beta: outcome.oracle,
        };
        serde_json::to_writer_pretty(io::stdout().lock(), &doc)
            .map_err(io::Error::from)
            .map(|()| println!())
    } else {
        let row = ReportRow::from_report(id, &outcome.report);
        write_csv(io::stdout().lock(), &[row], args.precision, !args.no_timing)
            .map_err(io::Error::from)
    };
    if let Err(e) = printed {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    if let Some(oracle) = outcome.oracle {
        eprintln!("verify: oracle agrees ({oracle:.*})", args.precision);
    }
    ExitCode::SUCCESS
}

fn list_inputs(dir: &Path, format: Option<Format>) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let hidden = path
            .file_name()
            .is_some_and(|n| n.to_string_lossy().starts_with('.'));
        if !path.is_file() || hidden {
            continue;
        }
        if format.is_some() || InputFormat::from_path(&path).is_some() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn batch(dir: &Path, args: &CommonArgs, jobs: Option<usize>) -> ExitCode {
    let files = match list_inputs(dir, args.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    };
    if files.is_empty() {
        eprintln!("error: {}: no .cif or .json files", dir.display());
        return ExitCode::from(1);
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    let mut rows: Vec<ReportRow> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let id = file_id(path);
                match run_one(path, args) {
                    Ok(o) => ReportRow::from_report(id, &o.report),
                    Err(e) => ReportRow::failed(id, e.to_string()),
                }
            })
            .collect()
    });
    rows.sort_by(|a, b| a.id.cmp(&b.id));

    let printed = if args.json {
        let rows: Vec<ReportRow> = if args.no_timing {
            rows.iter().cloned().map(ReportRow::without_timing).collect()
        } else {
            rows.clone()
        };
        serde_json::to_writer_pretty(io::stdout().lock(), &rows)
            .map_err(io::Error::from)
            .map(|()| println!())
    } else {
        write_csv(io::stdout().lock(), &rows, args.precision, !args.no_timing)
            .map_err(io::Error::from)
    };
    if let Err(e) = printed {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    if let Some(line) = mean_line(&rows) {
        eprintln!("{line}");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Compute { file, common } => compute(file, common),
        Command::Batch { dir, common, jobs } => batch(dir, common, *jobs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bridgelen::GeometryError;

    #[test]
    fn exit_codes() {
        let parse = Failure::Ingest(IngestError::MissingSites);
        let flat = Failure::Ingest(IngestError::Geometry(GeometryError::DegenerateCell {
            volume: 0.0,
        }));
        let mismatch = Failure::Mismatch {
            beta: 1.0,
            oracle: 2.0,
        };
        let inconclusive = Failure::Oracle(OracleError::Inconclusive {
            cells: 11,
            r_upper: 1.0,
        });
        let codes: Vec<u8> = [parse, flat, mismatch, inconclusive]
            .iter()
            .map(Failure::exit_code)
            .collect();
        assert_eq!(codes, [1, 2, 3, 4]);
    }
}
