//! Suite dispatch, CSV output and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::{ExperimentConfig, Suite};
use crate::report::{CertificateSummary, Check, FitRecord, SuiteReport};
use crate::ExperimentError;

pub const MANIFEST_SCHEMA: &str = "workbench.manifest/1";
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub code_version: &'static str,
    pub config: ExperimentConfig,
    pub suite: String,
    pub passed: bool,
    /// Every check was vacuous.
    pub noop: bool,
    pub checks: Vec<Check>,
    pub fits: Vec<FitRecord>,
    pub certificates: Vec<CertificateSummary>,
    pub notes: Vec<String>,
    /// CSV files written, relative to the output directory.
    pub outputs: Vec<String>,
    pub error: Option<String>,
    pub exit_code: i32,
    pub wall_clock_ms: u128,
}

pub fn run_suite(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    cfg.validate()?;
    match cfg.suite {
        Suite::Identities => Ok(crate::identities::run_identities(cfg)),
        Suite::Cuspidality => crate::cuspidality::run_cuspidality(cfg),
        Suite::NormEquiv => crate::norm_equiv::run_norm_equiv(cfg),
        Suite::Vanishing => crate::vanishing::run_vanishing(cfg),
        Suite::Stabilize => crate::stabilize::run_stabilize(cfg),
        Suite::OrbitalBound => crate::orbital_bound::run_orbital_bound(cfg),
        Suite::Volumes => crate::volumes::run_volumes(cfg),
        Suite::MonteCarlo => crate::mc::run_mc(cfg),
    }
}

/// Writes via a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ExperimentError> {
    let io = |e: std::io::Error| ExperimentError::Io(format!("{}: {e}", path.display()));
    let name = path.file_name().ok_or_else(|| ExperimentError::Io(format!("{}: no file name", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn manifest_path(cfg: &ExperimentConfig) -> PathBuf {
    cfg.out.join(format!("{}.manifest.json", cfg.suite))
}

fn write_tables(report: &SuiteReport, out: &Path) -> Result<Vec<String>, ExperimentError> {
    let mut names = Vec::new();
    for t in &report.tables {
        let name = format!("{}.csv", t.name);
        write_atomic(&out.join(&name), &t.to_csv()?)?;
        names.push(name);
    }
    Ok(names)
}

/// Runs the configured suite, writes its CSV tables and the manifest, and
/// returns the manifest. The manifest is written whatever the outcome, as
/// long as the output directory can be created.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunManifest, ExperimentError> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out).map_err(|e| ExperimentError::Io(format!("{}: {e}", cfg.out.display())))?;
    let mut manifest = RunManifest {
        schema: MANIFEST_SCHEMA,
        code_version: CODE_VERSION,
        config: cfg.clone(),
        suite: cfg.suite.to_string(),
        passed: false,
        noop: false,
        checks: Vec::new(),
        fits: Vec::new(),
        certificates: Vec::new(),
        notes: Vec::new(),
        outputs: Vec::new(),
        error: None,
        exit_code: 2,
        wall_clock_ms: 0,
    };
    let outcome = run_suite(cfg).and_then(|r| write_tables(&r, &cfg.out).map(|o| (r, o)));
    match outcome {
        Ok((report, outputs)) => {
            manifest.passed = report.passed();
            manifest.noop = report.is_noop();
            manifest.exit_code = if manifest.passed { 0 } else { 1 };
            manifest.outputs = outputs;
            manifest.checks = report.checks;
            manifest.fits = report.fits;
            manifest.certificates = report.certificates;
            manifest.notes = report.notes;
        }
        Err(e) => {
            manifest.exit_code = e.exit_code();
            manifest.error = Some(e.to_string());
        }
    }
    manifest.wall_clock_ms = start.elapsed().as_millis();
    let json = serde_json::to_vec_pretty(&manifest).map_err(|e| ExperimentError::Output(e.to_string()))?;
    write_atomic(&manifest_path(cfg), &json)?;
    Ok(manifest)
}
