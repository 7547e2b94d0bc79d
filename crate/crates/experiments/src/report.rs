//! Suite results: named checks with reproducers, fitted bounds, integration
//! certificates and CSV tables.

use local_field::{Cyc, Q};
use serde::Serialize;

use crate::config::Suite;
use crate::ExperimentError;

/// Enough to re-run a single failing case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reproducer {
    pub seed: u64,
    pub index: usize,
    pub detail: String,
}

const KEPT_REPRODUCERS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub reproducers: Vec<Reproducer>,
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), cases: 0, failures: 0, reproducers: Vec::new(), note: None }
    }

    /// A single yes/no expectation.
    pub fn expect(name: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        let mut c = Self::new(name);
        c.cases = 1;
        c.failures = (!ok) as usize;
        c.note = Some(note.into());
        c
    }

    pub fn record(&mut self, ok: bool, reproducer: impl FnOnce() -> Reproducer) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.reproducers.len() < KEPT_REPRODUCERS {
                self.reproducers.push(reproducer());
            }
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// An upper-bounding polynomial fitted to a sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitRecord {
    pub name: String,
    /// What the polynomial is evaluated at, e.g. `1+ov`.
    pub variable: String,
    /// Coefficients of the bound, constant term first, as `p/q`.
    pub coefficients: Vec<String>,
    /// Minimax error of the centred fit before it was shifted up.
    pub minimax_error: String,
    pub points: usize,
    pub violations: usize,
}

/// Aggregate of the exact-integration certificates behind a table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub label: String,
    pub integrals: usize,
    /// Shallowest and deepest certified level pair.
    pub levels: Option<((i64, i64), (i64, i64))>,
    pub leaves: usize,
    pub nonzero_leaves: usize,
    pub verified: bool,
}

impl CertificateSummary {
    pub fn new(label: impl Into<String>) -> Self {
        Self { label: label.into(), verified: true, ..Default::default() }
    }

    pub fn add(&mut self, r: &haar::IntegralResult) {
        self.integrals += 1;
        let Some(c) = &r.certificate else {
            return;
        };
        self.leaves += c.leaves;
        self.nonzero_leaves += c.nonzero_leaves;
        self.verified &= c.verified;
        self.levels = Some(match self.levels {
            None => (c.levels, c.levels),
            Some((lo, hi)) => (lo.min(c.levels), hi.max(c.levels)),
        });
    }
}

/// One CSV output. The header is fixed per table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&'static str]) -> Self {
        Self { name: name.into(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }

    /// RFC 4180 bytes (CRLF line ends, minimal quoting).
    pub fn to_csv(&self) -> Result<Vec<u8>, ExperimentError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| ExperimentError::Output(e.to_string()))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| ExperimentError::Output(e.to_string()))?;
        }
        w.into_inner().map_err(|e| ExperimentError::Output(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub fits: Vec<FitRecord>,
    pub certificates: Vec<CertificateSummary>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: Suite) -> Self {
        Self { suite, checks: Vec::new(), fits: Vec::new(), certificates: Vec::new(), tables: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Nothing was actually checked, e.g. because every range was empty.
    pub fn is_noop(&self) -> bool {
        self.checks.iter().all(|c| c.cases == 0)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn fit(&self, name: &str) -> Option<&FitRecord> {
        self.fits.iter().find(|f| f.name == name)
    }
}

/// `p/q`, also for integers.
pub fn fmt_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn q_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Exact value column: `p/q` for rationals, the cyclotomic expansion otherwise.
pub fn fmt_cyc(c: &Cyc) -> String {
    match c.as_rational() {
        Some(q) => fmt_q(&q),
        None => c.to_string(),
    }
}

/// Float column for a cyclotomic value: the real part, plus the imaginary
/// part when it is not zero.
pub fn cyc_f64(c: &Cyc) -> String {
    let (re, im) = c.to_complex();
    if im.abs() < 1e-12 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}
