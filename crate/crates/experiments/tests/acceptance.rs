//! Acceptance run at the default scale (n = 2, l = 2). Prints one line per
//! criterion and fails unless the failing set is exactly `KNOWN_RED`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use experiments::report::SuiteReport;
use experiments::{execute, run_suite, ExperimentConfig, RunMode, Suite};

/// Criteria expected to fail, each with its analysis in the project notes:
/// 9 asks for split torus volume slope <= 2 rank, and the exact count in the
/// adjoint filtration gives 6 per step.
const KNOWN_RED: [u32; 1] = [9];

const IDENTITY_LIMIT: Duration = Duration::from_secs(60);
const VANISHING_LIMIT: Duration = Duration::from_secs(600);
const STABILIZE_LIMIT: Duration = Duration::from_secs(900);
const ROUND_TRIP_CASES: usize = 500;
const RESULTANT_CASES: usize = 500;
const NEWTON_CASES: usize = 200;
const MIN_ZERO_CELLS: usize = 10;
const MC_INTEGRANDS: usize = 20;
const MC_MIN_WITHIN: usize = 19;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg(suite: Suite) -> ExperimentConfig {
    ExperimentConfig { suite, ..ExperimentConfig::default() }
}

fn timed(c: &ExperimentConfig) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(c).unwrap_or_else(|e| panic!("{} failed to run: {e}", c.suite));
    (r, t.elapsed())
}

/// Every named check exists, saw exactly `cases` cases (if given) and passed.
fn exact_checks(r: &SuiteReport, names: &[&str], cases: Option<usize>) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        match r.check(n) {
            Some(c) => {
                ok &= c.passed() && c.cases > 0 && cases.map_or(true, |k| c.cases == k);
                parts.push(format!("{n} {}/{}", c.cases - c.failures, c.cases));
            }
            None => {
                ok = false;
                parts.push(format!("{n} missing"));
            }
        }
    }
    (ok, parts.join(", "))
}

fn failing(r: &SuiteReport) -> String {
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| {
            let why = c.reproducers.first().map(|x| x.detail.clone()).or_else(|| c.note.clone()).unwrap_or_default();
            format!("{} ({why})", c.name)
        })
        .collect();
    if bad.is_empty() {
        "all checks pass".into()
    } else {
        format!("failing: {}", bad.join("; "))
    }
}

fn identities() -> Vec<(u32, Outcome)> {
    let (r, t) = timed(&cfg(Suite::Identities));
    let names =
        ["crt_round_trip", "modinv_contract", "companion_section_round_trip", "conjugator_round_trip", "xi_round_trip"];
    let (ok1, d1) = exact_checks(&r, &names, Some(ROUND_TRIP_CASES));
    let (ok2, d2) = exact_checks(&r, &["resultant_norm_identity"], Some(RESULTANT_CASES));
    let (ok3, d3) = exact_checks(&r, &["newton_root_norms", "quadratic_delta_identity"], Some(NEWTON_CASES));
    let (ok5, d5) = exact_checks(&r, &["iwahori_factorization", "conjugation_containment", "contraction"], None);
    vec![
        (1, outcome(ok1 && t <= IDENTITY_LIMIT, format!("{d1}; whole suite {:.1?} (limit {IDENTITY_LIMIT:?})", t))),
        (2, outcome(ok2, d2)),
        (3, outcome(ok3, d3)),
        (5, outcome(ok5, d5)),
    ]
}

fn cuspidality() -> Outcome {
    let (r, _) = timed(&cfg(Suite::Cuspidality));
    let (ok, d) = exact_checks(&r, &["group_unipotent_integrals_vanish", "lie_unipotent_integrals_vanish"], None);
    outcome(ok && r.passed(), d)
}

fn vanishing(cache: &Path) -> Outcome {
    let c = ExperimentConfig { cache: Some(cache.to_path_buf()), ..cfg(Suite::Vanishing) };
    let (r, t) = timed(&c);
    let zero_cells = r.check("nontrivial_zero_cells").and_then(|c| c.note.clone()).unwrap_or_default();
    let tail = r.check("two_strata_beyond_last_nonzero_vanish").is_some_and(|c| c.passed() && c.cases > 0);
    let enough = r.table("vanishing").is_some_and(|tab| {
        tab.rows.iter().filter(|row| row[5] == "0/1" && row[8] != "0").count() >= MIN_ZERO_CELLS
    });
    outcome(
        r.passed() && tail && enough && t <= VANISHING_LIMIT,
        format!("{}; {zero_cells}; {:.1?} (limit {VANISHING_LIMIT:?})", failing(&r), t),
    )
}

fn stabilize(cache: &Path) -> Outcome {
    let c = ExperimentConfig { cache: Some(cache.to_path_buf()), lie: true, ..cfg(Suite::Stabilize) };
    let (r, t) = timed(&c);
    let fit = r.fit("i0_affine_in_ov").map(|f| format!("i0 <= {} + {} ov", f.coefficients[0], f.coefficients[1]));
    let (ok, d) = exact_checks(&r, &["group_stabilizes", "lie_stabilizes", "i0_affine_fit"], None);
    outcome(
        ok && r.passed() && fit.is_some() && t <= STABILIZE_LIMIT,
        format!("{d}; {}; {:.1?} (limit {STABILIZE_LIMIT:?})", fit.unwrap_or_default(), t),
    )
}

fn orbital_bound(out: &Path, cache: &Path) -> Outcome {
    let c = ExperimentConfig { out: out.to_path_buf(), cache: Some(cache.to_path_buf()), ..cfg(Suite::OrbitalBound) };
    let m = execute(&c).expect("manifest written");
    let text = fs::read_to_string(experiments::run::manifest_path(&c)).expect("manifest readable");
    let json: serde_json::Value = serde_json::from_str(&text).expect("manifest is json");
    let fits = json["fits"].as_array().map(|f| f.len()).unwrap_or(0);
    let reported = ["max_ratio_in_ov_deg2", "ratio_in_i_plus_ov_deg2"]
        .iter()
        .all(|n| json["fits"].as_array().is_some_and(|f| f.iter().any(|x| x["name"] == *n && x["coefficients"].is_array())));
    let hard = m.checks.iter().find(|c| c.name == "no_hard_violations").is_some_and(|c| c.passed() && c.cases > 0);
    outcome(m.passed && hard && reported, format!("{fits} fits in the manifest; exit code {}", m.exit_code))
}

fn volumes() -> Outcome {
    let (r, _) = timed(&cfg(Suite::Volumes));
    outcome(r.passed(), failing(&r))
}

fn csv_bytes(c: &ExperimentConfig) -> Vec<Vec<u8>> {
    let r = run_suite(c).unwrap_or_else(|e| panic!("{}: {e}", c.suite));
    r.tables.iter().map(|t| t.to_csv().expect("csv")).collect()
}

fn determinism(scratch: &Path) -> Outcome {
    let runs = [
        ExperimentConfig { samples: 100, ..cfg(Suite::Identities) },
        cfg(Suite::NormEquiv),
        ExperimentConfig { k_max: 1, ..cfg(Suite::Vanishing) },
        ExperimentConfig { i_max: 2, k_max: 1, ..cfg(Suite::Stabilize) },
        cfg(Suite::Volumes),
        ExperimentConfig { mc_draws: 500, ..cfg(Suite::MonteCarlo) },
    ];
    let mut same = Vec::new();
    for c in &runs {
        same.push((c.suite, csv_bytes(c) == csv_bytes(c)));
    }
    // miss fills an empty cache, hit reads it back
    let cache = scratch.join("cache");
    let base = ExperimentConfig { i_max: 3, k_max: 1, ..cfg(Suite::Stabilize) };
    let none = csv_bytes(&base);
    let with = ExperimentConfig { cache: Some(cache.clone()), ..base.clone() };
    let miss = csv_bytes(&with);
    let filled = fs::read_dir(&cache).map(|d| d.count()).unwrap_or(0);
    let hit = csv_bytes(&with);
    let cache_ok = filled > 0 && miss == hit && miss == none;
    let rerun_ok = same.iter().all(|s| s.1);
    let rerun: Vec<String> = same.iter().map(|(s, ok)| format!("{s} {}", if *ok { "same" } else { "differs" })).collect();
    outcome(
        rerun_ok && cache_ok,
        format!("reruns: {}; cache miss/hit/none agree: {cache_ok} ({filled} cache files)", rerun.join(", ")),
    )
}

fn monte_carlo() -> Outcome {
    let (r, _) = timed(&ExperimentConfig { mode: RunMode::Exact, ..cfg(Suite::MonteCarlo) });
    let rows = r.table("mc").map(|t| t.rows.clone()).unwrap_or_default();
    let within = rows.iter().filter(|row| row[9] == "true").count();
    outcome(
        rows.len() == MC_INTEGRANDS && within >= MC_MIN_WITHIN,
        format!("{within} of {} within 4 standard errors (need {MC_MIN_WITHIN})", rows.len()),
    )
}

fn main() {
    let scratch = tempfile::tempdir().expect("temp dir");
    let cache = scratch.path().join("shared-cache");
    let mut results: Vec<(u32, Outcome)> = identities();
    results.push((4, cuspidality()));
    results.push((6, vanishing(&cache)));
    results.push((7, stabilize(&cache)));
    results.push((8, orbital_bound(&scratch.path().join("out"), &cache)));
    results.push((9, volumes()));
    results.push((10, determinism(scratch.path())));
    results.push((11, monte_carlo()));
    results.sort_by_key(|r| r.0);

    let mut red = BTreeSet::new();
    for (n, o) in &results {
        println!("criterion {n:>2}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            red.insert(*n);
        }
    }
    let known: BTreeSet<u32> = KNOWN_RED.into_iter().collect();
    println!("known red: {known:?}; observed red: {red:?}");
    if red != known {
        eprintln!("acceptance: failing criteria differ from the known set");
        std::process::exit(1);
    }
}
