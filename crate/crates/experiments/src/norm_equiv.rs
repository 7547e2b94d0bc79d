//! Empirical equivalence of the paired norms on elliptic pairs, unit pairs
//! and commuting regular semisimple pairs, stratum by stratum.

use norm_zoo::samplers::{CommutingSampler, GroupSampler, PairKind, PairSampler};
use norm_zoo::{fit_equivalence, EquivalenceReport, Exec, FitConfig, NormError, Sampler};

use crate::config::{ExperimentConfig, Suite};
use crate::report::{fmt_q, q_f64, Check, SuiteReport, Table};
use crate::ExperimentError;

/// Valuation spreads of the reported strata, as fractions of the configured
/// precision. Only the full spread is held to the stability check: below it
/// the +1 in log n_A / (1 + log n_B) still moves the fit by more than 10%.
pub const STRATA: [(i64, i64); 3] = [(1, 4), (1, 2), (1, 1)];
/// Sample size of the instability control.
pub const SHRUNKEN: usize = 10;

struct Domain {
    name: &'static str,
    sampler: Box<dyn Sampler>,
    norms: (&'static str, &'static str),
}

fn domains(p: u8) -> Vec<Domain> {
    vec![
        Domain {
            name: "S^el",
            sampler: Box::new(PairSampler { p, k: 2, kind: PairKind::Elliptic }),
            norms: ("S^el'", "S^el"),
        },
        Domain { name: "S^x", sampler: Box::new(PairSampler { p, k: 2, kind: PairKind::Units }), norms: ("S^x", "S^x'") },
        Domain { name: "Com^rss", sampler: Box::new(CommutingSampler { p, n: 2 }), norms: ("Com^rss'", "Com^rss") },
    ]
}

const HEADER: [&str; 13] = [
    "domain",
    "norm_a",
    "norm_b",
    "ov_stratum",
    "trials",
    "c_ab",
    "c_ab_f64",
    "c_ba",
    "c_ba_f64",
    "witness_ab",
    "witness_ba",
    "stable",
    "status",
];

fn row(domain: &str, norms: (&str, &str), spread: i64, trials: usize, res: &Result<EquivalenceReport, NormError>) -> Vec<String> {
    let mut r = vec![domain.to_string(), norms.0.to_string(), norms.1.to_string(), spread.to_string(), trials.to_string()];
    match res {
        Ok(rep) => r.extend([
            fmt_q(&rep.c_ab()),
            q_f64(&rep.c_ab()).to_string(),
            fmt_q(&rep.c_ba()),
            q_f64(&rep.c_ba()).to_string(),
            rep.base.witness_ab.to_string(),
            rep.base.witness_ba.to_string(),
            rep.stable.to_string(),
            "ok".to_string(),
        ]),
        Err(e) => {
            r.extend(vec![String::new(); 6]);
            r.push("false".into());
            r.push(e.to_string());
        }
    }
    r
}

pub fn run_norm_equiv(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    let p = cfg.ell;
    let mut report = SuiteReport::new(Suite::NormEquiv);
    let mut table = Table::new("norm_equiv", &HEADER);
    let fit_cfg = |trials, spread| FitConfig { trials, seed: cfg.seed, spread, strata: spread as usize, exec: Exec::Auto };
    let mut narrow_unstable = 0;
    for d in domains(p) {
        let mut stable = Check::new(format!("{}_stable", d.name));
        for (num, den) in STRATA {
            let spread = (cfg.precision * num / den).max(1);
            let res = fit_equivalence(d.sampler.as_ref(), d.norms.0, d.norms.1, &fit_cfg(cfg.samples, spread));
            if num == den {
                stable.record(res.as_ref().is_ok_and(|r| r.stable), || crate::report::Reproducer {
                    seed: cfg.seed,
                    index: spread as usize,
                    detail: match &res {
                        Ok(r) => format!("stratum {spread}: c_ab {} -> {}, c_ba {} -> {}", r.base.c_ab, r.doubled.c_ab, r.base.c_ba, r.doubled.c_ba),
                        Err(e) => format!("stratum {spread}: {e}"),
                    },
                });
            } else if !res.as_ref().is_ok_and(|r| r.stable) {
                narrow_unstable += 1;
            }
            table.push(row(d.name, d.norms, spread, cfg.samples, &res));
        }
        report.checks.push(stable);
    }

    report.notes.push(format!("{narrow_unstable} of 6 narrower strata flagged unstable"));

    // identical norms fit to exactly (1, 1)
    let control = fit_equivalence(&GroupSampler { p, n: 2 }, "G", "G", &fit_cfg(cfg.samples, cfg.precision));
    table.push(row("control", ("G", "G"), cfg.precision, cfg.samples, &control));
    let one = local_field::Q::from_integer(1);
    report.checks.push(Check::expect(
        "identical_norm_control",
        control.as_ref().is_ok_and(|r| r.c_ab() == one && r.c_ba() == one),
        "G against itself",
    ));

    // a tiny sample does not see the extremes, so doubling the spread moves the fit
    let mut unstable = 0;
    for d in domains(p) {
        let res = fit_equivalence(d.sampler.as_ref(), d.norms.0, d.norms.1, &fit_cfg(SHRUNKEN, cfg.precision));
        unstable += res.as_ref().map_or(true, |r| !r.stable) as usize;
        table.push(row(&format!("{}_shrunken", d.name), d.norms, cfg.precision, SHRUNKEN, &res));
    }
    report.notes.push(format!("{unstable} of 3 domains flagged unstable with {SHRUNKEN} samples"));
    report.tables.push(table);
    Ok(report)
}
