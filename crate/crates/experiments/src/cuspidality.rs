//! Exact unipotent integrals of every constructed cuspidal function, group and
//! Lie algebra, for q in {2, 3}.

use cuspidal::{
    build_cuspidal_character, check_cuspidal, check_cuspidal_lie, compatible_central_character, depth_zero_function,
    finite_lie_cuspidal, standard_radicals, CuspidalReport,
};
use gl_group::{GroupElement, Mat};
use haar::ExactOptions;
use local_field::Cyc;

use crate::config::{ExperimentConfig, Suite};
use crate::report::{Check, Reproducer, SuiteReport, Table};
use crate::sampling;
use crate::ExperimentError;

const CONJUGATES: usize = 20;

/// Character indices giving pairwise distinct cuspidal tables.
fn distinct_characters(q: u8) -> Vec<i64> {
    let mut seen: Vec<Vec<Cyc>> = Vec::new();
    let mut out = Vec::new();
    for m in 1..(q as i64 * q as i64 - 1) {
        if let Ok(t) = build_cuspidal_character(q, m) {
            if !seen.contains(&t.values().to_vec()) {
                seen.push(t.values().to_vec());
                out.push(m);
            }
        }
    }
    out
}

fn record(check: &mut Check, table: &mut Table, label: &str, seed: u64, rep: &CuspidalReport) {
    for c in &rep.cases {
        check.record(c.value.is_zero(), || Reproducer {
            seed,
            index: c.sample,
            detail: format!("{label}: radical {} order {:?} gave {}", c.radical, c.order, c.value),
        });
    }
    table.push(vec![
        label.to_string(),
        rep.cases.len().to_string(),
        rep.failures().to_string(),
        rep.nontrivial().to_string(),
    ]);
}

pub fn run_cuspidality(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    let opts = ExactOptions { max_depth: cfg.j_max.max(10), ..ExactOptions::default() };
    let mut report = SuiteReport::new(Suite::Cuspidality);
    let mut group = Check::new("group_unipotent_integrals_vanish");
    let mut lie = Check::new("lie_unipotent_integrals_vanish");
    let mut nontrivial = 0;
    let mut table = Table::new("cuspidality", &["function", "integrals", "nonzero", "nontrivial_zeros"]);
    for q in [2u8, 3] {
        let mut rng = sampling::rng(cfg.seed, q as u64);
        let samples: Vec<GroupElement> = (0..cfg.translates).map(|_| sampling::group_element(&mut rng, q, 2)).collect();
        let lie_samples: Vec<Mat> = (0..cfg.translates).map(|_| sampling::matrix(&mut rng, q, 2)).collect();
        let conj: Vec<GroupElement> = (0..CONJUGATES).map(|_| sampling::group_element(&mut rng, q, 2)).collect();
        let radicals = standard_radicals(q, &conj)?;
        for m in distinct_characters(q) {
            let t = build_cuspidal_character(q, m)?;
            let f = depth_zero_function(&t, compatible_central_character(&t, 2, 1)?)?;
            let rep = check_cuspidal(&f, &samples, &radicals, &opts)?;
            nontrivial += rep.nontrivial();
            record(&mut group, &mut table, &format!("depth_zero q={q} m={m}"), cfg.seed, &rep);
        }
        let f = finite_lie_cuspidal(q)?.inflate();
        let rep = check_cuspidal_lie(&f, &lie_samples, &radicals, &opts)?;
        nontrivial += rep.nontrivial();
        record(&mut lie, &mut table, &format!("lie q={q}"), cfg.seed, &rep);
    }
    report.checks.push(group);
    report.checks.push(lie);
    if cfg.translates > 0 {
        report.checks.push(Check::expect(
            "zeros_are_cancellations",
            nontrivial > 0,
            format!("{nontrivial} integrals vanish with a nonzero integrand"),
        ));
    }
    report.tables.push(table);
    Ok(report)
}
