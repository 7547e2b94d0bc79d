//! |A_i(m)(x)| against Omega(|m|)(x) on the elliptic families, with
//! degree <= 2 upper bounds for the ratio in ov and in i + ov.

use gl_group::GroupElement;
use haar::tree::fixed_vertices;
use haar::{adjoint_ball_volume, orbital_integral, ExactOptions, TestFunction};
use local_field::{Cyc, Q};

use crate::config::{ExperimentConfig, RunMode, Suite};
use crate::families::{scan_points, Family};
use crate::fit::{eval_poly, upper_bound_fit};
use crate::report::{fmt_q, q_f64, CertificateSummary, Check, Reproducer, SuiteReport, Table};
use crate::stabilize::{profiles, scan_depth_zero};
use crate::ExperimentError;

const HEADER: [&str; 10] =
    ["family", "k", "ov_grss", "i", "abs_a_i", "omega_abs_m", "ratio", "ratio_f64", "hard_violation", "status"];

/// Largest |m| on the residue table.
fn sup_abs(m: &cuspidal::DepthZeroFunction) -> Q {
    m.table.values().iter().filter_map(Cyc::abs_rational).max().unwrap_or_else(|| Q::from_integer(0))
}

/// Some vertex fixed by x carries a nonzero value of m.
fn orbit_meets_support(m: &dyn TestFunction, x: &GroupElement) -> bool {
    fixed_vertices(x.matrix(), 1 << 16).is_some_and(|vs| {
        vs.iter().any(|v| {
            let h = v.matrix();
            !m.eval(&x.matrix().conjugate_by(&h.inverse())).is_zero()
        })
    })
}

pub fn run_orbital_bound(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    let p = cfg.ell;
    if cfg.mode == RunMode::Mc {
        return Err(ExperimentError::Unsupported("orbital_bound needs exact averages"));
    }
    let opts = ExactOptions { max_depth: cfg.j_max, ..ExactOptions::default() };
    let m = scan_depth_zero(p)?;
    let points = scan_points(&Family::elliptic(), p, cfg.k_max)?;
    let profs = profiles(&m, &points, cfg, &opts)?;
    let sup = sup_abs(&m);

    let mut report = SuiteReport::new(Suite::OrbitalBound);
    let mut table = Table::new("orbital_bound", &HEADER);
    let mut hard = Check::new("no_hard_violations");
    let mut positivity = Check::new("omega_positive_iff_orbit_meets_support");
    let mut crude = Check::new("crude_volume_bound");
    let mut cert = CertificateSummary::new("orbital integrals");
    let mut by_ov: Vec<(Q, Q)> = Vec::new();
    let mut by_i_ov: Vec<(Q, Q)> = Vec::new();
    let mut inexact = 0;

    for (n, pr) in profs.iter().enumerate() {
        let pt = &pr.point;
        let om = orbital_integral(&m, &pt.x, true, &opts)?;
        cert.add(&om);
        let omega = om.value().as_rational().ok_or(ExperimentError::Unsupported("irrational orbital integral"))?;
        let zero = Q::from_integer(0);
        let meets = orbit_meets_support(&m, &pt.x);
        positivity.record((omega > zero) == meets, || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("{} k = {}: omega {omega}, orbit meets support {meets}", pt.family.label(), pt.k),
        });
        let mut best: Option<Q> = None;
        for (i, v) in pr.values.iter().enumerate() {
            let a = v.value();
            let abs = a.abs_rational();
            let violation = omega == zero && !a.is_zero();
            hard.record(!violation, || Reproducer {
                seed: cfg.seed,
                index: n,
                detail: format!("{} k = {} i = {i}: A = {a} with omega = 0", pt.family.label(), pt.k),
            });
            let limit = adjoint_ball_volume(p, i as i64) * sup;
            crude.record(abs.map_or(a.abs_f64() <= q_f64(&limit) + 1e-9, |x| x <= limit), || Reproducer {
                seed: cfg.seed,
                index: n,
                detail: format!("i = {i}: |A| = {a} above {limit}"),
            });
            let (ratio, status) = match (abs, omega > zero) {
                (_, false) => (None, "omega_zero"),
                (None, true) => {
                    inexact += 1;
                    (None, "irrational_abs")
                }
                (Some(x), true) => (Some(x / omega), "ok"),
            };
            if let Some(r) = ratio {
                best = Some(best.map_or(r, |b| b.max(r)));
                by_i_ov.push((Q::from_integer(1 + i as i128 + pt.ov as i128), r));
            }
            table.push(vec![
                pt.family.label().into(),
                pt.k.to_string(),
                pt.ov.to_string(),
                i.to_string(),
                abs.map(|x| fmt_q(&x)).unwrap_or_else(|| format!("{}", a.abs_f64())),
                fmt_q(&omega),
                ratio.map(|r| fmt_q(&r)).unwrap_or_default(),
                ratio.map(|r| q_f64(&r).to_string()).unwrap_or_default(),
                violation.to_string(),
                status.into(),
            ]);
        }
        if let Some(b) = best {
            by_ov.push((Q::from_integer(1 + pt.ov as i128), b));
        }
    }
    report.checks.extend([hard, positivity, crude]);
    report.certificates.push(cert);
    if inexact > 0 {
        report.notes.push(format!("{inexact} cells skipped: |A_i| is not rational"));
    }

    for (name, var, pts) in [("max_ratio_in_ov", "1+ov", &by_ov), ("ratio_in_i_plus_ov", "1+i+ov", &by_i_ov)] {
        for degree in [1, 2] {
            let Some((bound, rec)) = upper_bound_fit(&format!("{name}_deg{degree}"), var, pts, degree) else {
                continue;
            };
            if degree == 2 {
                report.checks.push(Check::expect(
                    format!("{name}_bounded"),
                    rec.violations == 0 && !pts.is_empty(),
                    format!("{} points, bound {:?}", rec.points, rec.coefficients),
                ));
                report.notes.push(holdout_note(name, pts, degree, &bound));
            }
            report.fits.push(rec);
        }
    }
    report.tables.push(table);
    Ok(report)
}

/// Refits on the lower half of the abscissae and counts how many points of
/// the upper half exceed that bound. Informational only.
fn holdout_note(name: &str, pts: &[(Q, Q)], degree: usize, full: &[Q]) -> String {
    let mut xs: Vec<Q> = pts.iter().map(|p| p.0).collect();
    xs.sort();
    xs.dedup();
    let Some(&cut) = xs.get(xs.len() / 2) else {
        return format!("{name}: empty sample");
    };
    let train: Vec<(Q, Q)> = pts.iter().copied().filter(|p| p.0 < cut).collect();
    let test: Vec<&(Q, Q)> = pts.iter().filter(|p| p.0 >= cut).collect();
    match upper_bound_fit(name, "", &train, degree) {
        Some((b, _)) => {
            let over = test.iter().filter(|p| p.1 > eval_poly(&b, p.0)).count();
            format!(
                "{name}: bound fitted below {cut} is exceeded by {over} of {} later points (full-sample bound at the largest abscissa: {})",
                test.len(),
                xs.last().map(|&x| fmt_q(&eval_poly(full, x))).unwrap_or_default()
            )
        }
        None => format!("{name}: too few points below {cut} to refit"),
    }
}
