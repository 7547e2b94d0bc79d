//! A_i(m)(x) for i = 0..i_max along the elliptic families, the index i0 from
//! which the values are constant, and an affine bound for i0 in terms of ov.

use cuspidal::{build_cuspidal_character, compatible_central_character, depth_zero_function, finite_lie_cuspidal, DepthZeroFunction};
use gl_group::Mat;
use haar::tree::fixed_vertices;
use haar::{adjoint_ball_volume, averaging_mc, averaging_profile, ExactOptions, IntegralResult, TestFunction};
use local_field::{FieldElement, Q};
use norm_zoo::ordered_map;

use crate::config::{ExperimentConfig, RunMode, Suite};
use crate::families::{scan_points, Family, ScanPoint};
use crate::fit::upper_bound_fit;
use crate::report::{cyc_f64, fmt_cyc, CertificateSummary, Check, Reproducer, SuiteReport, Table};
use crate::ExperimentError;

/// The depth-zero function of every scan: the cuspidal of index 1 for
/// q = l, trivial on t.
pub fn scan_depth_zero(p: u8) -> Result<DepthZeroFunction, ExperimentError> {
    let t = build_cuspidal_character(p, 1)?;
    Ok(depth_zero_function(&t, compatible_central_character(&t, 1, 0)?)?)
}

/// Profile of one family point, exact or Monte Carlo.
#[derive(Clone, Debug)]
pub struct Profile {
    pub point: ScanPoint,
    pub values: Vec<IntegralResult>,
}

pub fn profiles(
    m: &dyn TestFunction,
    points: &[ScanPoint],
    cfg: &ExperimentConfig,
    opts: &ExactOptions,
) -> Result<Vec<Profile>, ExperimentError> {
    let cache = cfg.cache.as_deref();
    let mut out = Vec::new();
    for (n, pt) in points.iter().enumerate() {
        let values = match cfg.mode {
            RunMode::Exact => averaging_profile(m, pt.x.matrix(), cfg.i_max, opts, cache)?,
            RunMode::Mc => {
                let is: Vec<i64> = (0..=cfg.i_max).collect();
                let seed = cfg.seed.wrapping_add(1000 * n as u64);
                ordered_map(&is, opts.exec, |&i| averaging_mc(m, pt.x.matrix(), i, cfg.mc_draws, seed + i as u64, cache))
                    .into_iter()
                    .collect::<Result<_, _>>()?
            }
        };
        out.push(Profile { point: pt.clone(), values });
    }
    Ok(out)
}

fn same(a: &IntegralResult, b: &IntegralResult) -> bool {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => x == y,
        _ => {
            let se = a.stderr.unwrap_or(0.0).hypot(b.stderr.unwrap_or(0.0));
            let d = (a.estimate.0 - b.estimate.0).hypot(a.estimate.1 - b.estimate.1);
            d <= 4.0 * se + 1e-9
        }
    }
}

/// First index from which every later value equals it.
pub fn detect_i0(values: &[IntegralResult]) -> usize {
    let last = values.len() - 1;
    (0..=last).find(|&i| (i..last).all(|j| same(&values[j], &values[j + 1]))).unwrap_or(last)
}

/// ceil(D / 3) for D the largest distance of a vertex fixed by x: beyond it
/// every shell contributes zero to A_i(m)(x) for m supported on Z K_0.
fn support_radius(x: &Mat) -> Option<i64> {
    fixed_vertices(x, 1 << 16).map(|f| (f.iter().map(|v| v.distance()).max().unwrap_or(0) + 2) / 3)
}

const HEADER: [&str; 10] = ["variant", "family", "k", "ov_grss", "i", "a_i", "a_i_f64", "stderr", "i0", "i_support"];

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    opts: ExactOptions,
}

fn scan(
    ctx: &Ctx,
    label: &str,
    m: &dyn TestFunction,
    points: &[ScanPoint],
    with_support: bool,
    report: &mut SuiteReport,
    table: &mut Table,
) -> Result<Vec<(Q, Q)>, ExperimentError> {
    let (cfg, opts) = (ctx.cfg, &ctx.opts);
    let profs = profiles(m, points, cfg, opts)?;
    let mut cert = CertificateSummary::new(format!("{label} averages"));
    let mut stable = Check::new(format!("{label}_stabilizes"));
    let mut support = Check::new(format!("{label}_i0_within_support_radius"));
    let mut fit_pts = Vec::new();
    for (n, pr) in profs.iter().enumerate() {
        let i0 = detect_i0(&pr.values) as i64;
        let isup = if with_support { support_radius(pr.point.x.matrix()) } else { None };
        // a repeat inside the window, or a support radius inside it
        let certified = i0 < cfg.i_max || isup.is_some_and(|s| s <= cfg.i_max);
        stable.record(certified, || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("{} k = {}: no repeat up to i = {}", pr.point.family.label(), pr.point.k, cfg.i_max),
        });
        if let (Some(s), RunMode::Exact) = (isup, cfg.mode) {
            support.record(i0 <= s, || Reproducer {
                seed: cfg.seed,
                index: n,
                detail: format!("{} k = {}: i0 = {i0} > {s}", pr.point.family.label(), pr.point.k),
            });
        }
        fit_pts.push((Q::from_integer(pr.point.ov as i128), Q::from_integer(i0 as i128)));
        for (i, v) in pr.values.iter().enumerate() {
            cert.add(v);
            let (exact, float) = match &v.exact {
                Some(c) => (fmt_cyc(c), cyc_f64(c)),
                None => (String::new(), format!("{}", v.estimate.0)),
            };
            table.push(vec![
                label.to_string(),
                pr.point.family.label().to_string(),
                pr.point.k.to_string(),
                pr.point.ov.to_string(),
                i.to_string(),
                exact,
                float,
                v.stderr.map(|s| s.to_string()).unwrap_or_default(),
                i0.to_string(),
                isup.map(|s| s.to_string()).unwrap_or_default(),
            ]);
        }
    }
    report.checks.push(stable);
    if support.cases > 0 {
        report.checks.push(support);
    }
    if cfg.mode == RunMode::Exact {
        report.certificates.push(cert);
    }
    Ok(fit_pts)
}

/// A_i(m)(z) = m(z) mu((G^ad)_i) for central z.
fn central_control(m: &dyn TestFunction, cfg: &ExperimentConfig, opts: &ExactOptions) -> Result<Check, ExperimentError> {
    let p = m.prime();
    let mut c = Check::new("central_control");
    for s in 0..2 {
        let z = Mat::scalar(2, &FieldElement::t_pow(p, s));
        let prof = averaging_profile(m, &z, cfg.i_max, opts, cfg.cache.as_deref())?;
        let mz = m.eval(&z);
        for (i, v) in prof.iter().enumerate() {
            let expect = mz.scale(adjoint_ball_volume(p, i as i64));
            c.record(v.value() == &expect, || Reproducer {
                seed: cfg.seed,
                index: i,
                detail: format!("z = t^{s}: A_{i} = {}, expected {expect}", v.value()),
            });
        }
    }
    Ok(c)
}

pub fn run_stabilize(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    let p = cfg.ell;
    let opts = ExactOptions { max_depth: cfg.j_max, ..ExactOptions::default() };
    let mut report = SuiteReport::new(Suite::Stabilize);
    let mut table = Table::new("stabilize", &HEADER);
    let points = scan_points(&Family::elliptic(), p, cfg.k_max)?;
    let m = scan_depth_zero(p)?;
    let ctx = Ctx { cfg, opts };
    let fit_pts = scan(&ctx, "group", &m, &points, true, &mut report, &mut table)?;
    if cfg.mode == RunMode::Exact {
        report.checks.push(central_control(&m, cfg, &opts)?);
    }
    if let Some((_, rec)) = upper_bound_fit("i0_affine_in_ov", "ov", &fit_pts, 1) {
        report.checks.push(Check::expect(
            "i0_affine_fit",
            rec.violations == 0,
            format!("i0 <= {} + {} ov", rec.coefficients[0], rec.coefficients[1]),
        ));
        report.fits.push(rec);
    }
    if cfg.lie {
        if p > 3 {
            return Err(ExperimentError::from(cuspidal::CuspidalError::UnsupportedPrime(p)));
        }
        let f = finite_lie_cuspidal(p)?.inflate();
        let lie_pts = scan(&ctx, "lie", &f, &points, false, &mut report, &mut table)?;
        if let Some((_, rec)) = upper_bound_fit("lie_i0_affine_in_ov", "ov", &lie_pts, 1) {
            report.fits.push(rec);
        }
        if cfg.mode == RunMode::Exact {
            let mut c = central_control(&f, cfg, &opts)?;
            c.name = "lie_central_control".into();
            report.checks.push(c);
        }
    }
    report.tables.push(table);
    let trivial = points.iter().filter(|pt| pt.x.det().val() % 2 != 0).count();
    report.notes.push(format!(
        "{trivial} points have odd determinant valuation; their orbits miss Z K_0, so every A_i is 0"
    ));
    Ok(report)
}
