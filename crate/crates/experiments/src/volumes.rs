//! Centralizer volumes mu(G_x^ad cap (G^ad)_i) along the scan families, an
//! affine bound alpha_vol(i + ov), and the largest conjugate ov over the
//! adjoint ball for the pushforward bound.

use gl_group::{ov_g, GroupElement};
use haar::centralizer::unit_coset_representatives;
use haar::centralizer_volume;
use haar::tree::ball;
use local_field::Q;

use crate::config::{ExperimentConfig, RunMode, Suite};
use crate::families::{scan_points, Family, ScanPoint};
use crate::fit::upper_bound_fit;
use crate::report::{fmt_q, q_f64, Check, Reproducer, SuiteReport, Table};
use crate::ExperimentError;

/// Rank of the split torus of PGL_2.
pub const SPLIT_RANK: i64 = 1;

const HEADER: [&str; 8] = ["family", "k", "ov_grss", "i", "volume", "volume_f64", "push_max_ov", "compact_total"];

/// mu of the whole compact centralizer G_x^ad for elliptic x.
fn compact_total(x: &GroupElement) -> Result<Q, ExperimentError> {
    let (o, reps) = unit_coset_representatives(x.matrix())?;
    Ok(Q::from_integer(reps.len() as i128) / o.unit_index(x.prime()))
}

/// max ov_G(h^-1 x h) over h in (G^ad)_i, for i = 0..=i_max.
fn push_profile(x: &GroupElement, i_max: i64) -> Vec<i64> {
    let mut best = vec![i64::MIN; i_max as usize + 1];
    for v in ball(x.prime(), 3 * i_max) {
        let h = v.matrix();
        let ov = ov_g(&x.conjugate(&h.inverse()));
        for (i, b) in best.iter_mut().enumerate() {
            if v.distance() <= 3 * i as i64 {
                *b = (*b).max(ov);
            }
        }
    }
    best
}

pub fn run_volumes(cfg: &ExperimentConfig) -> Result<SuiteReport, ExperimentError> {
    if cfg.mode == RunMode::Mc {
        return Err(ExperimentError::Unsupported("volumes are closed-form; there is no Monte Carlo mode"));
    }
    let p = cfg.ell;
    let mut report = SuiteReport::new(Suite::Volumes);
    let mut table = Table::new("volumes", &HEADER);
    let elliptic = scan_points(&Family::elliptic(), p, cfg.k_max)?;
    let split = scan_points(&[Family::SplitDiagonal], p, cfg.k_max)?;

    let mut saturate = Check::new("elliptic_volumes_saturate");
    let mut monotone = Check::new("volumes_nondecreasing");
    let mut base = Check::new("split_volume_at_zero_is_compact_part");
    let mut affine = Check::new("split_volumes_affine");
    let mut slope = Check::new("split_slope_within_twice_rank");
    let mut alpha_pts = Vec::new();
    let mut push_pts = Vec::new();

    let mut scan = |pt: &ScanPoint, n: usize, table: &mut Table| -> Result<Vec<Q>, ExperimentError> {
        let vols: Vec<Q> = (0..=cfg.i_max).map(|i| centralizer_volume(&pt.x, i)).collect::<Result<_, _>>()?;
        let total = if pt.family == Family::SplitDiagonal { None } else { Some(compact_total(&pt.x)?) };
        let push = if pt.family == Family::SplitDiagonal { None } else { Some(push_profile(&pt.x, cfg.i_max)) };
        monotone.record(vols.windows(2).all(|w| w[0] <= w[1]), || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("{} k = {}: {:?}", pt.family.label(), pt.k, vols.iter().map(fmt_q).collect::<Vec<_>>()),
        });
        for (i, v) in vols.iter().enumerate() {
            alpha_pts.push((Q::from_integer((i as i64 + pt.ov) as i128), *v));
            if let Some(pu) = &push {
                push_pts.push((Q::from_integer((i as i64 + pt.ov) as i128), Q::from_integer(pu[i] as i128)));
            }
            table.push(vec![
                pt.family.label().into(),
                pt.k.to_string(),
                pt.ov.to_string(),
                i.to_string(),
                fmt_q(v),
                q_f64(v).to_string(),
                push.as_ref().map(|pu| pu[i].to_string()).unwrap_or_default(),
                total.map(|t| fmt_q(&t)).unwrap_or_default(),
            ]);
        }
        Ok(vols)
    };

    for (n, pt) in elliptic.iter().enumerate() {
        let vols = scan(pt, n, &mut table)?;
        let total = compact_total(&pt.x)?;
        let last = *vols.last().expect("i range is nonempty");
        saturate.record(last == total, || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("{} k = {}: volume {} at i = {}, compact total {}", pt.family.label(), pt.k, fmt_q(&last), cfg.i_max, fmt_q(&total)),
        });
    }
    let mut slopes = Vec::new();
    for (n, pt) in split.iter().enumerate() {
        let vols = scan(pt, elliptic.len() + n, &mut table)?;
        base.record(vols[0] == Q::from_integer(1), || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("k = {}: volume {} at i = 0", pt.k, fmt_q(&vols[0])),
        });
        let diffs: Vec<Q> = vols.windows(2).map(|w| w[1] - w[0]).collect();
        affine.record(diffs.windows(2).all(|d| d[0] == d[1]), || Reproducer {
            seed: cfg.seed,
            index: n,
            detail: format!("k = {}: increments {:?}", pt.k, diffs.iter().map(fmt_q).collect::<Vec<_>>()),
        });
        if let Some(&s) = diffs.first() {
            slopes.push(s);
            slope.record(s <= Q::from_integer(2 * SPLIT_RANK as i128), || Reproducer {
                seed: cfg.seed,
                index: n,
                detail: format!("k = {}: slope {} against 2 rank = {}", pt.k, fmt_q(&s), 2 * SPLIT_RANK),
            });
        }
    }
    report.checks.extend([saturate, monotone, base, affine, slope]);
    if let Some(s) = slopes.first() {
        report.notes.push(format!(
            "split torus volumes grow by {} per step of i: ov_ad(diag(1, t^v)) = ceil(|v| / 3), so (G^ad)_i meets {} valuations per side step",
            fmt_q(s),
            fmt_q(&(*s / Q::from_integer(2)))
        ));
    }

    if let Some((_, rec)) = upper_bound_fit("alpha_vol", "i+ov", &alpha_pts, 1) {
        report.checks.push(Check::expect(
            "alpha_vol_affine",
            rec.violations == 0 && !alpha_pts.is_empty(),
            format!("volume <= {} + {} (i + ov)", rec.coefficients[0], rec.coefficients[1]),
        ));
        report.fits.push(rec);
    }
    if let Some((_, rec)) = upper_bound_fit("alpha_push", "i+ov", &push_pts, 1) {
        report.notes.push(format!(
            "largest ov_G of a conjugate by (G^ad)_i: <= {} + {} (i + ov)",
            rec.coefficients[0], rec.coefficients[1]
        ));
        report.fits.push(rec);
    }
    report.tables.push(table);
    Ok(report)
}
