//! Exact cuspidality checks: unipotent integrals along every listed radical
//! through every sample point.

use gl_group::{GroupElement, Mat, UnipotentSpec};
use haar::{lie_unipotent_integral, radical_direction, unipotent_integral, ExactOptions, Order, TestFunction};
use local_field::Cyc;

use crate::CuspidalError;

/// A one-dimensional unipotent radical, given by a spanning nilpotent direction.
#[derive(Clone, Debug)]
pub struct Radical {
    pub label: String,
    pub dir: Mat,
}

/// Upper and lower radicals, plus g U g^-1 (upper) for each conjugator.
pub fn standard_radicals(p: u8, conjugators: &[GroupElement]) -> Result<Vec<Radical>, CuspidalError> {
    let mut out = vec![
        Radical { label: "upper".into(), dir: radical_direction(p, &UnipotentSpec::upper(2), None)? },
        Radical { label: "lower".into(), dir: radical_direction(p, &UnipotentSpec::lower(2), None)? },
    ];
    for (k, g) in conjugators.iter().enumerate() {
        out.push(Radical { label: format!("conj{k}"), dir: radical_direction(p, &UnipotentSpec::upper(2), Some(g))? });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CuspidalCase {
    pub sample: usize,
    pub radical: String,
    /// None for the Lie algebra.
    pub order: Option<Order>,
    pub value: Cyc,
    pub nonzero_leaves: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CuspidalReport {
    pub cases: Vec<CuspidalCase>,
}

impl CuspidalReport {
    pub fn all_zero(&self) -> bool {
        self.cases.iter().all(|c| c.value.is_zero())
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.value.is_zero()).count()
    }

    /// Cases whose integrand was nonzero somewhere, so that the zero came
    /// from cancellation.
    pub fn nontrivial(&self) -> usize {
        self.cases.iter().filter(|c| c.nonzero_leaves > 0).count()
    }
}

/// Integrals of u -> f(u x) and u -> f(x u) over each radical.
pub fn check_cuspidal(
    f: &dyn TestFunction,
    samples: &[GroupElement],
    radicals: &[Radical],
    opts: &ExactOptions,
) -> Result<CuspidalReport, CuspidalError> {
    let mut report = CuspidalReport::default();
    for (s, x) in samples.iter().enumerate() {
        for r in radicals {
            for order in [Order::Left, Order::Right] {
                let res = unipotent_integral(f, x, &r.dir, order, opts)?;
                report.cases.push(CuspidalCase {
                    sample: s,
                    radical: r.label.clone(),
                    order: Some(order),
                    nonzero_leaves: res.certificate.as_ref().map_or(0, |c| c.nonzero_leaves),
                    value: res.value().clone(),
                });
            }
        }
    }
    Ok(report)
}

/// Integrals of u -> f(x + u) over each nilradical.
pub fn check_cuspidal_lie(
    f: &dyn TestFunction,
    samples: &[Mat],
    radicals: &[Radical],
    opts: &ExactOptions,
) -> Result<CuspidalReport, CuspidalError> {
    let mut report = CuspidalReport::default();
    for (s, x) in samples.iter().enumerate() {
        for r in radicals {
            let res = lie_unipotent_integral(f, x, &r.dir, opts)?;
            report.cases.push(CuspidalCase {
                sample: s,
                radical: r.label.clone(),
                order: None,
                nonzero_leaves: res.certificate.as_ref().map_or(0, |c| c.nonzero_leaves),
                value: res.value().clone(),
            });
        }
    }
    Ok(report)
}
