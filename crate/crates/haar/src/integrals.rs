//! Averaging operators, orbital integrals, unipotent integrals and
//! K_i-translate integrals.
//!
//! A_i(m)(x) integrates m(g x g^-1) over (G^ad)_i, a finite union of right
//! cosets K_0 g. Those cosets correspond to tree vertices v = g^-1.o within
//! distance 3i of the origin, so
//! A_i(m)(x) = sum_v int_{K_0^ad} m(k h_v^-1 x h_v k^-1) dk.
//! Orbital integrals use the same decomposition of G^ad / G_x^ad.

use std::path::Path;

use gl_group::{char_poly, GroupElement, Mat, UnipotentSpec};
use local_field::{ell_pow, Cyc, FieldElement, Q};
use norm_zoo::ordered_map;
use poly_lab::quadratic_criterion;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cells::{integrate_k_ad, line_integral, ExactOptions, Tally};
use crate::enumerate::{rng_for, sample_k0_with};
use crate::functions::{AdFunction, ConjugationPullback, TestFunction};
use crate::measure::adjoint_radius;
use crate::tree::{fixed_vertices, Vertex};
use crate::{cache, HaarError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// Level pair (j, j + 1) at which the leaves were certified and re-evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub levels: (i64, i64),
    pub leaves: usize,
    pub nonzero_leaves: usize,
    /// Leaves were split once more and evaluated pointwise.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralResult {
    pub mode: Mode,
    /// The exact value (exact mode only).
    pub exact: Option<Cyc>,
    /// Real and imaginary parts of the value or of the MC mean.
    pub estimate: (f64, f64),
    pub certificate: Option<Certificate>,
    pub stderr: Option<f64>,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl IntegralResult {
    pub fn from_tally(t: Tally, verified: bool) -> Self {
        Self {
            mode: Mode::Exact,
            estimate: t.value.to_complex(),
            certificate: Some(Certificate {
                levels: (t.level, t.level + 1),
                leaves: t.leaves,
                nonzero_leaves: t.nonzero_leaves,
                verified,
            }),
            exact: Some(t.value),
            stderr: None,
            samples: 0,
            seed: None,
        }
    }

    /// The exact value; panics in MC mode.
    pub fn value(&self) -> &Cyc {
        self.exact.as_ref().expect("exact mode result")
    }
}

fn require_gl2(x: &Mat) -> Result<(), HaarError> {
    if x.dim() != 2 {
        return Err(HaarError::ScaleLimit(x.dim()));
    }
    Ok(())
}

/// Vertices of the ball of (G^ad)_i, read from `cache_dir` when given.
pub fn adjoint_ball(p: u8, i: i64, cache_dir: Option<&Path>) -> Result<Vec<Vertex>, HaarError> {
    let radius = adjoint_radius(i);
    match cache_dir {
        Some(dir) => cache::ball_cached(dir, p, radius),
        None => Ok(crate::tree::ball(p, radius)),
    }
}

/// Sum over vertices of the K_0^ad-integral of [g] -> m(g x g^-1) on K_0 h_v^-1,
/// grouped by the smallest i with the vertex inside (G^ad)_i.
fn vertex_sums(
    m: &dyn TestFunction,
    x: &Mat,
    vertices: &[Vertex],
    opts: &ExactOptions,
) -> Result<Vec<(i64, Tally)>, HaarError> {
    let p = m.prime();
    let f = ConjugationPullback::new(m, x.clone());
    let id = GroupElement::identity(p, 2);
    let parts = ordered_map(vertices, opts.exec, |v| {
        let right = v.matrix().inverse();
        integrate_k_ad(&f, &id, &right, 0, opts).map(|t| ((v.distance() + 2) / 3, t))
    });
    parts.into_iter().collect()
}

/// A_i(m)(x) for a group element x.
pub fn averaging(
    m: &dyn TestFunction,
    x: &GroupElement,
    i: i64,
    opts: &ExactOptions,
    cache_dir: Option<&Path>,
) -> Result<IntegralResult, HaarError> {
    Ok(averaging_profile(m, x.matrix(), i, opts, cache_dir)?.pop().expect("i + 1 entries"))
}

/// A_i(m)(X) for a Lie algebra element X.
pub fn averaging_lie(
    m: &dyn TestFunction,
    x: &Mat,
    i: i64,
    opts: &ExactOptions,
    cache_dir: Option<&Path>,
) -> Result<IntegralResult, HaarError> {
    Ok(averaging_profile(m, x, i, opts, cache_dir)?.pop().expect("i + 1 entries"))
}

/// A_0(m)(x), ..., A_imax(m)(x) from one pass over the largest ball.
pub fn averaging_profile(
    m: &dyn TestFunction,
    x: &Mat,
    i_max: i64,
    opts: &ExactOptions,
    cache_dir: Option<&Path>,
) -> Result<Vec<IntegralResult>, HaarError> {
    require_gl2(x)?;
    let vertices = adjoint_ball(m.prime(), i_max, cache_dir)?;
    let sums = vertex_sums(m, x, &vertices, opts)?;
    let mut shells = vec![Tally::empty(0); i_max.max(0) as usize + 1];
    for (i, t) in sums {
        let slot = &mut shells[i as usize];
        *slot = slot.clone().merge(&t);
    }
    let mut acc = Tally::empty(0);
    Ok(shells
        .iter()
        .map(|s| {
            acc = acc.clone().merge(s);
            IntegralResult::from_tally(acc.clone(), opts.verify)
        })
        .collect())
}

/// Monte Carlo estimate of A_i(m)(x): uniform vertex, Haar k in K_0 (sampled
/// to precision `prec`), estimator vol((G^ad)_i) m(k h^-1 x h k^-1).
pub fn averaging_mc(
    m: &dyn TestFunction,
    x: &Mat,
    i: i64,
    samples: usize,
    seed: u64,
    cache_dir: Option<&Path>,
) -> Result<IntegralResult, HaarError> {
    require_gl2(x)?;
    if samples < 2 {
        return Err(HaarError::TooFewSamples(samples));
    }
    let p = m.prime();
    let vertices = adjoint_ball(p, i, cache_dir)?;
    let vol = vertices.len() as f64;
    let mut rng: ChaCha8Rng = rng_for(seed, 0);
    let draws: Vec<(f64, f64)> = (0..samples)
        .map(|_| {
            let v = &vertices[rng.gen_range(0..vertices.len())];
            let k = sample_k0_with(&mut rng, p, 4);
            let g = k.mul(&v.matrix().inverse());
            let (re, im) = m.eval(&x.conjugate_by(&g)).to_complex();
            (vol * re, vol * im)
        })
        .collect();
    Ok(mc_result(&draws, seed))
}

pub fn mc_result(draws: &[(f64, f64)], seed: u64) -> IntegralResult {
    let n = draws.len() as f64;
    let mean = draws.iter().fold((0.0, 0.0), |a, d| (a.0 + d.0 / n, a.1 + d.1 / n));
    let var = draws.iter().map(|d| (d.0 - mean.0).powi(2) + (d.1 - mean.1).powi(2)).sum::<f64>() / (n - 1.0);
    IntegralResult {
        mode: Mode::MonteCarlo,
        exact: None,
        estimate: mean,
        certificate: None,
        stderr: Some((var / n).sqrt()),
        samples: draws.len(),
        seed: Some(seed),
    }
}

/// Ramification index of F[x] for an elliptic 2x2 x; SupportUnbounded when
/// the characteristic polynomial splits (the orbit is not compact mod center).
pub fn elliptic_ramification(x: &Mat) -> Result<usize, HaarError> {
    require_gl2(x)?;
    match quadratic_criterion(&char_poly(x)) {
        Ok(Some(e)) => Ok(e),
        Ok(None) => Err(HaarError::SupportUnbounded),
        Err(e) => Err(e.into()),
    }
}

/// Omega(m)(x) for elliptic x with mu(G_x^ad) = e(E/F): the sum over the
/// vertices fixed by x of the K_0^ad-integrals, divided by e. With `abs`
/// the integrand is |m|, which must take rational values.
pub fn orbital_integral(
    m: &dyn TestFunction,
    x: &GroupElement,
    abs: bool,
    opts: &ExactOptions,
) -> Result<IntegralResult, HaarError> {
    if !m.supported_in_zk0() {
        return Err(HaarError::UnsupportedIntegrand);
    }
    let e = elliptic_ramification(x.matrix())?;
    let fixed = fixed_vertices(x.matrix(), 1 << 20).ok_or(HaarError::SupportUnbounded)?;
    let p = m.prime();
    let id = GroupElement::identity(p, 2);
    let abs_m;
    let integrand: &dyn TestFunction = if abs {
        abs_m = AbsValue(m);
        &abs_m
    } else {
        m
    };
    let f = ConjugationPullback::new(integrand, x.matrix().clone());
    let parts = ordered_map(&fixed, opts.exec, |v| integrate_k_ad(&f, &id, &v.matrix().inverse(), 0, opts));
    let mut acc = Tally::empty(0);
    for part in parts {
        acc = acc.merge(&part?);
    }
    if abs && acc.value.as_rational().is_none() {
        return Err(HaarError::NonRationalAbs);
    }
    Ok(IntegralResult::from_tally(acc.scale(Q::new(1, e as i128)), opts.verify))
}

/// |m| where m takes values with rational absolute value. Values with an
/// irrational absolute value are mapped to a non-rational marker, which
/// `orbital_integral` turns into NonRationalAbs.
struct AbsValue<'a>(&'a dyn TestFunction);

fn abs_cyc(v: Cyc) -> Cyc {
    match v.abs_rational() {
        Some(q) => Cyc::from_rational(q),
        None => Cyc::root_of_unity(4, 1),
    }
}

impl TestFunction for AbsValue<'_> {
    fn prime(&self) -> u8 {
        self.0.prime()
    }
    fn eval(&self, y: &Mat) -> Cyc {
        abs_cyc(self.0.eval(y))
    }
    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc> {
        self.0.constant_on_ball(center, e).map(abs_cyc)
    }
    fn conjugation_level(&self) -> Option<i64> {
        self.0.conjugation_level()
    }
    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64> {
        self.0.line_window(base, dir)
    }
    fn supported_in_zk0(&self) -> bool {
        self.0.supported_in_zk0()
    }
}

/// Side on which the unipotent variable multiplies x.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// f(u x)
    Left,
    /// f(x u)
    Right,
}

/// The nilpotent direction D of a one-dimensional unipotent group
/// {1 + s D}, optionally conjugated by g.
pub fn radical_direction(p: u8, spec: &UnipotentSpec, conj: Option<&GroupElement>) -> Result<Mat, HaarError> {
    if spec.n != 2 {
        return Err(HaarError::ScaleLimit(spec.n));
    }
    if spec.positions.len() != 1 {
        return Err(HaarError::UnsupportedIntegrand);
    }
    let (i, j) = spec.positions[0];
    direction_from(p, i, j, conj)
}

fn direction_from(p: u8, i: usize, j: usize, conj: Option<&GroupElement>) -> Result<Mat, HaarError> {
    let mut d = Mat::zero(p, 2);
    d.set(i, j, FieldElement::one(p));
    Ok(match conj {
        Some(g) => d.conjugate_by(g),
        None => d,
    })
}

/// E_ij for the field of characteristic p.
pub fn elementary(p: u8, i: usize, j: usize) -> Mat {
    direction_from(p, i, j, None).expect("2x2")
}

/// Scale making mu({1 + s D} cap K_0) = 1: the set is s in t^c O with c = -minval D.
fn unipotent_normalization(p: u8, dir: &Mat) -> Result<Q, HaarError> {
    let c = -dir.min_valuation().finite().ok_or(HaarError::UnsupportedIntegrand)?;
    Ok(ell_pow(p, c))
}

/// int_U f(u x) du (or f(x u)) for U = {1 + s D}, D^2 = 0, normalized by U cap K_0.
pub fn unipotent_integral(
    f: &dyn TestFunction,
    x: &GroupElement,
    dir: &Mat,
    order: Order,
    opts: &ExactOptions,
) -> Result<IntegralResult, HaarError> {
    require_gl2(x)?;
    let line = match order {
        Order::Left => dir.mul(x),
        Order::Right => x.matrix().mul(dir),
    };
    let t = line_integral(f, x.matrix(), &line, opts)?;
    Ok(IntegralResult::from_tally(t.scale(unipotent_normalization(f.prime(), dir)?), opts.verify))
}

/// int_n f(X + u) du over the nilradical {s D}, normalized by n cap M_2(O).
pub fn lie_unipotent_integral(
    f: &dyn TestFunction,
    x: &Mat,
    dir: &Mat,
    opts: &ExactOptions,
) -> Result<IntegralResult, HaarError> {
    require_gl2(x)?;
    let t = line_integral(f, x, dir, opts)?;
    Ok(IntegralResult::from_tally(t.scale(unipotent_normalization(f.prime(), dir)?), opts.verify))
}

/// int_U m(g u core u^-1 g^-1) du for U = {1 + s D} with D core D = 0, so
/// that u core u^-1 = core + s [D, core] is affine in s.
pub fn pullback_unipotent_integral(
    m: &dyn TestFunction,
    core: &Mat,
    g: &GroupElement,
    dir: &Mat,
    opts: &ExactOptions,
) -> Result<IntegralResult, HaarError> {
    require_gl2(core)?;
    if !dir.mul(core).mul(dir).min_valuation().is_infinite() {
        return Err(HaarError::UnsupportedIntegrand);
    }
    let base = core.conjugate_by(g);
    let line = dir.bracket(core).conjugate_by(g);
    let t = line_integral(m, &base, &line, opts)?;
    Ok(IntegralResult::from_tally(t.scale(unipotent_normalization(m.prime(), dir)?), opts.verify))
}

/// int_{K_i^ad} f(x k y) dk.
pub fn ki_translate_integral(
    f: &dyn AdFunction,
    x: &GroupElement,
    y: &GroupElement,
    i: i64,
    opts: &ExactOptions,
) -> Result<IntegralResult, HaarError> {
    require_gl2(x)?;
    let t = integrate_k_ad(f, x, y, i, opts)?;
    Ok(IntegralResult::from_tally(t, opts.verify))
}
