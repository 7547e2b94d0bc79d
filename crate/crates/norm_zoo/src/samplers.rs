//! Random points of the norm domains with a controllable valuation spread.

use gl_group::{eval_at, is_elliptic_poly, is_regular_semisimple, GroupElement, Mat};
use local_field::FieldElement;
use poly_lab::{discriminant, resultant, MonicPoly, Poly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::registry::Point;

/// Produces valid points of one domain. Coordinates have valuations in
/// [-spread, spread], so norms grow roughly linearly with `spread`.
pub trait Sampler: Sync {
    fn sample(&self, rng: &mut ChaCha8Rng, spread: i64) -> Point;
}

/// A nonzero Laurent polynomial t^v (c_0 + c_1 t + ...) with v in [-spread, spread].
pub fn random_unit_shift(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> FieldElement {
    let v = rng.gen_range(-spread..=spread);
    let len = rng.gen_range(1..=3);
    let mut c: Vec<i64> = (0..len).map(|_| rng.gen_range(0..p as i64)).collect();
    c[0] = rng.gen_range(1..p as i64);
    FieldElement::laurent(p, v, &c)
}

/// Like [`random_unit_shift`] but zero one time in eight.
pub fn random_element(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> FieldElement {
    if rng.gen_ratio(1, 8) {
        FieldElement::zero(p)
    } else {
        random_unit_shift(rng, p, spread)
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, p: u8, n: usize, spread: i64) -> Mat {
    Mat::from_rows((0..n).map(|_| (0..n).map(|_| random_element(rng, p, spread)).collect()).collect())
}

pub fn random_monic(rng: &mut ChaCha8Rng, p: u8, k: usize, spread: i64) -> MonicPoly {
    let mut lower: Vec<FieldElement> = (0..k).map(|_| random_element(rng, p, spread)).collect();
    lower[0] = random_unit_shift(rng, p, spread);
    MonicPoly::from_lower(p, lower)
}

pub fn random_poly(rng: &mut ChaCha8Rng, p: u8, deg_below: usize, spread: i64) -> Poly {
    Poly::new(p, (0..deg_below).map(|_| random_element(rng, p, spread)).collect())
}

/// Invertible matrices.
pub struct GroupSampler {
    pub p: u8,
    pub n: usize,
}

impl Sampler for GroupSampler {
    fn sample(&self, rng: &mut ChaCha8Rng, spread: i64) -> Point {
        loop {
            if let Ok(g) = GroupElement::new(random_matrix(rng, self.p, self.n, spread)) {
                return Point::Group(g);
            }
        }
    }
}

/// Regular semisimple invertible matrices.
pub struct RssSampler {
    pub p: u8,
    pub n: usize,
}

impl Sampler for RssSampler {
    fn sample(&self, rng: &mut ChaCha8Rng, spread: i64) -> Point {
        loop {
            if let Ok(g) = GroupElement::new(random_matrix(rng, self.p, self.n, spread)) {
                if is_regular_semisimple(&g) {
                    return Point::Group(g);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// f separable with f(0) != 0, any g of degree < deg f.
    Plain,
    /// f additionally irreducible.
    Elliptic,
    /// res(f, g) != 0.
    Units,
}

/// Pairs (f, g) with deg f = k.
pub struct PairSampler {
    pub p: u8,
    pub k: usize,
    pub kind: PairKind,
}

impl Sampler for PairSampler {
    fn sample(&self, rng: &mut ChaCha8Rng, spread: i64) -> Point {
        loop {
            let f = random_monic(rng, self.p, self.k, spread);
            if discriminant(&f).is_zero() {
                continue;
            }
            if self.kind == PairKind::Elliptic && !is_elliptic_poly(&f).unwrap_or(false) {
                continue;
            }
            let g = random_poly(rng, self.p, self.k, spread);
            if self.kind == PairKind::Units && (g.is_zero() || resultant(&f, &g).map_or(true, |r| r.is_zero())) {
                continue;
            }
            return Point::Pair(f, g);
        }
    }
}

/// Commuting pairs (x, y) with x regular semisimple and y = g(x) invertible.
pub struct CommutingSampler {
    pub p: u8,
    pub n: usize,
}

impl Sampler for CommutingSampler {
    fn sample(&self, rng: &mut ChaCha8Rng, spread: i64) -> Point {
        loop {
            let Ok(x) = GroupElement::new(random_matrix(rng, self.p, self.n, spread)) else {
                continue;
            };
            if !is_regular_semisimple(&x) {
                continue;
            }
            let g = random_poly(rng, self.p, self.n, spread);
            if let Ok(y) = GroupElement::new(eval_at(&g, &x)) {
                return Point::Commuting(x, y);
            }
        }
    }
}
