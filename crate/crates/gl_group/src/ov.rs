//! The Chevalley map and the ov-norms on G, G^rss and the quotients G/A.

use local_field::{FieldElement, NormValue};
use poly_lab::{discriminant, MonicPoly, Poly};

use crate::mat::{GroupElement, Mat};
use crate::torus::Composition;
use crate::GroupError;

/// det(xI - m), interpolated from n + 1 determinant evaluations.
pub fn char_poly(m: &Mat) -> MonicPoly {
    let p = m.prime();
    let n = m.dim();
    let pts: Vec<(FieldElement, FieldElement)> = (0..=n as i64)
        .map(|k| {
            let c = FieldElement::t_pow(p, k);
            (c.clone(), Mat::scalar(n, &c).sub(m).det())
        })
        .collect();
    MonicPoly::new(Poly::interpolate(p, &pts)).expect("characteristic polynomial is monic")
}

/// Discriminant of the characteristic polynomial.
pub fn disc(m: &Mat) -> FieldElement {
    discriminant(&char_poly(m))
}

pub fn is_regular_semisimple(m: &Mat) -> bool {
    !disc(m).is_zero()
}

/// ov_G(x) = max(max_ij(-val x_ij), val det x), never negative.
pub fn ov_g(x: &GroupElement) -> i64 {
    let neg = x.max_neg_valuation().expect("invertible matrix has a nonzero entry");
    neg.max(x.det().val()).max(0)
}

/// ||x||_G = max(||x||_gl, ||det x^-1||_F), the same quantity as l^ov_G(x).
pub fn norm_g(x: &GroupElement) -> NormValue {
    let p = x.prime();
    let entries = x.entries().iter().map(FieldElement::norm_exponent).max().unwrap_or(0);
    NormValue::from_int_exponent(p, entries.max(x.det().inv().norm_exponent()))
}

/// ov_{G^rss}(x) = max(ov_G(x), val disc(x)).
pub fn ov_grss(x: &GroupElement) -> Result<i64, GroupError> {
    let d = disc(x);
    if d.is_zero() {
        return Err(GroupError::NotRegularSemisimple);
    }
    Ok(ov_g(x).max(d.val()))
}

/// ov of the image of x in G/A for the standard torus A = T_lambda: the
/// minimum of ov_G(x a) over a in A.
///
/// Writing a = diag(t^k_b) blockwise and c_b for the largest -val of an entry
/// in the column block b, ov_G(x a) = max(0, max_b(c_b - k_b), D + sum s_b k_b)
/// with D = val det x. Taking k_b = c_b - H shows the minimum is
/// max(0, ceil((D + sum s_b c_b) / (n + 1))).
pub fn ov_quotient(x: &GroupElement, torus: &Composition) -> i64 {
    let n = x.dim() as i64;
    let mut total = x.det().val();
    for (lo, hi) in torus.blocks() {
        let c = (0..x.dim())
            .flat_map(|i| (lo..hi).map(move |j| (i, j)))
            .filter_map(|(i, j)| x.get(i, j).valuation().finite())
            .map(|v| -v)
            .max()
            .expect("invertible matrix has a nonzero entry in every column");
        total += (hi - lo) as i64 * c;
    }
    (total.div_euclid(n + 1) + i64::from(total.rem_euclid(n + 1) != 0)).max(0)
}

/// ov_{G^ad}: the quotient by the center.
pub fn ov_adjoint(x: &GroupElement) -> i64 {
    ov_quotient(x, &Composition::whole(x.dim()))
}

/// A torus element a in T_lambda attaining [`ov_quotient`] (a minimizer, not unique).
pub fn quotient_minimizer(x: &GroupElement, torus: &Composition) -> GroupElement {
    let p = x.prime();
    let h = ov_quotient(x, torus);
    let mut exps = vec![0i64; x.dim()];
    for (lo, hi) in torus.blocks() {
        let c = (0..x.dim())
            .flat_map(|i| (lo..hi).map(move |j| (i, j)))
            .filter_map(|(i, j)| x.get(i, j).valuation().finite())
            .map(|v| -v)
            .max()
            .unwrap_or(0);
        for e in &mut exps[lo..hi] {
            *e = c - h;
        }
    }
    GroupElement::t_diag(p, &exps)
}
