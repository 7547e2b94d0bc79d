//! Companion-matrix sections, constructive conjugators and the centralizer map.

use local_field::{FieldElement, NormValue};
use poly_lab::linalg::solve;
use poly_lab::{algebra_module_norm, MonicPoly, Poly};

use crate::mat::{GroupElement, Mat};
use crate::ov::{char_poly, is_regular_semisimple, ov_g};
use crate::GroupError;

/// The companion matrix of f: ones on the subdiagonal, last column -a_0..-a_{n-1}.
/// It maps e_i to e_{i+1}, so e_1 is a cyclic vector.
pub fn companion(f: &MonicPoly) -> Mat {
    let p = f.prime();
    let n = f.deg();
    let mut m = Mat::zero(p, n);
    for i in 1..n {
        m.set(i, i - 1, FieldElement::one(p));
    }
    for i in 0..n {
        m.set(i, n - 1, -&f.coeff(i));
    }
    m
}

/// Krylov matrix [v, xv, ..., x^{n-1} v] together with p(x). When it is
/// invertible, B^-1 x B = companion(p(x)).
pub fn companion_section(v: &[FieldElement], x: &Mat) -> Result<(GroupElement, MonicPoly), GroupError> {
    let n = x.dim();
    let mut cols = Vec::with_capacity(n);
    let mut cur = v.to_vec();
    for _ in 0..n {
        let next = x.mul_vec(&cur);
        cols.push(cur);
        cur = next;
    }
    let b = GroupElement::new(Mat::from_columns(&cols)).map_err(|_| GroupError::NotVRegular)?;
    Ok((b, char_poly(x)))
}

/// The fixed probe sequence e_1, e_2, e_1 + e_2, e_3, ...: the k-th vector
/// has the base-3 digits of k as entries, with digit 2 read as t.
pub fn probe_vector(p: u8, n: usize, k: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(n);
    let mut r = k;
    for _ in 0..n {
        out.push(match r % 3 {
            0 => FieldElement::zero(p),
            1 => FieldElement::one(p),
            _ => FieldElement::t_pow(p, 1),
        });
        r /= 3;
    }
    out
}

/// Probe indices in order: 0/1 vectors first (binary counting), then the rest.
fn probe_order(n: usize) -> impl Iterator<Item = usize> {
    let binary = (1..1usize << n).map(move |b| (0..n).map(|i| (b >> i & 1) * 3usize.pow(i as u32)).sum::<usize>());
    let rest = (1..3usize.pow(n as u32)).filter(move |k| {
        let mut r = *k;
        (0..n).any(|_| {
            let d = r % 3;
            r /= 3;
            d == 2
        })
    });
    binary.chain(rest)
}

/// First probe vector that is cyclic for x, with its section.
pub fn first_regular_section(x: &Mat) -> Result<(Vec<FieldElement>, GroupElement, MonicPoly), GroupError> {
    let p = x.prime();
    let n = x.dim();
    for k in probe_order(n) {
        let v = probe_vector(p, n, k);
        if let Ok((b, f)) = companion_section(&v, x) {
            return Ok((v, b, f));
        }
    }
    Err(GroupError::NotVRegular)
}

/// A conjugator with its ov_G, the witness quantity for norm descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    pub g: GroupElement,
    pub ov: i64,
}

/// g with g y g^-1 = x, built from the companion sections of both sides.
pub fn conjugator(x: &GroupElement, y: &GroupElement) -> Result<Conjugator, GroupError> {
    if !is_regular_semisimple(x) || !is_regular_semisimple(y) {
        return Err(GroupError::NotRegularSemisimple);
    }
    let (_, bx, fx) = first_regular_section(x)?;
    let (_, by, fy) = first_regular_section(y)?;
    if fx != fy {
        return Err(GroupError::NotConjugate);
    }
    let g = bx.mul(&by.inverse());
    let ov = ov_g(&g);
    Ok(Conjugator { g, ov })
}

/// The polynomial g of degree < n with g(x) = y for y commuting with the
/// regular semisimple x.
pub fn centralizer_poly(x: &Mat, y: &Mat) -> Result<Poly, GroupError> {
    if !is_regular_semisimple(x) {
        return Err(GroupError::NotRegularSemisimple);
    }
    if x.mul(y) != y.mul(x) {
        return Err(GroupError::NotCommuting);
    }
    let (v, b, _) = first_regular_section(x)?;
    // y v = sum c_k x^k v, i.e. B c = y v
    let yv = y.mul_vec(&v);
    let c = solve(&b.rows(), &yv).ok_or(GroupError::NotVRegular)?;
    let g = Poly::new(x.prime(), c);
    if eval_at(&g, x) != *y {
        return Err(GroupError::NotCommuting);
    }
    Ok(g)
}

/// g(x) for a matrix x, by Horner.
pub fn eval_at(g: &Poly, x: &Mat) -> Mat {
    let p = x.prime();
    let n = x.dim();
    let mut acc = Mat::zero(p, n);
    for c in g.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Mat::scalar(n, c));
    }
    acc
}

/// ||y||'_{G_x}: max over the irreducible factors f_i of p(x) of
/// max(|res(f_i, g)|, |res(f_i, g)|^-1), with g = xi(x, y).
pub fn centralizer_norm(x: &GroupElement, y: &GroupElement) -> Result<NormValue, GroupError> {
    let g = centralizer_poly(x, y)?;
    let f = char_poly(x);
    let module = algebra_module_norm(&f, &g)?;
    let mut e = 0i64;
    for c in &module.components {
        let v = c.norm_valuation.ok_or(GroupError::NotCommuting)?;
        e = e.max(v.abs());
    }
    Ok(NormValue::from_int_exponent(x.prime(), e))
}

/// Splits y in the centralizer of an elliptic x as y = y0 z with z = t^k
/// central and ||y0||'_{G_x} <= l^n: k is chosen to bring val N(y) into [0, n).
pub fn central_reduction(x: &GroupElement, y: &GroupElement) -> Result<(GroupElement, FieldElement), GroupError> {
    let p = x.prime();
    let n = x.dim() as i64;
    let v = y.det().val();
    let k = v.div_euclid(n);
    let z = FieldElement::t_pow(p, k);
    let y0 = GroupElement::new(y.scale(&z.inv()))?;
    debug_assert!(centralizer_norm(x, &y0).is_ok());
    Ok((y0, z))
}
