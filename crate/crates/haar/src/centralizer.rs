//! Centralizer measures for 2x2 regular semisimple x.
//!
//! For elliptic x, E = F[x] is a quadratic field. We find an O-basis {1, beta}
//! of O_E with beta = (x - r) t^-w, by pushing val N(x - r) up greedily. In
//! matrix form beta is B = (x - r I) t^-w. Measures on E^x use
//! mu(O_E^x) = 1, and measures on E^x / F^x use mu(O_E^x F^x / F^x) = 1.

use gl_group::{char_poly, ov_adjoint, GroupElement, Mat};
use local_field::{ell_pow, FieldElement, Q};

use crate::HaarError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticOrder {
    pub r: FieldElement,
    pub w: i64,
    /// The matrix of beta.
    pub beta: Mat,
    /// Ramification index and residue degree of E/F.
    pub e: usize,
    pub f: usize,
    /// E cap M_2(O) = O + t^gamma O_E.
    pub gamma: i64,
}

/// The O_E basis data of an elliptic 2x2 matrix.
pub fn quadratic_order(x: &Mat) -> Result<QuadraticOrder, HaarError> {
    if x.dim() != 2 {
        return Err(HaarError::ScaleLimit(x.dim()));
    }
    let p = x.prime();
    let f = char_poly(x);
    let (c0, c1) = (f.coeff(0), f.coeff(1));
    let eval = |r: &FieldElement| &(&(r * r) + &(&c1 * r)) + &c0;
    let mut r = FieldElement::zero(p);
    for _ in 0..512 {
        let fr = eval(&r);
        if fr.is_zero() {
            return Err(HaarError::NotElliptic);
        }
        let v = fr.val();
        let (w, e) = if v.rem_euclid(2) == 1 {
            ((v - 1).div_euclid(2), 2)
        } else {
            let w = v / 2;
            // beta = (alpha - r) / t^w has minimal polynomial
            // Y^2 + (2r + c1) t^-w Y + f(r) t^-2w; find a residue root
            let lin = &(&(&r + &r) + &c1) * &FieldElement::t_pow(p, -w);
            let cst = &fr * &FieldElement::t_pow(p, -2 * w);
            if lin.valuation().finite().is_some_and(|v| v < 0) {
                return Err(HaarError::NotElliptic);
            }
            let (a, b) = (lin.residue() as u16, cst.residue() as u16);
            let root = (0..p as u16).find(|&c| (c * c + a * c + b) % p as u16 == 0);
            match root {
                Some(c) => {
                    r = &r + &FieldElement::laurent(p, w, &[c as i64]);
                    continue;
                }
                None => (w, 1),
            }
        };
        let shifted = x.sub(&Mat::scalar(2, &r));
        let beta = shifted.scale(&FieldElement::t_pow(p, -w));
        let gamma = (-beta.min_valuation().finite().expect("beta is nonzero")).max(0);
        return Ok(QuadraticOrder { r, w, beta, e, f: 2 / e, gamma });
    }
    Err(HaarError::NotElliptic)
}

impl QuadraticOrder {
    /// [O_E^x : (O + t^gamma O_E)^x].
    pub fn unit_index(&self, ell: u8) -> Q {
        if self.gamma == 0 {
            return Q::from_integer(1);
        }
        let one = Q::from_integer(1);
        ell_pow(ell, self.gamma) * (one - ell_pow(ell, -(self.f as i64))) / (one - ell_pow(ell, -1))
    }

    /// Valuation threshold for b in a + b beta to lie in K_j (j >= 1):
    /// b beta12, b beta21, b (beta11 - beta22) in t^j O and b beta11 in O.
    fn b_threshold(&self, j: i64) -> i64 {
        let v = |e: &FieldElement| e.valuation().finite();
        let b = &self.beta;
        let mut t = 0i64;
        for e in [b.get(0, 1).clone(), b.get(1, 0).clone(), b.get(0, 0) - b.get(1, 1)] {
            if let Some(ve) = v(&e) {
                t = t.max(j - ve);
            }
        }
        if let Some(v11) = v(b.get(0, 0)) {
            t = t.max(-v11);
        }
        t
    }
}

/// mu_{G_x}(G_x cap K_j) for elliptic x, or for diagonal x with distinct
/// entries (G_x = T, mu(T(O)) = 1).
pub fn centralizer_ball_measure(x: &GroupElement, j: i64) -> Result<Q, HaarError> {
    let ell = x.prime();
    if x.dim() != 2 {
        return Err(HaarError::ScaleLimit(x.dim()));
    }
    if x.is_diagonal() {
        if x.get(0, 0) == x.get(1, 1) {
            return Err(HaarError::NotElliptic);
        }
        if j == 0 {
            return Ok(Q::from_integer(1));
        }
        let one = Q::from_integer(ell as i128 - 1) * ell_pow(ell, j - 1);
        return Ok((one * one).recip());
    }
    let o = quadratic_order(x.matrix())?;
    if j == 0 {
        return Ok(o.unit_index(ell).recip());
    }
    // {a + b beta in K_j}: b in t^bt O and a in 1 - b beta11 + t^j O, of
    // additive measure l^-(j + bt) inside O_E = O + O beta
    let bt = o.b_threshold(j);
    let units = Q::from_integer(1) - ell_pow(ell, -(o.f as i64));
    Ok(ell_pow(ell, -(j + bt)) / units)
}

/// Representatives of E^x / (R^x F^x) with R = O + t^gamma O_E, as matrices.
pub fn unit_coset_representatives(x: &Mat) -> Result<(QuadraticOrder, Vec<Mat>), HaarError> {
    let o = quadratic_order(x)?;
    let p = x.prime();
    let id = Mat::identity(p, 2);
    let polys = |lo: i64, hi: i64| -> Vec<FieldElement> {
        if hi <= lo {
            return vec![FieldElement::zero(p)];
        }
        let count = (p as usize).pow((hi - lo) as u32);
        (0..count)
            .map(|mut k| {
                let c: Vec<i64> = (lo..hi)
                    .map(|_| {
                        let d = (k % p as usize) as i64;
                        k /= p as usize;
                        d
                    })
                    .collect();
                FieldElement::laurent(p, lo, &c)
            })
            .collect()
    };
    let mut units: Vec<Mat> = polys(0, o.gamma).into_iter().map(|b| id.add(&o.beta.scale(&b))).collect();
    if o.e == 1 && o.gamma >= 1 {
        units.extend(polys(1, o.gamma).into_iter().map(|a| id.scale(&a).add(&o.beta)));
    }
    let mut out = units.clone();
    if o.e == 2 {
        out.extend(units.iter().map(|u| o.beta.mul(u)));
    }
    Ok((o, out))
}

/// mu_{G_x^ad}(G_x^ad cap (G^ad)_i) for elliptic x: each coset y R^x F^x has
/// measure 1/[O_E^x : R^x] and lies in (G^ad)_i exactly when ov_{G^ad}(y) <= i.
pub fn elliptic_volume(x: &Mat, i: i64) -> Result<Q, HaarError> {
    let (o, reps) = unit_coset_representatives(x)?;
    let inside = reps
        .into_iter()
        .filter(|y| ov_adjoint(&GroupElement::new(y.clone()).expect("units of E are invertible")) <= i)
        .count();
    Ok(Q::from_integer(inside as i128) / o.unit_index(x.prime()))
}

/// mu_{T^ad}(T^ad cap (G^ad)_i) for the diagonal torus with mu(T^ad(O)) = 1:
/// the valuations v with ov_{G^ad}(diag(1, t^v)) = ceil(|v| / 3) <= i.
pub fn split_volume(i: i64) -> Q {
    Q::from_integer(6 * i as i128 + 1)
}

/// The centralizer volume of x: elliptic or diagonal regular.
pub fn centralizer_volume(x: &GroupElement, i: i64) -> Result<Q, HaarError> {
    if x.is_diagonal() {
        if x.get(0, 0) == x.get(1, 1) {
            return Err(HaarError::NotElliptic);
        }
        return Ok(split_volume(i));
    }
    elliptic_volume(x.matrix(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gl_group::companion;
    use poly_lab::{fe, MonicPoly};

    fn comp(p: u8, c0: FieldElement, c1: FieldElement) -> GroupElement {
        GroupElement::new(companion(&MonicPoly::from_lower(p, vec![c0, c1]))).unwrap()
    }

    #[test]
    fn unramified_companion() {
        let p = 2;
        // x^2 + x + 1 is irreducible over F_2
        let x = comp(p, FieldElement::one(p), FieldElement::one(p));
        let o = quadratic_order(x.matrix()).unwrap();
        assert_eq!((o.e, o.f, o.gamma), (1, 2, 0));
        assert_eq!(centralizer_ball_measure(&x, 0).unwrap(), Q::from_integer(1));
        // G_x cap K_j = 1 + t^j O_E, index (q_E - 1) q_E^(j-1) with q_E = 4
        for j in 1..4 {
            assert_eq!(centralizer_ball_measure(&x, j).unwrap(), Q::new(1, 3 * 4i128.pow(j as u32 - 1)));
        }
        assert_eq!(elliptic_volume(x.matrix(), 0).unwrap(), Q::from_integer(1));
    }

    #[test]
    fn ramified_companion() {
        let p = 2;
        // x^2 + t x + t: Eisenstein
        let x = comp(p, fe(p, 1, &[1]), fe(p, 1, &[1]));
        let o = quadratic_order(x.matrix()).unwrap();
        assert_eq!((o.e, o.f), (2, 1));
        assert_eq!(elliptic_volume(x.matrix(), 10).unwrap(), Q::from_integer(2));
    }

    #[test]
    fn split_volume_grows_linearly() {
        assert_eq!(split_volume(0), Q::from_integer(1));
        assert_eq!(split_volume(2), Q::from_integer(13));
    }
}
