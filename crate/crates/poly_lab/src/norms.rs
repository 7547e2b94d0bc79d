//! Root norms, root-separation norms, module norms and the norms on pairs (f, g).

use local_field::{FieldElement, NormValue, Q};

use crate::factor::{factor_local, LocalFactor};
use crate::newton::NewtonPolygon;
use crate::poly::{MonicPoly, Poly};
use crate::resultant::{discriminant, resultant};
use crate::PolyError;

/// log_l ||x||_F = max(-val x, 0).
fn f_exp(x: &FieldElement) -> i64 {
    x.norm_exponent()
}

/// max over roots of max(|root|, 1), read from the Newton polygon.
pub fn root_norm(f: &MonicPoly) -> NormValue {
    let np = NewtonPolygon::of(f);
    NormValue::new(f.prime(), np.max_slope().unwrap_or_default())
}

/// h(z) = Res_x(f(x), f(x + z)) / z^n, whose roots are the differences of
/// distinct roots of f. Built by interpolation at n^2 + 1 nodes.
pub fn difference_polynomial(f: &MonicPoly) -> Result<Poly, PolyError> {
    let p = f.prime();
    let n = f.deg();
    let pts: Vec<(FieldElement, FieldElement)> = (1..=(n * n + 1) as i64)
        .map(|k| {
            let z = FieldElement::t_pow(p, k);
            let shifted = f.shift(&z);
            resultant(f, &shifted).map(|r| (z, r))
        })
        .collect::<Result<_, _>>()?;
    let r = Poly::interpolate(p, &pts);
    debug_assert!(r.coeffs().iter().take(n).all(FieldElement::is_zero));
    Ok(Poly::new(p, r.coeffs().get(n..).map(<[_]>::to_vec).unwrap_or_default()))
}

/// max over pairs of distinct roots of max(|1/(a - b)|, 1).
pub fn delta_root_norm(f: &MonicPoly) -> Result<NormValue, PolyError> {
    if discriminant(f).is_zero() {
        return Err(PolyError::Inseparable);
    }
    let p = f.prime();
    if f.deg() <= 1 {
        return Ok(NormValue::one(p));
    }
    let h = difference_polynomial(f)?;
    let np = NewtonPolygon::of(&h);
    // the closest pair has the largest valuation v, and |1/(a - b)| = l^v
    let v = np.max_root_valuation().unwrap_or_default();
    Ok(NormValue::new(p, v))
}

/// Valuation of the norm of (g mod f_i) from one local factor: `None` when it is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub factor: LocalFactor,
    pub norm_valuation: Option<i64>,
}

impl Component {
    /// |N(g mod f_i)| as an exact rational.
    pub fn abs(&self, p: u8) -> Q {
        match self.norm_valuation {
            None => Q::from_integer(0),
            Some(v) => local_field::ell_pow(p, -v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleNorm {
    /// |res(f, g)|.
    pub total: Q,
    pub components: Vec<Component>,
}

impl ModuleNorm {
    /// Product of the component absolute values.
    pub fn product(&self, p: u8) -> Q {
        self.components.iter().map(|c| c.abs(p)).product()
    }
}

fn component_valuations(f: &MonicPoly, g: &Poly, n_prec: i64) -> Result<Vec<Component>, PolyError> {
    let fac = factor_local(f, Some(n_prec))?;
    if !fac.all_certified() {
        return Err(PolyError::PrecisionInsufficient);
    }
    fac.factors
        .iter()
        .map(|lf| {
            let r = resultant(&lf.factor, g)?;
            Ok(Component { factor: lf.clone(), norm_valuation: r.valuation().finite() })
        })
        .collect()
}

/// Per-component module norms of g mod f through the local factorization,
/// together with |res(f, g)|. Component valuations are accepted once two
/// precisions agree.
pub fn algebra_module_norm(f: &MonicPoly, g: &Poly) -> Result<ModuleNorm, PolyError> {
    if discriminant(f).is_zero() {
        return Err(PolyError::Inseparable);
    }
    if g.is_zero() {
        let components = factor_local(f, None)?
            .factors
            .into_iter()
            .map(|factor| Component { factor, norm_valuation: None })
            .collect();
        return Ok(ModuleNorm { total: Q::from_integer(0), components });
    }
    let total_res = resultant(f, g)?;
    let total = total_res.abs_value();
    let d = f.xgcd(g).0;
    if d.deg() > 0 {
        // shared roots: split off the common part exactly
        let common = MonicPoly::new(d.clone())?;
        let rest = MonicPoly::new(f.divrem(&d)?.0)?;
        let mut comps: Vec<Component> = factor_local(&common, None)?
            .factors
            .into_iter()
            .map(|factor| Component { factor, norm_valuation: None })
            .collect();
        if rest.deg() > 0 {
            comps.extend(algebra_module_norm(&rest, g)?.components);
        }
        return Ok(ModuleNorm { total, components: comps });
    }
    let mut n_prec = crate::factor::default_precision(f)? + 2 * total_res.val().abs();
    for _ in 0..6 {
        let a = component_valuations(f, g, n_prec)?;
        let b = component_valuations(f, g, 2 * n_prec)?;
        let key = |c: &[Component]| {
            let mut v: Vec<(usize, Option<i64>)> = c.iter().map(|x| (x.factor.degree, x.norm_valuation)).collect();
            v.sort();
            v
        };
        if key(&a) == key(&b) && a.iter().all(|c| c.norm_valuation.is_some_and(|v| v < n_prec)) {
            return Ok(ModuleNorm { total, components: a });
        }
        n_prec *= 2;
    }
    Err(PolyError::PrecisionInsufficient)
}

/// ||f||_C = max(coefficient norms, ||1/f(0)||_F), as an exponent.
pub fn c_norm_exponent(f: &MonicPoly) -> Result<i64, PolyError> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Err(PolyError::NotInC);
    }
    let coeff = f.coeffs().iter().map(f_exp).max().unwrap_or(0);
    Ok(coeff.max(f_exp(&c0.inv())))
}

/// ||f||_{C^rss} = max(||f||_C, |disc f|^(-1)), as an exponent.
pub fn c_rss_norm_exponent(f: &MonicPoly) -> Result<i64, PolyError> {
    let d = discriminant(f);
    if d.is_zero() {
        return Err(PolyError::Inseparable);
    }
    Ok(c_norm_exponent(f)?.max(d.val().max(0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSpace {
    /// Pairs (f, g) with f in C^rss and deg g < deg f.
    Plain,
    /// Coprime pairs.
    Units,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SNorms {
    pub standard: NormValue,
    pub primed: NormValue,
    pub r_part: NormValue,
}

/// The restriction norm, the componentwise module norm and their primed
/// combination on a pair (f, g).
pub fn s_norms(f: &MonicPoly, g: &Poly, space: PairSpace) -> Result<SNorms, PolyError> {
    let p = f.prime();
    let c_rss = c_rss_norm_exponent(f)?;
    let g_exp = (0..f.deg()).map(|i| f_exp(&g.coeff(i))).max().unwrap_or(0);
    let res = if g.is_zero() { FieldElement::zero(p) } else { resultant(f, g)? };
    let mut standard = c_rss.max(g_exp);
    if space == PairSpace::Units {
        if res.is_zero() {
            return Err(PolyError::NotCoprime);
        }
        standard = standard.max(f_exp(&res.inv()));
    }
    let module = algebra_module_norm(f, g)?;
    let mut r = 0i64;
    for c in &module.components {
        match (c.norm_valuation, space) {
            (None, PairSpace::Units) => return Err(PolyError::NotCoprime),
            (None, PairSpace::Plain) => {}
            (Some(v), PairSpace::Plain) => r = r.max(-v),
            (Some(v), PairSpace::Units) => r = r.max(v.abs()),
        }
    }
    Ok(SNorms {
        standard: NormValue::from_int_exponent(p, standard),
        primed: NormValue::from_int_exponent(p, c_rss.max(r)),
        r_part: NormValue::from_int_exponent(p, r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::fe;

    fn quad(p: u8, c: FieldElement, b: FieldElement) -> MonicPoly {
        MonicPoly::from_lower(p, vec![c, b])
    }

    #[test]
    fn root_norm_examples() {
        let p = 2;
        let one = FieldElement::one(p);
        assert!(root_norm(&quad(p, fe(p, 1, &[1]), one.clone())).is_one());
        assert_eq!(root_norm(&quad(p, one.clone(), fe(p, -1, &[1]))), NormValue::from_int_exponent(p, 1));
        assert!(root_norm(&quad(p, one.clone(), one)).is_one());
    }

    #[test]
    fn delta_root_norm_examples() {
        let p = 2;
        let one = FieldElement::one(p);
        assert!(delta_root_norm(&quad(p, fe(p, 1, &[1]), one.clone())).unwrap().is_one());
        assert_eq!(delta_root_norm(&quad(p, one.clone(), fe(p, 1, &[1]))).unwrap(), NormValue::from_int_exponent(p, 1));
        assert_eq!(delta_root_norm(&quad(p, one, FieldElement::zero(p))), Err(PolyError::Inseparable));
    }

    #[test]
    fn module_norm_examples() {
        let p = 2;
        let f = quad(p, fe(p, -1, &[1]), FieldElement::one(p));
        let m = algebra_module_norm(&f, &Poly::x(p)).unwrap();
        assert_eq!(m.total, Q::from_integer(2));
        assert_eq!(m.product(p), m.total);
        let one = algebra_module_norm(&f, &Poly::one(p)).unwrap();
        assert_eq!(one.total, Q::from_integer(1));
        let split = quad(p, fe(p, 1, &[1]), FieldElement::one(p));
        let common = algebra_module_norm(&split, &Poly::x(p).add(&Poly::one(p)).mul(&Poly::x(p)).add(&Poly::constant(fe(p, 1, &[1])))).unwrap();
        assert_eq!(common.total, Q::from_integer(0));
        assert_eq!(common.product(p), Q::from_integer(0));
    }

    #[test]
    fn s_norm_clamps() {
        let p = 2;
        let f = quad(p, fe(p, -1, &[1]), FieldElement::one(p));
        let zero = s_norms(&f, &Poly::zero(p), PairSpace::Plain).unwrap();
        assert!(zero.r_part.is_one());
        assert_eq!(s_norms(&f, &Poly::zero(p), PairSpace::Units), Err(PolyError::NotCoprime));
        let one = s_norms(&f, &Poly::one(p), PairSpace::Units).unwrap();
        assert!(one.r_part.is_one());
    }
}
