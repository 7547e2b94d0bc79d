//! Factorization over F_l((t)) by Newton-polygon splitting and Hensel lifting.
//!
//! The input has exact coefficients in F_l(t); the factors are power series
//! and are returned truncated. Intermediate polynomials carry an absolute
//! precision: every coefficient is known mod t^prec in the coordinates the
//! polynomial lives in.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use local_field::{FieldElement, FpPoly, Q};

use crate::newton::NewtonPolygon;
use crate::poly::{MonicPoly, Poly};
use crate::resultant::discriminant;
use crate::PolyError;

const EXACT: i64 = i64::MAX / 8;
const MAX_DEPTH: usize = 96;
const MAX_DOUBLINGS: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    /// Monic factor, coefficients truncated (see [`LocalFactorization::stored_precision`]).
    pub factor: MonicPoly,
    pub degree: usize,
    pub certified_irreducible: bool,
    /// Ramification index of F[x]/factor over F (meaningful when certified).
    pub ramification: usize,
    /// Residue degree of F[x]/factor over F (meaningful when certified).
    pub residue_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorization {
    pub factors: Vec<LocalFactor>,
    /// The product of the factors agrees with the input mod t^precision.
    pub precision: i64,
    /// Factors are stored mod t^stored_precision, which leaves room for the
    /// negative valuations that products of factors can pick up.
    pub stored_precision: i64,
    pub separable: bool,
}

impl LocalFactorization {
    pub fn is_irreducible(&self) -> Option<bool> {
        if self.factors.iter().all(|f| f.certified_irreducible) {
            Some(self.factors.len() == 1)
        } else {
            None
        }
    }

    pub fn all_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified_irreducible)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|f| f.degree).collect();
        d.sort_unstable();
        d
    }
}

#[derive(Clone, Debug)]
struct Piece {
    f: Poly,
    prec: i64,
    certified: bool,
    ram: usize,
    res_deg: usize,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

fn t_pow(p: u8, k: i64) -> FieldElement {
    FieldElement::t_pow(p, k)
}

fn reduce_integral(h: &Poly) -> FpPoly {
    FpPoly::from_coeffs(h.prime(), h.coeffs().iter().map(FieldElement::residue).collect())
}

fn lift(p: u8, a: &FpPoly) -> Poly {
    Poly::new(p, a.coeffs().iter().map(|&c| FieldElement::from_int(p, c as i64)).collect())
}

/// Factors a monic polynomial over F_l into (irreducible, multiplicity) by trial division.
pub fn factor_residue(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.prime();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 1 {
        let deg = rest.degree().unwrap_or(0);
        if 2 * d > deg {
            out.push((rest.clone(), 1));
            break;
        }
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                c.push((x % p as usize) as u8);
                x /= p as usize;
            }
            c.push(1);
            let phi = FpPoly::from_coeffs(p, c);
            let mut e = 0;
            loop {
                let (q, r) = rest.divrem(&phi);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((phi, e));
            }
        }
        d += 1;
    }
    // merge a leftover equal to an earlier factor
    let mut merged: Vec<(FpPoly, usize)> = Vec::new();
    for (phi, e) in out {
        if let Some(slot) = merged.iter_mut().find(|(q, _)| *q == phi) {
            slot.1 += e;
        } else {
            merged.push((phi, e));
        }
    }
    merged
}

/// Lifts h = A*B mod t^prec from a coprime factorization of the reduction,
/// with A monic lifting `a_bar`.
fn hensel(h: &Poly, a_bar: &FpPoly, b_bar: &FpPoly, prec: i64) -> (Poly, Poly) {
    let p = h.prime();
    let (g, _u, w) = a_bar.xgcd(b_bar);
    debug_assert!(g.is_one(), "Hensel needs coprime reductions");
    let mut a = lift(p, a_bar);
    let mut b = lift(p, b_bar);
    for k in 1..prec {
        let e = h.sub(&a.mul(&b));
        let e_bar = FpPoly::from_coeffs(p, e.coeffs().iter().map(|c| c.series(k, k + 1)[0]).collect());
        if e_bar.is_zero() {
            continue;
        }
        let alpha = e_bar.mul(&w).rem(a_bar);
        let (beta, r) = e_bar.sub(&b_bar.mul(&alpha)).divrem(a_bar);
        debug_assert!(r.is_zero());
        let tk = Poly::constant(t_pow(p, k));
        a = a.add(&lift(p, &alpha).mul(&tk));
        b = b.add(&lift(p, &beta).mul(&tk));
    }
    (a.truncate(prec), b.truncate(prec))
}

/// h(y) = t^(-s) f(t^m y) normalized to be primitive, with its precision.
fn scale_in(f: &Poly, m: i64, prec: i64) -> (Poly, i64, i64) {
    let p = f.prime();
    let n = f.deg() as i64;
    let s = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.valuation().finite().map(|v| v + m * i as i64))
        .min()
        .expect("nonzero polynomial");
    let c = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a * &t_pow(p, m * i as i64 - s))
        .collect();
    (Poly::new(p, c), s, sat_add(prec, (m * n).min(0) - s))
}

/// F(x) = t^extra * A(x / t^m), with the leading coefficient forced to 1.
fn scale_out(a: &Poly, m: i64, extra: i64) -> Poly {
    let p = a.prime();
    let d = a.deg();
    let mut c: Vec<FieldElement> =
        a.coeffs().iter().enumerate().map(|(i, x)| x * &t_pow(p, extra - m * i as i64)).collect();
    c[d] = FieldElement::one(p);
    Poly::new(p, c)
}

struct Ctx {
    work: i64,
}

impl Ctx {
    fn rec(&self, f: &Poly, prec: i64, depth: usize) -> Result<Vec<Piece>, PolyError> {
        let p = f.prime();
        let n = f.deg();
        if depth > MAX_DEPTH {
            return Err(PolyError::PrecisionInsufficient);
        }
        if n == 1 {
            return Ok(vec![Piece { f: f.clone(), prec, certified: true, ram: 1, res_deg: 1 }]);
        }
        let np = match NewtonPolygon::with_precision(f, (prec < EXACT).then_some(prec)) {
            Ok(np) => np,
            Err(_) => return self.split_near_zero(f, prec, depth),
        };
        if np.zero_roots > 0 {
            if np.zero_roots > 1 {
                return Err(PolyError::Inseparable);
            }
            let rest = Poly::new(p, f.coeffs()[1..].to_vec());
            let mut out = vec![Piece { f: Poly::x(p), prec: EXACT, certified: true, ram: 1, res_deg: 1 }];
            out.extend(self.rec(&rest, prec, depth + 1)?);
            return Ok(out);
        }
        if np.segments.len() >= 2 {
            return self.split_slopes(f, prec, &np, depth);
        }
        let seg = np.segments[0];
        let r = seg.root_valuation();
        if !r.is_integer() {
            let b = *r.denom() as usize;
            let certified = b == n;
            return Ok(vec![Piece { f: f.clone(), prec, certified, ram: b, res_deg: 1 }]);
        }
        let r = r.to_integer() as i64;
        let (h, s, ph) = scale_in(f, r, prec);
        let work = ph.min(self.work);
        if work < 1 {
            return Err(PolyError::PrecisionInsufficient);
        }
        let h = h.truncate(work);
        let h_bar = reduce_integral(&h);
        let fac = factor_residue(&h_bar);
        if fac.len() >= 2 {
            let (phi, e) = &fac[0];
            let a_bar = pow_fp(phi, *e);
            let b_bar = h_bar.divrem(&a_bar).0;
            return self.split_pair(&h, &a_bar, &b_bar, r, s, work, depth);
        }
        let (phi, e) = &fac[0];
        if *e == 1 {
            return Ok(vec![Piece { f: f.clone(), prec, certified: true, ram: 1, res_deg: phi.degree().unwrap_or(0) }]);
        }
        if phi.degree() != Some(1) {
            return Ok(vec![Piece { f: f.clone(), prec, certified: false, ram: 1, res_deg: 1 }]);
        }
        // repeated residue root c: recentre at c and recurse
        let c = FieldElement::from_int(p, (p - phi.coeff(0)) as i64 % p as i64);
        let g = h.shift(&c).truncate(work);
        let neg_c = -&c;
        let mut out = Vec::new();
        for piece in self.rec(&g, work, depth + 1)? {
            let y_poly = piece.f.shift(&neg_c).truncate(piece.prec);
            let d = y_poly.deg() as i64;
            let back = scale_out(&y_poly, r, r * d);
            let bp = sat_add(piece.prec, r.min(r * d));
            out.push(Piece { f: back.truncate(bp), prec: bp, ..piece });
        }
        Ok(out)
    }

    fn split_slopes(&self, f: &Poly, prec: i64, np: &NewtonPolygon, depth: usize) -> Result<Vec<Piece>, PolyError> {
        let p = f.prime();
        // integral root valuation: split off the roots of exactly that valuation
        let (m, equal) = if let Some(seg) = np.segments.iter().find(|s| s.slope.is_integer()) {
            ((-seg.slope).to_integer() as i64, true)
        } else {
            let vals: Vec<Q> = np.segments.iter().map(|s| s.root_valuation()).collect();
            let top = vals[0];
            let next = vals[1];
            let m = top.floor().to_integer() as i64;
            if Q::from_integer(m as i128) < next {
                return Ok(vec![Piece { f: f.clone(), prec, certified: false, ram: 1, res_deg: 1 }]);
            }
            (m, false)
        };
        let (h, s, ph) = scale_in(f, m, prec);
        let work = ph.min(self.work);
        if work < 1 {
            return Err(PolyError::PrecisionInsufficient);
        }
        let h = h.truncate(work);
        let h_bar = reduce_integral(&h);
        let k1 = h_bar.t_order().unwrap_or(0);
        let unit = h_bar.shift_down(k1);
        let yk = FpPoly::monomial(p, k1);
        let (a_bar, b_bar) = if equal {
            let lc = unit.leading();
            (unit.monic(), yk.scale(lc))
        } else {
            (yk, unit)
        };
        self.split_pair(&h, &a_bar, &b_bar, m, s, work, depth)
    }

    /// The constant term reads as zero at this precision, so one root is
    /// only known to be tiny. If that bound already separates it from the
    /// other roots, split it off as a linear factor.
    fn split_near_zero(&self, f: &Poly, prec: i64, depth: usize) -> Result<Vec<Piece>, PolyError> {
        let p = f.prime();
        if !f.coeff(0).is_zero() || prec >= EXACT {
            return Err(PolyError::PrecisionInsufficient);
        }
        let rest = Poly::new(p, f.coeffs()[1..].to_vec());
        let np = NewtonPolygon::with_precision(&rest, Some(prec)).map_err(|_| PolyError::PrecisionInsufficient)?;
        let v1 = rest.coeff(0).val();
        let Some(top) = np.max_root_valuation() else {
            return Err(PolyError::PrecisionInsufficient);
        };
        let m = top.ceil().to_integer() as i64;
        if m >= prec - v1 {
            return Err(PolyError::PrecisionInsufficient);
        }
        let (h, s, ph) = scale_in(f, m, prec);
        let work = ph.min(self.work);
        if work < 1 {
            return Err(PolyError::PrecisionInsufficient);
        }
        let h = h.truncate(work);
        let h_bar = reduce_integral(&h);
        if h_bar.t_order() != Some(1) {
            return Err(PolyError::PrecisionInsufficient);
        }
        let unit = h_bar.shift_down(1);
        self.split_pair(&h, &FpPoly::monomial(p, 1), &unit, m, s, work, depth)
    }

    #[allow(clippy::too_many_arguments)]
    fn split_pair(
        &self,
        h: &Poly,
        a_bar: &FpPoly,
        b_bar: &FpPoly,
        m: i64,
        s: i64,
        work: i64,
        depth: usize,
    ) -> Result<Vec<Piece>, PolyError> {
        let (a, b) = hensel(h, a_bar, b_bar, work);
        let da = a.deg() as i64;
        let db = b.deg() as i64;
        let fa = scale_out(&a, m, m * da);
        let pa = work + m.min(m * da);
        let fb = scale_out(&b, m, s - m * da);
        let pb = work + s - m * da + (-m * (db - 1)).min(0);
        let mut out = self.rec(&fa.truncate(pa), pa, depth + 1)?;
        out.extend(self.rec(&fb.truncate(pb), pb, depth + 1)?);
        Ok(out)
    }
}

fn pow_fp(a: &FpPoly, e: usize) -> FpPoly {
    (0..e).fold(FpPoly::one(a.prime()), |acc, _| acc.mul(a))
}

/// Default precision 4 (val disc + deg).
pub fn default_precision(f: &MonicPoly) -> Result<i64, PolyError> {
    let d = discriminant(f);
    if d.is_zero() {
        return Err(PolyError::Inseparable);
    }
    Ok(4 * (d.val().max(0) + f.deg() as i64))
}

fn cache() -> &'static RwLock<HashMap<(Poly, i64), LocalFactorization>> {
    static CACHE: OnceLock<RwLock<HashMap<(Poly, i64), LocalFactorization>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Factors a separable monic f over F_l((t)) to precision t^precision
/// (default [`default_precision`]).
pub fn factor_local(f: &MonicPoly, precision: Option<i64>) -> Result<LocalFactorization, PolyError> {
    let n_prec = match precision {
        Some(n) => n,
        None => default_precision(f)?,
    };
    let key = (f.poly().clone(), n_prec);
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let out = factor_uncached(f, n_prec)?;
    cache().write().expect("cache lock").insert(key, out.clone());
    Ok(out)
}

fn factor_uncached(f: &MonicPoly, n_prec: i64) -> Result<LocalFactorization, PolyError> {
    let p = f.prime();
    let disc = discriminant(f);
    if disc.is_zero() {
        return Err(PolyError::Inseparable);
    }
    let spread: i64 = f.coeffs().iter().filter_map(|a| a.valuation().finite()).map(|v| v.abs()).sum();
    let mut work = n_prec.max(1) + 2 * disc.val().abs() + 2 * spread + 2 * f.deg() as i64;
    for _ in 0..=MAX_DOUBLINGS {
        let ctx = Ctx { work };
        match ctx.rec(f.poly(), EXACT, 0) {
            Err(PolyError::PrecisionInsufficient) => {
                work *= 2;
                continue;
            }
            Err(e) => return Err(e),
            Ok(pieces) => {
                let guard: i64 = pieces
                    .iter()
                    .map(|pc| pc.f.min_valuation().finite().map_or(0, |v| (-v).max(0)) * pc.f.deg() as i64)
                    .sum();
                let stored = n_prec + guard;
                if pieces.iter().any(|pc| pc.prec < stored) {
                    work *= 2;
                    continue;
                }
                let factors: Vec<LocalFactor> = pieces
                    .into_iter()
                    .map(|pc| LocalFactor {
                        degree: pc.f.deg(),
                        factor: MonicPoly::new(pc.f.truncate(stored)).expect("monic factor"),
                        certified_irreducible: pc.certified,
                        ramification: pc.ram,
                        residue_degree: pc.res_deg,
                    })
                    .collect();
                let prod = factors.iter().fold(Poly::one(p), |acc, lf| acc.mul(lf.factor.poly()));
                let diff = prod.sub(f.poly());
                if diff.coeffs().iter().any(|c| c.valuation() < local_field::Valuation::Finite(n_prec)) {
                    work *= 2;
                    continue;
                }
                let mut out = LocalFactorization { factors, precision: n_prec, stored_precision: stored, separable: true };
                if f.deg() == 2 {
                    apply_quadratic_criterion(f, &mut out);
                }
                return Ok(out);
            }
        }
    }
    Err(PolyError::PrecisionInsufficient)
}

fn apply_quadratic_criterion(f: &MonicPoly, out: &mut LocalFactorization) {
    let q = quadratic_criterion(f).expect("separable quadratic");
    let irreducible = q.is_some();
    debug_assert_eq!(irreducible, out.factors.len() == 1, "quadratic criterion disagrees with Hensel splitting");
    if out.factors.len() == 1 {
        let lf = &mut out.factors[0];
        lf.certified_irreducible = irreducible;
        if let Some(ram) = q {
            lf.ramification = ram;
            lf.residue_degree = 2 / ram;
        }
    }
}

/// Irreducibility of a separable monic quadratic over F_l((t)), decided
/// independently of the Hensel machinery. Returns `Some(e)` with the
/// ramification index when irreducible, `None` when it splits.
pub fn quadratic_criterion(f: &MonicPoly) -> Result<Option<usize>, PolyError> {
    assert_eq!(f.deg(), 2);
    let p = f.prime();
    let (c, b) = (f.coeff(0), f.coeff(1));
    if p != 2 {
        let d = discriminant(f);
        if d.is_zero() {
            return Err(PolyError::Inseparable);
        }
        let v = d.val();
        if v.rem_euclid(2) == 1 {
            return Ok(Some(2));
        }
        let lead = d.leading_coeff();
        let is_square = (0..p).any(|x| (x as u16 * x as u16) % p as u16 == lead as u16);
        return Ok(if is_square { None } else { Some(1) });
    }
    if b.is_zero() {
        return Err(PolyError::Inseparable);
    }
    // x = b y turns f into y^2 + y + a with a = c / b^2
    let a = &c / &(&b * &b);
    Ok(artin_schreier(&a))
}

/// Solvability of y^2 + y = a in F_2((t)): `None` if solvable, else the
/// ramification index of the extension it defines.
fn artin_schreier(a: &FieldElement) -> Option<usize> {
    let v = a.valuation().finite().unwrap_or(1);
    if v > 0 {
        // y = a + a^2 + a^4 + ... converges
        return None;
    }
    // polar part plus constant term, as exponents -lo..=0
    let lo = -v;
    let mut c: Vec<u8> = a.series(v, 1);
    // c[j] is the coefficient of t^(v + j); strip even poles top-down using
    // t^(-2k) ~ t^(-k) modulo the image of y -> y^2 + y
    for k2 in (1..=lo).rev() {
        let idx = (lo - k2) as usize;
        if c[idx] == 0 || k2 % 2 == 1 {
            continue;
        }
        c[idx] = 0;
        let k = k2 / 2;
        let j = (lo - k) as usize;
        c[j] ^= 1;
    }
    let odd_pole = (1..=lo).any(|k| c[(lo - k) as usize] == 1);
    if odd_pole {
        return Some(2);
    }
    let constant = c[lo as usize];
    if constant == 1 {
        Some(1)
    } else {
        None
    }
}

/// A root of y^2 + y = a with val a > 0 as a series mod t^prec, by the
/// recursion y_{k+1} = a + y_k^2 (a witness for the split branch).
pub fn artin_schreier_root(a: &FieldElement, prec: i64) -> FieldElement {
    assert_eq!(a.prime(), 2);
    let mut y = FieldElement::zero(2);
    for _ in 0..prec.max(1) {
        y = (a + &(&y * &y)).truncate(prec);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::fe;

    fn quad(p: u8, c: FieldElement, b: FieldElement) -> MonicPoly {
        MonicPoly::from_lower(p, vec![c, b])
    }

    #[test]
    fn residue_factorization() {
        let f = FpPoly::from_ints(2, &[0, 1, 1]);
        let fac = factor_residue(&f);
        assert_eq!(fac.len(), 2);
        let g = FpPoly::from_ints(2, &[1, 0, 1]);
        assert_eq!(factor_residue(&g), vec![(FpPoly::from_ints(2, &[1, 1]), 2)]);
        let h = FpPoly::from_ints(3, &[1, 0, 1]);
        assert_eq!(factor_residue(&h), vec![(h.clone(), 1)]);
    }

    #[test]
    fn examples_char_two() {
        let p = 2;
        let split = factor_local(&quad(p, fe(p, 1, &[1]), FieldElement::one(p)), None).unwrap();
        assert_eq!(split.degrees(), vec![1, 1]);
        assert!(split.all_certified());

        let ram = factor_local(&quad(p, fe(p, -1, &[1]), FieldElement::one(p)), None).unwrap();
        assert_eq!(ram.is_irreducible(), Some(true));
        assert_eq!(ram.factors[0].ramification, 2);

        let as_case = factor_local(&quad(p, FieldElement::one(p), fe(p, 1, &[1])), None).unwrap();
        assert_eq!(as_case.is_irreducible(), Some(true));
        assert_eq!(as_case.factors[0].ramification, 2);
    }

    #[test]
    fn unramified_quadratic() {
        let p = 2;
        let f = quad(p, FieldElement::one(p), FieldElement::one(p));
        let r = factor_local(&f, None).unwrap();
        assert_eq!(r.is_irreducible(), Some(true));
        assert_eq!(r.factors[0].residue_degree, 2);
    }

    #[test]
    fn artin_schreier_root_solves() {
        let a = fe(2, 1, &[1, 1, 0, 1]);
        let y = artin_schreier_root(&a, 12);
        let lhs = &(&y * &y) + &y;
        assert!((&lhs - &a).valuation() >= local_field::Valuation::Finite(12));
    }

    #[test]
    fn cubic_with_mixed_slopes() {
        let p = 3;
        // (x - t)(x - 1 - t)(x - 1/t)
        let r = [fe(p, 1, &[1]), fe(p, 0, &[1, 1]), fe(p, -1, &[1])];
        let f = r.iter().fold(Poly::one(p), |acc, a| acc.mul(&Poly::linear(a)));
        let f = MonicPoly::new(f).unwrap();
        let fac = factor_local(&f, None).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1]);
        for lf in &fac.factors {
            let root = -&lf.factor.coeff(0);
            assert!(r.iter().any(|x| (&root - x).valuation() >= local_field::Valuation::Finite(fac.precision)));
        }
    }

    #[test]
    fn rational_root_after_recentring() {
        // x^2 + (t/(1+t)) x + 1/(1+t) has the root 1 over F_2
        let p = 2;
        let u = fe(p, 0, &[1, 1]);
        let f = quad(p, u.inv(), &fe(p, 1, &[1]) / &u);
        let fac = factor_local(&f, None).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1]);
        let one = FieldElement::one(p);
        assert!(fac.factors.iter().any(|lf| (&lf.factor.coeff(0) + &one).valuation() >= local_field::Valuation::Finite(fac.precision)));
    }
}
