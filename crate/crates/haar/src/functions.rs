//! Locally constant test functions on G or on its Lie algebra, and functions
//! on G^ad obtained from them by conjugation.
//!
//! Integrators never evaluate a function on a whole cell point by point.
//! They ask for a certificate instead: the value on an additive ball
//! y + t^e M_2(O), when the function is provably constant there.

use gl_group::{GroupElement, Mat};
use local_field::{Cyc, FieldElement, Valuation};

pub trait TestFunction: Sync {
    fn prime(&self) -> u8;

    fn eval(&self, y: &Mat) -> Cyc;

    /// The common value on center + t^e M_2(O), when it is constant there.
    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc>;

    /// Some(c) when f(k y k^-1) = f(y) for every k in K_c.
    fn conjugation_level(&self) -> Option<i64> {
        None
    }

    /// Along the line s -> base + s dir, the function vanishes unless
    /// val s >= the returned bound; None when it vanishes on the whole line.
    /// For functions on G the caller guarantees det(base + s dir) = det base.
    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64>;

    /// Support contained in Z K_0, which lets orbital integrals run over
    /// fixed vertices only.
    fn supported_in_zk0(&self) -> bool {
        false
    }
}

fn min_val(m: &Mat) -> Option<i64> {
    m.min_valuation().finite()
}

/// The coefficient of t^mu in each entry, as a base-l index (row-major).
fn residue_index(y: &Mat, mu: i64, ell: u8) -> (usize, [u8; 4]) {
    let mut r = [0u8; 4];
    for (k, slot) in r.iter_mut().enumerate() {
        *slot = y.get(k / 2, k % 2).series(mu, mu + 1)[0];
    }
    let l = ell as usize;
    let idx = r.iter().rev().fold(0usize, |acc, &c| acc * l + c as usize);
    (idx, r)
}

/// Index of a residue matrix [r11, r12, r21, r22] in tables of size l^4.
pub fn table_index(r: [u8; 4], ell: u8) -> usize {
    let l = ell as usize;
    r.iter().rev().fold(0usize, |acc, &c| acc * l + c as usize)
}

/// All residue matrices in table order.
pub fn residue_matrices(ell: u8) -> Vec<[u8; 4]> {
    let l = ell as usize;
    (0..l.pow(4))
        .map(|mut k| {
            let mut r = [0u8; 4];
            for slot in r.iter_mut() {
                *slot = (k % l) as u8;
                k /= l;
            }
            r
        })
        .collect()
}

pub fn residue_det(r: [u8; 4], ell: u8) -> u8 {
    let l = ell as i32;
    ((r[0] as i32 * r[3] as i32 - r[1] as i32 * r[2] as i32).rem_euclid(l)) as u8
}

/// A function on GL_2(F_l), inflated to Z K_0 with a central character:
/// f(t^mu k) = omega(t)^mu phi(k mod t), and f = 0 off Z K_0. When phi is a
/// class function the inflation is invariant under K_0-conjugation.
#[derive(Clone, Debug)]
pub struct InflatedGroupFunction {
    ell: u8,
    table: Vec<Cyc>,
    /// omega(t) = zeta_order^exponent.
    omega_t: (u32, i64),
    class_function: bool,
}

impl InflatedGroupFunction {
    /// `table` has l^4 entries indexed by [`table_index`]; entries at
    /// singular residues are ignored.
    pub fn new(ell: u8, table: Vec<Cyc>, omega_t: (u32, i64)) -> Self {
        assert_eq!(table.len(), (ell as usize).pow(4));
        let class_function = is_class_function(ell, &table);
        Self { ell, table, omega_t, class_function }
    }

    pub fn table(&self) -> &[Cyc] {
        &self.table
    }

    pub fn omega_t(&self) -> (u32, i64) {
        self.omega_t
    }

    pub fn is_class_function(&self) -> bool {
        self.class_function
    }
}

pub fn residue_mul(a: [u8; 4], b: [u8; 4], ell: u8) -> [u8; 4] {
    let l = ell as u16;
    let m = |i: usize, j: usize| -> u8 {
        ((a[2 * i] as u16 * b[j] as u16 + a[2 * i + 1] as u16 * b[2 + j] as u16) % l) as u8
    };
    [m(0, 0), m(0, 1), m(1, 0), m(1, 1)]
}

pub fn residue_inverse(a: [u8; 4], ell: u8) -> [u8; 4] {
    let d = residue_det(a, ell);
    let di = local_field::fp::inv_mod(d, ell) as u16;
    let l = ell as u16;
    let neg = |x: u8| ((l - x as u16 % l) % l) as u8;
    let s = |x: u8| ((x as u16 * di) % l) as u8;
    [s(a[3]), s(neg(a[1])), s(neg(a[2])), s(a[0])]
}

/// The invertible residue matrices.
pub fn gl2_residues(ell: u8) -> Vec<[u8; 4]> {
    residue_matrices(ell).into_iter().filter(|&r| residue_det(r, ell) != 0).collect()
}

fn is_class_function(ell: u8, table: &[Cyc]) -> bool {
    let group = gl2_residues(ell);
    group.iter().all(|&g| {
        let gi = residue_inverse(g, ell);
        group.iter().all(|&h| {
            let c = residue_mul(residue_mul(g, h, ell), gi, ell);
            table[table_index(c, ell)] == table[table_index(h, ell)]
        })
    })
}

impl TestFunction for InflatedGroupFunction {
    fn prime(&self) -> u8 {
        self.ell
    }

    fn eval(&self, y: &Mat) -> Cyc {
        let Some(mu) = min_val(y) else { return Cyc::zero() };
        let (idx, r) = residue_index(y, mu, self.ell);
        if residue_det(r, self.ell) == 0 {
            return Cyc::zero();
        }
        let (order, e) = self.omega_t;
        Cyc::root_of_unity(order, e * mu).mul(&self.table[idx])
    }

    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc> {
        // with e > minval the scaled residue of every point equals the center's
        let mu = min_val(center)?;
        (e > mu).then(|| self.eval(center))
    }

    fn conjugation_level(&self) -> Option<i64> {
        self.class_function.then_some(0)
    }

    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64> {
        let d = base.det();
        if d.is_zero() || d.val().rem_euclid(2) == 1 {
            return None;
        }
        let mu = d.val() / 2;
        Some(mu.min(min_val(base)?) - min_val(dir)?)
    }

    fn supported_in_zk0(&self) -> bool {
        true
    }
}

/// The indicator of K_0.
#[derive(Clone, Copy, Debug)]
pub struct IndicatorK0 {
    pub ell: u8,
}

impl TestFunction for IndicatorK0 {
    fn prime(&self) -> u8 {
        self.ell
    }

    fn eval(&self, y: &Mat) -> Cyc {
        let inside = y.is_integral() && !y.det().is_zero() && y.det().val() == 0;
        Cyc::from_int(inside as i64)
    }

    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc> {
        let mu = min_val(center)?;
        if e >= 1 && mu >= 0 {
            return Some(self.eval(center));
        }
        // a non-integral entry below t^e survives every perturbation
        (mu < 0 && mu < e).then(Cyc::zero)
    }

    fn conjugation_level(&self) -> Option<i64> {
        Some(0)
    }

    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64> {
        Some(0.min(min_val(base)?) - min_val(dir)?)
    }

    fn supported_in_zk0(&self) -> bool {
        true
    }
}

/// The off-scalar part (y12, y21, y11 - y22), which vanishes exactly on F I.
fn off_scalar(y: &Mat) -> [FieldElement; 3] {
    [y.get(0, 1).clone(), y.get(1, 0).clone(), y.get(0, 0) - y.get(1, 1)]
}

fn off_scalar_val(y: &Mat) -> Valuation {
    off_scalar(y).iter().map(FieldElement::valuation).min().expect("three entries")
}

/// A function phi on gl_2(F_l) inflated to the Lie algebra: F(z I + Y) =
/// phi(Y mod t) for Y in M_2(O) and z in t^-1 F_l[t^-1], and 0 off F I + M_2(O).
/// The support is compact modulo the center; F is invariant under the
/// center exactly when phi is invariant under adding scalars.
#[derive(Clone, Debug)]
pub struct InflatedLieFunction {
    ell: u8,
    table: Vec<Cyc>,
    class_function: bool,
    scalar_invariant: bool,
}

impl InflatedLieFunction {
    pub fn new(ell: u8, table: Vec<Cyc>) -> Self {
        assert_eq!(table.len(), (ell as usize).pow(4));
        let scalar_invariant = residue_matrices(ell).into_iter().all(|r| {
            (1..ell).all(|c| {
                let s = [(r[0] + c) % ell, r[1], r[2], (r[3] + c) % ell];
                table[table_index(s, ell)] == table[table_index(r, ell)]
            })
        });
        let group = gl2_residues(ell);
        let class_function = group.iter().all(|&g| {
            let gi = residue_inverse(g, ell);
            residue_matrices(ell).into_iter().all(|h| {
                let c = residue_mul(residue_mul(g, h, ell), gi, ell);
                table[table_index(c, ell)] == table[table_index(h, ell)]
            })
        });
        Self { ell, table, class_function, scalar_invariant }
    }

    pub fn is_scalar_invariant(&self) -> bool {
        self.scalar_invariant
    }

    pub fn table(&self) -> &[Cyc] {
        &self.table
    }
}

impl TestFunction for InflatedLieFunction {
    fn prime(&self) -> u8 {
        self.ell
    }

    fn eval(&self, y: &Mat) -> Cyc {
        let z = polar_part(y.get(1, 1));
        let shifted = y.sub(&Mat::scalar(2, &z));
        if !shifted.is_integral() {
            return Cyc::zero();
        }
        let (idx, _) = residue_index(&shifted, 0, self.ell);
        self.table[idx].clone()
    }

    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc> {
        if e >= 1 {
            return Some(self.eval(center));
        }
        match off_scalar_val(center) {
            Valuation::Finite(v) if v < e => Some(Cyc::zero()),
            _ => None,
        }
    }

    fn conjugation_level(&self) -> Option<i64> {
        self.class_function.then_some(0)
    }

    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64> {
        let d = off_scalar_val(dir).finite()?;
        let b = match off_scalar_val(base) {
            Valuation::Finite(v) => v.min(0),
            Valuation::Infinity => 0,
        };
        Some(b - d)
    }
}

/// The part of x with negative exponents.
fn polar_part(x: &FieldElement) -> FieldElement {
    let p = x.prime();
    match x.valuation() {
        Valuation::Finite(v) if v < 0 => {
            let c: Vec<i64> = x.series(v, 0).into_iter().map(i64::from).collect();
            FieldElement::laurent(p, v, &c)
        }
        _ => FieldElement::zero(p),
    }
}

/// A function on G^ad, with certificates on translated cells left K_j right.
pub trait AdFunction: Sync {
    fn prime(&self) -> u8;

    fn eval(&self, g: &GroupElement) -> Cyc;

    /// The common value on left K_j right, when it is constant there.
    fn constant_on(&self, left: &GroupElement, j: i64, right: &GroupElement) -> Option<Cyc>;
}

/// [g] -> m(g core g^-1), for core in G or in its Lie algebra.
pub struct ConjugationPullback<'a> {
    pub m: &'a dyn TestFunction,
    pub core: Mat,
}

impl<'a> ConjugationPullback<'a> {
    pub fn new(m: &'a dyn TestFunction, core: Mat) -> Self {
        Self { m, core }
    }
}

impl AdFunction for ConjugationPullback<'_> {
    fn prime(&self) -> u8 {
        self.m.prime()
    }

    fn eval(&self, g: &GroupElement) -> Cyc {
        self.m.eval(&self.core.conjugate_by(g))
    }

    fn constant_on(&self, left: &GroupElement, j: i64, right: &GroupElement) -> Option<Cyc> {
        let w = self.core.conjugate_by(right);
        if let Some(c) = self.m.conjugation_level() {
            if j >= c && left.in_k(c) {
                return Some(self.m.eval(&w));
            }
        }
        // u w u^-1 - w = [u - 1, w - w22] u^-1 only sees the off-scalar part of w
        let Valuation::Finite(off) = off_scalar_val(&w) else {
            return Some(self.m.eval(&w));
        };
        let spread = min_val(left.matrix())? + min_val(left.inv())?;
        let e = j + off + spread;
        self.m.constant_on_ball(&w.conjugate_by(left), e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_table() -> Vec<Cyc> {
        // sign of GL_2(F_2) = S_3: +1 on elements of order 1 or 3, -1 on involutions
        residue_matrices(2)
            .into_iter()
            .map(|r| {
                if residue_det(r, 2) == 0 {
                    return Cyc::zero();
                }
                let sq = residue_mul(r, r, 2);
                Cyc::from_int(if sq == [1, 0, 0, 1] && r != [1, 0, 0, 1] { -1 } else { 1 })
            })
            .collect()
    }

    #[test]
    fn inflation_values() {
        let f = InflatedGroupFunction::new(2, sign_table(), (1, 0));
        assert!(f.is_class_function());
        let p = 2;
        assert_eq!(f.eval(&Mat::identity(p, 2)), Cyc::one());
        assert_eq!(f.eval(&Mat::t_diag(p, &[1, 0])), Cyc::zero());
        assert_eq!(f.eval(&Mat::t_diag(p, &[3, 3])), Cyc::one());
        let swap = Mat::from_rows(vec![
            vec![FieldElement::zero(p), FieldElement::t_pow(p, -2)],
            vec![FieldElement::t_pow(p, -2), FieldElement::zero(p)],
        ]);
        assert_eq!(f.eval(&swap), Cyc::from_int(-1));
    }

    #[test]
    fn ball_certificates_are_sound() {
        let p = 2;
        let f = InflatedGroupFunction::new(2, sign_table(), (3, 1));
        let y = Mat::from_rows(vec![
            vec![FieldElement::laurent(p, -1, &[1, 1]), FieldElement::t_pow(p, 0)],
            vec![FieldElement::t_pow(p, -1), FieldElement::zero(p)],
        ]);
        let v = f.constant_on_ball(&y, 0).unwrap();
        for k in 0..16i64 {
            let mut pert = y.clone();
            let bits: Vec<i64> = (0..4).map(|b| (k >> b) & 1).collect();
            for (idx, &bit) in bits.iter().enumerate() {
                let e = pert.get(idx / 2, idx % 2) + &FieldElement::laurent(p, 0, &[bit]);
                pert.set(idx / 2, idx % 2, e);
            }
            assert_eq!(f.eval(&pert), v);
        }
        assert!(f.constant_on_ball(&y, -1).is_none());
    }

    #[test]
    fn lie_inflation_normalizes_the_center() {
        let bad: Vec<Cyc> = residue_matrices(2).into_iter().map(|r| Cyc::from_int(r[0] as i64)).collect();
        let f = InflatedLieFunction::new(2, bad);
        assert!(!f.is_scalar_invariant());
        let p = 2;
        // the polar part of the diagonal is the central component, the constant term is not
        let shift = |c: i64| Mat::scalar(2, &FieldElement::laurent(p, -2, &[1, 0, c]));
        assert_eq!(f.eval(&shift(0)), Cyc::zero());
        assert_eq!(f.eval(&shift(1)), Cyc::one());
        let good: Vec<Cyc> = residue_matrices(2).into_iter().map(|r| Cyc::from_int(r[1] as i64)).collect();
        let f = InflatedLieFunction::new(2, good);
        assert!(f.is_scalar_invariant());
        let p = 2;
        let x = Mat::from_rows(vec![
            vec![FieldElement::t_pow(p, -5), FieldElement::one(p)],
            vec![FieldElement::zero(p), FieldElement::t_pow(p, -5)],
        ]);
        assert_eq!(f.eval(&x), Cyc::one());
        let off = Mat::from_rows(vec![
            vec![FieldElement::t_pow(p, -5), FieldElement::t_pow(p, -1)],
            vec![FieldElement::zero(p), FieldElement::t_pow(p, -5)],
        ]);
        assert_eq!(f.eval(&off), Cyc::zero());
        assert_eq!(f.constant_on_ball(&off, 0), Some(Cyc::zero()));
    }
}
