//! The finite fields F_{l^k} with fixed moduli and a verified generator.

use std::collections::HashMap;

use crate::cyclotomic::Cyc;
use crate::fp::FpPoly;
use crate::LocalFieldError;

/// Element of F_{l^k}: coordinates in the power basis of the level's modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqElement {
    pub level: u32,
    pub repr: FpPoly,
}

/// Fixed moduli, lowest coefficient first. For each level the class of `x`
/// generates the multiplicative group (checked in [`FqField::new`]).
fn modulus(p: u8, k: u32) -> Option<&'static [u8]> {
    Some(match (p, k) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    })
}

/// Arithmetic context for one level F_{l^k}, with discrete-log tables.
#[derive(Clone, Debug)]
pub struct FqField {
    p: u8,
    k: u32,
    modulus: FpPoly,
    exp: Vec<FpPoly>,
    log: HashMap<FpPoly, u32>,
}

impl FqField {
    pub fn new(p: u8, k: u32) -> Result<Self, LocalFieldError> {
        let m = modulus(p, k).ok_or(LocalFieldError::UnsupportedField { p, k })?;
        let modulus = FpPoly::from_coeffs(p, m.to_vec());
        let order = (p as u32).pow(k) - 1;
        let g = FpPoly::monomial(p, 1).rem(&modulus);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = HashMap::with_capacity(order as usize);
        let mut cur = FpPoly::one(p);
        for i in 0..order {
            if i > 0 && cur.is_one() {
                return Err(LocalFieldError::NotAGenerator { p, k });
            }
            log.insert(cur.clone(), i);
            exp.push(cur.clone());
            cur = cur.mul(&g).rem(&modulus);
        }
        if !cur.is_one() {
            return Err(LocalFieldError::NotAGenerator { p, k });
        }
        Ok(Self { p, k, modulus, exp, log })
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        (self.p as u32).pow(self.k)
    }

    /// Order of the multiplicative group.
    pub fn unit_order(&self) -> u32 {
        self.size() - 1
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    fn wrap(&self, repr: FpPoly) -> FqElement {
        FqElement { level: self.k, repr }
    }

    pub fn zero(&self) -> FqElement {
        self.wrap(FpPoly::zero(self.p))
    }

    pub fn one(&self) -> FqElement {
        self.wrap(FpPoly::one(self.p))
    }

    pub fn from_prime_field(&self, a: u8) -> FqElement {
        self.wrap(FpPoly::constant(self.p, a))
    }

    pub fn generator(&self) -> FqElement {
        self.wrap(self.exp[1 % self.exp.len()].clone())
    }

    /// g^e for the fixed generator g.
    pub fn gen_pow(&self, e: i64) -> FqElement {
        let n = self.unit_order() as i64;
        self.wrap(self.exp[e.rem_euclid(n) as usize].clone())
    }

    /// All field elements, zero first, then g^0, g^1, ...
    pub fn elements(&self) -> Vec<FqElement> {
        std::iter::once(self.zero()).chain(self.exp.iter().map(|e| self.wrap(e.clone()))).collect()
    }

    fn check(&self, a: &FqElement) {
        debug_assert_eq!(a.level, self.k, "cross-level operation needs an explicit embedding");
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.check(a);
        self.check(b);
        self.wrap(a.repr.add(&b.repr))
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.wrap(a.repr.sub(&b.repr))
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        self.wrap(a.repr.neg())
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.check(a);
        self.check(b);
        self.wrap(a.repr.mul(&b.repr).rem(&self.modulus))
    }

    pub fn pow(&self, a: &FqElement, e: u64) -> FqElement {
        if a.repr.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let l = self.dlog(a).expect("nonzero") as u64;
        self.gen_pow(((l * (e % self.unit_order() as u64)) % self.unit_order() as u64) as i64)
    }

    pub fn inv(&self, a: &FqElement) -> Result<FqElement, LocalFieldError> {
        let l = self.dlog(a)?;
        Ok(self.gen_pow(-(l as i64)))
    }

    /// Discrete log with respect to the fixed generator.
    pub fn dlog(&self, a: &FqElement) -> Result<u32, LocalFieldError> {
        self.log.get(&a.repr).copied().ok_or(LocalFieldError::ZeroInput)
    }

    pub fn frobenius(&self, a: &FqElement) -> FqElement {
        self.pow(a, self.p as u64)
    }

    /// Roots in this field of a polynomial with prime-field coefficients.
    pub fn roots(&self, poly: &FpPoly) -> Vec<FqElement> {
        self.elements()
            .into_iter()
            .filter(|x| {
                let mut acc = self.zero();
                for &c in poly.coeffs().iter().rev() {
                    acc = self.add(&self.mul(&acc, x), &self.from_prime_field(c));
                }
                acc.repr.is_zero()
            })
            .collect()
    }
}

/// u -> zeta^(m * dlog u) with zeta a primitive (l^k - 1)-th root of unity.
pub fn fq_character<'a>(field: &'a FqField, m: i64) -> impl Fn(&FqElement) -> Result<Cyc, LocalFieldError> + 'a {
    let order = field.unit_order();
    move |u| {
        let l = field.dlog(u)? as i64;
        Ok(Cyc::root_of_unity(order, m * l))
    }
}
