//! Exact elements of cyclotomic fields Q(zeta_m), with a complex evaluation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Q;

/// Integer coefficients of the m-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return v.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclotomic_poly(d);
            num = div_monic(&num, &phi);
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Element of Q(zeta_order) in the power basis 1, zeta, ..., zeta^(phi-1).
#[derive(Clone)]
pub struct Cyc {
    order: u32,
    coeffs: Vec<Q>,
}

impl Cyc {
    pub fn zero() -> Self {
        Self { order: 1, coeffs: vec![Q::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_rational(q: Q) -> Self {
        Self { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rational(Q::from_integer(a as i128))
    }

    /// zeta_m^e for the fixed primitive root zeta_m = exp(2 pi i / m).
    pub fn root_of_unity(m: u32, e: i64) -> Self {
        let mut c = vec![Q::zero(); m as usize];
        c[e.rem_euclid(m as i64) as usize] = Q::one();
        Self::reduce(m, c)
    }

    fn reduce(order: u32, mut c: Vec<Q>) -> Self {
        let phi = cyclotomic_poly(order);
        let d = phi.len() - 1;
        for k in (d..c.len()).rev() {
            let lead = c[k];
            if lead.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate() {
                c[k - d + j] -= lead * Q::from_integer(pj as i128);
            }
        }
        c.truncate(d.max(1));
        c.resize(d.max(1), Q::zero());
        Self { order, coeffs: c }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Re-express inside Q(zeta_big), where `order` divides `big`.
    pub fn lift(&self, big: u32) -> Self {
        if big == self.order {
            return self.clone();
        }
        assert!(big % self.order == 0, "cannot lift order {} into {}", self.order, big);
        let step = (big / self.order) as usize;
        let mut c = vec![Q::zero(); big as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[(i * step) % big as usize] += a;
        }
        Self::reduce(big, c)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: Q) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|&c| c * q).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.order == o.order {
            return Self { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() };
        }
        let (a, b) = Self::common(self, o);
        Cyc::add(&a, &b)
    }

    pub fn neg(&self) -> Self {
        self.scale(-Q::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.order != o.order {
            let (a, b) = Self::common(self, o);
            return Cyc::mul(&a, &b);
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::reduce(self.order, c)
    }

    /// Complex conjugate (zeta -> zeta^-1).
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut c = vec![Q::zero(); m.max(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[(m - i % m) % m] += a;
        }
        Self::reduce(self.order, c)
    }

    /// The rational number this element equals, if it is rational.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// |z|^2 = z * conj(z), always a (real) rational-coefficient element.
    pub fn abs_squared(&self) -> Self {
        self.mul(&self.conj())
    }

    /// |z| exactly when it is rational.
    pub fn abs_rational(&self) -> Option<Q> {
        let sq = self.abs_squared().as_rational()?;
        let (n, d) = (sq.numer(), sq.denom());
        let (rn, rd) = (isqrt(*n)?, isqrt(*d)?);
        Some(Q::new(rn, rd))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i128;
    (r.saturating_sub(1)..=r + 1).find(|x| x >= &0 && x * x == n)
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = Self::common(self, o);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

impl std::iter::Sum for Cyc {
    fn sum<I: Iterator<Item = Cyc>>(iter: I) -> Cyc {
        iter.fold(Cyc::zero(), |a, b| Cyc::add(&a, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
    }

    #[test]
    fn roots_sum_to_zero() {
        let s: Cyc = (0..8).map(|e| Cyc::root_of_unity(8, e)).sum();
        assert!(s.is_zero());
        let z3 = Cyc::root_of_unity(3, 1);
        assert_eq!(z3.mul(&z3).mul(&z3), Cyc::one());
        assert_eq!(Cyc::root_of_unity(8, 4), Cyc::from_int(-1));
        // zeta_4 = zeta_8^2 across orders
        assert_eq!(Cyc::root_of_unity(4, 1), Cyc::root_of_unity(8, 2));
    }

    #[test]
    fn abs_values() {
        let z = Cyc::root_of_unity(8, 3).scale(Q::from_integer(2));
        assert_eq!(z.abs_rational(), Some(Q::from_integer(2)));
        let w = Cyc::root_of_unity(8, 1).add(&Cyc::root_of_unity(8, 3));
        // |zeta + zeta^3| = sqrt 2 is irrational
        assert_eq!(w.abs_rational(), None);
        assert!((w.abs_f64() - 2f64.sqrt()).abs() < 1e-12);
    }
}
