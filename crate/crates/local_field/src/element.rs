//! Elements of F_l(t) as reduced fractions, with the t-adic valuation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::fp::{inv_mod, FpPoly};
use crate::Q;

/// t-adic valuation: an integer, or +infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// An element num/den of F_l(t), stored with gcd(num, den) = 1 and den monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: FpPoly,
    den: FpPoly,
}

impl FieldElement {
    pub fn zero(p: u8) -> Self {
        Self { num: FpPoly::zero(p), den: FpPoly::one(p) }
    }

    pub fn one(p: u8) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u8, a: i64) -> Self {
        Self::from_poly(FpPoly::from_ints(p, &[a]))
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.prime();
        Self { num, den: FpPoly::one(p) }
    }

    /// `t^k` for any integer k.
    pub fn t_pow(p: u8, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(FpPoly::monomial(p, k as usize))
        } else {
            Self { num: FpPoly::one(p), den: FpPoly::monomial(p, (-k) as usize) }
        }
    }

    /// Laurent polynomial sum c_i t^(lo + i).
    pub fn laurent(p: u8, lo: i64, c: &[i64]) -> Self {
        let poly = Self::from_poly(FpPoly::from_ints(p, c));
        poly * Self::t_pow(p, lo)
    }

    /// Builds num/den and reduces; panics if den is zero.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(num.prime());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.divrem(&g).0, den.divrem(&g).0) };
        let lc = d.leading();
        if lc != 1 {
            let inv = inv_mod(lc, d.prime());
            n = n.scale(inv);
            d = d.scale(inv);
        }
        let out = Self { num: n, den: d };
        debug_assert!(out.is_reduced());
        out
    }

    /// Checks the storage invariant (used by assertions and tests).
    pub fn is_reduced(&self) -> bool {
        self.den.leading() == 1 && (self.num.is_zero() && self.den.is_one() || self.num.gcd(&self.den).is_one())
    }

    pub fn prime(&self) -> u8 {
        self.num.prime()
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a power of t (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.coeffs().iter().rev().skip(1).all(|&c| c == 0)
    }

    pub fn valuation(&self) -> Valuation {
        match self.num.t_order() {
            None => Valuation::Infinity,
            Some(a) => Valuation::Finite(a as i64 - self.den.t_order().unwrap_or(0) as i64),
        }
    }

    /// Finite valuation; panics on zero.
    pub fn val(&self) -> i64 {
        self.valuation().finite().expect("valuation of zero")
    }

    /// |x| = l^(-val x), and |0| = 0.
    pub fn abs_value(&self) -> Q {
        match self.valuation() {
            Valuation::Infinity => Q::zero(),
            Valuation::Finite(v) => crate::ell_pow(self.prime(), -v),
        }
    }

    /// ||x||_F = max(|x|, 1).
    pub fn norm_f(&self) -> Q {
        let a = self.abs_value();
        if a > Q::one() {
            a
        } else {
            Q::one()
        }
    }

    /// Exponent e with ||x||_F = l^e, i.e. max(-val x, 0).
    pub fn norm_exponent(&self) -> i64 {
        match self.valuation() {
            Valuation::Infinity => 0,
            Valuation::Finite(v) => (-v).max(0),
        }
    }

    /// Coefficients of the t-adic expansion on exponents lo..hi (hi exclusive).
    pub fn series(&self, lo: i64, hi: i64) -> Vec<u8> {
        if hi <= lo {
            return Vec::new();
        }
        if self.is_zero() {
            return vec![0; (hi - lo) as usize];
        }
        let dv = self.den.t_order().unwrap_or(0);
        let nv = self.num.t_order().unwrap_or(0);
        let v = nv as i64 - dv as i64;
        let unit_den = self.den.shift_down(dv);
        let unit_num = self.num.shift_down(nv);
        let mut out = vec![0u8; (hi - lo) as usize];
        if hi <= v {
            return out;
        }
        let len = (hi - v) as usize;
        let s = unit_num.mul(&unit_den.series_inverse(len)).truncated(len);
        for (k, slot) in out.iter_mut().enumerate() {
            let e = lo + k as i64 - v;
            if e >= 0 {
                *slot = s.coeff(e as usize);
            }
        }
        out
    }

    /// Laurent polynomial on exponents [val x, k) congruent to x mod t^k.
    pub fn truncate(&self, k: i64) -> FieldElement {
        let p = self.prime();
        let v = match self.valuation() {
            Valuation::Infinity => return Self::zero(p),
            Valuation::Finite(v) => v,
        };
        if v >= k {
            return Self::zero(p);
        }
        let c: Vec<i64> = self.series(v, k).into_iter().map(i64::from).collect();
        Self::laurent(p, v, &c)
    }

    /// First nonzero expansion coefficient (the angular component); 0 for zero.
    pub fn leading_coeff(&self) -> u8 {
        match self.valuation() {
            Valuation::Infinity => 0,
            Valuation::Finite(v) => self.series(v, v + 1)[0],
        }
    }

    /// Reduction mod t of an element of O (val >= 0).
    pub fn residue(&self) -> u8 {
        self.series(0, 1)[0]
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.prime());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Substitute t -> c*t for a residue c (used for random symmetry checks).
    pub fn scale_t(&self, c: u8) -> FieldElement {
        let p = self.prime();
        let sub = |f: &FpPoly| {
            let mut pow = 1u16;
            let mut out = Vec::with_capacity(f.coeffs().len());
            for &a in f.coeffs() {
                out.push((a as u16 * pow % p as u16) as u8);
                pow = pow * c as u16 % p as u16;
            }
            FpPoly::from_coeffs(p, out)
        };
        Self::new(sub(&self.num), sub(&self.den))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return FieldElement::new(self.num.add(&o.num), self.den.clone());
        }
        FieldElement::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero(self.prime());
        }
        if self.den.is_one() && o.den.is_one() {
            return FieldElement::from_poly(self.num.mul(&o.num));
        }
        FieldElement::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        assert!(!o.is_zero(), "division by zero");
        FieldElement::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// ||(x_1, ..., x_k)||_{F^k}: coordinatewise max of ||x_i||_F.
pub fn norm_fk(xs: &[FieldElement]) -> Q {
    xs.iter().map(FieldElement::norm_f).max().unwrap_or_else(Q::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u8) -> FieldElement {
        FieldElement::t_pow(p, 1)
    }

    #[test]
    fn valuation_examples() {
        let p = 2;
        assert_eq!(FieldElement::zero(p).valuation(), Valuation::Infinity);
        let one = FieldElement::one(p);
        let x = FieldElement::t_pow(p, 3) / (&one + &t(p));
        assert_eq!(x.valuation(), Valuation::Finite(3));
        let y = (&one + &t(p)) / FieldElement::t_pow(p, 2);
        assert_eq!(y.valuation(), Valuation::Finite(-2));
    }

    #[test]
    fn abs_and_norm_examples() {
        let p = 2;
        let one = FieldElement::one(p);
        assert_eq!(t(p).abs_value(), Q::new(1, 2));
        assert_eq!((&one + &t(p)).abs_value(), Q::one());
        assert_eq!(FieldElement::t_pow(p, -2).abs_value(), Q::from_integer(4));
        assert_eq!(FieldElement::t_pow(p, -2).norm_f(), Q::from_integer(4));
        assert_eq!(FieldElement::t_pow(p, 3).norm_f(), Q::one());
        let v = [FieldElement::t_pow(p, -1), one.clone(), t(p)];
        assert_eq!(norm_fk(&v), Q::from_integer(2));
    }

    #[test]
    fn truncate_examples() {
        let p = 2;
        let one = FieldElement::one(p);
        let x = &one / &(&one + &t(p));
        assert_eq!(x.truncate(3), FieldElement::laurent(p, 0, &[1, 1, 1]));
        assert!(FieldElement::t_pow(p, 2).truncate(2).is_zero());
        assert!(FieldElement::zero(p).truncate(5).is_zero());
    }

    #[test]
    fn negative_truncation_keeps_polar_part() {
        let p = 3;
        let x = FieldElement::laurent(p, -2, &[1, 0, 2]) / FieldElement::laurent(p, 0, &[1, 1]);
        let tr = x.truncate(4);
        let diff = &x - &tr;
        assert!(diff.valuation() >= Valuation::Finite(4));
    }
}
