//! Dense univariate polynomials with coefficients in F = F_l(t).

use std::fmt;
use std::ops::Deref;

use local_field::{FieldElement, Valuation};

use crate::PolyError;

/// Polynomial over F, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u8,
    c: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(p: u8) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u8) -> Self {
        Self::constant(FieldElement::one(p))
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::new(a.prime(), vec![a])
    }

    /// The variable x.
    pub fn x(p: u8) -> Self {
        Self::new(p, vec![FieldElement::zero(p), FieldElement::one(p)])
    }

    /// x - a.
    pub fn linear(a: &FieldElement) -> Self {
        let p = a.prime();
        Self::new(p, vec![-a, FieldElement::one(p)])
    }

    pub fn new(p: u8, mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(FieldElement::is_zero) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| FieldElement::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> FieldElement {
        self.c.last().cloned().unwrap_or_else(|| FieldElement::zero(self.p))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(FieldElement::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &FieldElement) -> Self {
        Self::new(self.p, self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![FieldElement::zero(self.p); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::new(self.p, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        if self.c.len() <= dd {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let inv = d.leading().inv();
        let mut r = self.c.clone();
        let mut q = vec![FieldElement::zero(self.p); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&f * b);
            }
            q[k] = f;
        }
        r.truncate(dd);
        Ok((Self::new(self.p, q), Self::new(self.p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, PolyError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Extended gcd: (g, u, v) with u*self + v*o = g and g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * &FieldElement::from_int(self.p, i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.c.iter().rev().fold(FieldElement::zero(self.p), |acc, a| &(&acc * x) + a)
    }

    /// f(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        self.c.iter().rev().fold(Self::zero(self.p), |acc, a| acc.mul(g).add(&Self::constant(a.clone())))
    }

    /// f(x + c).
    pub fn shift(&self, c: &FieldElement) -> Self {
        self.compose(&Self::new(self.p, vec![c.clone(), FieldElement::one(self.p)]))
    }

    /// Smallest coefficient valuation (Infinity for zero).
    pub fn min_valuation(&self) -> Valuation {
        self.c.iter().map(FieldElement::valuation).min().unwrap_or(Valuation::Infinity)
    }

    /// Every coefficient truncated mod t^k.
    pub fn truncate(&self, k: i64) -> Self {
        Self::new(self.p, self.c.iter().map(|a| a.truncate(k)).collect())
    }

    /// Newton interpolation through (x_i, y_i) with distinct nodes.
    pub fn interpolate(p: u8, pts: &[(FieldElement, FieldElement)]) -> Self {
        let n = pts.len();
        let mut dd: Vec<FieldElement> = pts.iter().map(|(_, y)| y.clone()).collect();
        for k in 1..n {
            for i in (k..n).rev() {
                dd[i] = &(&dd[i] - &dd[i - 1]) / &(&pts[i].0 - &pts[i - k].0);
            }
        }
        let mut out = Self::zero(p);
        for i in (0..n).rev() {
            out = out.mul(&Self::linear(&pts[i].0)).add(&Self::constant(dd[i].clone()));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if a.is_one() && i > 0 { String::new() } else { format!("({a})") };
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monic polynomial of degree at least 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(f: Poly) -> Result<Self, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !f.is_monic() {
            return Err(PolyError::NotMonic);
        }
        Ok(Self(f))
    }

    /// x^k + c_{k-1} x^{k-1} + ... + c_0 from the lower coefficients.
    pub fn from_lower(p: u8, lower: Vec<FieldElement>) -> Self {
        let mut c = lower;
        c.push(FieldElement::one(p));
        Self(Poly::new(p, c))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    /// A point of C: degree n and f(0) != 0.
    pub fn in_c(&self, n: usize) -> bool {
        self.0.deg() == n && !self.0.coeff(0).is_zero()
    }
}

impl Deref for MonicPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Shorthand for tests and examples: Laurent coefficients lo..., as `FieldElement`s.
pub fn fe(p: u8, lo: i64, c: &[i64]) -> FieldElement {
    FieldElement::laurent(p, lo, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let p = 3;
        let f = Poly::new(p, vec![fe(p, -1, &[1]), fe(p, 0, &[2, 1]), FieldElement::one(p)]);
        let g = Poly::new(p, vec![fe(p, 2, &[1]), fe(p, 0, &[1]), fe(p, 0, &[0, 1]), FieldElement::one(p)]);
        let (q, r) = g.divrem(&f).unwrap();
        assert_eq!(q.mul(&f).add(&r), g);
        assert!(r.deg() < 2);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = 2;
        let f = Poly::new(p, vec![fe(p, 0, &[1, 1]), fe(p, -1, &[1]), FieldElement::zero(p), fe(p, 0, &[0, 0, 1])]);
        let pts: Vec<_> = (1..=4).map(|k| (fe(p, k, &[1]), f.eval(&fe(p, k, &[1])))).collect();
        assert_eq!(Poly::interpolate(p, &pts), f);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = 2;
        let f = MonicPoly::from_lower(p, vec![fe(p, 1, &[1]), FieldElement::one(p)]);
        let c = fe(p, 0, &[1, 1]);
        let g = f.shift(&c);
        let z = fe(p, -2, &[1, 0, 1]);
        assert_eq!(g.eval(&z), f.eval(&(&z + &c)));
    }
}
