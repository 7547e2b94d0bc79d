//! Dense polynomials in `t` over the prime field F_p.

use std::fmt;

/// Multiplicative inverse of a nonzero residue mod a small prime.
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    let (p32, mut base, mut e, mut acc) = (p as u32, a as u32 % p as u32, p as u32 - 2, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p32;
        }
        base = base * base % p32;
        e >>= 1;
    }
    acc as u8
}

/// Polynomial in `t` with coefficients in F_p, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u8,
    c: Vec<u8>,
}

impl FpPoly {
    pub fn zero(p: u8) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u8) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u8, a: u8) -> Self {
        Self::from_coeffs(p, vec![a % p])
    }

    /// `t^k`.
    pub fn monomial(p: u8, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self { p, c }
    }

    pub fn from_coeffs(p: u8, mut c: Vec<u8>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    /// Coefficients given as signed integers, reduced mod p.
    pub fn from_ints(p: u8, c: &[i64]) -> Self {
        Self::from_coeffs(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u8).collect())
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u8 {
        self.c.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at t = 0; `None` for zero.
    pub fn t_order(&self) -> Option<usize> {
        self.c.iter().position(|&x| x != 0)
    }

    /// Divide by `t^k`, which must divide exactly.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.c.iter().take(k).all(|&x| x == 0));
        Self { p: self.p, c: self.c.get(k..).map(|s| s.to_vec()).unwrap_or_default() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Self { p: self.p, c }
    }

    pub fn scale(&self, a: u8) -> Self {
        let p = self.p as u16;
        Self::from_coeffs(self.p, self.c.iter().map(|&x| ((x as u16 * a as u16) % p) as u8).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push((self.coeff(i) + o.coeff(i)) % self.p);
        }
        Self::from_coeffs(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { p, c: self.c.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u32;
        let mut acc = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += a as u32 * b as u32;
            }
            // keep the accumulators small for larger primes
            if p > 16 {
                for x in acc.iter_mut() {
                    *x %= p;
                }
            }
        }
        Self::from_coeffs(self.p, acc.into_iter().map(|x| (x % p) as u8).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p as u16;
        let inv = inv_mod(d.leading(), self.p) as u16;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u8; r.len() - dd];
        for k in (0..q.len()).rev() {
            let lead = r[k + dd] as u16;
            if lead == 0 {
                continue;
            }
            let f = (lead * inv % p) as u8;
            q[k] = f;
            for (j, &b) in d.c.iter().enumerate() {
                let sub = (f as u16 * b as u16) % p;
                r[k + j] = ((r[k + j] as u16 + p - sub) % p) as u8;
            }
        }
        r.truncate(dd);
        (Self::from_coeffs(self.p, q), Self::from_coeffs(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p as u32;
        Self::from_coeffs(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| ((i as u32 % p) * a as u32 % p) as u8).collect(),
        )
    }

    pub fn eval(&self, x: u8) -> u8 {
        let p = self.p as u16;
        self.c.iter().rev().fold(0u16, |acc, &a| (acc * x as u16 + a as u16) % p) as u8
    }

    /// Keep only the terms of degree < k.
    pub fn truncated(&self, k: usize) -> Self {
        Self::from_coeffs(self.p, self.c.iter().take(k).copied().collect())
    }

    /// Power-series inverse of a polynomial with nonzero constant term, mod t^k.
    pub fn series_inverse(&self, k: usize) -> Self {
        let c0 = self.coeff(0);
        assert!(c0 != 0, "series inverse needs a unit constant term");
        let p = self.p as u16;
        let inv0 = inv_mod(c0, self.p) as u16;
        let mut out = vec![0u8; k];
        for n in 0..k {
            // out[n] = -(sum_{i=1..n} c_i out[n-i]) / c0, with out[0] = 1/c0
            let mut s: u16 = if n == 0 { 1 } else { 0 };
            for i in 1..=n.min(self.c.len().saturating_sub(1)) {
                s = (s + p - (self.c[i] as u16 * out[n - i] as u16) % p) % p;
            }
            out[n] = (s * inv0 % p) as u8;
        }
        Self::from_coeffs(self.p, out)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let a = FpPoly::from_ints(3, &[1, 2, 0, 1, 2]);
        let b = FpPoly::from_ints(3, &[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let a = FpPoly::from_ints(2, &[1, 1, 0, 1]);
        let b = FpPoly::from_ints(2, &[1, 0, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn geometric_series() {
        let one_plus_t = FpPoly::from_ints(2, &[1, 1]);
        assert_eq!(one_plus_t.series_inverse(3), FpPoly::from_ints(2, &[1, 1, 1]));
    }
}
