//! Norm values of the form l^e with a rational exponent e >= 0.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::Q;

/// A norm value l^exponent. Every norm in this workspace has this shape, and
/// exponents may be fractional (root norms of ramified polynomials), so the
/// exponent is what gets stored and compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormValue {
    exponent: Q,
    ell: u8,
}

impl NormValue {
    /// l^e, clamped below at 1 (norms are >= 1).
    pub fn new(ell: u8, exponent: Q) -> Self {
        Self { ell, exponent: if exponent < Q::zero() { Q::zero() } else { exponent } }
    }

    pub fn from_int_exponent(ell: u8, e: i64) -> Self {
        Self::new(ell, Q::from_integer(e as i128))
    }

    pub fn one(ell: u8) -> Self {
        Self::new(ell, Q::zero())
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    /// log_l of the norm.
    pub fn exponent(&self) -> Q {
        self.exponent
    }

    pub fn max(self, o: Self) -> Self {
        if o.exponent > self.exponent {
            o
        } else {
            self
        }
    }

    /// The exact value when the exponent is an integer.
    pub fn as_rational(&self) -> Option<Q> {
        self.exponent.is_integer().then(|| crate::ell_pow(self.ell, self.exponent.to_integer() as i64))
    }

    pub fn to_f64(&self) -> f64 {
        let e = self.exponent.numer().to_f64().unwrap_or(f64::NAN) / self.exponent.denom().to_f64().unwrap_or(f64::NAN);
        (self.ell as f64).powf(e)
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}^({})", self.ell, self.exponent),
        }
    }
}
