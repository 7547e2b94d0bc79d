//! Exact arithmetic in F = F_l(t), a dense and exactly computable subfield of
//! F_l((t)), together with the t-adic valuation, finite-field towers F_{l^k}
//! and exact cyclotomic scalars.

pub mod cyclotomic;
pub mod element;
pub mod fp;
pub mod fq;
pub mod norm;

pub use cyclotomic::Cyc;
pub use element::{norm_fk, FieldElement, Valuation};
pub use fp::FpPoly;
pub use fq::{fq_character, FqElement, FqField};
pub use norm::NormValue;

/// Exact rationals used for measures, weights and norm exponents.
pub type Q = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalFieldError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("no fixed modulus for F_{{{p}^{k}}}")]
    UnsupportedField { p: u8, k: u32 },
    #[error("the fixed modulus for F_{{{p}^{k}}} does not give a generator")]
    NotAGenerator { p: u8, k: u32 },
}

/// l^e as an exact rational (e may be negative).
pub fn ell_pow(ell: u8, e: i64) -> Q {
    let base = Q::from_integer(ell as i128);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}
