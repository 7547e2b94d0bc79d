//! Exact polynomial algebra over F = F_l(t): resultants and discriminants,
//! Newton polygons and root norms, factorization over F_l((t)), the
//! division/inverse morphisms and the relative Chinese remainder maps.

pub mod crt;
pub mod factor;
pub mod linalg;
pub mod newton;
pub mod norms;
pub mod poly;
pub mod resultant;

pub use crt::{crt_join, crt_split, poly_divmod, poly_modinv};
pub use factor::{factor_local, quadratic_criterion, LocalFactor, LocalFactorization};
pub use newton::{NewtonPolygon, Segment};
pub use norms::{
    algebra_module_norm, c_norm_exponent, c_rss_norm_exponent, delta_root_norm, root_norm, s_norms, ModuleNorm,
    PairSpace, SNorms,
};
pub use poly::{fe, MonicPoly, Poly};
pub use resultant::{discriminant, norm_via_multiplication, resultant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial vanishes at 0, so it is not a point of C")]
    NotInC,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("polynomial is inseparable (zero discriminant)")]
    Inseparable,
    #[error("precision insufficient to certify the factorization")]
    PrecisionInsufficient,
}
