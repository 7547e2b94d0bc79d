//! The group G = GL_n(F) and its Lie algebra over F = F_l(t): characteristic
//! polynomials and ov-norms, Cartan decomposition, companion sections and
//! conjugators, the centralizer map, standard tori, depth and ellipticity.

pub mod cartan;
pub mod companion;
pub mod mat;
pub mod ov;
pub mod torus;

pub use cartan::{smith_cartan, Cartan};
pub use companion::{
    central_reduction, centralizer_norm, centralizer_poly, companion, companion_section, conjugator, eval_at,
    first_regular_section, probe_vector, Conjugator,
};
pub use mat::{GroupElement, LieElement, Mat};
pub use ov::{char_poly, disc, is_regular_semisimple, norm_g, ov_adjoint, ov_g, ov_grss, ov_quotient, quotient_minimizer};
pub use torus::{
    commutator, contraction_valuation, depth, dynamic_subgroups, is_elliptic_in_levi, is_elliptic_poly,
    lie_commutator, Composition, UnipotentSpec,
};

use poly_lab::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("element is not regular semisimple")]
    NotRegularSemisimple,
    #[error("vector is not cyclic for the matrix")]
    NotVRegular,
    #[error("characteristic polynomials differ")]
    NotConjugate,
    #[error("elements do not commute")]
    NotCommuting,
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
