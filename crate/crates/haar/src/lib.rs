//! Exact Haar-measure integration on G = GL_2(F) and G^ad = PGL_2(F),
//! F = F_l((t)), with mu(K_0) = 1.
//!
//! Compact regions are decomposed into cosets of K_0 and indexed by vertices
//! of the Bruhat-Tits tree. Integrands are locally constant functions that
//! certify their own constancy on small cells, so integrals come out as exact
//! finite sums in a cyclotomic field.

pub mod cache;
pub mod cells;
pub mod centralizer;
pub mod enumerate;
pub mod functions;
pub mod integrals;
pub mod measure;
pub mod structure;
pub mod tree;

pub use cells::{integrate_k_ad, line_integral, ExactOptions, Tally};
pub use centralizer::{centralizer_ball_measure, centralizer_volume, elliptic_volume, quadratic_order, split_volume};
pub use enumerate::{enumerate_ball, sample_k0, CosetEnumeration};
pub use functions::{AdFunction, ConjugationPullback, IndicatorK0, InflatedGroupFunction, InflatedLieFunction, TestFunction};
pub use integrals::{
    averaging, averaging_lie, averaging_mc, averaging_profile, elementary, ki_translate_integral,
    lie_unipotent_integral, orbital_integral, pullback_unipotent_integral, radical_direction, unipotent_integral,
    Certificate, IntegralResult, Mode, Order,
};
pub use measure::{adjoint_ball_volume, ball_volume, cell_volume, mu_k};

use gl_group::GroupError;
use poly_lab::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HaarError {
    #[error("exact computation is implemented for n = 2 only (got n = {0})")]
    ScaleLimit(usize),
    #[error("cells still not certified constant at level {0}")]
    NonConvergedLevel(i64),
    #[error("pointwise values disagree with the certificate at level {0}")]
    LevelMismatch(i64),
    #[error("support is not compact modulo the center")]
    SupportUnbounded,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("integrand not supported by this integral")]
    UnsupportedIntegrand,
    #[error("absolute values of the integrand are not rational")]
    NonRationalAbs,
    #[error("monte carlo needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
