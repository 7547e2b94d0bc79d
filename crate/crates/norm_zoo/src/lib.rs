//! A registry of named norms on the spaces used by the workbench (F, F^k,
//! C, C^rss, G, G^rss, G^ad, G/A, pair spaces S, commuting pairs), the
//! pushforward norms along G -> G^ad and G -> G/A, an empirical equivalence
//! fit, and constructive norm-descent witnesses.
//!
//! Every norm value is l^e with e >= 0 and is handled through its exponent.

pub mod exec;
pub mod fit;
pub mod ndp;
pub mod pushforward;
pub mod registry;
pub mod samplers;

pub use exec::{ordered_map, Exec};
pub use fit::{fit_equivalence, EquivalenceReport, FitConfig, FitPass};
pub use ndp::{block_companion, ndp_witness, NdpMap, NdpWitness};
pub use pushforward::{pushforward_center, pushforward_torus};
pub use registry::{eval_norm, Domain, NormEvaluator, Point, REGISTRY};
pub use samplers::Sampler;

use gl_group::GroupError;
use poly_lab::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormError {
    #[error("unknown norm `{0}`")]
    UnknownNorm(String),
    #[error("point does not lie in the domain {0}")]
    DomainMismatch(Domain),
    #[error("element is not regular semisimple")]
    NotRegularSemisimple,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("target is not in the image of the map")]
    NotInImage,
    #[error("local factors are truncated series, so no exact block preimage exists")]
    InexactFactorization,
    #[error("every sampled norm value equals 1")]
    DegenerateSample,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
