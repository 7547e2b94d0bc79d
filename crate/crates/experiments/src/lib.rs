//! Experiment suites over the GL_2 kernel: exact identities, cuspidality,
//! norm equivalence, vanishing and stabilization scans, orbital bounds,
//! centralizer volumes and a Monte Carlo cross-check. Each suite returns a
//! [`report::SuiteReport`]; [`run::execute`] writes its CSV tables and a JSON
//! manifest.

pub mod config;
pub mod cuspidality;
pub mod families;
pub mod fit;
pub mod identities;
pub mod mc;
pub mod norm_equiv;
pub mod orbital_bound;
pub mod report;
pub mod run;
pub mod sampling;
pub mod stabilize;
pub mod vanishing;
pub mod volumes;

pub use config::{ConfigError, ExperimentConfig, RunMode, Suite};
pub use report::{Check, SuiteReport};
pub use run::{execute, run_suite, RunManifest};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("family {0} has no member at k = {1}")]
    EmptyFamily(&'static str, i64),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("output: {0}")]
    Output(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Haar(#[from] haar::HaarError),
    #[error(transparent)]
    Cuspidal(#[from] cuspidal::CuspidalError),
    #[error(transparent)]
    Group(#[from] gl_group::GroupError),
    #[error(transparent)]
    Norm(#[from] norm_zoo::NormError),
    #[error(transparent)]
    Poly(#[from] poly_lab::PolyError),
}

impl ExperimentError {
    /// 2 for configuration and scale problems, 1 for anything raised while a
    /// suite was running.
    pub fn exit_code(&self) -> i32 {
        use haar::HaarError;
        match self {
            ExperimentError::Config(_) | ExperimentError::Unsupported(_) => 2,
            ExperimentError::Haar(HaarError::ScaleLimit(_)) => 2,
            ExperimentError::Cuspidal(cuspidal::CuspidalError::UnsupportedPrime(_)) => 2,
            _ => 1,
        }
    }
}
