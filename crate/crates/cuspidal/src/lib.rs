//! Cuspidal test functions for GL_2(F), F = F_l((t)).
//!
//! Group functions are depth-zero: the character of a cuspidal
//! representation of GL_2(F_l) inflated to Z K_0 with a central character.
//! Lie algebra functions are cuspidal functions on gl_2(F_l), computed as a
//! rational null space, inflated to F I + M_2(O).

pub mod adapted;
pub mod character;
pub mod check;
pub mod depth_zero;
pub mod lie;

pub use adapted::{pullback_adapted, AdaptedFunction, Torus};
pub use character::{build_cuspidal_character, ClassType, CuspidalCharacterTable};
pub use check::{check_cuspidal, check_cuspidal_lie, standard_radicals, CuspidalReport, Radical};
pub use depth_zero::{compatible_central_character, depth_zero_function, CentralCharacter, DepthZeroFunction};
pub use lie::{finite_lie_cuspidal, FiniteLieCuspidal};

use gl_group::GroupError;
use haar::HaarError;
use local_field::LocalFieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CuspidalError {
    #[error("character index {0} is fixed by Frobenius")]
    NotRegularCharacter(i64),
    #[error("central character does not match the table on O^x")]
    IncompatibleCentralCharacter,
    #[error("constructed table failed its orthogonality or cuspidality check")]
    VerificationFailed,
    #[error("no cuspidal function in the searched space")]
    NullSpaceEmpty,
    #[error("finite Lie cuspidal functions are built for q in {{2, 3}}, got {0}")]
    UnsupportedPrime(u8),
    #[error("element is not regular elliptic in G or regular diagonal")]
    NotEllipticInLevi,
    #[error(transparent)]
    Haar(#[from] HaarError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] LocalFieldError),
}
