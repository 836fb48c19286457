//! Radical, Wedderburn–Malcev splitting and conjugacy of complements.

mod conjugacy;
mod radical;
mod wedderburn;

pub use conjugacy::{conjugate_complements, nilpotent_inverse, ConjugacyResult};
pub use radical::{
    multiplication_algebra, nilpotency_index, radical, radical_by_trace, radical_exhaustive,
    radical_with_bound, RadicalResult, DEFAULT_DIMENSION_BOUND, EXHAUSTIVE_DIMENSION_BOUND,
};
pub use wedderburn::{
    obstruction_cocycle, solve_coboundary, wedderburn_decompose, DecompositionResult, Level,
};

use crate::algebra::AlgebraError;
use crate::cohomology::Cochain2;
use crate::linalg::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("algebra of dimension {dim} exceeds the bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("radical methods disagree: trace method gives dimension {trace}, exhaustive search gives {exhaustive}")]
    MethodDisagreement { trace: usize, exhaustive: usize },
    #[error("candidate radical is not a nilpotent ideal")]
    RadicalNotNilpotent,
    #[error("the ideal does not square to zero")]
    NotSquareZero,
    #[error("obstruction cocycle is not a coboundary at level {level}")]
    Obstructed { level: usize, phi: Cochain2 },
    #[error("not a complement of the radical: {0}")]
    NotComplement(String),
    #[error("difference of the splitting maps is not a derivation")]
    NotDerivation,
    #[error("the derivation between the complements is not inner")]
    NotInner { w: Vec<Vec<FieldElement>> },
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("1 - v has no one-sided inverse")]
    NoInverse,
    #[error("post-condition failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
