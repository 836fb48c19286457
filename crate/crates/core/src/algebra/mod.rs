//! Finite-dimensional algebras given by structure constants, metagroup
//! algebras, enveloping algebras and two-sided modules.

mod bimodule;
mod enveloping;
mod grading;
mod structure;

pub use bimodule::Bimodule;
pub use enveloping::EnvelopingAlgebra;
pub use grading::{Grading, PsiEmbedding};
pub use structure::{build_metagroup_algebra, Algebra, Quotient};

/// Which module law failed on a basis triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionLaw {
    LeftAssociativity,
    RightAssociativity,
    Mixed,
    LeftUnit,
    RightUnit,
    MuLeftEquivariance,
    MuRightEquivariance,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("bad psi embedding: {0}")]
    BadEmbedding(String),
    #[error("action law {law:?} fails on basis triple ({x}, {y}, {u})")]
    ActionLawViolation {
        law: ActionLaw,
        x: usize,
        y: usize,
        u: usize,
    },
    #[error("subspace is not a two-sided ideal: product of basis elements {a} and {b} leaves it")]
    NotAnIdeal { a: usize, b: usize },
    #[error("quotient by the whole algebra has no unit")]
    TrivialQuotient,
    #[error("subspace is not closed under multiplication: product of basis elements {a} and {b} leaves it")]
    NotClosed { a: usize, b: usize },
    #[error("subspace does not contain the unit")]
    UnitMissing,
    #[error("unit vector is not a two-sided identity (fails on basis element {0})")]
    BadUnit(usize),
    #[error("change of basis matrix is not invertible")]
    NotInvertible,
    #[error("twisted associativity fails on basis triple ({0}, {1}, {2})")]
    TwistedAssociativity(usize, usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("submodule is not invariant under the action of basis element {x}")]
    NotSubmodule { x: usize },
}
