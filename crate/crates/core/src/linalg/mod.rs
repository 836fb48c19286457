//! Exact linear algebra over `ℚ` and `GF(p)`.

mod echelon;
mod field;
mod matrix;
mod modular;
pub mod sparse;
mod subspace;

pub use echelon::{dense_solution, Echelon, LinearSystem, Solution};
pub use field::{is_prime, Field, FieldElement};
pub use matrix::{kernel_basis, solve_linear_system, Matrix};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{Complement, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unrecognised field specification `{0}` (expected `q` or `gf:p`)")]
    BadField(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
}
