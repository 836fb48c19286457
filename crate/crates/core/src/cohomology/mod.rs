//! Low-degree cohomology of an algebra with coefficients in a bimodule, Hom
//! spaces over the enveloping algebra, and separability certificates.

mod complex;
mod hom;
mod separable;

pub use complex::{
    allowed_cochains1, allowed_cochains2, delta1, delta1_matrix, delta1_matrix_with_sign, delta2,
    delta2_matrix, derivations, h1, h2, inner_derivations, inner_domain, inner_map, CoboundarySign,
    Cochain1, Cochain2, CohomologyResult,
};
pub use hom::{chi, chi_inverse, hom_over_enveloping, hom_system, restrict_to_kernel, Chi};
pub use separable::{
    right_translate, separating_idempotent, splitting_homomorphism, verify_separating_idempotent,
    IdentityFamily, IdentityReport, SeparabilityCertificate, Splitting,
};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("algebra is not separable: the separating idempotent system is inconsistent")]
    NotSeparable,
    #[error("no A^e-linear splitting of the multiplication map exists")]
    NoSplitting,
    #[error("argument outside the domain: {0}")]
    NotInDomain(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
