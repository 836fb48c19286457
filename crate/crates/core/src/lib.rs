//! Exact-arithmetic workbench for finite metagroups and their algebras.

pub mod algebra;
pub mod cohomology;
pub mod constructions;
pub mod decomposition;
pub mod linalg;
pub mod metagroup;
pub mod workbench;
