//! Hard Lefschetz and Hodge–Riemann verification on compact complex tori.
//!
//! Cohomology of an `n`-dimensional torus is the exterior algebra on
//! `dz_1, …, dz_n, dz̄_1, …, dz̄_n`, so every statement about complete
//! intersections of nef (1,1) classes reduces to finite linear algebra.
//! The crate computes Lefschetz operators and Hodge–Riemann forms over exact
//! Gaussian rationals or double-precision complex numbers, checks the
//! subset-rank criterion for nef classes against direct computation, and
//! evaluates mixed discriminants and the inequalities they obey. A separate
//! module computes the defect of semismallness of a map from its
//! stratification data.

pub mod cli;
pub mod error;
pub mod exterior;
pub mod hodge;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod semismall;
pub mod torus;

pub use error::{Error, Result};
pub use exterior::{basis, ExteriorClass, HermitianForm, MultiIndex};
pub use hodge::{
    c_constant, hl_check, hr_check, hr_gram, hr_limit_scan, lefschetz_operator,
    orthogonal_decomposition_check, primitive_subspace, Verdict,
};
pub use linalg::{LinearAlgebra, Matrix, Signature};
pub use scalar::{Complex64, Field, GaussianRational, Mode, Scalar};
pub use semismall::{lef_of_sum, Stratification, Violation};
pub use torus::{
    af_inequality_check, hodge_index_signature, mixed_discriminant, numerical_dimension,
    subset_criterion, theorem_a_verify, VerifyPlan,
};
