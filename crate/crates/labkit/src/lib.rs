//! labkit: exact symbolic tools for Lie algebra invariants and the missing
//! label problem.
//!
//! The crate provides, over exact Gaussian-rational arithmetic:
//!
//! * sparse multivariate polynomials on the dual of a Lie algebra, with a
//!   division-free characteristic polynomial for polynomial matrices;
//! * Lie algebras by structure constants: Jacobi validation, the adjoint
//!   polynomial matrix, generic invariant counting, the differential-operator
//!   realization and the Lie-Poisson (Berezin) bracket;
//! * the universal enveloping algebra in the PBW basis: normal ordering,
//!   symmetrization, projection, filtration, and a conservative
//!   factorizability certificate;
//! * reduction chains: missing-label counting, subgroup scalars, contraction
//!   grading, functional independence, and commutativity certificates that
//!   decide `[Lambda(f), Lambda(g)] = 0` through the Berezin bracket;
//! * an end-to-end verification pipeline for the chain
//!   sp(6) > su(3) x u(1): Casimir extraction from a 6x6 polynomial matrix,
//!   labelling operators from the contraction grading, and the pairwise
//!   bracket, scalar and independence checks.
//!
//! All randomized procedures (rank estimates, independence checks) take an
//! explicit seed and are deterministic for a fixed seed.
//!
//! Values are immutable after construction and every operation is a pure
//! function, so anything here can be called concurrently; normal-ordering
//! memo tables are per invocation.

pub mod algebra;
pub mod enveloping;
mod error;
pub mod ffield;
pub mod labeling;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod sp6;
pub mod text;

pub use algebra::{JacobiReport, LieAlgebra};
pub use enveloping::{
    certify_nonfactorizable, nc_commutator, nc_mul, normal_order, project, symmetrize,
    Factorizability, NCPoly, Word,
};
pub use error::Error;
pub use labeling::{
    certify_commuting, functional_independence, grading_split, mlp_count, validate_chain,
    CommutativityCertificate, MlpReport, OracleBudget, ReductionChain, Verdict,
};
pub use matrix::char_poly_det;
pub use poly::{Monomial, Poly};
pub use scalar::GaussScalar;
