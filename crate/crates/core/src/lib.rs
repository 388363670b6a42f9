//! Exact-arithmetic computer algebra for `Z2^n`-graded Lie superalgebras.
//!
//! The crate represents graded Lie superalgebras by structure constants over
//! `Q` and mechanically verifies the constructions built on top of them:
//!
//! * defining axioms (grading, graded skew-symmetry, graded Jacobi),
//! * the adjoint representation, graded supertrace and commutant matrices,
//! * graded invariant bilinear forms and second-order Casimir elements,
//! * loop algebras, classification of graded central extensions and
//!   graded derivations,
//! * a graded lambda-bracket calculus with normal ordered products, the
//!   Sugawara construction and the resulting graded Virasoro relations.
//!
//! All arithmetic is exact; equality checks are rational identities with no
//! tolerance.

pub mod affine;
pub mod algebra;
pub mod builtins;
pub mod conformal;
pub mod enveloping;
pub mod forms;
pub mod grade;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use algebra::{bracket, check_axioms, AlgebraElement, AlgebraError, AlgebraSpec};
pub use builtins::builtin;
pub use grade::Grade;
pub use scalar::Q;
