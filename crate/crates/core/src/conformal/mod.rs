//! Graded lambda-bracket (OPE) calculus over the affine algebras: normal
//! ordered products, the Sugawara construction, and extraction of the graded
//! Virasoro relations with their central charges.

mod field;
mod lambda;
mod modes;
mod sugawara;

pub use field::{Atom, FieldExpr, Word};
pub use lambda::{LambdaPoly, VertexAlgebra};
pub use modes::{mode_bracket, mode_convert, place_word, ModeBracket, ModePoly};
pub use sugawara::{
    sugawara_system, tilde_table, virasoro_check, xl_ope_check, ConformalError, CurrentAlgebra,
    Level, SugawaraSystem, TildeTable, VirasoroPair, VirasoroReport, XlOpeDiff,
};
