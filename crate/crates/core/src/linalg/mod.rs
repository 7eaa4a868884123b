//! Exact arithmetic: field selection, matrix rank and rational LP feasibility.

mod field;
mod lp;
mod matrix;

pub use field::{is_prime, FieldSpec};
pub use lp::lp_feasible_convex_cover;
pub use matrix::{ExactMatrix, SparseMatrix};
