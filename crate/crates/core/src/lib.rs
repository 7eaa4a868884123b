//! Exact computations with edge ideals and monomial ideals: integral closures
//! and symbolic powers, Stanley–Reisner complexes, degree complexes and
//! Castelnuovo–Mumford regularity over any prime field or the rationals.

pub mod closure;
pub mod error;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod monomial;
pub mod regularity;
pub mod sets;
pub mod simplicial;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::FieldSpec;
pub use monomial::{ExponentVec, MonomialIdeal};
pub use sets::VertexSet;
pub use simplicial::{ComplexState, SimplicialComplex};
