//! Exact decategorified combinatorics of finitary 2-categories.
//!
//! The crate works with multiplication tables of indecomposable 1-morphisms,
//! their cells, representation matrices, positive cell algebras and a small
//! finite-dimensional algebra workbench. All arithmetic is exact.

pub mod builders;
pub mod cells;
pub mod cone;
pub mod data;
pub mod findim;
pub mod io;
pub mod linalg;
pub mod multitable;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tworep;

pub use scalar::{Field, Scalar, ScalarError, Sign};
