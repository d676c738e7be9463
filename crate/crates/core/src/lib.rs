//! Certified two-sided eigenvalue enclosures for block operators arising from
//! linearized ideal magnetohydrodynamics in slab and cylindrical geometry.
//!
//! Two routes are provided. For the slab, a Schur complement reduces the block
//! problem to a scalar family whose Galerkin eigenvalues give upper bounds, and a
//! residual pencil gives matching lower bounds. For general block operators (and
//! the cylinder), inverse residual bounds enclose the spectrum inside a chosen
//! interval.

// negated float comparisons reject NaN; index loops mirror the matrix formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod assembly;
pub mod cli;
pub mod discretization;
pub mod enclosure;
pub mod error;
pub mod linalg;
pub mod models;

pub use error::{Error, Result};
pub use num_complex::Complex64;
