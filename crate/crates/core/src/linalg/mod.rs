//! Hermitian linear algebra: band-aware storage, factorizations, dense and
//! bisection eigensolvers.

mod banded;
mod dense;
mod matrix;

pub use banded::{
    cholesky, cholesky_relative, count_below, inertia, inertia_of, pencil_eigenpair,
    pencil_eigenvalue, pencil_eigenvalue_within, Bracket, Inertia, LdlFactor, LowerTriangular,
};
pub use dense::{eig_generalized, eig_hermitian, EigenDecomposition, QL_ITERATIONS_PER_VALUE};
pub use matrix::{HermitianBuilder, HermitianMatrix};
