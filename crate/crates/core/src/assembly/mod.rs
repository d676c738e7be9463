//! Galerkin matrices: mass, the Schur form and its `mu`-derivative, and the
//! Gram matrices of shifted strong actions.

mod operators;
mod strong;

pub use operators::{CylinderOperator, SchurOperator, SlabBlockOperator};
pub use strong::{
    assemble_strong_pair, assemble_strong_pairs, strong_quotient_terms, StrongOperator, StrongPair,
};

use num_complex::Complex64;

use crate::discretization::BasisTable;
use crate::error::Result;
use crate::linalg::{HermitianBuilder, HermitianMatrix};
use crate::models::{schur_strong_coefficients, SlabProfile};

/// `<u_j, u_i>` with the given weight.
pub fn assemble_mass(basis: &BasisTable, weight: impl Fn(f64) -> f64) -> HermitianMatrix {
    let mut b = HermitianBuilder::new(basis.dim(), basis.bandwidth());
    for cell in basis.cells() {
        for q in 0..cell.len() {
            let wt = cell.weights[q] * weight(cell.points[q]);
            for (i, gi) in cell.dofs.iter().enumerate() {
                let vi = cell.jet(i, q)[0];
                for (j, gj) in cell.dofs.iter().enumerate() {
                    let vj = cell.jet(j, q)[0];
                    b.add(*gi, *gj, Complex64::new(wt * vi * vj, 0.0));
                }
            }
        }
    }
    b.build()
}

fn assemble_schur_form(
    profile: &SlabProfile,
    basis: &BasisTable,
    mu: f64,
    derivative: bool,
) -> Result<HermitianMatrix> {
    let mut b = HermitianBuilder::new(basis.dim(), basis.bandwidth());
    for cell in basis.cells() {
        for q in 0..cell.len() {
            let x = cell.points[q];
            let s = schur_strong_coefficients(profile, x, mu)?;
            let (p, beta, qq) = if derivative {
                (s.dp_dmu, s.dbeta_dmu, s.dq_dmu)
            } else {
                (s.p, s.beta, s.q)
            };
            let wt = cell.weights[q] * s.rho;
            for (i, gi) in cell.dofs.iter().enumerate() {
                let [vi, di, _] = cell.jet(i, q);
                for (j, gj) in cell.dofs.iter().enumerate() {
                    let [vj, dj, _] = cell.jet(j, q);
                    let v = p * dj * di - beta * (vj * di + dj * vi) + qq * vj * vi;
                    b.add(*gi, *gj, Complex64::new(wt * v, 0.0));
                }
            }
        }
    }
    Ok(b.build())
}

/// Galerkin matrix of the Schur form
/// `s(mu)[u, v] = <A u, v> - mu <u, v> - <(D - mu)^{-1} B* u, B* v>`.
pub fn assemble_schur(
    profile: &SlabProfile,
    basis: &BasisTable,
    mu: f64,
) -> Result<HermitianMatrix> {
    assemble_schur_form(profile, basis, mu, false)
}

/// Galerkin matrix of `d s(mu) / d mu
/// = -<u, v> - <(D - mu)^{-1} B* u, (D - mu)^{-1} B* v>`.
pub fn assemble_schur_derivative(
    profile: &SlabProfile,
    basis: &BasisTable,
    mu: f64,
) -> Result<HermitianMatrix> {
    assemble_schur_form(profile, basis, mu, true)
}
