//! Matrices of shifted operators applied in strong form.

use num_complex::Complex64;

use crate::discretization::ProductBasis;
use crate::error::{Error, Result};
use crate::linalg::{HermitianBuilder, HermitianMatrix};

/// Operator whose action on a basis function can be evaluated pointwise.
///
/// Trial functions are vectors with a single nonzero component `comp`; the
/// operator returns all `n_components` entries of the image.
pub trait StrongOperator: Sync {
    /// Coefficients evaluated once per quadrature point.
    type Point;

    fn n_components(&self) -> usize;

    /// Weight of the inner product.
    fn weight(&self, x: f64) -> f64;

    fn point(&self, x: f64) -> Result<Self::Point>;

    /// Writes `T(phi e_comp)(x)` into `out` given the jet `(phi, phi', phi'')`.
    fn apply(&self, pt: &Self::Point, comp: usize, jet: [f64; 3], out: &mut [Complex64]);
}

/// Gram matrices of a shifted operator on a trial space.
#[derive(Debug, Clone)]
pub struct StrongPair {
    pub sigma: f64,
    /// `<(T - sigma) u_j, u_i>`
    pub p1: HermitianMatrix,
    /// `<(T - sigma) u_j, (T - sigma) u_i>`
    pub p2: HermitianMatrix,
    /// `<u_j, u_i>`
    pub mass: HermitianMatrix,
}

impl StrongPair {
    /// `<T u_j, u_i>`, recovered exactly from the shift identity.
    pub fn p1_unshifted(&self) -> HermitianMatrix {
        self.p1
            .add_scaled(self.sigma, &self.mass)
            .expect("pair matrices share a dimension")
    }
}

/// Assembles one pair per shift in a single sweep over the quadrature grid.
/// `P1(sigma)` is formed as `P1(0) - sigma * Mass`; `P2(sigma)` is integrated
/// directly from the pointwise residual `(T - sigma) u`.
pub fn assemble_strong_pairs<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    shifts: &[f64],
) -> Result<Vec<StrongPair>> {
    let k = op.n_components();
    if basis.n_components() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: basis.n_components(),
        });
    }
    let n = basis.dim();
    let bw = basis.bandwidth();
    let mut mass = HermitianBuilder::new(n, bw);
    let mut p10 = HermitianBuilder::new(n, bw);
    let mut p2: Vec<HermitianBuilder> = shifts
        .iter()
        .map(|_| HermitianBuilder::new(n, bw))
        .collect();

    // (component, local index in component cell, global index)
    let mut locals: Vec<(usize, usize, usize)> = Vec::new();
    let mut images: Vec<Complex64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut resid: Vec<Complex64> = Vec::new();

    for ci in 0..basis.n_cells() {
        locals.clear();
        for c in 0..k {
            let cell = &basis.component(c).cells()[ci];
            for (l, d) in cell.dofs.iter().enumerate() {
                locals.push((c, l, basis.global_index(c, *d)));
            }
        }
        let nl = locals.len();
        images.resize(nl * k, Complex64::new(0.0, 0.0));
        values.resize(nl, 0.0);
        resid.resize(nl * k, Complex64::new(0.0, 0.0));
        let cell0 = &basis.component(0).cells()[ci];
        for q in 0..cell0.len() {
            let x = cell0.points[q];
            let wt = cell0.weights[q] * op.weight(x);
            let pt = op.point(x)?;
            for (li, &(c, l, _)) in locals.iter().enumerate() {
                let jet = basis.component(c).cells()[ci].jet(l, q);
                values[li] = jet[0];
                op.apply(&pt, c, jet, &mut images[li * k..(li + 1) * k]);
            }
            for (i, &(ci_c, _, gi)) in locals.iter().enumerate() {
                for (j, &(cj_c, _, gj)) in locals.iter().enumerate() {
                    if ci_c == cj_c {
                        mass.add(gi, gj, Complex64::new(wt * values[i] * values[j], 0.0));
                    }
                    // <T u_j, u_i>: only component ci_c of u_i is nonzero
                    p10.add(gi, gj, images[j * k + ci_c] * (wt * values[i]));
                }
            }
            for (s, sigma) in shifts.iter().enumerate() {
                for (li, &(c, _, _)) in locals.iter().enumerate() {
                    for t in 0..k {
                        let mut v = images[li * k + t];
                        if t == c {
                            v -= sigma * values[li];
                        }
                        resid[li * k + t] = v;
                    }
                }
                let b = &mut p2[s];
                for (i, &(_, _, gi)) in locals.iter().enumerate() {
                    let ri = &resid[i * k..(i + 1) * k];
                    for (j, &(_, _, gj)) in locals.iter().enumerate() {
                        let rj = &resid[j * k..(j + 1) * k];
                        let mut acc = Complex64::new(0.0, 0.0);
                        for t in 0..k {
                            acc += rj[t] * ri[t].conj();
                        }
                        b.add(gi, gj, acc * wt);
                    }
                }
            }
        }
    }
    let mass = mass.build();
    let p10 = p10.build();
    shifts
        .iter()
        .zip(p2)
        .map(|(sigma, b)| {
            Ok(StrongPair {
                sigma: *sigma,
                p1: p10.add_scaled(-sigma, &mass)?,
                p2: b.build(),
                mass: mass.clone(),
            })
        })
        .collect()
}

/// Single-shift convenience wrapper.
pub fn assemble_strong_pair<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    sigma: f64,
) -> Result<StrongPair> {
    Ok(assemble_strong_pairs(op, basis, &[sigma])?.remove(0))
}

/// `(<(T - sigma) u, u>, |(T - sigma) u|^2)` for `u = sum x_i phi_i`, with the
/// residual formed pointwise before squaring. This avoids the cancellation
/// incurred by evaluating quadratic forms of `P1` and `P2`.
pub fn strong_quotient_terms<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    x: &[Complex64],
    sigma: f64,
) -> Result<(f64, f64)> {
    let k = op.n_components();
    if basis.n_components() != k || x.len() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: x.len(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut image = vec![zero; k];
    let mut r = vec![zero; k];
    let mut u = vec![zero; k];
    let (mut num, mut den) = (0.0, 0.0);
    for ci in 0..basis.n_cells() {
        let cell0 = &basis.component(0).cells()[ci];
        for q in 0..cell0.len() {
            let xq = cell0.points[q];
            let wt = cell0.weights[q] * op.weight(xq);
            let pt = op.point(xq)?;
            r.iter_mut().for_each(|v| *v = zero);
            u.iter_mut().for_each(|v| *v = zero);
            for c in 0..k {
                let cell = &basis.component(c).cells()[ci];
                for (l, d) in cell.dofs.iter().enumerate() {
                    let coef = x[basis.global_index(c, *d)];
                    let jet = cell.jet(l, q);
                    op.apply(&pt, c, jet, &mut image);
                    for t in 0..k {
                        r[t] += coef * image[t];
                    }
                    u[c] += coef * jet[0];
                }
            }
            for t in 0..k {
                let rt = r[t] - u[t] * sigma;
                num += wt * (rt * u[t].conj()).re;
                den += wt * rt.norm_sqr();
            }
        }
    }
    Ok((num, den))
}
