//! Dense Hermitian eigensolvers.

use num_complex::Complex64;

use super::banded::cholesky;
use super::matrix::HermitianMatrix;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    n: usize,
    // column k of the eigenvector matrix lives at k*n .. (k+1)*n
    vectors: Vec<Complex64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vector(&self, k: usize) -> &[Complex64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Iteration budget per eigenvalue for the implicit QL sweep.
pub const QL_ITERATIONS_PER_VALUE: usize = 60;

/// Full eigendecomposition of a Hermitian matrix: Householder reduction to
/// tridiagonal form followed by implicit QL with Wilkinson shifts.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.to_dense();
    let (diag, off, q) = tridiagonalize(&mut m, n);

    // Remove the phases of the subdiagonal with a diagonal unitary scaling.
    let mut e = vec![0.0; n];
    let mut phase = vec![ONE; n];
    for k in 0..n.saturating_sub(1) {
        let s = off[k];
        let r = s.norm();
        e[k] = r;
        phase[k + 1] = if r > 0.0 {
            phase[k] * (s / r)
        } else {
            phase[k]
        };
    }
    // V = Q * diag(phase), column-major
    let mut v = vec![ZERO; n * n];
    for col in 0..n {
        for row in 0..n {
            v[col * n + row] = q[row * n + col] * phase[col];
        }
    }
    let mut d = diag;
    tql2(&mut d, &mut e, &mut v, n)?;

    // sort ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        values.push(d[k]);
        vectors.extend_from_slice(&v[k * n..(k + 1) * n]);
    }
    Ok(EigenDecomposition { values, n, vectors })
}

/// Generalized problem `A x = λ B x` with `B` positive definite. Vectors are
/// normalized so that `x* B x = 1`.
pub fn eig_generalized(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let l = cholesky(b)?;
    // C = L^{-1} A L^{-*}: first X = L^{-1} A (columnwise), then C = L^{-1} X*.
    let ad = a.to_dense();
    let mut x = vec![ZERO; n * n];
    for col in 0..n {
        let column: Vec<Complex64> = (0..n).map(|r| ad[r * n + col]).collect();
        let s = l.solve_lower(&column);
        for r in 0..n {
            x[r * n + col] = s[r];
        }
    }
    let mut cm = vec![ZERO; n * n];
    for col in 0..n {
        // column `col` of X* is conj of row `col` of X
        let column: Vec<Complex64> = (0..n).map(|r| x[col * n + r].conj()).collect();
        let s = l.solve_lower(&column);
        for r in 0..n {
            cm[r * n + col] = s[r];
        }
    }
    let c = HermitianMatrix::from_dense(n, &cm)?;
    let eig = eig_hermitian(&c)?;
    let mut vectors = Vec::with_capacity(n * n);
    for k in 0..n {
        vectors.extend(l.solve_adjoint(eig.vector(k)));
    }
    Ok(EigenDecomposition {
        values: eig.values,
        n,
        vectors,
    })
}

/// Reduces the row-major Hermitian `m` in place. Returns the real diagonal,
/// the complex subdiagonal and the accumulated unitary `Q` (row-major) with
/// `A = Q T Q*`.
fn tridiagonalize(m: &mut [Complex64], n: usize) -> (Vec<f64>, Vec<Complex64>, Vec<Complex64>) {
    let mut q = vec![ZERO; n * n];
    for i in 0..n {
        q[i * n + i] = ONE;
    }
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n)
            .map(|i| m[i * n + k].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = m[(k + 1) * n + k];
        let ph = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -ph * norm;
        for i in 0..n {
            v[i] = if i > k { m[i * n + k] } else { ZERO };
        }
        v[k + 1] -= alpha;
        let vn = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi /= vn;
        }
        // p = A22 v
        for i in k + 1..n {
            let mut s = ZERO;
            for j in k + 1..n {
                s += m[i * n + j] * v[j];
            }
            p[i] = s;
        }
        let kk: Complex64 = (k + 1..n).map(|i| v[i].conj() * p[i]).sum();
        // w = p - (v* p) v ; A22 -= 2 (v w* + w v*)
        for i in k + 1..n {
            p[i] -= kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] -= (v[i] * p[j].conj() + p[i] * v[j].conj()) * 2.0;
            }
        }
        m[(k + 1) * n + k] = alpha;
        m[k * n + k + 1] = alpha.conj();
        for i in k + 2..n {
            m[i * n + k] = ZERO;
            m[k * n + i] = ZERO;
        }
        // Q <- Q H
        for r in 0..n {
            let mut s = ZERO;
            for j in k + 1..n {
                s += q[r * n + j] * v[j];
            }
            for j in k + 1..n {
                q[r * n + j] -= s * v[j].conj() * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| m[i * n + i].re).collect();
    let off = (0..n.saturating_sub(1))
        .map(|k| m[(k + 1) * n + k])
        .collect();
    (diag, off, q)
}

/// Symmetric tridiagonal QL with implicit shifts. `e[k]` couples `k` and
/// `k+1`; rotations are applied to the columns of the column-major `v`.
fn tql2(d: &mut [f64], e: &mut [f64], v: &mut [Complex64], n: usize) -> Result<()> {
    if n <= 1 {
        return Ok(());
    }
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    let budget = QL_ITERATIONS_PER_VALUE * n;
    let mut used = 0usize;
    e[n - 1] = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                used += 1;
                if used > budget {
                    return Err(Error::NoConvergence { iterations: used });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    // rotate columns i and i+1
                    let (left, right) = v.split_at_mut((i + 1) * n);
                    let ci = &mut left[i * n..];
                    let ci1 = &mut right[..n];
                    for k in 0..n {
                        let hh = ci1[k];
                        ci1[k] = ci[k] * s + hh * c;
                        ci[k] = ci[k] * c - hh * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn test_matrix(n: usize) -> HermitianMatrix {
        HermitianMatrix::from_fn(n, |i, j| {
            let (a, b) = (i as f64, j as f64);
            if i == j {
                c(1.0 + a * a / 3.0, 0.0)
            } else {
                let re = ((a + 1.0) * (b + 2.0)).sin() + ((b + 1.0) * (a + 2.0)).sin();
                let im = (a - b) / (1.0 + a + b);
                c(re / 2.0, im)
            }
        })
    }

    #[test]
    fn residuals_and_orthonormality() {
        for n in [1, 2, 3, 7, 20] {
            let a = test_matrix(n);
            let eig = eig_hermitian(&a).unwrap();
            for k in 0..n {
                let x = eig.vector(k);
                let ax = a.matvec(x);
                let res: f64 = ax
                    .iter()
                    .zip(x)
                    .map(|(u, v)| (u - v * eig.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res < 1e-11 * (1.0 + a.max_abs()), "n={n} k={k} res={res}");
                for j in 0..n {
                    let dot: Complex64 =
                        eig.vector(j).iter().zip(x).map(|(u, v)| u.conj() * v).sum();
                    let want = if j == k { 1.0 } else { 0.0 };
                    assert!((dot - c(want, 0.0)).norm() < 1e-11);
                }
            }
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn trace_and_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let a = HermitianMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(0.0, 1.0),
            (1, 0) => c(0.0, -1.0),
            _ => c(2.0, 0.0),
        });
        let eig = eig_hermitian(&a).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn generalized_matches_bisection() {
        let n = 12;
        let a = test_matrix(n);
        let b = HermitianMatrix::from_fn(n, |i, j| {
            if i == j {
                c(3.0, 0.0)
            } else if i.abs_diff(j) == 1 {
                c(0.5, 0.2 * (i as f64 - j as f64))
            } else {
                c(0.0, 0.0)
            }
        });
        let eig = eig_generalized(&a, &b).unwrap();
        for k in 0..n {
            let br = super::super::banded::pencil_eigenvalue(&a, &b, k, 1e-14).unwrap();
            assert!((br.mid() - eig.values[k]).abs() < 1e-10 * (1.0 + eig.values[k].abs()));
            let x = eig.vector(k);
            let nb = b.quadratic_form(x);
            assert!((nb - 1.0).abs() < 1e-10);
        }
    }
}
