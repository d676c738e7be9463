//! Banded factorizations, Sylvester inertia and eigenvalues by bisection.

use num_complex::Complex64;

use super::matrix::HermitianMatrix;
use crate::error::{Error, Result};

/// Lower-triangular banded factor `L` with `A = L L*`.
#[derive(Debug, Clone)]
pub struct LowerTriangular {
    n: usize,
    bw: usize,
    data: Vec<Complex64>,
}

impl LowerTriangular {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if j > i || i - j > self.bw {
            Complex64::new(0.0, 0.0)
        } else {
            self.data[i * (self.bw + 1) + (j + self.bw - i)]
        }
    }

    /// Solves `L x = b`.
    pub fn solve_lower(&self, b: &[Complex64]) -> Vec<Complex64> {
        let w = self.bw + 1;
        let mut x = b.to_vec();
        for i in 0..self.n {
            let row = &self.data[i * w..(i + 1) * w];
            let lo = i.saturating_sub(self.bw);
            let mut s = x[i];
            for j in lo..i {
                s -= row[j + self.bw - i] * x[j];
            }
            x[i] = s / row[self.bw];
        }
        x
    }

    /// Solves `L* x = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let w = self.bw + 1;
        let mut x = b.to_vec();
        for i in (0..self.n).rev() {
            let row = &self.data[i * w..(i + 1) * w];
            x[i] /= row[self.bw].conj();
            let xi = x[i];
            let lo = i.saturating_sub(self.bw);
            for j in lo..i {
                x[j] -= row[j + self.bw - i].conj() * xi;
            }
        }
        x
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i.saturating_sub(self.bw)..=i {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }
}

/// Cholesky factorization. Fails on the first non-positive pivot.
pub fn cholesky(a: &HermitianMatrix) -> Result<LowerTriangular> {
    cholesky_relative(a, 0.0)
}

/// Cholesky factorization treating pivots below `rel * max|diag|` as failure.
pub fn cholesky_relative(a: &HermitianMatrix, rel: f64) -> Result<LowerTriangular> {
    let n = a.dim();
    let bw = a.bandwidth();
    let w = bw + 1;
    let dmax = a.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = rel * dmax;
    let mut l = vec![Complex64::new(0.0, 0.0); n * w];
    for i in 0..n {
        let arow = a.band_row(i);
        let lo = i.saturating_sub(bw);
        for j in lo..=i {
            let mut s = arow[j + bw - i];
            let klo = lo.max(j.saturating_sub(bw));
            for k in klo..j {
                s -= l[i * w + (k + bw - i)] * l[j * w + (k + bw - j)].conj();
            }
            if j == i {
                let p = s.re;
                if !(p > floor) || !p.is_finite() {
                    return Err(Error::NotPositiveDefinite { pivot: i, value: p });
                }
                l[i * w + bw] = Complex64::new(p.sqrt(), 0.0);
            } else {
                l[i * w + (j + bw - i)] = s / l[j * w + bw].re;
            }
        }
    }
    Ok(LowerTriangular { n, bw, data: l })
}

/// Counts of negative, zero and positive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// `A = L D L*` without pivoting, banded.
///
/// Pivots that vanish to working precision, relative to the terms that formed
/// them, are replaced by a tiny positive value and reported as zero in the
/// inertia.
#[derive(Debug, Clone)]
pub struct LdlFactor {
    n: usize,
    bw: usize,
    l: Vec<Complex64>,
    d: Vec<f64>,
    zero: usize,
}

impl LdlFactor {
    pub fn new(a: &HermitianMatrix) -> Self {
        let n = a.dim();
        let bw = a.bandwidth();
        let w = bw + 1;
        let mut l = vec![Complex64::new(0.0, 0.0); n * w];
        let mut d = vec![0.0; n];
        let mut zero = 0;
        // wrow[k] = l_ik d_k for the current row
        let mut wrow = vec![Complex64::new(0.0, 0.0); w];
        for i in 0..n {
            let arow = a.band_row(i);
            let lo = i.saturating_sub(bw);
            for j in lo..i {
                let mut s = arow[j + bw - i];
                let klo = lo.max(j.saturating_sub(bw));
                for k in klo..j {
                    s -= wrow[k + bw - i] * l[j * w + (k + bw - j)].conj();
                }
                wrow[j + bw - i] = s;
                l[i * w + (j + bw - i)] = s / d[j];
            }
            let mut p = arow[bw].re;
            let mut mag = p.abs();
            for k in lo..i {
                let t = (wrow[k + bw - i] * l[i * w + (k + bw - i)].conj()).re;
                p -= t;
                mag += t.abs();
            }
            let tiny = f64::EPSILON * mag * 1e-2;
            if p.abs() <= tiny || !p.is_finite() {
                zero += 1;
                p = tiny.max(f64::MIN_POSITIVE);
            }
            d[i] = p;
            l[i * w + bw] = Complex64::new(1.0, 0.0);
        }
        Self { n, bw, l, d, zero }
    }

    pub fn inertia(&self) -> Inertia {
        let neg = self.d.iter().filter(|v| **v < 0.0).count();
        Inertia {
            negative: neg,
            zero: self.zero,
            positive: self.n - neg - self.zero,
        }
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let w = self.bw + 1;
        let mut x = b.to_vec();
        for i in 0..self.n {
            let lo = i.saturating_sub(self.bw);
            let mut s = x[i];
            for j in lo..i {
                s -= self.l[i * w + (j + self.bw - i)] * x[j];
            }
            x[i] = s;
        }
        for i in 0..self.n {
            x[i] /= self.d[i];
        }
        for i in (0..self.n).rev() {
            let xi = x[i];
            let lo = i.saturating_sub(self.bw);
            for j in lo..i {
                x[j] -= self.l[i * w + (j + self.bw - i)].conj() * xi;
            }
        }
        x
    }
}

/// Inertia of `A - shift * B`.
pub fn inertia(a: &HermitianMatrix, shift: f64, b: &HermitianMatrix) -> Result<Inertia> {
    let m = a.add_scaled(-shift, b)?;
    Ok(LdlFactor::new(&m).inertia())
}

/// Inertia of a single Hermitian matrix.
pub fn inertia_of(a: &HermitianMatrix) -> Inertia {
    LdlFactor::new(a).inertia()
}

/// Interval known to contain a pencil eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Number of eigenvalues of `(A, B)` strictly below `t` (B positive definite).
pub fn count_below(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<usize> {
    Ok(inertia(a, t, b)?.negative)
}

/// Brackets the `k`-th smallest (0-based) eigenvalue of `A x = λ B x` by
/// bisection on Sylvester counts until the relative width is below `rel_tol`.
pub fn pencil_eigenvalue(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: usize,
    rel_tol: f64,
) -> Result<Bracket> {
    pencil_eigenvalue_within(a, b, k, rel_tol, 0.0)
}

/// As [`pencil_eigenvalue`], also stopping once the width is below `abs_tol`.
pub fn pencil_eigenvalue_within(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Bracket> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    if k >= n {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue index {k} out of range for dimension {n}"
        )));
    }
    // Rayleigh quotients of unit vectors give a starting scale.
    let da = a.diagonal();
    let db = b.diagonal();
    let mut guess = 0.0f64;
    for i in 0..n {
        if db[i] > 0.0 {
            guess = guess.max((da[i] / db[i]).abs());
        }
    }
    let step0 = guess.max(1.0);
    let mut lo = -step0;
    let mut hi = step0;
    let mut tries = 0;
    while count_below(a, b, lo)? > k {
        lo -= (hi - lo).max(step0);
        tries += 1;
        if tries > 200 || !lo.is_finite() {
            return Err(Error::NoConvergence { iterations: tries });
        }
    }
    tries = 0;
    while count_below(a, b, hi)? <= k {
        hi += (hi - lo).max(step0);
        tries += 1;
        if tries > 200 || !hi.is_finite() {
            return Err(Error::NoConvergence { iterations: tries });
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) || hi - lo <= abs_tol {
            break;
        }
        if count_below(a, b, mid)? > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Bracket { lo, hi })
}

/// Eigenpair of `(A, B)` by index: bisection bracket plus inverse iteration.
/// The vector is normalized so that `x* B x = 1`.
pub fn pencil_eigenpair(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(Bracket, Vec<Complex64>)> {
    let br = pencil_eigenvalue_within(a, b, k, rel_tol, abs_tol)?;
    let theta = br.mid();
    let shifted = a.add_scaled(-theta, b)?;
    let f = LdlFactor::new(&shifted);
    let n = a.dim();
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + ((i * 7919) % 101) as f64 / 101.0, 0.0))
        .collect();
    for _ in 0..4 {
        let rhs = b.matvec(&x);
        x = f.solve(&rhs);
        let nrm = b.quadratic_form(&x).abs().sqrt();
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::NoConvergence { iterations: 4 });
        }
        for v in &mut x {
            *v /= nrm;
        }
    }
    Ok((br, x))
}
