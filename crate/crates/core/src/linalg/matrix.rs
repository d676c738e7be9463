use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian matrix stored by its lower band.
///
/// Entries with `i - j > bandwidth` are zero. A full matrix is simply the case
/// `bandwidth == n - 1`. Construction always symmetrizes; the deviation from
/// Hermitian symmetry seen before symmetrization is kept for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    bw: usize,
    // row i holds columns i - bw ..= i at offsets 0 ..= bw
    data: Vec<Complex64>,
    asymmetry: f64,
}

impl HermitianMatrix {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        let bw = bandwidth.min(n.saturating_sub(1));
        Self {
            n,
            bw,
            data: vec![Complex64::new(0.0, 0.0); n * (bw + 1)],
            asymmetry: 0.0,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0);
        for i in 0..n {
            m.data[i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), 0);
        for (i, d) in diag.iter().enumerate() {
            m.data[i] = Complex64::new(*d, 0.0);
        }
        m
    }

    /// Builds a full matrix from `f(i, j)`, symmetrizing the result.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut b = HermitianBuilder::new(n, n.saturating_sub(1));
        for i in 0..n {
            for j in 0..n {
                b.add(i, j, f(i, j));
            }
        }
        b.build()
    }

    /// Builds from row-major dense storage.
    pub fn from_dense(n: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| entries[i * n + j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    /// Largest `|A_ij - conj(A_ji)|` seen before symmetrization.
    pub fn construction_asymmetry(&self) -> f64 {
        self.asymmetry
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.bw + 1) + (j + self.bw - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i >= j {
            if i - j > self.bw {
                Complex64::new(0.0, 0.0)
            } else {
                self.data[self.idx(i, j)]
            }
        } else {
            self.get(j, i).conj()
        }
    }

    /// Row-major full copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let lo = i.saturating_sub(self.bw);
            for j in lo..=i {
                let v = self.data[self.idx(i, j)];
                out[i * n + j] = v;
                out[j * n + i] = v.conj();
            }
        }
        out
    }

    /// Same matrix stored with a wider band.
    pub fn widened(&self, bandwidth: usize) -> Self {
        let bw = bandwidth.max(self.bw).min(self.n.saturating_sub(1));
        if bw == self.bw {
            return self.clone();
        }
        let mut out = Self::zeros(self.n, bw);
        out.asymmetry = self.asymmetry;
        for i in 0..self.n {
            for j in i.saturating_sub(self.bw)..=i {
                let k = out.idx(i, j);
                out.data[k] = self.data[self.idx(i, j)];
            }
        }
        out
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: f64, other: &HermitianMatrix) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.widened(other.bw);
        for i in 0..self.n {
            for j in i.saturating_sub(other.bw)..=i {
                let k = out.idx(i, j);
                out.data[k] += other.data[other.idx(i, j)] * alpha;
            }
        }
        out.asymmetry = self.asymmetry.max(other.asymmetry);
        Ok(out)
    }

    pub fn scale(&mut self, alpha: f64) {
        for v in &mut self.data {
            *v *= alpha;
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let lo = i.saturating_sub(self.bw);
            for j in lo..i {
                let a = self.data[self.idx(i, j)];
                y[i] += a * x[j];
                y[j] += a.conj() * x[i];
            }
            y[i] += self.data[self.idx(i, i)] * x[i];
        }
        y
    }

    /// `x* A x` (real up to rounding).
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        let y = self.matvec(x);
        x.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.data[self.idx(i, i)].re).collect()
    }

    pub(crate) fn band_row(&self, i: usize) -> &[Complex64] {
        let s = i * (self.bw + 1);
        &self.data[s..s + self.bw + 1]
    }
}

/// Accumulates entries of a nominally Hermitian matrix, then symmetrizes.
#[derive(Debug, Clone)]
pub struct HermitianBuilder {
    n: usize,
    bw: usize,
    // full band: row i, columns i - bw ..= i + bw
    data: Vec<Complex64>,
}

impl HermitianBuilder {
    pub fn new(n: usize, bandwidth: usize) -> Self {
        let bw = bandwidth.min(n.saturating_sub(1));
        Self {
            n,
            bw,
            data: vec![Complex64::new(0.0, 0.0); n * (2 * bw + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `v` to entry `(i, j)`. Entries outside the band are a logic error.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(
            i.abs_diff(j) <= self.bw,
            "entry ({i},{j}) outside band {}",
            self.bw
        );
        let k = i * (2 * self.bw + 1) + (j + self.bw - i);
        self.data[k] += v;
    }

    pub fn build(self) -> HermitianMatrix {
        let w = 2 * self.bw + 1;
        let mut out = HermitianMatrix::zeros(self.n, self.bw);
        let mut asym: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..self.n {
            for j in i.saturating_sub(self.bw)..=i {
                let lower = self.data[i * w + (j + self.bw - i)];
                let upper = self.data[j * w + (i + self.bw - j)];
                asym = asym.max((lower - upper.conj()).norm());
                scale = scale.max(lower.norm());
                let mut v = (lower + upper.conj()) * 0.5;
                if i == j {
                    v.im = 0.0;
                }
                let k = out.idx(i, j);
                out.data[k] = v;
            }
        }
        out.asymmetry = if scale > 0.0 { asym / scale } else { asym };
        out
    }
}
