#![allow(dead_code)]

use std::io::Write;

use mhd_enclose::assembly::StrongPair;
use mhd_enclose::discretization::{
    default_sine_subintervals, gauss_legendre, hermite_basis, hermite_quadrature_points,
    sine_basis, BasisTable, Boundary, Mesh, SINE_QUADRATURE_POINTS,
};
use mhd_enclose::linalg::HermitianMatrix;

pub fn sine(n: usize) -> BasisTable {
    let rule = gauss_legendre(SINE_QUADRATURE_POINTS).unwrap();
    sine_basis(n, &rule, default_sine_subintervals(n)).unwrap()
}

pub fn hermite(order: usize, elements: usize, bc: Boundary) -> BasisTable {
    hermite_on(order, elements, bc, 1.0)
}

pub fn hermite_on(order: usize, elements: usize, bc: Boundary, end: f64) -> BasisTable {
    let mesh = Mesh::uniform(0.0, end, elements).unwrap();
    let rule = gauss_legendre(hermite_quadrature_points(order)).unwrap();
    hermite_basis(&mesh, order, &rule, bc).unwrap()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Writes a line past the test harness output capture.
pub fn report(line: &str) {
    let out = std::io::stdout();
    let mut lock = out.lock();
    let _ = writeln!(lock, "{line}");
    let _ = lock.flush();
}

/// Pair for a diagonal operator `diag(lambda)` restricted to the span of
/// mutually orthogonal coordinate vectors, each given as `(index, value)` lists.
pub fn diagonal_pair(lambda: &[f64], span: &[Vec<(usize, f64)>], sigma: f64) -> StrongPair {
    let moment = |v: &Vec<(usize, f64)>, f: &dyn Fn(f64) -> f64| -> f64 {
        v.iter().map(|(k, c)| f(lambda[*k]) * c * c).sum()
    };
    let p1: Vec<f64> = span.iter().map(|v| moment(v, &|l| l - sigma)).collect();
    let p2: Vec<f64> = span
        .iter()
        .map(|v| moment(v, &|l| (l - sigma) * (l - sigma)))
        .collect();
    let m: Vec<f64> = span.iter().map(|v| moment(v, &|_| 1.0)).collect();
    StrongPair {
        sigma,
        p1: HermitianMatrix::from_real_diagonal(&p1),
        p2: HermitianMatrix::from_real_diagonal(&p2),
        mass: HermitianMatrix::from_real_diagonal(&m),
    }
}

/// Eigen-coordinates of the constant slab ordered as lower branch, flat
/// eigenvalue 1, upper branch for each wavenumber, plus the degenerate
/// subspace sequence built from them.
pub struct DegenerateFixture {
    pub lambda: Vec<f64>,
    pub span: Vec<Vec<(usize, f64)>>,
    pub a: f64,
    pub b: f64,
}

impl DegenerateFixture {
    pub fn new(n: usize) -> Self {
        use mhd_enclose::models::exact_slab21_spectrum;
        let mut lambda = Vec::with_capacity(3 * n);
        for k in 1..=n {
            let (lo, hi) = exact_slab21_spectrum(k);
            lambda.extend([lo, 1.0, hi]);
        }
        let eps = 1.0 / exact_slab21_spectrum(n).1;
        let alpha = (1.0 - eps * eps).sqrt();
        // alpha phi_1 + eps phi_{3n}, then phi_2 .. phi_{3n-1}
        let mut span = vec![vec![(0, alpha), (3 * n - 1, eps)]];
        for j in 1..3 * n - 1 {
            span.push(vec![(j, 1.0)]);
        }
        let b = 0.5 * (exact_slab21_spectrum(1).0 + exact_slab21_spectrum(2).0);
        Self {
            lambda,
            span,
            a: 0.0,
            b,
        }
    }

    pub fn pairs(&self) -> (StrongPair, StrongPair) {
        (
            diagonal_pair(&self.lambda, &self.span, self.a),
            diagonal_pair(&self.lambda, &self.span, self.b),
        )
    }
}
