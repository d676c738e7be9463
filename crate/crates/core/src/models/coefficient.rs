use crate::error::{Error, Result};

/// Natural cubic spline through tabulated data.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::InvalidArgument(
                "spline needs at least two points and matching lengths".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "spline abscissae must increase".into(),
            ));
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for interior second derivatives (Thomas algorithm)
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut lower = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                diag[i - 1] = 2.0 * (h0 + h1);
                lower[i - 1] = h0;
                upper[i - 1] = h1;
                rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
            }
            for i in 1..k {
                let w = lower[i] / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(Self { xs, ys, m })
    }

    /// Value and first derivative; outside the knots the end cubic is
    /// extended.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|v| *v <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let v = a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d = (self.ys[i + 1] - self.ys[i]) / h
            + (-(3.0 * a * a - 1.0) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        (v, d)
    }
}

/// Real coefficient function with its first derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(f64),
    /// `offset + slope * x`
    Affine {
        offset: f64,
        slope: f64,
    },
    Spline(CubicSpline),
    /// Square of an interpolated quantity (speeds tabulated, squares used).
    SquaredSpline(CubicSpline),
}

impl Coefficient {
    /// Value and derivative at `x`.
    #[inline]
    pub fn eval(&self, x: f64) -> (f64, f64) {
        match self {
            Coefficient::Constant(c) => (*c, 0.0),
            Coefficient::Affine { offset, slope } => (offset + slope * x, *slope),
            Coefficient::Spline(s) => s.eval(x),
            Coefficient::SquaredSpline(s) => {
                let (v, d) = s.eval(x);
                (v * v, 2.0 * v * d)
            }
        }
    }

    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        self.eval(x).0
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Constant(c) if *c == 0.0)
            || matches!(self, Coefficient::Affine { offset, slope } if *offset == 0.0 && *slope == 0.0)
    }
}

/// Range of `f` over `[a, b]`: dense sampling, then golden-section refinement
/// around the extreme samples.
pub fn function_range(f: &dyn Fn(f64) -> f64, a: f64, b: f64, samples: usize) -> (f64, f64) {
    let n = samples.max(3);
    let xs: Vec<f64> = (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect();
    let vals: Vec<f64> = xs.iter().map(|x| f(*x)).collect();
    let (mut imin, mut imax) = (0, 0);
    for i in 0..n {
        if vals[i] < vals[imin] {
            imin = i;
        }
        if vals[i] > vals[imax] {
            imax = i;
        }
    }
    let refine = |i: usize, sign: f64| -> f64 {
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(n - 1)];
        let g = |x: f64| sign * f(x);
        let best = golden_max(&g, lo, hi);
        (sign * vals[i]).max(best) * sign
    };
    (refine(imin, -1.0), refine(imax, 1.0))
}

/// Maximum of `g` on `[lo, hi]` by golden-section search (unimodal assumed).
fn golden_max(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        }
    }
    f1.max(f2).max(g(lo)).max(g(hi))
}
