use crate::error::{Error, Result};

/// Gauss-Legendre rule on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let h = b - a;
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w * f(a + h * t))
            .sum::<f64>()
            * h
    }
}

/// `q`-point Gauss-Legendre rule mapped to `[0, 1]`, exact for polynomials of
/// degree `2q - 1`.
pub fn gauss_legendre(q: usize) -> Result<QuadratureRule> {
    if q == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one point".into(),
        ));
    }
    let mut points = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let n = q as f64;
    for i in 0..q.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(q, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(q, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // nodes on [-1,1] come out in decreasing order
        points[i] = 0.5 * (1.0 - x);
        points[q - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[q - 1 - i] = 0.5 * w;
    }
    Ok(QuadratureRule { points, weights })
}

fn legendre(q: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if q == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=q {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = q as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_degree_2q_minus_1() {
        for q in 1..=12 {
            let rule = gauss_legendre(q).unwrap();
            for deg in 0..(2 * q) {
                let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
                let want = 1.0 / (deg as f64 + 1.0);
                assert!((got - want).abs() < 1e-14, "q={q} deg={deg}");
            }
            assert!(rule.points.windows(2).all(|w| w[0] < w[1]));
            assert!(rule.points.iter().all(|x| *x > 0.0 && *x < 1.0));
        }
    }

    #[test]
    fn three_point_nodes() {
        let r = gauss_legendre(3).unwrap();
        let s = (0.6f64).sqrt() / 2.0;
        assert!((r.points[0] - (0.5 - s)).abs() < 1e-15);
        assert!((r.points[1] - 0.5).abs() < 1e-15);
        assert!((r.weights[1] - 4.0 / 9.0).abs() < 1e-15);
    }
}
