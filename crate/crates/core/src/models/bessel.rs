//! Bessel functions of the first kind of orders 0 and 1.

/// `(J0(x), J1(x))` for `x >= 0` by Miller's backward recurrence.
pub fn bessel_j01(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax < 1e-8 {
        return (1.0 - 0.25 * ax * ax, 0.5 * x);
    }
    let nmax = ax as usize + 30;
    let start = 2 * ((nmax + (40.0 * nmax as f64).sqrt() as usize) / 2);
    let mut jp = 0.0; // J_{k+1}
    let mut j = 1e-300; // J_k
    let mut norm = 0.0;
    let (mut j0, mut j1) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / ax * j - jp;
        jp = j;
        j = jm;
        // j now holds J_{k-1}
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            j0 *= 1e-250;
            j1 *= 1e-250;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * j;
        }
        if k == 2 {
            j1 = j;
        }
        if k == 1 {
            j0 = j;
        }
    }
    norm += j0;
    let j0v = j0 / norm;
    let j1v = j1 / norm;
    (j0v, if x < 0.0 { -j1v } else { j1v })
}

/// Derivative of `J1`: `J0(x) - J1(x)/x`.
pub fn bessel_j1_prime(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        return 0.5;
    }
    let (j0, j1) = bessel_j01(x);
    j0 - j1 / x
}

/// First `count` positive zeros of `J1'`, bracketed on a grid and refined by
/// bisection to absolute accuracy `tol`.
pub fn j1_prime_zeros(count: usize, tol: f64) -> Vec<f64> {
    let mut zeros = Vec::with_capacity(count);
    let step = 0.05;
    let mut a = 0.1;
    let mut fa = bessel_j1_prime(a);
    while zeros.len() < count {
        let b = a + step;
        let fb = bessel_j1_prime(b);
        if fa == 0.0 {
            zeros.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = bessel_j1_prime(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    zeros
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(order: u32, x: f64) -> f64 {
        // sum (-1)^k (x/2)^{2k+n} / (k! (k+n)!)
        let mut term = (0.5 * x).powi(order as i32);
        for i in 1..=order {
            term /= i as f64;
        }
        let mut sum = term;
        for k in 1..80 {
            term *= -(0.25 * x * x) / (k as f64 * (k + order as usize) as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn matches_power_series() {
        for &x in &[0.01, 0.5, 1.0, 2.4048, 3.8317, 5.0, 7.5] {
            let (j0, j1) = bessel_j01(x);
            assert!((j0 - series(0, x)).abs() < 1e-13, "J0({x})");
            assert!((j1 - series(1, x)).abs() < 1e-13, "J1({x})");
        }
    }

    #[test]
    fn known_values() {
        // first zero of J0 and of J1
        assert!(bessel_j01(2.404825557695773).0.abs() < 1e-14);
        assert!(bessel_j01(3.831705970207512).1.abs() < 1e-14);
        let z = j1_prime_zeros(3, 1e-14);
        assert!((z[0] - 1.841183781340659).abs() < 1e-12);
        assert!((z[1] - 5.331442773525033).abs() < 1e-12);
        assert!((z[2] - 8.536316366346285).abs() < 1e-12);
    }
}
