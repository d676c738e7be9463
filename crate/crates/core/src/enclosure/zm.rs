//! Inverse residual bounds for an eigenvalue isolated in an interval.

use crate::assembly::{assemble_strong_pairs, strong_quotient_terms, StrongOperator, StrongPair};
use crate::discretization::ProductBasis;
use crate::error::{Error, Result};
use crate::linalg::{cholesky, inertia_of, pencil_eigenpair, pencil_eigenvalue};

/// Inverse residuals for the interval `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseResiduals {
    pub tau_plus: f64,
    pub tau_minus: f64,
    pub a: f64,
    pub b: f64,
}

/// Relative perturbation applied to a shift that hits the discrete spectrum.
pub const SHIFT_PERTURBATION: f64 = 1e-8;
/// Number of perturbed re-assemblies before giving up.
pub const SHIFT_RETRIES: usize = 3;

/// Whether `min <T u, u>/|u|^2 < b` and `max <T u, u>/|u|^2 > a` over the trial
/// space, decided by inertia of `P1(b) = P1(0) - b Mass` and `P1(a)`.
pub fn check_zimcon(pair_a: &StrongPair, pair_b: &StrongPair) -> bool {
    inertia_of(&pair_b.p1).negative >= 1 && inertia_of(&pair_a.p1).positive >= 1
}

/// Same test from a pair at any shift, re-shifting through the mass matrix.
pub fn check_zimcon_single(pair: &StrongPair, a: f64, b: f64) -> Result<bool> {
    let p1b = pair.p1.add_scaled(pair.sigma - b, &pair.mass)?;
    let p1a = pair.p1.add_scaled(pair.sigma - a, &pair.mass)?;
    Ok(inertia_of(&p1b).negative >= 1 && inertia_of(&p1a).positive >= 1)
}

/// `tau+ = max eig(P1(a), P2(a))`, `tau- = min eig(P1(b), P2(b))`, each taken
/// at the bracket end that keeps the resulting bound conservative.
pub fn inverse_residuals(
    pair_a: &StrongPair,
    pair_b: &StrongPair,
    rel_tol: f64,
) -> Result<InverseResiduals> {
    for pair in [pair_a, pair_b] {
        if cholesky(&pair.p2).is_err() {
            return Err(Error::DegeneratePencil {
                sigma: pair.sigma,
                attempts: 1,
            });
        }
    }
    let n = pair_a.p1.dim();
    let plus = pencil_eigenvalue(&pair_a.p1, &pair_a.p2, n - 1, rel_tol)?;
    let minus = pencil_eigenvalue(&pair_b.p1, &pair_b.p2, 0, rel_tol)?;
    Ok(InverseResiduals {
        tau_plus: plus.lo,
        tau_minus: minus.hi,
        a: pair_a.sigma,
        b: pair_b.sigma,
    })
}

/// Inverse residuals taken as the quotients of the extreme pencil
/// eigenvectors, with each quotient evaluated from the pointwise residual.
///
/// Any trial vector gives a quotient no larger than `tau+` (no smaller than
/// `tau-`), so these values keep the enclosure valid even when rounding in
/// `P2` perturbs the matrix eigenvalues.
pub fn refined_residuals<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    pair_a: &StrongPair,
    pair_b: &StrongPair,
    rel_tol: f64,
) -> Result<InverseResiduals> {
    for pair in [pair_a, pair_b] {
        if cholesky(&pair.p2).is_err() {
            return Err(Error::DegeneratePencil {
                sigma: pair.sigma,
                attempts: 1,
            });
        }
    }
    let n = pair_a.p1.dim();
    let (_, xp) = pencil_eigenpair(&pair_a.p1, &pair_a.p2, n - 1, rel_tol, 0.0)?;
    let (np, dp) = strong_quotient_terms(op, basis, &xp, pair_a.sigma)?;
    let (_, xm) = pencil_eigenpair(&pair_b.p1, &pair_b.p2, 0, rel_tol, 0.0)?;
    let (nm, dm) = strong_quotient_terms(op, basis, &xm, pair_b.sigma)?;
    Ok(InverseResiduals {
        tau_plus: np / dp,
        tau_minus: nm / dm,
        a: pair_a.sigma,
        b: pair_b.sigma,
    })
}

/// `[b + 1/tau-, a + 1/tau+]`.
pub fn zm_enclosure(res: &InverseResiduals) -> Result<(f64, f64)> {
    if !(res.tau_plus > 0.0) || !(res.tau_minus < 0.0) {
        return Err(Error::AdmissibilityViolated(format!(
            "inverse residuals have wrong signs (tau+ = {}, tau- = {})",
            res.tau_plus, res.tau_minus
        )));
    }
    Ok((
        sum_down(&[res.b, 1.0 / res.tau_minus]),
        sum_up(&[res.a, 1.0 / res.tau_plus]),
    ))
}

/// Bound on the rounding error of a floating-point sum of `terms`.
fn sum_slack(terms: &[f64]) -> f64 {
    4.0 * f64::EPSILON * terms.iter().map(|t| t.abs()).sum::<f64>()
}

/// Sum rounded towards minus infinity (up to a few ulps).
pub(crate) fn sum_down(terms: &[f64]) -> f64 {
    terms.iter().sum::<f64>() - sum_slack(terms)
}

/// Sum rounded towards plus infinity (up to a few ulps).
pub(crate) fn sum_up(terms: &[f64]) -> f64 {
    terms.iter().sum::<f64>() + sum_slack(terms)
}

/// Outcome of a direct inverse-residual enclosure.
#[derive(Debug, Clone)]
pub struct ZmOutcome {
    pub residuals: InverseResiduals,
    /// Extreme eigenvalues of the pencils themselves, for comparison.
    pub matrix_residuals: InverseResiduals,
    pub lower: f64,
    pub upper: f64,
    /// Number of shift perturbations that were needed.
    pub retries: usize,
    /// Largest relative asymmetry seen while assembling.
    pub asymmetry: f64,
}

/// Assembles pairs at `a` and `b` (perturbing a shift that makes `P2`
/// singular), checks admissibility and returns the enclosure.
pub fn zm_enclose<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<ZmOutcome> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty interval ({a}, {b})")));
    }
    let (mut sa, mut sb) = (a, b);
    let mut retries = 0;
    loop {
        let pairs = assemble_strong_pairs(op, basis, &[sa, sb])?;
        let (pa, pb) = (&pairs[0], &pairs[1]);
        let bad_a = cholesky(&pa.p2).is_err();
        let bad_b = cholesky(&pb.p2).is_err();
        if bad_a || bad_b {
            if retries >= SHIFT_RETRIES {
                return Err(Error::DegeneratePencil {
                    sigma: if bad_a { sa } else { sb },
                    attempts: retries + 1,
                });
            }
            retries += 1;
            if bad_a {
                sa -= SHIFT_PERTURBATION * sa.abs().max(1.0);
            }
            if bad_b {
                sb += SHIFT_PERTURBATION * sb.abs().max(1.0);
            }
            continue;
        }
        if !check_zimcon(pa, pb) {
            return Err(Error::AdmissibilityViolated(format!(
                "Rayleigh quotients of the trial space do not straddle ({sa}, {sb})"
            )));
        }
        let matrix_residuals = inverse_residuals(pa, pb, rel_tol)?;
        let residuals = refined_residuals(op, basis, pa, pb, rel_tol)?;
        let (lower, upper) = zm_enclosure(&residuals)?;
        let asymmetry = pa
            .p1
            .construction_asymmetry()
            .max(pa.p2.construction_asymmetry())
            .max(pb.p2.construction_asymmetry());
        return Ok(ZmOutcome {
            residuals,
            matrix_residuals,
            lower,
            upper,
            retries,
            asymmetry,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::HermitianMatrix;

    /// Pair for `T = diag(lambda)` restricted to the span of the columns of
    /// `basis` (given in eigen-coordinates, real).
    pub(crate) fn diagonal_pair(lambda: &[f64], basis: &[Vec<f64>], sigma: f64) -> StrongPair {
        let n = basis.len();
        let gram = |f: &dyn Fn(f64) -> f64| {
            HermitianMatrix::from_fn(n, |i, j| {
                let v: f64 = lambda
                    .iter()
                    .enumerate()
                    .map(|(k, l)| f(*l) * basis[i][k] * basis[j][k])
                    .sum();
                v.into()
            })
        };
        StrongPair {
            sigma,
            p1: gram(&|l| l - sigma),
            p2: gram(&|l| (l - sigma) * (l - sigma)),
            mass: gram(&|_| 1.0),
        }
    }

    fn unit(n: usize, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        v
    }

    #[test]
    fn toy_zimcon() {
        let lam = [0.5, 2.0, 5.0];
        let full: Vec<Vec<f64>> = (0..3).map(|k| unit(3, k)).collect();
        let p = diagonal_pair(&lam, &full, 0.0);
        assert!(check_zimcon_single(&p, 1.0, 3.0).unwrap());
        assert!(!check_zimcon_single(&p, 10.0, 20.0).unwrap());
    }

    #[test]
    fn toy_exact_enclosure() {
        let lam = [0.5, 2.0, 5.0];
        let span = vec![unit(3, 1)];
        let pa = diagonal_pair(&lam, &span, 1.0);
        let pb = diagonal_pair(&lam, &span, 3.0);
        let res = inverse_residuals(&pa, &pb, 1e-15).unwrap();
        assert!((res.tau_plus - 1.0).abs() < 1e-14);
        assert!((res.tau_minus + 1.0).abs() < 1e-14);
        let (lo, hi) = zm_enclosure(&res).unwrap();
        assert!((lo - 2.0).abs() < 1e-13 && (hi - 2.0).abs() < 1e-13);
    }

    #[test]
    fn wrong_signs_rejected() {
        let res = InverseResiduals {
            tau_plus: -1.0,
            tau_minus: -1.0,
            a: 0.0,
            b: 1.0,
        };
        assert!(matches!(
            zm_enclosure(&res),
            Err(Error::AdmissibilityViolated(_))
        ));
    }

    #[test]
    fn singular_p2_reported() {
        let lam = [0.5, 2.0, 5.0];
        let full: Vec<Vec<f64>> = (0..3).map(|k| unit(3, k)).collect();
        let pa = diagonal_pair(&lam, &full, 2.0);
        let pb = diagonal_pair(&lam, &full, 3.0);
        assert!(matches!(
            inverse_residuals(&pa, &pb, 1e-14),
            Err(Error::DegeneratePencil { .. })
        ));
    }
}
