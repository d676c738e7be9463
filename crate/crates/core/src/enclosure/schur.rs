//! Upper and lower bounds through the Schur complement of the slab operator.

use rayon::prelude::*;

use super::zm::{SHIFT_PERTURBATION, SHIFT_RETRIES};
use crate::assembly::{
    assemble_mass, assemble_schur, assemble_schur_derivative, assemble_strong_pair,
    strong_quotient_terms, SchurOperator,
};
use crate::discretization::{BasisTable, ProductBasis};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, inertia_of, pencil_eigenpair, HermitianMatrix};
use crate::models::{schur_gap_bound, slab_d_max, SlabProfile};

/// Knobs of the Schur route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurSettings {
    /// Number of negative eigenvalues of `S(gamma)` below the target.
    pub kappa: usize,
    /// Relative tolerance of the eigensolver.
    pub eig_tol: f64,
    /// Maximum number of Newton steps after the grid bracket is found. One
    /// step followed by the certificate check is the minimal variant.
    pub newton_steps: usize,
    /// The lower-bound shift is this fraction of the spectral gap estimate.
    pub gap_fraction: f64,
}

impl Default for SchurSettings {
    fn default() -> Self {
        Self {
            kappa: 0,
            eig_tol: 1e-12,
            newton_steps: 40,
            gap_fraction: 0.95,
        }
    }
}

/// Galerkin Schur family `mu -> S_L(mu)` on a scalar basis.
#[derive(Debug, Clone)]
pub struct SchurProblem<'a> {
    pub profile: &'a SlabProfile,
    pub basis: &'a BasisTable,
    mass: HermitianMatrix,
    d: f64,
}

/// `E_j(L, mu)` together with its Hellmann-Feynman derivative in `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurEigenvalue {
    pub value: f64,
    pub slope: f64,
}

impl<'a> SchurProblem<'a> {
    pub fn new(profile: &'a SlabProfile, basis: &'a BasisTable) -> Self {
        Self::with_bound(profile, basis, slab_d_max(profile))
    }

    /// Uses a known `max Spec(D)` instead of recomputing it.
    pub fn with_bound(profile: &'a SlabProfile, basis: &'a BasisTable, d: f64) -> Self {
        let mass = assemble_mass(basis, |x| profile.density.value(x));
        Self {
            profile,
            basis,
            mass,
            d,
        }
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn mass(&self) -> &HermitianMatrix {
        &self.mass
    }

    fn check(&self, mu: f64) -> Result<()> {
        if mu <= self.d {
            return Err(Error::ResolventBoundary { mu, d: self.d });
        }
        Ok(())
    }

    pub fn matrix(&self, mu: f64) -> Result<HermitianMatrix> {
        self.check(mu)?;
        assemble_schur(self.profile, self.basis, mu)
    }

    /// Number of eigenvalues of `S_L(mu)` that are `<= 0`.
    pub fn nonpositive_count(&self, mu: f64) -> Result<usize> {
        let i = inertia_of(&self.matrix(mu)?);
        Ok(i.negative + i.zero)
    }

    /// Number of negative eigenvalues of `S_L(mu)`.
    pub fn negative_count(&self, mu: f64) -> Result<usize> {
        Ok(inertia_of(&self.matrix(mu)?).negative)
    }

    /// The `index`-th (1-based) eigenvalue of `S_L(mu)` relative to the mass.
    pub fn eigenvalue(&self, mu: f64, index: usize, eig_tol: f64) -> Result<SchurEigenvalue> {
        if index == 0 || index > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue index {index} outside 1..={}",
                self.dim()
            )));
        }
        let s = self.matrix(mu)?;
        let scale = s.max_abs() / self.mass.max_abs();
        let (_, x) = pencil_eigenpair(&s, &self.mass, index - 1, eig_tol, eig_tol * scale)?;
        let ds = assemble_schur_derivative(self.profile, self.basis, mu)?;
        // x is mass-normalized
        Ok(SchurEigenvalue {
            value: s.quadratic_form(&x),
            slope: ds.quadratic_form(&x),
        })
    }
}

/// `kappa(gamma)`: negative Galerkin eigenvalues of `S_L(gamma)`.
pub fn kappa_count(problem: &SchurProblem<'_>, gamma: f64) -> Result<usize> {
    problem.negative_count(gamma)
}

/// Result of the upper-bound search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperBound {
    /// Certified: `E_{kappa+m}(L, mu_plus) <= 0`.
    pub mu_plus: f64,
    /// Largest point known to have `E_{kappa+m} > 0`.
    pub uncertified_below: f64,
    /// Grid cell that first showed the sign change.
    pub grid_cell: (f64, f64),
    /// Whether a Newton iterate (rather than a grid point) was certified.
    pub newton_certified: bool,
    pub newton_steps: usize,
}

impl UpperBound {
    /// Distance between `mu_plus` and the nearest point known to be uncertified.
    pub fn root_width(&self) -> f64 {
        self.mu_plus - self.uncertified_below
    }
}

/// Finds the first cell of the uniform grid `a + i (b - a) / p` on which the
/// count of nonpositive eigenvalues reaches `target`. The count is monotone in
/// `mu`, so the search evaluates batches of grid points in parallel and
/// narrows the index range instead of visiting every point.
fn locate_cell(
    problem: &SchurProblem<'_>,
    target: usize,
    a: f64,
    b: f64,
    p: usize,
) -> Result<(f64, f64)> {
    let grid = |i: usize| a + (b - a) * i as f64 / p as f64;
    let count = |i: usize| problem.nonpositive_count(grid(i));
    if count(0)? >= target {
        return Err(Error::NoSignChange {
            index: target,
            a,
            b,
        });
    }
    if count(p)? < target {
        return Err(Error::NoSignChange {
            index: target,
            a,
            b,
        });
    }
    let (mut lo, mut hi) = (0usize, p);
    let batch = rayon::current_num_threads().max(2);
    while hi - lo > 1 {
        let span = hi - lo;
        let probes: Vec<usize> = (1..=batch)
            .map(|k| lo + span * k / (batch + 1))
            .filter(|&i| i > lo && i < hi)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let probes = if probes.is_empty() {
            vec![lo + span / 2]
        } else {
            probes
        };
        let counts: Vec<Result<usize>> = probes.par_iter().map(|&i| count(i)).collect();
        let mut new_lo = lo;
        let mut new_hi = hi;
        for (i, c) in probes.iter().zip(counts) {
            if c? >= target {
                new_hi = new_hi.min(*i);
            } else {
                new_lo = new_lo.max(*i);
            }
        }
        lo = new_lo;
        hi = new_hi;
    }
    Ok((grid(lo), grid(hi)))
}

/// Certified upper bound `mu_plus >= lambda_m` for the `m`-th eigenvalue
/// above `d`: grid bracket of the sign change of `E_{kappa+m}`, Newton
/// steps, then a fresh inertia check of the returned point.
pub fn schur_upper_bound(
    problem: &SchurProblem<'_>,
    m: usize,
    scan: (f64, f64, usize),
    settings: &SchurSettings,
) -> Result<UpperBound> {
    let (a, b, p) = scan;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "eigenvalue index starts at 1".into(),
        ));
    }
    if p < 2 || !(a < b) {
        return Err(Error::InvalidArgument(format!("bad scan ({a}, {b}, {p})")));
    }
    problem.check(a)?;
    let target = settings.kappa + m;
    if target > problem.dim() {
        return Err(Error::InvalidArgument(format!(
            "index {target} exceeds basis dimension {}",
            problem.dim()
        )));
    }
    let cell = locate_cell(problem, target, a, b, p)?;
    let (mut lo, mut hi) = cell;
    let certified = |mu: f64| -> Result<bool> { Ok(problem.nonpositive_count(mu)? >= target) };

    let mut mu = hi;
    let mut last_step = hi - lo;
    let mut steps = 0;
    let mut newton_hit = false;
    while steps < settings.newton_steps {
        let e = problem.eigenvalue(mu, target, settings.eig_tol)?;
        steps += 1;
        let mut next = mu - e.value / e.slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        last_step = (next - mu).abs();
        if certified(next)? {
            hi = next;
            newton_hit = true;
        } else {
            lo = next;
        }
        mu = next;
        if last_step <= 4.0 * f64::EPSILON * mu.abs().max(1.0)
            || hi - lo <= 4.0 * f64::EPSILON * hi.abs()
        {
            break;
        }
    }
    // Iterates may approach the root from the uncertified side; step across.
    if settings.newton_steps > 1 && hi > lo {
        let mut delta = last_step.max(4.0 * f64::EPSILON * mu.abs().max(1.0));
        for _ in 0..64 {
            let trial = lo + delta;
            if trial >= hi {
                break;
            }
            if certified(trial)? {
                hi = trial;
                newton_hit = true;
                break;
            }
            lo = trial;
            delta *= 2.0;
        }
    }
    // Fresh check of the returned point.
    if !certified(hi)? {
        return Err(Error::NoSignChange {
            index: target,
            a,
            b,
        });
    }
    Ok(UpperBound {
        mu_plus: hi,
        uncertified_below: lo,
        grid_cell: cell,
        newton_certified: newton_hit,
        newton_steps: steps,
    })
}

/// Result of the lower-bound step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub mu_minus: f64,
    /// Shift used for the residual pencil of `S(mu_plus)`.
    pub shift: f64,
    pub tau_minus: f64,
    /// Lower estimate of the next Schur eigenvalue at `mu_plus`.
    pub gap: f64,
    pub retries: usize,
}

/// Certified lower bound `mu_minus <= lambda_m` from the inverse residual of
/// `S(mu_plus)` at a shift below its next eigenvalue.
pub fn schur_lower_bound(
    problem: &SchurProblem<'_>,
    m: usize,
    mu_plus: f64,
    settings: &SchurSettings,
) -> Result<LowerBound> {
    problem.check(mu_plus)?;
    let gap = schur_gap_bound(problem.profile, settings.kappa + m, mu_plus);
    if !(gap > 0.0) {
        return Err(Error::GapBoundUnavailable {
            upper: mu_plus,
            gap,
        });
    }
    let op = SchurOperator {
        profile: problem.profile,
        mu: mu_plus,
    };
    let basis = ProductBasis::single(problem.basis);
    let mut shift = settings.gap_fraction * gap;
    let mut retries = 0;
    let pair = loop {
        let pair = assemble_strong_pair(&op, &basis, shift)?;
        if cholesky(&pair.p2).is_ok() {
            break pair;
        }
        if retries >= SHIFT_RETRIES {
            return Err(Error::DegeneratePencil {
                sigma: shift,
                attempts: retries + 1,
            });
        }
        retries += 1;
        shift -= SHIFT_PERTURBATION * shift.abs().max(1.0);
    };
    // min Rayleigh quotient below the shift; the other side is unbounded
    if inertia_of(&pair.p1).negative == 0 {
        return Err(Error::AdmissibilityViolated(format!(
            "no Rayleigh quotient of S({mu_plus}) below {shift}"
        )));
    }
    let (_, x) = pencil_eigenpair(&pair.p1, &pair.p2, 0, settings.eig_tol, 0.0)?;
    let (num, den) = strong_quotient_terms(&op, &basis, &x, shift)?;
    // a quotient of any trial vector is >= tau-, so this stays a valid bound
    let tau_minus = num / den;
    if !(tau_minus < 0.0) {
        return Err(Error::AdmissibilityViolated(format!(
            "tau- = {tau_minus} is not negative"
        )));
    }
    Ok(LowerBound {
        mu_minus: super::zm::sum_down(&[mu_plus, shift, 1.0 / tau_minus]),
        shift,
        tau_minus,
        gap,
        retries,
    })
}
