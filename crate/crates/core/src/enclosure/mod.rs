//! Certified eigenvalue enclosures: inverse residual bounds on an isolating
//! interval and the Schur complement route for the slab.

mod schur;
mod zm;

pub use schur::{
    kappa_count, schur_lower_bound, schur_upper_bound, LowerBound, SchurEigenvalue, SchurProblem,
    SchurSettings, UpperBound,
};
pub use zm::{
    check_zimcon, check_zimcon_single, inverse_residuals, refined_residuals, zm_enclose,
    zm_enclosure, InverseResiduals, ZmOutcome, SHIFT_PERTURBATION, SHIFT_RETRIES,
};

use std::fmt;
use std::str::FromStr;

use crate::assembly::{CylinderOperator, StrongOperator};
use crate::discretization::ProductBasis;
use crate::error::{Error, Result};
use crate::models::CylinderProfile;

/// How an enclosure was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Schur,
    ZmDirect,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Schur => "schur",
            Method::ZmDirect => "zm-direct",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schur" => Ok(Method::Schur),
            "zm-direct" | "zm" => Ok(Method::ZmDirect),
            _ => Err(Error::Config(format!("unknown method '{s}'"))),
        }
    }
}

/// Tolerances in force for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Nominal quadrature accuracy.
    pub quadrature: f64,
    /// Relative eigensolver tolerance.
    pub eigen: f64,
    /// Spacing of the root-finding grid; zero when no scan was made.
    pub scan: f64,
    /// Achieved width of the final root bracket (absolute).
    pub root: f64,
}

impl Tolerances {
    /// Errors below this, near a value of size `scale`, are numerical noise.
    pub fn floor(&self, scale: f64) -> f64 {
        10.0 * (self.quadrature.max(self.eigen) * scale.abs().max(1.0)).max(self.root)
    }
}

/// Run details that do not affect the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    pub tau_plus: Option<f64>,
    pub tau_minus: Option<f64>,
    /// Gap between the certified upper bound and the nearest point known to
    /// lie below the discrete root.
    pub root_width: Option<f64>,
    pub newton_certified: Option<bool>,
    pub shift_retries: usize,
    pub asymmetry: f64,
}

/// Two-sided bound `lower <= lambda_m <= upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub m: usize,
    pub lower: f64,
    pub upper: f64,
    pub method: Method,
    pub interval: (f64, f64),
    pub tolerances: Tolerances,
    pub dof: usize,
    /// Hypothesis the bound rests on that the code cannot check.
    pub assumption: String,
    pub diagnostics: Diagnostics,
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// Containment up to the reported tolerance floor.
    pub fn certifies(&self, x: f64) -> bool {
        let f = self.tolerances.floor(x);
        self.lower - f <= x && x <= self.upper + f
    }
}

/// Upper and lower bound for the `m`-th eigenvalue above `d` on a slab.
pub fn schur_enclosure(
    problem: &SchurProblem<'_>,
    m: usize,
    scan: (f64, f64, usize),
    settings: &SchurSettings,
    quadrature_tol: f64,
) -> Result<Enclosure> {
    let ub = schur_upper_bound(problem, m, scan, settings)?;
    let lb = schur_lower_bound(problem, m, ub.mu_plus, settings)?;
    let (a, b, p) = scan;
    Ok(Enclosure {
        m,
        lower: lb.mu_minus,
        upper: ub.mu_plus,
        method: Method::Schur,
        interval: (a, b),
        tolerances: Tolerances {
            quadrature: quadrature_tol,
            eigen: settings.eig_tol,
            scan: (b - a) / p as f64,
            root: ub.root_width(),
        },
        dof: problem.dim(),
        assumption: format!(
            "S(mu) has {} negative eigenvalues below the scan and ({a}, {b}) contains eigenvalue {m}",
            settings.kappa
        ),
        diagnostics: Diagnostics {
            tau_minus: Some(lb.tau_minus),
            root_width: Some(ub.root_width()),
            newton_certified: Some(ub.newton_certified),
            shift_retries: lb.retries,
            ..Diagnostics::default()
        },
    })
}

/// Direct inverse-residual enclosure for any block operator on a product basis.
pub fn zm_direct_enclosure<T: StrongOperator>(
    op: &T,
    basis: &ProductBasis<'_>,
    m: usize,
    interval: (f64, f64),
    eig_tol: f64,
    quadrature_tol: f64,
) -> Result<Enclosure> {
    let (a, b) = interval;
    let out = zm_enclose(op, basis, a, b, eig_tol)?;
    Ok(Enclosure {
        m,
        lower: out.lower,
        upper: out.upper,
        method: Method::ZmDirect,
        interval: (out.residuals.a, out.residuals.b),
        tolerances: Tolerances {
            quadrature: quadrature_tol,
            eigen: eig_tol,
            scan: 0.0,
            root: 0.0,
        },
        dof: basis.dim(),
        assumption: format!("[{a}, {b}] meets the spectrum in exactly one eigenvalue"),
        diagnostics: Diagnostics {
            tau_plus: Some(out.residuals.tau_plus),
            tau_minus: Some(out.residuals.tau_minus),
            shift_retries: out.retries,
            asymmetry: out.asymmetry,
            ..Diagnostics::default()
        },
    })
}

/// Direct enclosure for the pressure-free cylinder on the two-component
/// product `basis`.
pub fn cylinder_enclosure(
    profile: &CylinderProfile,
    basis: &ProductBasis<'_>,
    m: usize,
    interval: (f64, f64),
    eig_tol: f64,
    quadrature_tol: f64,
) -> Result<Enclosure> {
    let op = CylinderOperator::reduced(profile)?;
    zm_direct_enclosure(&op, basis, m, interval, eig_tol, quadrature_tol)
}
