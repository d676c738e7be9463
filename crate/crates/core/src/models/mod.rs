//! Physical configurations: coefficient functions, essential bands, the
//! bound `d = max Spec(D)` and exact spectra for the benchmark cases.

mod bessel;
mod coefficient;
mod cylinder;
mod slab;

use std::f64::consts::PI;
use std::path::Path;

pub use bessel::{bessel_j01, bessel_j1_prime, j1_prime_zeros};
pub use coefficient::{function_range, Coefficient, CubicSpline};
pub use cylinder::{cylinder_action_coefficients, cylinder_bands, CylinderPoint, CylinderProfile};
pub use slab::{
    bstar_coefficients, resolvent_d, schur_gap_bound, schur_strong_coefficients, slab_bands,
    slab_d, slab_d_max, Mat2, SchurCoefficients, SlabPoint, SlabProfile, PROFILE_SAMPLES,
};

use crate::error::{Error, Result};

/// Geometry-specific profile.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Slab(SlabProfile),
    Cylinder(CylinderProfile),
}

/// Closed interval of essential spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

/// Exact spectra available for a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    ConstantSlab,
    UniformCylinder,
}

/// A physical configuration with derived metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub name: String,
    pub geometry: Geometry,
    /// `max Spec(D)`; `None` when `D` is unbounded (cylinder).
    pub d: Option<f64>,
    pub bands: Vec<Band>,
    pub oracle: Option<Oracle>,
}

fn to_bands(raw: Vec<(String, f64, f64)>) -> Vec<Band> {
    raw.into_iter()
        .map(|(name, lo, hi)| Band { name, lo, hi })
        .collect()
}

impl ModelSpec {
    pub fn slab(profile: SlabProfile) -> Result<Self> {
        profile.validate()?;
        let d = slab_d_max(&profile);
        let bands = to_bands(slab_bands(&profile));
        Ok(Self {
            name: profile.name.clone(),
            d: Some(d),
            bands,
            oracle: None,
            geometry: Geometry::Slab(profile),
        })
    }

    pub fn cylinder(profile: CylinderProfile) -> Result<Self> {
        profile.validate()?;
        let bands = to_bands(cylinder_bands(&profile));
        Ok(Self {
            name: profile.name.clone(),
            d: None,
            bands,
            oracle: None,
            geometry: Geometry::Cylinder(profile),
        })
    }

    /// Built-in models by tag (`slab21`, `slab22`, `cyl25`), otherwise a
    /// profile table file.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "slab21" => {
                let mut m = Self::slab(SlabProfile::constant_benchmark())?;
                m.oracle = Some(Oracle::ConstantSlab);
                Ok(m)
            }
            "slab22" => Self::slab(SlabProfile::graded_benchmark()),
            "cyl25" => {
                let mut m = Self::cylinder(CylinderProfile::uniform_field_benchmark())?;
                m.oracle = Some(Oracle::UniformCylinder);
                Ok(m)
            }
            other => {
                let path = Path::new(other);
                if path.is_file() {
                    Self::slab(SlabProfile::from_table_file(path)?)
                } else {
                    Err(Error::Config(format!(
                        "unknown model '{other}' (expected slab21, slab22, cyl25 or a profile table)"
                    )))
                }
            }
        }
    }

    pub fn slab_profile(&self) -> Option<&SlabProfile> {
        match &self.geometry {
            Geometry::Slab(p) => Some(p),
            Geometry::Cylinder(_) => None,
        }
    }

    pub fn cylinder_profile(&self) -> Option<&CylinderProfile> {
        match &self.geometry {
            Geometry::Cylinder(p) => Some(p),
            Geometry::Slab(_) => None,
        }
    }

    /// Spatial domain.
    pub fn domain(&self) -> (f64, f64) {
        match &self.geometry {
            Geometry::Slab(_) => (0.0, 1.0),
            Geometry::Cylinder(p) => (0.0, p.radius),
        }
    }

    /// Weight of the inner product.
    pub fn weight(&self, x: f64) -> f64 {
        match &self.geometry {
            Geometry::Slab(p) => p.density.value(x),
            Geometry::Cylinder(_) => x,
        }
    }

    /// Exact eigenvalue targeted by the Schur route for index `m`: the
    /// `m`-th eigenvalue above `d`.
    pub fn schur_oracle(&self, m: usize) -> Result<f64> {
        match self.oracle {
            Some(Oracle::ConstantSlab) => Ok(exact_slab21_spectrum(m).1),
            _ => Err(Error::NoOracle(self.name.clone())),
        }
    }

    /// `m`-th eigenvalue of the exact spectrum as listed by the oracle
    /// (for the slab benchmark the upper branch).
    pub fn oracle_value(&self, m: usize) -> Result<f64> {
        match self.oracle {
            Some(Oracle::ConstantSlab) => Ok(exact_slab21_spectrum(m).1),
            Some(Oracle::UniformCylinder) => Ok(exact_cylinder_spectrum(m)),
            None => Err(Error::NoOracle(self.name.clone())),
        }
    }

    /// Exact discrete eigenvalues inside the open interval `(a, b)`.
    pub fn exact_eigenvalues_in(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        const MAX_INDEX: usize = 100_000;
        let mut out = Vec::new();
        match self.oracle {
            Some(Oracle::ConstantSlab) => {
                for k in 1..=MAX_INDEX {
                    let (lo, hi) = exact_slab21_spectrum(k);
                    if lo > a && lo < b {
                        out.push(lo);
                    }
                    if hi > a && hi < b {
                        out.push(hi);
                    }
                    if hi >= b && lo >= b.min(0.5) {
                        break;
                    }
                }
            }
            Some(Oracle::UniformCylinder) => {
                let mut m = 1;
                loop {
                    let v = exact_cylinder_spectrum(m);
                    if v >= b {
                        break;
                    }
                    if v > a {
                        out.push(v);
                    }
                    m += 1;
                }
            }
            None => return Err(Error::NoOracle(self.name.clone())),
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

/// `max Spec(D)` when finite.
pub fn d_max(model: &ModelSpec) -> Option<f64> {
    model.d
}

/// Essential-spectrum bands of a model.
pub fn essential_bands(model: &ModelSpec) -> &[Band] {
    &model.bands
}

/// `(lambda_k^-, lambda_k^+)` for the constant-coefficient slab:
/// `1 + k^2 pi^2 -/+ sqrt(1 + k^2 pi^2 + k^4 pi^4)`.
pub fn exact_slab21_spectrum(k: usize) -> (f64, f64) {
    let t = (k as f64 * PI).powi(2);
    let plus = 1.0 + t + (1.0 + t + t * t).sqrt();
    // product of the pair is k^2 pi^2; avoids cancellation in the lower root
    (t / plus, plus)
}

/// Accumulation point of the lower branch of the constant slab.
pub const SLAB21_ACCUMULATION: f64 = 0.5;
/// Embedded eigenvalue of infinite multiplicity of the constant slab.
pub const SLAB21_FLAT: f64 = 1.0;

/// `E_m^2 + 1` with `E_m` the `m`-th positive zero of `J1'`.
pub fn exact_cylinder_spectrum(m: usize) -> f64 {
    let z = j1_prime_zeros(m.max(1), 1e-15);
    let e = z[m.max(1) - 1];
    e * e + 1.0
}
