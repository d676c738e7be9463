//! Plasma pinch on `(0, R0)` in `L2(r dr)`.
//!
//! With `W = b^2 + gamma P`, `G = gamma P` and `d*u = u' + u/r`:
//!
//! ```text
//! A u  = -(W d*u)' + V u,                V = r (b^2 sin^2 phi / r^2)' + b^2 k_phi^2
//! B y  = -i (W m_phi y1)' + i s y1 - i (G k_phi y2)',   s = 2 b^2 k sin(phi) / r
//! B* u = ( -i W m_phi d*u - i s u,  -i G k_phi d*u )
//! ```

use super::coefficient::{function_range, Coefficient};
use crate::error::{Error, Result};

/// Equilibrium of a cylindrical pinch and the Fourier mode numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderProfile {
    pub name: String,
    /// Field strength.
    pub field: Coefficient,
    /// Field pitch angle.
    pub pitch: Coefficient,
    pub pressure: Coefficient,
    pub gamma: f64,
    /// Axial wave number.
    pub k: f64,
    /// Azimuthal mode number.
    pub m: f64,
    pub radius: f64,
}

impl CylinderProfile {
    /// Uniform axial field without pressure; spectrum given by Bessel zeros.
    pub fn uniform_field_benchmark() -> Self {
        Self {
            name: "cyl25".into(),
            field: Coefficient::Constant(1.0),
            pitch: Coefficient::Constant(0.0),
            pressure: Coefficient::Constant(0.0),
            gamma: 5.0 / 3.0,
            k: 1.0,
            m: 1.0,
            radius: 1.0,
        }
    }

    /// Pressure-free equilibria decouple the third component.
    pub fn is_pressureless(&self) -> bool {
        self.pressure.is_zero() || self.gamma == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::Config("cylinder radius must be positive".into()));
        }
        let (_, db0) = self.field.eval(0.0);
        let (phi0, _) = self.pitch.eval(0.0);
        if db0.abs() > 1e-12 || phi0.abs() > 1e-12 {
            return Err(Error::Config(
                "field must have zero slope and zero pitch on the axis".into(),
            ));
        }
        Ok(())
    }

    /// Coefficients of the block operator at radius `r > 0`.
    pub fn at(&self, r: f64) -> CylinderPoint {
        let (b, db) = self.field.eval(r);
        let (phi, dphi) = self.pitch.eval(r);
        let (p, dp) = self.pressure.eval(r);
        let (sn, cs) = phi.sin_cos();
        let (k, m) = (self.k, self.m);
        let b2 = b * b;
        let db2 = 2.0 * b * db;

        let k_phi = k * cs + m / r * sn;
        let dk_phi = -k * sn * dphi - m / (r * r) * sn + m / r * cs * dphi;
        let m_phi = m / r * cs - k * sn;
        let dm_phi = -m / (r * r) * cs - m / r * sn * dphi - k * cs * dphi;

        let w = b2 + self.gamma * p;
        let dw = db2 + self.gamma * dp;
        let g = self.gamma * p;
        let dg = self.gamma * dp;

        // r (b^2 sin^2 phi / r^2)' = (b^2 sin^2 phi)'/r - 2 b^2 sin^2 phi / r^2
        let s2 = sn * sn;
        let ds2 = 2.0 * sn * cs * dphi;
        let v = (db2 * s2 + b2 * ds2) / r - 2.0 * b2 * s2 / (r * r) + b2 * k_phi * k_phi;

        let s = 2.0 * b2 * k * sn / r;

        let d11 = m_phi * m_phi * w + b2 * k_phi * k_phi;
        let d12 = m_phi * k_phi * g;
        let d22 = k_phi * k_phi * g;

        CylinderPoint {
            r,
            w,
            dw,
            v,
            g,
            dg,
            m_phi,
            dm_phi,
            k_phi,
            dk_phi,
            s,
            d: [[d11, d12], [d12, d22]],
            b2,
        }
    }
}

/// Pointwise coefficients of the cylinder block operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderPoint {
    pub r: f64,
    pub w: f64,
    pub dw: f64,
    pub v: f64,
    pub g: f64,
    pub dg: f64,
    pub m_phi: f64,
    pub dm_phi: f64,
    pub k_phi: f64,
    pub dk_phi: f64,
    pub s: f64,
    pub d: [[f64; 2]; 2],
    pub b2: f64,
}

/// Pointwise coefficient set; alias kept for symmetry with the slab API.
pub fn cylinder_action_coefficients(profile: &CylinderProfile, r: f64) -> CylinderPoint {
    profile.at(r)
}

/// Alfvén band `b^2 k_phi^2` and slow band `b^2 k_phi^2 G / (b^2 + G)`,
/// sampled on `(0, R0]`.
pub fn cylinder_bands(profile: &CylinderProfile) -> Vec<(String, f64, f64)> {
    let r0 = profile.radius;
    let lo = r0 * 1e-6;
    let alfven = |r: f64| {
        let p = profile.at(r);
        p.b2 * p.k_phi * p.k_phi
    };
    let slow = |r: f64| {
        let p = profile.at(r);
        let denom = p.b2 + p.g;
        if denom > 0.0 {
            p.b2 * p.k_phi * p.k_phi * p.g / denom
        } else {
            0.0
        }
    };
    let (s0, s1) = function_range(&slow, lo, r0, super::slab::PROFILE_SAMPLES);
    let (a0, a1) = function_range(&alfven, lo, r0, super::slab::PROFILE_SAMPLES);
    vec![("slow".into(), s0, s1), ("alfven".into(), a0, a1)]
}
