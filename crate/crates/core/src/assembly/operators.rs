//! Pointwise strong actions of the model operators.

use num_complex::Complex64;

use super::strong::StrongOperator;
use crate::error::{Error, Result};
use crate::models::{
    schur_strong_coefficients, CylinderPoint, CylinderProfile, SchurCoefficients, SlabPoint,
    SlabProfile,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Scalar Schur complement `S(mu)` of the slab.
#[derive(Debug, Clone, Copy)]
pub struct SchurOperator<'a> {
    pub profile: &'a SlabProfile,
    pub mu: f64,
}

impl StrongOperator for SchurOperator<'_> {
    type Point = SchurCoefficients;

    fn n_components(&self) -> usize {
        1
    }

    fn weight(&self, x: f64) -> f64 {
        self.profile.density.value(x)
    }

    fn point(&self, x: f64) -> Result<SchurCoefficients> {
        schur_strong_coefficients(self.profile, x, self.mu)
    }

    #[inline]
    fn apply(&self, s: &SchurCoefficients, _comp: usize, jet: [f64; 3], out: &mut [Complex64]) {
        // -(p u')' + c1 u' + (q + c2) u
        out[0] = re(-s.p * jet[2] + (s.c1 - s.dp) * jet[1] + (s.q + s.c2) * jet[0]);
    }
}

/// Full three-component slab operator on `(u, y1, y2)`.
#[derive(Debug, Clone, Copy)]
pub struct SlabBlockOperator<'a> {
    pub profile: &'a SlabProfile,
}

impl StrongOperator for SlabBlockOperator<'_> {
    type Point = SlabPoint;

    fn n_components(&self) -> usize {
        3
    }

    fn weight(&self, x: f64) -> f64 {
        self.profile.density.value(x)
    }

    fn point(&self, x: f64) -> Result<SlabPoint> {
        Ok(self.profile.at(x))
    }

    #[inline]
    fn apply(&self, p: &SlabPoint, comp: usize, jet: [f64; 3], out: &mut [Complex64]) {
        let [v, dv, d2v] = jet;
        let lr = p.drho / p.rho;
        let (e, de) = p.flux();
        let (f, _) = p.buoyancy();
        let d = p.d_matrix();
        if comp == 0 {
            let (c, dc) = p.stiffness();
            let (ka, _) = p.alfven_term();
            out[0] = re(-c * d2v - (dc + c * lr) * dv + ka * v);
            for j in 0..2 {
                out[j + 1] = -I * (f[j] * v + e[j] * dv);
            }
        } else {
            let j = comp - 1;
            // -i rho^{-1} (rho e_j y)' + i f_j y
            out[0] = -I * (e[j] * dv + (de[j] + e[j] * lr) * v) + I * (f[j] * v);
            out[1] = re(d[0][j] * v);
            out[2] = re(d[1][j] * v);
        }
    }
}

/// Cylinder block operator; two components when the pressure vanishes.
#[derive(Debug, Clone, Copy)]
pub struct CylinderOperator<'a> {
    pub profile: &'a CylinderProfile,
    components: usize,
}

impl<'a> CylinderOperator<'a> {
    /// Reduced two-component operator; requires a pressure-free equilibrium.
    pub fn reduced(profile: &'a CylinderProfile) -> Result<Self> {
        if !profile.is_pressureless() {
            return Err(Error::UnvalidatedModel(
                "the two-component reduction needs gamma P = 0".into(),
            ));
        }
        Ok(Self {
            profile,
            components: 2,
        })
    }

    /// Full three-component operator. Enclosures built on it are not
    /// validated against an exact spectrum.
    pub fn full(profile: &'a CylinderProfile) -> Self {
        Self {
            profile,
            components: 3,
        }
    }
}

impl StrongOperator for CylinderOperator<'_> {
    type Point = CylinderPoint;

    fn n_components(&self) -> usize {
        self.components
    }

    fn weight(&self, r: f64) -> f64 {
        r
    }

    fn point(&self, r: f64) -> Result<CylinderPoint> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cylinder coefficients evaluated at r = {r}"
            )));
        }
        Ok(self.profile.at(r))
    }

    #[inline]
    fn apply(&self, p: &CylinderPoint, comp: usize, jet: [f64; 3], out: &mut [Complex64]) {
        let [v, dv, d2v] = jet;
        let r = p.r;
        let full = self.components == 3;
        match comp {
            0 => {
                let ds = dv + v / r;
                let dds = d2v + dv / r - v / (r * r);
                out[0] = re(-p.dw * ds - p.w * dds + p.v * v);
                out[1] = -I * (p.w * p.m_phi * ds + p.s * v);
                if full {
                    out[2] = -I * (p.g * p.k_phi * ds);
                }
            }
            1 => {
                let coef = p.w * p.m_phi;
                let dcoef = p.dw * p.m_phi + p.w * p.dm_phi;
                out[0] = -I * (dcoef * v + coef * dv) + I * (p.s * v);
                out[1] = re(p.d[0][0] * v);
                if full {
                    out[2] = re(p.d[1][0] * v);
                }
            }
            _ => {
                let coef = p.g * p.k_phi;
                let dcoef = p.dg * p.k_phi + p.g * p.dk_phi;
                out[0] = -I * (dcoef * v + coef * dv);
                out[1] = re(p.d[0][1] * v);
                out[2] = re(p.d[1][1] * v);
            }
        }
    }
}
