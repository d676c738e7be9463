//! Plasma slab on `[0, 1]` in the density-weighted space `L2(rho dx)`.
//!
//! The block operator acts on `(u, y1, y2)` as
//!
//! ```text
//! A u   = -rho^{-1} (rho c u')' + k^2 va^2 u,          c = va^2 + vs^2
//! B y   = sum_j [ -i rho^{-1} (rho e_j y_j)' + i f_j y_j ]
//! B* u  = ( -i (f_j u + e_j u') )_j
//! ```
//!
//! with `e = (c k_perp, vs^2 k_par)` and `f = g (k_perp, k_par)`.

use std::path::Path;

use num_complex::Complex64;

use super::coefficient::{function_range, Coefficient, CubicSpline};
use crate::error::{Error, Result};

/// Equilibrium and wave-vector profiles of a slab.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabProfile {
    pub name: String,
    pub density: Coefficient,
    /// Squared Alfvén speed.
    pub alfven_sq: Coefficient,
    /// Squared sound speed.
    pub sound_sq: Coefficient,
    pub k_perp: Coefficient,
    pub k_par: Coefficient,
    pub gravity: f64,
}

/// Number of samples used for profile checks and ranges.
pub const PROFILE_SAMPLES: usize = 4096;

impl SlabProfile {
    /// Constant coefficients with an exactly known spectrum.
    pub fn constant_benchmark() -> Self {
        Self {
            name: "slab21".into(),
            density: Coefficient::Constant(1.0),
            alfven_sq: Coefficient::Constant(1.0),
            sound_sq: Coefficient::Constant(1.0),
            k_perp: Coefficient::Constant(0.0),
            k_par: Coefficient::Constant(1.0),
            gravity: 1.0,
        }
    }

    /// Linear speed profiles `va^2 = 7/8 - x/2`, `vs^2 = 1/8 + x/2`.
    pub fn graded_benchmark() -> Self {
        Self {
            name: "slab22".into(),
            density: Coefficient::Constant(1.0),
            alfven_sq: Coefficient::Affine {
                offset: 7.0 / 8.0,
                slope: -0.5,
            },
            sound_sq: Coefficient::Affine {
                offset: 1.0 / 8.0,
                slope: 0.5,
            },
            k_perp: Coefficient::Constant(1.0),
            k_par: Coefficient::Constant(1.0),
            gravity: 1.0,
        }
    }

    /// Profile with the off-diagonal coupling switched off.
    pub fn decoupled(density: Coefficient, stiffness: Coefficient) -> Self {
        Self {
            name: "decoupled".into(),
            density,
            alfven_sq: Coefficient::Constant(0.0),
            sound_sq: stiffness,
            k_perp: Coefficient::Constant(0.0),
            k_par: Coefficient::Constant(0.0),
            gravity: 0.0,
        }
    }

    /// Parses a whitespace- or comma-separated table with columns
    /// `x rho va vs k_perp k_par`. Lines starting with `#` are comments; a
    /// comment of the form `# g = <value>` sets the gravity constant.
    pub fn from_table_str(name: &str, text: &str) -> Result<Self> {
        let mut cols: [Vec<f64>; 6] = Default::default();
        let mut gravity = 0.0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("g").map(str::trim) {
                    if let Some(v) = v.strip_prefix('=') {
                        gravity = v.trim().parse().map_err(|_| {
                            Error::Config(format!("line {}: bad gravity value", lineno + 1))
                        })?;
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if fields.len() != 6 {
                return Err(Error::Config(format!(
                    "line {}: expected 6 columns, found {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            for (c, f) in fields.iter().enumerate() {
                let v: f64 = f.parse().map_err(|_| {
                    Error::Config(format!("line {}: cannot parse '{}'", lineno + 1, f))
                })?;
                cols[c].push(v);
            }
        }
        if cols[0].len() < 2 {
            return Err(Error::Config(
                "profile table needs at least two rows".into(),
            ));
        }
        let xs = cols[0].clone();
        let spline = |c: usize| CubicSpline::new(xs.clone(), cols[c].clone());
        let profile = Self {
            name: name.to_string(),
            density: Coefficient::Spline(spline(1)?),
            alfven_sq: Coefficient::SquaredSpline(spline(2)?),
            sound_sq: Coefficient::SquaredSpline(spline(3)?),
            k_perp: Coefficient::Spline(spline(4)?),
            k_par: Coefficient::Spline(spline(5)?),
            gravity,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Self::from_table_str(&name, &text)
    }

    /// Checks positivity of density and sound speed and finiteness of all
    /// coefficients on a uniform sample.
    pub fn validate(&self) -> Result<()> {
        for i in 0..PROFILE_SAMPLES {
            let x = i as f64 / (PROFILE_SAMPLES - 1) as f64;
            let p = self.at(x);
            if !(p.rho > 0.0) {
                return Err(Error::Config(format!("density not positive at x = {x}")));
            }
            if !(p.vs2 > 0.0) {
                return Err(Error::Config(format!("sound speed vanishes at x = {x}")));
            }
            let all = [
                p.rho, p.drho, p.va2, p.dva2, p.vs2, p.dvs2, p.kp, p.dkp, p.kz, p.dkz,
            ];
            if all.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("non-finite coefficient at x = {x}")));
            }
        }
        Ok(())
    }

    /// All coefficient values and derivatives at `x`.
    #[inline]
    pub fn at(&self, x: f64) -> SlabPoint {
        let (rho, drho) = self.density.eval(x);
        let (va2, dva2) = self.alfven_sq.eval(x);
        let (vs2, dvs2) = self.sound_sq.eval(x);
        let (kp, dkp) = self.k_perp.eval(x);
        let (kz, dkz) = self.k_par.eval(x);
        SlabPoint {
            rho,
            drho,
            va2,
            dva2,
            vs2,
            dvs2,
            kp,
            dkp,
            kz,
            dkz,
            g: self.gravity,
        }
    }

    /// Whether the displacement couples to the transverse components.
    pub fn is_coupled(&self) -> bool {
        !(self.k_perp.is_zero() && self.k_par.is_zero())
    }
}

/// Pointwise profile data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabPoint {
    pub rho: f64,
    pub drho: f64,
    pub va2: f64,
    pub dva2: f64,
    pub vs2: f64,
    pub dvs2: f64,
    pub kp: f64,
    pub dkp: f64,
    pub kz: f64,
    pub dkz: f64,
    pub g: f64,
}

pub type Mat2 = [[f64; 2]; 2];

impl SlabPoint {
    /// `(c, c')` with `c = va^2 + vs^2`.
    pub fn stiffness(&self) -> (f64, f64) {
        (self.va2 + self.vs2, self.dva2 + self.dvs2)
    }

    /// `(k^2 va^2, derivative)`.
    pub fn alfven_term(&self) -> (f64, f64) {
        let k2 = self.kp * self.kp + self.kz * self.kz;
        let dk2 = 2.0 * (self.kp * self.dkp + self.kz * self.dkz);
        (k2 * self.va2, dk2 * self.va2 + k2 * self.dva2)
    }

    pub fn d_matrix(&self) -> Mat2 {
        let (ka, _) = self.alfven_term();
        let off = self.kp * self.kz * self.vs2;
        [
            [ka + self.kp * self.kp * self.vs2, off],
            [off, self.kz * self.kz * self.vs2],
        ]
    }

    pub fn d_matrix_derivative(&self) -> Mat2 {
        let (_, dka) = self.alfven_term();
        let d11 = dka + 2.0 * self.kp * self.dkp * self.vs2 + self.kp * self.kp * self.dvs2;
        let d12 =
            (self.dkp * self.kz + self.kp * self.dkz) * self.vs2 + self.kp * self.kz * self.dvs2;
        let d22 = 2.0 * self.kz * self.dkz * self.vs2 + self.kz * self.kz * self.dvs2;
        [[d11, d12], [d12, d22]]
    }

    /// Flux coefficients `e` (inside the derivative) and their derivatives.
    pub fn flux(&self) -> ([f64; 2], [f64; 2]) {
        let (c, dc) = self.stiffness();
        (
            [c * self.kp, self.vs2 * self.kz],
            [
                dc * self.kp + c * self.dkp,
                self.dvs2 * self.kz + self.vs2 * self.dkz,
            ],
        )
    }

    /// Gravity coefficients `f` and their derivatives.
    pub fn buoyancy(&self) -> ([f64; 2], [f64; 2]) {
        (
            [self.g * self.kp, self.g * self.kz],
            [self.g * self.dkp, self.g * self.dkz],
        )
    }

    /// Largest eigenvalue of `D`.
    pub fn d_max_eigenvalue(&self) -> f64 {
        let d = self.d_matrix();
        let m = 0.5 * (d[0][0] + d[1][1]);
        let r = (0.25 * (d[0][0] - d[1][1]).powi(2) + d[0][1] * d[0][1]).sqrt();
        m + r
    }
}

/// `D(x)` for the slab.
pub fn slab_d(profile: &SlabProfile, x: f64) -> Mat2 {
    profile.at(x).d_matrix()
}

/// Pointwise `(D(x) - mu)^{-1}` by the closed form.
pub fn resolvent_d(profile: &SlabProfile, x: f64, mu: f64) -> Result<Mat2> {
    resolvent_of(&profile.at(x).d_matrix(), x, mu)
}

fn resolvent_of(d: &Mat2, x: f64, mu: f64) -> Result<Mat2> {
    let a = d[0][0] - mu;
    let b = d[0][1];
    let c = d[1][1] - mu;
    let det = a * c - b * b;
    let scale = a.abs().max(b.abs()).max(c.abs()).max(1.0);
    if det.abs() < 1e-14 * scale * scale {
        return Err(Error::SingularResolvent { x, mu });
    }
    Ok([[c / det, -b / det], [-b / det, a / det]])
}

/// `(b1, b2, b3, b4)` with `(B* u)(x) = (b1 u + b2 u', b3 u + b4 u')`.
pub fn bstar_coefficients(profile: &SlabProfile, x: f64) -> [Complex64; 4] {
    let p = profile.at(x);
    let (e, _) = p.flux();
    let (f, _) = p.buoyancy();
    let mi = Complex64::new(0.0, -1.0);
    [mi * f[0], mi * e[0], mi * f[1], mi * e[1]]
}

/// Coefficients of the scalar Schur complement at one point.
///
/// Weak form: `rho [ p u' v' - beta (u v' + u' v) + q u v ]`.
/// Strong form: `S u = -(p u')' + c1 u' + (q + c2) u` with
/// `c1 = -p rho'/rho` and `c2 = (rho beta)'/rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurCoefficients {
    pub rho: f64,
    pub p: f64,
    pub dp: f64,
    pub q: f64,
    pub c1: f64,
    pub c2: f64,
    pub beta: f64,
    /// Derivatives with respect to `mu`.
    pub dp_dmu: f64,
    pub dbeta_dmu: f64,
    pub dq_dmu: f64,
}

fn quad(r: &Mat2, a: &[f64; 2], b: &[f64; 2]) -> f64 {
    a[0] * (r[0][0] * b[0] + r[0][1] * b[1]) + a[1] * (r[1][0] * b[0] + r[1][1] * b[1])
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Schur complement coefficients at `x` for spectral parameter `mu`.
pub fn schur_strong_coefficients(
    profile: &SlabProfile,
    x: f64,
    mu: f64,
) -> Result<SchurCoefficients> {
    let pt = profile.at(x);
    let d = pt.d_matrix();
    let dd = pt.d_matrix_derivative();
    let r = resolvent_of(&d, x, mu)?;
    let (e, de) = pt.flux();
    let (f, df) = pt.buoyancy();
    let (c, dc) = pt.stiffness();
    let (ka, _) = pt.alfven_term();

    // R' = -R D' R
    let mut rp = mul(&mul(&r, &dd), &r);
    for row in rp.iter_mut() {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
    let r2 = mul(&r, &r);

    let alpha = quad(&r, &e, &e);
    let beta = quad(&r, &e, &f);
    let gamma = quad(&r, &f, &f);
    let dalpha = 2.0 * quad(&r, &de, &e) + quad(&rp, &e, &e);
    let dbeta = quad(&r, &de, &f) + quad(&r, &e, &df) + quad(&rp, &e, &f);

    let p = c - alpha;
    let dp = dc - dalpha;
    let q = ka - mu - gamma;
    let lr = pt.drho / pt.rho;
    Ok(SchurCoefficients {
        rho: pt.rho,
        p,
        dp,
        q,
        c1: -p * lr,
        c2: dbeta + beta * lr,
        beta,
        dp_dmu: -quad(&r2, &e, &e),
        dbeta_dmu: quad(&r2, &e, &f),
        dq_dmu: -1.0 - quad(&r2, &f, &f),
    })
}

/// `max_x lambda_max(D(x))` by sampling plus golden-section refinement.
pub fn slab_d_max(profile: &SlabProfile) -> f64 {
    let f = |x: f64| profile.at(x).d_max_eigenvalue();
    function_range(&f, 0.0, 1.0, PROFILE_SAMPLES).1
}

/// Ranges of the Alfvén frequency `va^2 k_par` and of the slow frequency
/// `va^2 vs^2 k_par / (va^2 + vs^2)`.
pub fn slab_bands(profile: &SlabProfile) -> Vec<(String, f64, f64)> {
    let alfven = |x: f64| {
        let p = profile.at(x);
        p.va2 * p.kz
    };
    let slow = |x: f64| {
        let p = profile.at(x);
        p.va2 * p.vs2 * p.kz / (p.va2 + p.vs2)
    };
    let (s0, s1) = function_range(&slow, 0.0, 1.0, PROFILE_SAMPLES);
    let (a0, a1) = function_range(&alfven, 0.0, 1.0, PROFILE_SAMPLES);
    vec![("slow".into(), s0, s1), ("alfven".into(), a0, a1)]
}

/// Lower estimate for the `(m+1)`-th eigenvalue of the Schur complement at
/// `mu`: the Dirichlet bound for `-(rho c u')'/rho` plus `min k^2 va^2 - mu`.
pub fn schur_gap_bound(profile: &SlabProfile, m: usize, mu: f64) -> f64 {
    let mut min_rc = f64::INFINITY;
    let mut max_r: f64 = 0.0;
    let mut min_ka = f64::INFINITY;
    for i in 0..PROFILE_SAMPLES {
        let x = i as f64 / (PROFILE_SAMPLES - 1) as f64;
        let p = profile.at(x);
        min_rc = min_rc.min(p.rho * p.stiffness().0);
        max_r = max_r.max(p.rho);
        min_ka = min_ka.min(p.alfven_term().0);
    }
    let k = (m + 1) as f64 * std::f64::consts::PI;
    min_rc / max_r * k * k + min_ka - mu
}
