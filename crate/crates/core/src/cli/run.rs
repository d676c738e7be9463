//! Runners behind the subcommands and their CSV output.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use super::config::{BasisSpec, RunConfig};
use crate::assembly::{CylinderOperator, SlabBlockOperator};
use crate::discretization::{
    default_sine_subintervals, gauss_legendre, hermite_basis, hermite_quadrature_points,
    sine_basis_on, BasisTable, Boundary, Mesh, ProductBasis, SINE_QUADRATURE_POINTS,
};
use crate::enclosure::{
    kappa_count, schur_enclosure, zm_direct_enclosure, Enclosure, Method, SchurProblem,
    SchurSettings,
};
use crate::error::{Error, Result};
use crate::models::{exact_slab21_spectrum, schur_gap_bound, Geometry, ModelSpec, Oracle};

/// One enclosure together with the run it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct EncloseRow {
    pub model: String,
    /// Mesh width for Hermite elements, basis size for sines.
    pub size: SizeParam,
    pub enclosure: Enclosure,
    pub oracle: Option<f64>,
}

impl EncloseRow {
    pub fn contains_oracle(&self) -> Option<bool> {
        self.oracle.map(|x| self.enclosure.certifies(x))
    }
}

/// Discretization size of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizeParam {
    Width(f64),
    Terms(usize),
}

impl SizeParam {
    /// Abscissa for convergence fits (decreases under refinement).
    pub fn abscissa(&self) -> f64 {
        match *self {
            SizeParam::Width(h) => h,
            SizeParam::Terms(n) => 1.0 / n as f64,
        }
    }
}

fn sizes(spec: &BasisSpec) -> Vec<SizeParam> {
    match spec {
        BasisSpec::Sine { sizes } => sizes.iter().map(|n| SizeParam::Terms(*n)).collect(),
        BasisSpec::Hermite { widths, .. } => widths.iter().map(|h| SizeParam::Width(*h)).collect(),
    }
}

fn element_count(length: f64, h: f64) -> Result<usize> {
    let ne = (length / h).round();
    if ne < 1.0 || ((ne * h - length) / length).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "h: width {h} does not divide the domain length {length}"
        )));
    }
    Ok(ne as usize)
}

fn build_basis(
    spec: &BasisSpec,
    size: SizeParam,
    domain: (f64, f64),
    bc: Boundary,
) -> Result<BasisTable> {
    let (a, b) = domain;
    match (spec, size) {
        (BasisSpec::Sine { .. }, SizeParam::Terms(n)) => {
            let rule = gauss_legendre(SINE_QUADRATURE_POINTS)?;
            sine_basis_on(a, b, n, &rule, default_sine_subintervals(n))
        }
        (BasisSpec::Hermite { order, .. }, SizeParam::Width(h)) => {
            let mesh = Mesh::uniform(a, b, element_count(b - a, h)?)?;
            let rule = gauss_legendre(hermite_quadrature_points(*order))?;
            hermite_basis(&mesh, *order, &rule, bc)
        }
        _ => Err(Error::Config("basis kind and size do not match".into())),
    }
}

/// Scan or isolating interval for index `m` (1-based, position `pos` in the
/// index list).
pub fn interval_for(
    cfg: &RunConfig,
    model: &ModelSpec,
    pos: usize,
    m: usize,
) -> Result<(f64, f64)> {
    if let Some(iv) = cfg.intervals.get(pos) {
        return Ok(*iv);
    }
    match (&model.geometry, cfg.method) {
        (Geometry::Slab(profile), Method::Schur) => {
            // Dirichlet bounds for the m-th and (m+1)-th Schur eigenvalue at mu = 0
            let d = model.d.unwrap_or(0.0);
            let lo = schur_gap_bound(profile, m - 1, 0.0).max(d + 1e-9 * d.abs().max(1.0));
            let hi = schur_gap_bound(profile, m, 0.0);
            if !(hi > lo) {
                return Err(Error::Config(format!(
                    "no default scan interval for index {m}; pass --interval"
                )));
            }
            Ok((lo, hi))
        }
        (Geometry::Cylinder(_), Method::ZmDirect) => match model.oracle {
            Some(Oracle::UniformCylinder) => {
                let ess = model
                    .bands
                    .iter()
                    .map(|b| b.hi)
                    .fold(f64::NEG_INFINITY, f64::max);
                let value = |k: usize| crate::models::exact_cylinder_spectrum(k);
                let below = if m == 1 { ess } else { value(m - 1) };
                Ok((0.5 * (below + value(m)), 0.5 * (value(m) + value(m + 1))))
            }
            _ => Err(Error::Config(
                "zm-direct on this cylinder needs explicit --interval values".into(),
            )),
        },
        (Geometry::Slab(_), Method::ZmDirect) => Err(Error::Config(
            "zm-direct on a slab needs explicit --interval values".into(),
        )),
        (Geometry::Cylinder(_), Method::Schur) => Err(Error::Config(
            "the schur method applies to slab models only".into(),
        )),
    }
}

fn oracle_for(model: &ModelSpec, method: Method, m: usize, interval: (f64, f64)) -> Option<f64> {
    model.oracle?;
    match method {
        Method::Schur => model.schur_oracle(m).ok(),
        Method::ZmDirect => match model.exact_eigenvalues_in(interval.0, interval.1) {
            Ok(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        },
    }
}

fn enclose_one(
    cfg: &RunConfig,
    model: &ModelSpec,
    m: usize,
    interval: (f64, f64),
    size: SizeParam,
) -> Result<EncloseRow> {
    let domain = model.domain();
    let enclosure = match (&model.geometry, cfg.method) {
        (Geometry::Slab(profile), Method::Schur) => {
            let basis = build_basis(&cfg.basis, size, domain, Boundary::Dirichlet)?;
            let problem = SchurProblem::new(profile, &basis);
            let (a, b) = interval;
            if a <= problem.d() {
                return Err(Error::ResolventBoundary {
                    mu: a,
                    d: problem.d(),
                });
            }
            let gamma = 0.5 * (problem.d() + a.min(PI * PI));
            let kappa = kappa_count(&problem, gamma)?;
            if kappa != cfg.kappa {
                return Err(Error::AdmissibilityViolated(format!(
                    "S({gamma}) has {kappa} negative eigenvalues, expected kappa = {}",
                    cfg.kappa
                )));
            }
            let settings = SchurSettings {
                kappa: cfg.kappa,
                eig_tol: cfg.tol_eig,
                newton_steps: cfg.newton_steps,
                gap_fraction: cfg.gap_fraction,
            };
            schur_enclosure(
                &problem,
                m,
                (a, b, cfg.scan_points),
                &settings,
                cfg.tol_quad,
            )?
        }
        (Geometry::Slab(profile), Method::ZmDirect) => {
            let u = build_basis(&cfg.basis, size, domain, Boundary::Dirichlet)?;
            let y = build_basis(&cfg.basis, size, domain, Boundary::Free)?;
            let basis = ProductBasis::new(vec![&u, &y, &y])?;
            let op = SlabBlockOperator { profile };
            zm_direct_enclosure(&op, &basis, m, interval, cfg.tol_eig, cfg.tol_quad)?
        }
        (Geometry::Cylinder(profile), Method::ZmDirect) => {
            let u = build_basis(&cfg.basis, size, domain, Boundary::Dirichlet)?;
            let basis = ProductBasis::new(vec![&u, &u])?;
            let op = CylinderOperator::reduced(profile)?;
            zm_direct_enclosure(&op, &basis, m, interval, cfg.tol_eig, cfg.tol_quad)?
        }
        (Geometry::Cylinder(_), Method::Schur) => {
            return Err(Error::Config(
                "the schur method applies to slab models only".into(),
            ))
        }
    };
    Ok(EncloseRow {
        model: model.name.clone(),
        size,
        oracle: oracle_for(model, cfg.method, m, interval),
        enclosure,
    })
}

fn in_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("jobs: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// All (index, size) runs in index-major order.
fn run_grid(cfg: &RunConfig, sizes: &[SizeParam]) -> Result<Vec<EncloseRow>> {
    let model = ModelSpec::by_name(&cfg.model)?;
    let mut work = Vec::new();
    for (pos, &m) in cfg.indices.iter().enumerate() {
        let iv = interval_for(cfg, &model, pos, m)?;
        for &s in sizes {
            work.push((m, iv, s));
        }
    }
    in_pool(cfg.jobs, || {
        work.par_iter()
            .map(|&(m, iv, s)| enclose_one(cfg, &model, m, iv, s))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Enclosures for every configured index on the first configured basis size.
pub fn run_enclose(cfg: &RunConfig) -> Result<Vec<EncloseRow>> {
    let first: Vec<SizeParam> = sizes(&cfg.basis).into_iter().take(1).collect();
    run_grid(cfg, &first)
}

/// Least-squares slope of `log(error)` against `log(size)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    /// Points used in the fit.
    pub points: usize,
    /// Some errors sat at the precision floor or stopped decreasing.
    pub floor_reached: bool,
}

/// Fits `ys ~ xs^p` using only points above their floor.
pub fn fit_slope(xs: &[f64], ys: &[f64], floors: &[f64]) -> Result<SlopeFit> {
    let mut pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .zip(floors)
        .filter(|((_, y), f)| **y > **f)
        .map(|((x, y), _)| (*x, *y))
        .collect();
    let dropped = pts.len() < xs.len();
    if pts.len() < 3 {
        return Err(Error::InsufficientPoints { found: pts.len() });
    }
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let stalled = pts.windows(2).any(|w| w[1].1 >= w[0].1 * (1.0 - 1e-3));
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| {
        (sx + x.ln() / n, sy + y.ln() / n)
    });
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        let dx = x.ln() - mx;
        (a + dx * (y.ln() - my), b + dx * dx)
    });
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all sizes are equal".into()));
    }
    Ok(SlopeFit {
        slope: sxy / sxx,
        points: pts.len(),
        floor_reached: dropped || stalled,
    })
}

/// Observed orders for one eigenvalue index.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexFit {
    pub m: usize,
    pub width: SlopeFit,
    pub upper_gap: Option<SlopeFit>,
    pub lower_gap: Option<SlopeFit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<EncloseRow>,
    pub fits: Vec<IndexFit>,
}

/// Enclosures over all configured sizes.
pub fn convergence_rows(cfg: &RunConfig) -> Result<Vec<EncloseRow>> {
    run_grid(cfg, &sizes(&cfg.basis))
}

/// Slopes per index from rows produced by [`convergence_rows`].
pub fn fit_rows(rows: &[EncloseRow]) -> Result<Vec<IndexFit>> {
    let mut ms: Vec<usize> = rows.iter().map(|r| r.enclosure.m).collect();
    ms.dedup();
    ms.into_iter()
        .map(|m| {
            let sel: Vec<&EncloseRow> = rows.iter().filter(|r| r.enclosure.m == m).collect();
            let xs: Vec<f64> = sel.iter().map(|r| r.size.abscissa()).collect();
            let scale = |r: &EncloseRow| r.oracle.unwrap_or(r.enclosure.upper);
            let floors: Vec<f64> = sel
                .iter()
                .map(|r| r.enclosure.tolerances.floor(scale(r)))
                .collect();
            let widths: Vec<f64> = sel.iter().map(|r| r.enclosure.width()).collect();
            let width = fit_slope(&xs, &widths, &floors)?;
            let gap = |f: &dyn Fn(&EncloseRow, f64) -> f64| -> Option<SlopeFit> {
                let ys: Option<Vec<f64>> = sel.iter().map(|r| r.oracle.map(|o| f(r, o))).collect();
                fit_slope(&xs, &ys?, &floors).ok()
            };
            Ok(IndexFit {
                m,
                width,
                upper_gap: gap(&|r, o| r.enclosure.upper - o),
                lower_gap: gap(&|r, o| o - r.enclosure.lower),
            })
        })
        .collect()
}

pub fn run_convergence(cfg: &RunConfig) -> Result<ConvergenceReport> {
    let rows = convergence_rows(cfg)?;
    let fits = fit_rows(&rows)?;
    Ok(ConvergenceReport { rows, fits })
}

/// Essential bands, `d` and a range of `mu` on which the Schur complement
/// is positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct BandsReport {
    pub model: String,
    pub bands: Vec<(String, f64, f64)>,
    pub d: Option<f64>,
    pub definite_range: Option<(f64, f64)>,
}

pub fn run_bands(model: &str) -> Result<BandsReport> {
    let spec = ModelSpec::by_name(model)?;
    let definite_range = match (&spec.geometry, spec.d) {
        (Geometry::Slab(p), Some(d)) => {
            let top = schur_gap_bound(p, 0, 0.0);
            (top > d).then_some((d, top))
        }
        _ => None,
    };
    Ok(BandsReport {
        model: spec.name.clone(),
        bands: spec
            .bands
            .iter()
            .map(|b| (b.name.clone(), b.lo, b.hi))
            .collect(),
        d: spec.d,
        definite_range,
    })
}

/// One exact eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub model: String,
    pub m: usize,
    pub branch: &'static str,
    pub value: f64,
}

pub fn run_oracle(model: &str, indices: &[usize]) -> Result<Vec<OracleRow>> {
    let spec = ModelSpec::by_name(model)?;
    let row = |m, branch, value| OracleRow {
        model: spec.name.clone(),
        m,
        branch,
        value,
    };
    match spec.oracle {
        Some(Oracle::ConstantSlab) => Ok(indices
            .iter()
            .flat_map(|&m| {
                let (lo, hi) = exact_slab21_spectrum(m);
                [row(m, "lower", lo), row(m, "upper", hi)]
            })
            .collect()),
        Some(Oracle::UniformCylinder) => Ok(indices
            .iter()
            .map(|&m| row(m, "discrete", crate::models::exact_cylinder_spectrum(m)))
            .collect()),
        None => Err(Error::NoOracle(spec.name.clone())),
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const ENCLOSE_HEADER: &str =
    "model,method,m,dof,a,b,mu_minus,mu_plus,width,oracle,contains_oracle";

pub fn write_enclose_csv<W: Write + ?Sized>(w: &mut W, rows: &[EncloseRow]) -> Result<()> {
    writeln!(w, "{ENCLOSE_HEADER}")?;
    for r in rows {
        let e = &r.enclosure;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            text(&r.model),
            e.method,
            e.m,
            e.dof,
            num(e.interval.0),
            num(e.interval.1),
            num(e.lower),
            num(e.upper),
            num(e.width()),
            opt_num(r.oracle),
            r.contains_oracle()
                .map(|b| b.to_string())
                .unwrap_or_default()
        )?;
    }
    Ok(())
}

pub const CONVERGENCE_HEADER: &str =
    "model,method,m,basis,size,dof,mu_minus,mu_plus,width,oracle,upper_gap,lower_gap";

pub fn write_convergence_csv<W: Write + ?Sized>(w: &mut W, rows: &[EncloseRow]) -> Result<()> {
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for r in rows {
        let e = &r.enclosure;
        let (basis, size) = match r.size {
            SizeParam::Width(h) => ("hermite", num(h)),
            SizeParam::Terms(n) => ("sine", n.to_string()),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            text(&r.model),
            e.method,
            e.m,
            basis,
            size,
            e.dof,
            num(e.lower),
            num(e.upper),
            num(e.width()),
            opt_num(r.oracle),
            opt_num(r.oracle.map(|o| e.upper - o)),
            opt_num(r.oracle.map(|o| o - e.lower)),
        )?;
    }
    Ok(())
}

pub const SLOPE_HEADER: &str = "m,quantity,slope,points,floor_reached";

pub fn write_slopes_csv<W: Write + ?Sized>(w: &mut W, fits: &[IndexFit]) -> Result<()> {
    writeln!(w, "{SLOPE_HEADER}")?;
    for f in fits {
        let mut line = |name: &str, fit: &SlopeFit| {
            writeln!(
                w,
                "{},{name},{},{},{}",
                f.m,
                num(fit.slope),
                fit.points,
                fit.floor_reached
            )
        };
        line("width", &f.width)?;
        if let Some(u) = &f.upper_gap {
            line("upper_gap", u)?;
        }
        if let Some(l) = &f.lower_gap {
            line("lower_gap", l)?;
        }
    }
    Ok(())
}

pub fn write_bands_csv<W: Write + ?Sized>(w: &mut W, report: &BandsReport) -> Result<()> {
    writeln!(w, "kind,name,lo,hi")?;
    for (name, lo, hi) in &report.bands {
        writeln!(w, "band,{},{},{}", text(name), num(*lo), num(*hi))?;
    }
    if let Some(d) = report.d {
        writeln!(w, "bound,d,{},{}", num(d), num(d))?;
    }
    if let Some((lo, hi)) = report.definite_range {
        writeln!(w, "range,schur_definite,{},{}", num(lo), num(hi))?;
    }
    Ok(())
}

pub fn write_oracle_csv<W: Write + ?Sized>(w: &mut W, rows: &[OracleRow]) -> Result<()> {
    writeln!(w, "model,m,branch,value")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            text(&r.model),
            r.m,
            r.branch,
            num(r.value)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn slope_of_exact_power_law() {
        let xs = [0.1, 0.05, 0.025, 0.0125];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powi(4)).collect();
        let fit = fit_slope(&xs, &ys, &[0.0; 4]).unwrap();
        assert!((fit.slope - 4.0).abs() < 1e-12);
        assert!(!fit.floor_reached);
    }

    #[test]
    fn constant_errors_flag_the_floor() {
        let xs = [0.1, 0.05, 0.025];
        let fit = fit_slope(&xs, &[1e-3; 3], &[0.0; 3]).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!(fit.floor_reached);
    }

    #[test]
    fn too_few_points_above_floor() {
        let xs = [0.1, 0.05, 0.025, 0.0125];
        let err = fit_slope(&xs, &[1.0, 1e-2, 1e-12, 1e-13], &[1e-10; 4]).unwrap_err();
        assert_eq!(err, Error::InsufficientPoints { found: 2 });
    }

    #[test]
    fn empty_index_list_gives_header_only() {
        let c = RunConfig {
            indices: vec![],
            ..cfg()
        };
        let rows = run_enclose(&c).unwrap();
        let mut out = Vec::new();
        write_enclose_csv(&mut out, &rows).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            format!("{ENCLOSE_HEADER}\n")
        );
    }

    #[test]
    fn sine_schur_on_constant_slab_contains_upper_branch() {
        let c = RunConfig {
            model: "slab21".into(),
            indices: vec![1, 2, 3],
            basis: BasisSpec::Sine { sizes: vec![20] },
            ..cfg()
        };
        let rows = run_enclose(&c).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(r.contains_oracle(), Some(true), "{r:?}");
            // sines are exact eigenfunctions, so both bounds sit on the value
            assert!(r.enclosure.lower <= r.enclosure.upper, "{r:?}");
            assert_eq!(r.oracle, Some(exact_slab21_spectrum(r.enclosure.m).1));
        }
        let mut out = Vec::new();
        write_enclose_csv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line.split(',').count(), 11);
        assert!(line.starts_with("slab21,schur,1,20,"));
        assert!(line.ends_with(",true"));
    }

    #[test]
    fn results_do_not_depend_on_parallelism() {
        let base = RunConfig {
            indices: vec![1, 2, 3],
            basis: BasisSpec::Hermite {
                order: 3,
                widths: vec![1.0 / 16.0],
            },
            ..cfg()
        };
        let one = run_enclose(&RunConfig {
            jobs: Some(1),
            ..base.clone()
        })
        .unwrap();
        let four = run_enclose(&RunConfig {
            jobs: Some(4),
            ..base
        })
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn default_cylinder_intervals_isolate() {
        let model = ModelSpec::by_name("cyl25").unwrap();
        let c = RunConfig {
            model: "cyl25".into(),
            method: Method::ZmDirect,
            ..cfg()
        };
        for m in 1..=3 {
            let (a, b) = interval_for(&c, &model, m - 1, m).unwrap();
            let inside = model.exact_eigenvalues_in(a, b).unwrap();
            assert_eq!(inside.len(), 1);
            assert_eq!(inside[0], crate::models::exact_cylinder_spectrum(m));
        }
    }

    #[test]
    fn method_geometry_mismatches_are_config_errors() {
        let model = ModelSpec::by_name("slab21").unwrap();
        let c = RunConfig {
            model: "slab21".into(),
            method: Method::ZmDirect,
            ..cfg()
        };
        assert!(matches!(
            interval_for(&c, &model, 0, 1),
            Err(Error::Config(_))
        ));
        let model = ModelSpec::by_name("cyl25").unwrap();
        assert!(matches!(
            interval_for(&cfg(), &model, 0, 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn mesh_width_must_divide_domain() {
        assert_eq!(element_count(1.0, 1.0 / 1251.0).unwrap(), 1251);
        assert!(element_count(1.0, 0.3).is_err());
    }

    #[test]
    fn oracle_outputs() {
        let rows = run_oracle("slab21", &[1]).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].value - 0.4638994).abs() < 1e-7);
        assert!((rows[1].value - 21.275309).abs() < 1e-6);
        let rows = run_oracle("cyl25", &[1]).unwrap();
        assert_eq!(rows[0].branch, "discrete");
        assert!(matches!(
            run_oracle("slab22", &[1]),
            Err(Error::NoOracle(_))
        ));
    }

    #[test]
    fn bands_report_degenerate_constant_slab() {
        let r = run_bands("slab21").unwrap();
        assert_eq!(r.bands.len(), 2);
        assert!((r.bands[0].1 - 0.5).abs() < 1e-12 && (r.bands[0].2 - 0.5).abs() < 1e-12);
        assert!((r.bands[1].1 - 1.0).abs() < 1e-12);
        let (lo, hi) = r.definite_range.unwrap();
        assert_eq!(lo, r.d.unwrap());
        assert!(hi >= PI * PI);
        assert!(run_bands("cyl25").unwrap().definite_range.is_none());
    }
}
