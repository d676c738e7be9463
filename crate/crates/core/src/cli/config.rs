//! Run configuration: a `key = value` file with command-line overrides.

use std::path::{Path, PathBuf};

use crate::enclosure::Method;
use crate::error::{Error, Result};

/// Trial space family and the sizes to run.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisSpec {
    /// Sine basis of each listed dimension.
    Sine { sizes: Vec<usize> },
    /// Hermite elements of one order on uniform meshes of each listed width.
    Hermite { order: usize, widths: Vec<f64> },
}

/// Everything needed to run `enclose` or `convergence`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: String,
    pub method: Method,
    pub basis: BasisSpec,
    /// Eigenvalue indices (1-based).
    pub indices: Vec<usize>,
    /// Isolating or scan interval per index; empty means model defaults.
    pub intervals: Vec<(f64, f64)>,
    pub tol_quad: f64,
    pub tol_eig: f64,
    pub scan_points: usize,
    pub kappa: usize,
    pub newton_steps: usize,
    pub gap_fraction: f64,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: "slab22".into(),
            method: Method::Schur,
            basis: BasisSpec::Sine { sizes: vec![40] },
            indices: vec![1],
            intervals: Vec::new(),
            tol_quad: 1e-14,
            tol_eig: 1e-12,
            scan_points: 1000,
            kappa: 0,
            newton_steps: 40,
            gap_fraction: 0.95,
            out: None,
            jobs: None,
        }
    }
}

/// Raw settings before the basis is assembled from its parts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub model: Option<String>,
    pub method: Option<String>,
    pub basis: Option<String>,
    pub order: Option<usize>,
    pub h: Option<String>,
    pub n: Option<String>,
    pub index: Option<String>,
    pub interval: Option<String>,
    pub scan_points: Option<usize>,
    pub tol_quad: Option<f64>,
    pub tol_eig: Option<f64>,
    pub kappa: Option<usize>,
    pub newton_steps: Option<usize>,
    pub gap_fraction: Option<f64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

fn field_error(field: &str, value: &str, what: &str) -> Error {
    Error::Config(format!("{field}: cannot parse '{value}' as {what}"))
}

/// Parses `0.125`, `1/8` or `1e-3`.
pub fn parse_number(field: &str, s: &str) -> Result<f64> {
    let s = s.trim();
    let v = if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num
            .trim()
            .parse()
            .map_err(|_| field_error(field, s, "a number"))?;
        let den: f64 = den
            .trim()
            .parse()
            .map_err(|_| field_error(field, s, "a number"))?;
        num / den
    } else {
        s.parse().map_err(|_| field_error(field, s, "a number"))?
    };
    if !v.is_finite() {
        return Err(field_error(field, s, "a finite number"));
    }
    Ok(v)
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split([',', ';', ' '])
        .map(str::trim)
        .filter(|t| !t.is_empty())
}

/// `1,2,5` or ranges such as `1-5`.
pub fn parse_indices(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in split_list(s) {
        if let Some((a, b)) = tok.split_once('-') {
            let a: usize = a
                .parse()
                .map_err(|_| field_error("index", tok, "a range"))?;
            let b: usize = b
                .parse()
                .map_err(|_| field_error("index", tok, "a range"))?;
            if a == 0 || b < a {
                return Err(field_error(
                    "index",
                    tok,
                    "an increasing range starting at 1",
                ));
            }
            out.extend(a..=b);
        } else {
            let v: usize = tok
                .parse()
                .map_err(|_| field_error("index", tok, "an integer"))?;
            if v == 0 {
                return Err(Error::Config("index: eigenvalue indices start at 1".into()));
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `a:b` pairs separated by commas or semicolons.
pub fn parse_intervals(s: &str) -> Result<Vec<(f64, f64)>> {
    split_list(s)
        .map(|tok| {
            let (a, b) = tok
                .split_once(':')
                .ok_or_else(|| field_error("interval", tok, "a:b"))?;
            let (a, b) = (parse_number("interval", a)?, parse_number("interval", b)?);
            if !(a < b) {
                return Err(Error::Config(format!("interval: empty interval {tok}")));
            }
            Ok((a, b))
        })
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    split_list(s)
        .map(|t| {
            t.parse()
                .map_err(|_| field_error("n", t, "a positive integer"))
        })
        .collect()
}

fn parse_widths(s: &str) -> Result<Vec<f64>> {
    split_list(s).map(|t| parse_number("h", t)).collect()
}

impl Overrides {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ctx = |e: Error| match e {
                Error::Config(msg) => Error::Config(format!("line {}: {msg}", lineno + 1)),
                other => other,
            };
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim().to_string();
            let int = |v: &str| -> Result<usize> {
                v.parse().map_err(|_| field_error(&key, v, "an integer"))
            };
            let num = |v: &str| parse_number(&key, v);
            match key.as_str() {
                "model" => o.model = Some(value),
                "method" => o.method = Some(value),
                "basis" => o.basis = Some(value),
                "order" => o.order = Some(int(&value).map_err(ctx)?),
                "h" => o.h = Some(value),
                "n" => o.n = Some(value),
                "index" => o.index = Some(value),
                "interval" => o.interval = Some(value),
                "scan_points" => o.scan_points = Some(int(&value).map_err(ctx)?),
                "tol_quad" => o.tol_quad = Some(num(&value).map_err(ctx)?),
                "tol_eig" => o.tol_eig = Some(num(&value).map_err(ctx)?),
                "kappa" => o.kappa = Some(int(&value).map_err(ctx)?),
                "newton_steps" => o.newton_steps = Some(int(&value).map_err(ctx)?),
                "gap_fraction" => o.gap_fraction = Some(num(&value).map_err(ctx)?),
                "out" => o.out = Some(PathBuf::from(value)),
                "jobs" => o.jobs = Some(int(&value).map_err(ctx)?),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(o)
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_config_str(&text)
    }

    /// Values set in `other` win.
    pub fn merged(self, other: Overrides) -> Overrides {
        Overrides {
            model: other.model.or(self.model),
            method: other.method.or(self.method),
            basis: other.basis.or(self.basis),
            order: other.order.or(self.order),
            h: other.h.or(self.h),
            n: other.n.or(self.n),
            index: other.index.or(self.index),
            interval: other.interval.or(self.interval),
            scan_points: other.scan_points.or(self.scan_points),
            tol_quad: other.tol_quad.or(self.tol_quad),
            tol_eig: other.tol_eig.or(self.tol_eig),
            kappa: other.kappa.or(self.kappa),
            newton_steps: other.newton_steps.or(self.newton_steps),
            gap_fraction: other.gap_fraction.or(self.gap_fraction),
            out: other.out.or(self.out),
            jobs: other.jobs.or(self.jobs),
        }
    }
}

impl RunConfig {
    /// Applies overrides to the defaults and validates the result.
    pub fn resolve(o: Overrides) -> Result<Self> {
        let d = RunConfig::default();
        let method = match &o.method {
            Some(m) => m.parse()?,
            None => d.method,
        };
        let kind = o.basis.clone().unwrap_or_else(|| {
            if o.h.is_some() || o.order.is_some() {
                "hermite".into()
            } else {
                "sine".into()
            }
        });
        let basis = match kind.as_str() {
            "sine" => {
                if o.h.is_some() {
                    return Err(Error::Config("h: the sine basis takes n, not h".into()));
                }
                let sizes = match &o.n {
                    Some(s) => parse_sizes(s)?,
                    None => vec![40],
                };
                if sizes.contains(&0) {
                    return Err(Error::Config("n: basis sizes must be positive".into()));
                }
                BasisSpec::Sine { sizes }
            }
            "hermite" => {
                let order = o.order.unwrap_or(3);
                if !(3..=5).contains(&order) {
                    return Err(Error::Config(format!(
                        "order: must be 3, 4 or 5, got {order}"
                    )));
                }
                if o.n.is_some() {
                    return Err(Error::Config("n: the hermite basis takes h, not n".into()));
                }
                let widths = match &o.h {
                    Some(s) => parse_widths(s)?,
                    None => vec![1.0 / 32.0],
                };
                if widths.iter().any(|h| !(*h > 0.0 && *h <= 1.0)) {
                    return Err(Error::Config("h: mesh widths must lie in (0, 1]".into()));
                }
                BasisSpec::Hermite { order, widths }
            }
            other => return Err(Error::Config(format!("basis: unknown basis '{other}'"))),
        };
        let indices = match &o.index {
            Some(s) => parse_indices(s)?,
            None => d.indices.clone(),
        };
        let intervals = match &o.interval {
            Some(s) => parse_intervals(s)?,
            None => Vec::new(),
        };
        if !intervals.is_empty() && intervals.len() != indices.len() {
            return Err(Error::Config(format!(
                "interval: {} intervals given for {} indices",
                intervals.len(),
                indices.len()
            )));
        }
        let cfg = RunConfig {
            model: o.model.unwrap_or(d.model),
            method,
            basis,
            indices,
            intervals,
            tol_quad: o.tol_quad.unwrap_or(d.tol_quad),
            tol_eig: o.tol_eig.unwrap_or(d.tol_eig),
            scan_points: o.scan_points.unwrap_or(d.scan_points),
            kappa: o.kappa.unwrap_or(d.kappa),
            newton_steps: o.newton_steps.unwrap_or(d.newton_steps),
            gap_fraction: o.gap_fraction.unwrap_or(d.gap_fraction),
            out: o.out,
            jobs: o.jobs,
        };
        if cfg.scan_points < 2 {
            return Err(Error::Config("scan_points: need at least 2".into()));
        }
        if !(cfg.tol_eig > 0.0 && cfg.tol_eig < 1.0) {
            return Err(Error::Config("tol_eig: must lie in (0, 1)".into()));
        }
        if !(cfg.gap_fraction > 0.0 && cfg.gap_fraction < 1.0) {
            return Err(Error::Config("gap_fraction: must lie in (0, 1)".into()));
        }
        if cfg.jobs == Some(0) {
            return Err(Error::Config("jobs: must be positive".into()));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_fractions() {
        assert_eq!(parse_number("h", "1/1251").unwrap(), 1.0 / 1251.0);
        assert_eq!(parse_number("h", "0.5").unwrap(), 0.5);
        assert!(parse_number("h", "1/0").is_err());
        assert!(parse_number("h", "abc").is_err());
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_indices("1-3,5").unwrap(), vec![1, 2, 3, 5]);
        assert!(parse_indices("").unwrap().is_empty());
        assert!(parse_indices("0").is_err());
    }

    #[test]
    fn config_file_with_overrides() {
        let text =
            "# cylinder run\nmodel = cyl25\nmethod = zm-direct\nbasis = hermite\norder = 3\n\
                    h = 1/1251\nindex = 1\ninterval = 3:20\n";
        let file = Overrides::from_config_str(text).unwrap();
        let flags = Overrides {
            order: Some(5),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(file.merged(flags)).unwrap();
        assert_eq!(cfg.model, "cyl25");
        assert_eq!(cfg.method, Method::ZmDirect);
        assert_eq!(
            cfg.basis,
            BasisSpec::Hermite {
                order: 5,
                widths: vec![1.0 / 1251.0]
            }
        );
        assert_eq!(cfg.intervals, vec![(3.0, 20.0)]);
    }

    #[test]
    fn config_errors_name_the_line() {
        let err = Overrides::from_config_str("model = slab22\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = Overrides::from_config_str("order = three\n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn invalid_orders_and_mismatched_intervals() {
        let o = Overrides {
            basis: Some("hermite".into()),
            order: Some(2),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(o).is_err());
        let o = Overrides {
            index: Some("1,2".into()),
            interval: Some("1:2".into()),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(o).is_err());
    }
}
