//! Command-line front end: `enclose`, `convergence`, `bands` and `oracle`.
//!
//! Exit codes: 0 on success, 1 on a numerical failure, 2 on a configuration
//! error, 3 when an exact eigenvalue falls outside its enclosure.

mod config;
mod run;

pub use config::{parse_indices, parse_intervals, parse_number, BasisSpec, Overrides, RunConfig};
pub use run::{
    convergence_rows, fit_rows, fit_slope, interval_for, run_bands, run_convergence, run_enclose,
    run_oracle, write_bands_csv, write_convergence_csv, write_enclose_csv, write_oracle_csv,
    write_slopes_csv, BandsReport, ConvergenceReport, EncloseRow, IndexFit, OracleRow, SizeParam,
    SlopeFit, CONVERGENCE_HEADER, ENCLOSE_HEADER, SLOPE_HEADER,
};

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NOT_CONTAINED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mhd-enclose",
    version,
    about = "Certified eigenvalue enclosures for MHD operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose the requested eigenvalues on one discretization.
    Enclose(RunArgs),
    /// Enclose over a sequence of discretizations and fit convergence orders.
    Convergence(RunArgs),
    /// Print essential bands and the bound d.
    Bands {
        #[arg(long)]
        model: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print exact eigenvalues of a benchmark model.
    Oracle {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "1")]
        index: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Default)]
pub struct RunArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// slab21, slab22, cyl25 or a profile table.
    #[arg(long)]
    pub model: Option<String>,
    /// schur or zm-direct.
    #[arg(long)]
    pub method: Option<String>,
    /// sine or hermite.
    #[arg(long)]
    pub basis: Option<String>,
    /// Hermite element order (3, 4 or 5).
    #[arg(long)]
    pub order: Option<usize>,
    /// Mesh widths, e.g. `1/8,1/16`.
    #[arg(long)]
    pub h: Option<String>,
    /// Sine basis sizes.
    #[arg(long)]
    pub n: Option<String>,
    /// Eigenvalue indices, e.g. `1-3`.
    #[arg(long)]
    pub index: Option<String>,
    /// `a:b` per index, comma separated.
    #[arg(long)]
    pub interval: Option<String>,
    #[arg(long)]
    pub scan_points: Option<usize>,
    #[arg(long)]
    pub tol_quad: Option<f64>,
    #[arg(long)]
    pub tol_eig: Option<f64>,
    /// Negative eigenvalues of the Schur complement below the scan.
    #[arg(long)]
    pub kappa: Option<usize>,
    #[arg(long)]
    pub newton_steps: Option<usize>,
    #[arg(long)]
    pub gap_fraction: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            model: self.model.clone(),
            method: self.method.clone(),
            basis: self.basis.clone(),
            order: self.order,
            h: self.h.clone(),
            n: self.n.clone(),
            index: self.index.clone(),
            interval: self.interval.clone(),
            scan_points: self.scan_points,
            tol_quad: self.tol_quad,
            tol_eig: self.tol_eig,
            kappa: self.kappa,
            newton_steps: self.newton_steps,
            gap_fraction: self.gap_fraction,
            out: self.out.clone(),
            jobs: self.jobs,
        }
    }

    /// Config file entries with flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => Overrides::from_config_file(path)?,
            None => Overrides::default(),
        };
        RunConfig::resolve(base.merged(self.overrides()))
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::InvalidArgument(_)
        | Error::UnsupportedOrder(_)
        | Error::NoOracle(_)
        | Error::UnvalidatedModel(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

fn with_output(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Config(format!("out: {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn all_contained(rows: &[EncloseRow]) -> bool {
    rows.iter().all(|r| r.contains_oracle() != Some(false))
}

/// Runs a parsed command and returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Enclose(args) => {
            let cfg = args.resolve()?;
            let rows = run_enclose(&cfg)?;
            with_output(cfg.out.as_deref(), |w| write_enclose_csv(w, &rows))?;
            Ok(if all_contained(&rows) {
                EXIT_OK
            } else {
                EXIT_NOT_CONTAINED
            })
        }
        Command::Convergence(args) => {
            let cfg = args.resolve()?;
            let rows = convergence_rows(&cfg)?;
            with_output(cfg.out.as_deref(), |w| write_convergence_csv(w, &rows))?;
            let fits = fit_rows(&rows)?;
            let stderr = std::io::stderr();
            write_slopes_csv(&mut stderr.lock(), &fits)?;
            Ok(if all_contained(&rows) {
                EXIT_OK
            } else {
                EXIT_NOT_CONTAINED
            })
        }
        Command::Bands { model, out } => {
            let report = run_bands(&model)?;
            with_output(out.as_deref(), |w| write_bands_csv(w, &report))?;
            Ok(EXIT_OK)
        }
        Command::Oracle { model, index, out } => {
            let rows = run_oracle(&model, &parse_indices(&index)?)?;
            with_output(out.as_deref(), |w| write_oracle_csv(w, &rows))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> i32 {
        main_with(std::iter::once("mhd-enclose").chain(args.iter().copied()))
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "model = slab21\nindex = 1-3\nn = 10\n").unwrap();
        let cli = Cli::try_parse_from([
            "mhd-enclose",
            "enclose",
            "--config",
            path.to_str().unwrap(),
            "--index",
            "2",
        ])
        .unwrap();
        let Command::Enclose(args) = cli.command else {
            panic!("wrong subcommand")
        };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.model, "slab21");
        assert_eq!(cfg.indices, vec![2]);
        assert_eq!(cfg.basis, BasisSpec::Sine { sizes: vec![10] });
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("e.csv");
        let out = out.to_str().unwrap();
        assert_eq!(
            run(&["enclose", "--model", "slab21", "--n", "12", "--out", out]),
            EXIT_OK
        );
        let text = std::fs::read_to_string(out).unwrap();
        assert!(text.starts_with(ENCLOSE_HEADER));
        assert!(text.lines().nth(1).unwrap().ends_with(",true"));

        assert_eq!(run(&["enclose", "--method", "lehmann"]), EXIT_CONFIG);
        assert_eq!(
            run(&["enclose", "--basis", "hermite", "--order", "7"]),
            EXIT_CONFIG
        );
        assert_eq!(run(&["enclose", "--no-such-flag"]), EXIT_CONFIG);
        assert_eq!(run(&["oracle", "--model", "slab22"]), EXIT_CONFIG);
        assert_eq!(
            run(&["enclose", "--model", "slab21", "--method", "zm-direct"]),
            EXIT_CONFIG
        );
    }

    #[test]
    fn scan_without_crossing_is_a_failure() {
        assert_eq!(
            run(&[
                "enclose",
                "--model",
                "slab21",
                "--n",
                "8",
                "--interval",
                "22:30"
            ]),
            EXIT_FAILURE
        );
    }

    #[test]
    fn excluded_oracle_is_detected() {
        let mut row = run_enclose(&RunConfig {
            model: "slab21".into(),
            basis: BasisSpec::Sine { sizes: vec![8] },
            ..RunConfig::default()
        })
        .unwrap()
        .remove(0);
        assert!(all_contained(std::slice::from_ref(&row)));
        row.oracle = Some(100.0);
        assert_eq!(row.contains_oracle(), Some(false));
        assert!(!all_contained(&[row]));
    }

    #[test]
    fn convergence_command_writes_rows() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("c.csv");
        let code = run(&[
            "convergence",
            "--model",
            "slab22",
            "--basis",
            "hermite",
            "--h",
            "1/4,1/8,1/16",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with(CONVERGENCE_HEADER));
    }

    #[test]
    fn bands_and_oracle_commands() {
        assert_eq!(run(&["bands", "--model", "slab22"]), EXIT_OK);
        assert_eq!(
            run(&["oracle", "--model", "cyl25", "--index", "1-3"]),
            EXIT_OK
        );
    }
}
