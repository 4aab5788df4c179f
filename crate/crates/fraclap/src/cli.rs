//! The `fraclap` command line.
//!
//! Exit status: 0 on success, 2 for arguments outside the mathematical
//! domain or malformed flags, 3 when a check fails or a quadrature or series
//! misses its tolerance, 1 for I/O and encoding failures.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fraclap_core::hardy::{kappa_c, phi};
use fraclap_core::heat_kernels::{subordinated_heat_with, subordinated_heat_spectral};
use fraclap_core::levy_kernel::levy_kernel;
use fraclap_core::{Channel, Error, KernelParams, LevyKernelParams, QuadratureConfig, RadialFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::{Format, OutputError, OutputRecord};
use crate::report::{CheckReport, Tolerance};
use crate::suites::{run_suite, Suite};
use crate::verify::{self, forms::PlateauSpectrum};

#[derive(Debug, Parser)]
#[command(name = "fraclap", version, about = "Hardy constants, fractional heat kernels and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = QuadratureConfig::default().abs_tol)]
    pub abs_tol: f64,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = QuadratureConfig::default().rel_tol)]
    pub rel_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the record here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate Φ(σ) with κ_c and the offset from (d−α)/2.
    Phi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        alpha: f64,
        /// `start:stop:step`, both ends included.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        sigma_grid: Grid,
    },
    /// Evaluate the subordinated heat kernel.
    Kernel {
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum, default_value_t = KernelPath::Subordination)]
        path: KernelPath,
    },
    /// Evaluate the Lévy kernel ν_ζ(r, s).
    Levy {
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
    },
    /// Run a battery of identity checks.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Both sides of the ground-state representation for the standard bump.
    Gsr {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
    },
    /// Hardy quotients of a profile family against κ_c.
    HardyScan {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Family::Plateau)]
        family: Family,
        /// Plateau widths `n` (support `[1/n², n²]`).
        #[arg(long, value_delimiter = ',', default_values_t = [4.0, 16.0, 64.0])]
        n: Vec<f64>,
        /// Number of random bumps.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = verify::forms::BUMP_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelPath {
    Subordination,
    Spectral,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Plateau,
    Bumps,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, h] = parts[..] else {
        return Err(format!("expected start:stop:step, got {s:?}"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let g = Grid {
        start: num(a)?,
        stop: num(b)?,
        step: num(h)?,
    };
    if !(g.start.is_finite() && g.stop.is_finite() && g.step > 0.0 && g.stop >= g.start) {
        return Err(format!("grid needs finite start <= stop and step > 0, got {s:?}"));
    }
    if (g.stop - g.start) / g.step > 1e6 {
        return Err("grid has more than a million points".into());
    }
    Ok(g)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Numeric(#[from] Error),
    #[error("{context}: {source}")]
    Row { context: String, source: Error },
    #[error("{0}")]
    Output(#[from] OutputError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let numeric = match self {
            CliError::Numeric(e) | CliError::Row { source: e, .. } => e,
            CliError::Usage(_) => return 2,
            CliError::Output(_) => return 1,
        };
        match numeric {
            Error::Quadrature(_) | Error::Convergence(_) => 3,
            _ => 2,
        }
    }
}

fn config(g: &Global) -> Result<QuadratureConfig, CliError> {
    QuadratureConfig::new(g.abs_tol, g.rel_tol)
        .map_err(|_| CliError::Usage(format!("invalid tolerances abs={} rel={}", g.abs_tol, g.rel_tol)))
}

fn channel(d: u32, ell: u32, alpha: f64) -> Result<Channel, CliError> {
    let c = Channel::new(d, ell)?;
    if !c.admits(alpha) {
        return Err(CliError::Usage(format!(
            "alpha = {alpha} is not admissible for (d, ell) = ({d}, {ell})"
        )));
    }
    Ok(c)
}

/// Builds the record of one command.
pub fn execute(cli: &Cli) -> Result<OutputRecord, CliError> {
    let cfg = config(&cli.global)?;
    let mut rec = match &cli.command {
        Command::Phi { d, ell, alpha, sigma_grid } => {
            let c = channel(*d, *ell, *alpha)?;
            let k = kappa_c(c, *alpha)?;
            let mid = 0.5 * (*d as f64 - alpha);
            let mut rec = OutputRecord::new("phi")
                .param("d", d)
                .param("ell", ell)
                .param("alpha", alpha)
                .param("sigma_grid", format!("{}:{}:{}", sigma_grid.start, sigma_grid.stop, sigma_grid.step))
                .with_columns(&["sigma", "phi", "kappa_c", "sigma_minus_midpoint"]);
            for sigma in sigma_grid.points() {
                let v = phi(c, *alpha, sigma).map_err(|source| CliError::Row {
                    context: format!("row sigma = {sigma}"),
                    source,
                })?;
                rec.push_row(&[sigma, v, k, sigma - mid]);
            }
            rec
        }
        Command::Kernel { zeta, alpha, t, r, s, path } => {
            let params = KernelParams::new(*zeta, *alpha)?;
            let mut rec = OutputRecord::new("kernel")
                .param("zeta", zeta)
                .param("alpha", alpha)
                .param("t", t)
                .param("r", r)
                .param("s", s)
                .param("path", format!("{path:?}").to_lowercase());
            let sub = || subordinated_heat_with(params, *t, *r, *s, &cfg);
            let spec = || subordinated_heat_spectral(params, *t, *r, *s, &cfg);
            match path {
                KernelPath::Subordination => {
                    rec = rec.with_columns(&["subordination"]);
                    rec.push_row(&[sub()?]);
                }
                KernelPath::Spectral => {
                    rec = rec.with_columns(&["spectral"]);
                    rec.push_row(&[spec()?]);
                }
                KernelPath::Both => {
                    let (a, b) = (sub()?, spec()?);
                    rec = rec.with_columns(&["subordination", "spectral", "rel_diff"]);
                    rec.push_row(&[a, b, ((a - b) / b).abs()]);
                    rec.reports.push(CheckReport::compare("kernel dual path", a, b, Tolerance::rel(1e-6)));
                }
            }
            rec
        }
        Command::Levy { zeta, alpha, r, s } => {
            let v = levy_kernel(LevyKernelParams::new(*zeta, *alpha)?, *r, *s)?;
            let mut rec = OutputRecord::new("levy")
                .param("zeta", zeta)
                .param("alpha", alpha)
                .with_columns(&["r", "s", "nu"]);
            rec.push_row(&[*r, *s, v]);
            rec
        }
        Command::Check { suite } => {
            let mut rec = OutputRecord::new("check").param("suite", suite);
            rec.reports = run_suite(*suite, &cfg);
            rec
        }
        Command::Gsr { d, ell, alpha, sigma } => {
            let c = channel(*d, *ell, *alpha)?;
            let u = RadialFunction::standard_bump();
            let (lhs, weighted, potential) = verify::gsr::gsr_sides(c, *alpha, *sigma, &u, &cfg)?;
            let mut rec = OutputRecord::new("gsr")
                .param("d", d)
                .param("ell", ell)
                .param("alpha", alpha)
                .param("sigma", sigma)
                .param("profile", "standard_bump")
                .with_columns(&["lhs", "weighted_form", "potential_term", "rel_residual"]);
            let rhs = weighted + potential;
            rec.push_row(&[lhs, weighted, potential, ((lhs - rhs) / rhs).abs()]);
            rec.reports.push(CheckReport::compare(
                format!("gsr d={d},ell={ell},alpha={alpha},sigma={sigma}"),
                lhs,
                rhs,
                verify::gsr::gsr_tolerance(*alpha),
            ));
            rec
        }
        Command::HardyScan { d, ell, alpha, family, n, count, seed } => {
            let c = channel(*d, *ell, *alpha)?;
            let k = kappa_c(c, *alpha)?;
            let mut rec = OutputRecord::new("hardy-scan")
                .param("d", d)
                .param("ell", ell)
                .param("alpha", alpha)
                .param("family", format!("{family:?}").to_lowercase());
            match family {
                Family::Plateau => {
                    if n.iter().any(|&x| !(x > 1.0)) {
                        return Err(CliError::Usage("plateau widths must exceed 1".into()));
                    }
                    rec = rec
                        .param("n", n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                        .with_columns(&["n", "quotient", "kappa_c", "ratio"]);
                    let spectrum = PlateauSpectrum::new();
                    let mut last = f64::INFINITY;
                    for &w in n {
                        let q = verify::plateau_quotient(&spectrum, c, *alpha, w)?;
                        rec.push_row(&[w, q, k, q / k]);
                        rec.reports.push(CheckReport::at_least(format!("plateau n={w} above kappa_c"), q, k, 1e-12));
                        if last.is_finite() {
                            rec.reports.push(CheckReport::at_most(format!("plateau n={w} not above previous"), q, last, 0.0));
                        }
                        last = q;
                    }
                }
                Family::Bumps => {
                    rec = rec
                        .param("count", count)
                        .param("seed", seed)
                        .with_columns(&["index", "quotient", "kappa_c", "ratio"]);
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    for i in 0..*count {
                        let u = verify::random_bump(&mut rng);
                        let q = verify::hardy_quotient(c, *alpha, &u, &cfg)?;
                        rec.push_row(&[i as f64, q, k, q / k]);
                        rec.reports.push(CheckReport::at_least(format!("bump {i} above kappa_c"), q, k, 1e-6));
                    }
                }
            }
            rec
        }
    };
    rec = rec.param("abs_tol", cfg.abs_tol).param("rel_tol", cfg.rel_tol);
    Ok(rec)
}

fn emit(g: &Global, rec: &OutputRecord) -> Result<(), CliError> {
    let text = rec.encode(g.format)?;
    match &g.out {
        Some(path) => fs::write(path, text).map_err(OutputError::from)?,
        None => io::stdout().write_all(text.as_bytes()).map_err(OutputError::from)?,
    }
    Ok(())
}

pub fn run(cli: Cli) -> ExitCode {
    let result = execute(&cli).and_then(|rec| {
        emit(&cli.global, &rec)?;
        Ok(rec)
    });
    match result {
        Ok(rec) => {
            let failed: Vec<&CheckReport> = rec.reports.iter().filter(|r| !r.pass).collect();
            for r in &failed {
                eprintln!("{r}");
            }
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("{} of {} checks failed", failed.len(), rec.reports.len());
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
