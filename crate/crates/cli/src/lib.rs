//! Command-line front end: `validate`, `steer`, `sweep` and `coarse`.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 I/O or parse
//! failure.

pub mod csv;
pub mod plot;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qudit_steering::json::parse_density_json;
use qudit_steering::{
    coarse_correlation, coarse_covariance, correlation_tensor, gisin, hermitian_eigenvalues,
    qudit_coarse, steering_check, sweep_gisin, sweep_werner, validate_density, werner,
    xstate_to_density, DensityMatrix, GisinParam, OutcomeDistribution, SteeringFunctional,
    SweepRecord, Tolerance, WernerParam,
};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;

/// Printed with every steering report.
pub const CONVENTION_NOTE: &str = "note: for the Werner and Gisin X-states the entangled band where \
the inequality holds (EntangledFulfilled) is the band conventionally called \"steerable\"; \
a non-steerable state always satisfies the inequality, so that label is a naming convention, \
not something this check proves";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io { .. } | CliError::Parse(_) => EXIT_IO,
        }
    }
}

impl From<qudit_steering::Error> for CliError {
    fn from(e: qudit_steering::Error) -> Self {
        match e {
            qudit_steering::Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qudit-steer", version, about = "Steering and correlations of the spin-3/2 single qudit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum FunctionalArg {
    /// (2/3) Σ T_ij²
    #[default]
    #[value(alias = "squared")]
    SumSquared,
    /// (2/3) Σ T_ij
    #[value(alias = "literal")]
    SumLiteral,
    /// Both, side by side
    Both,
}

impl FunctionalArg {
    pub fn functionals(self) -> Vec<SteeringFunctional> {
        match self {
            FunctionalArg::SumSquared => vec![SteeringFunctional::SumSquared],
            FunctionalArg::SumLiteral => vec![SteeringFunctional::SumLiteral],
            FunctionalArg::Both => vec![SteeringFunctional::SumSquared, SteeringFunctional::SumLiteral],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Werner,
    Gisin,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check hermiticity, unit trace and positivity of a JSON state
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Rescale a trace off by at most 1e-6 (prints a warning)
        #[arg(long)]
        normalize: bool,
    },
    /// Evaluate the steering inequality for one state
    Steer {
        /// JSON state file
        #[arg(conflicts_with_all = ["werner", "gisin"])]
        file: Option<PathBuf>,
        /// Werner state with parameter p
        #[arg(long, value_name = "P", allow_negative_numbers = true, conflicts_with = "gisin")]
        werner: Option<f64>,
        /// Gisin state with parameters x and real a (b = +sqrt(1-a²))
        #[arg(long, num_args = 2, value_names = ["X", "A"], allow_negative_numbers = true)]
        gisin: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t)]
        functional: FunctionalArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        normalize: bool,
    },
    /// Sweep a family and write LHS/RHS curves as CSV
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Werner range start
        #[arg(long, default_value_t = -1.0 / 3.0, allow_negative_numbers = true)]
        p_lo: f64,
        /// Werner range end
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p_hi: f64,
        /// Gisin amplitude a, real part
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        a: f64,
        /// Gisin amplitude a, imaginary part
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a_im: f64,
        #[arg(short = 'n', default_value_t = 201)]
        n: usize,
        /// Output CSV (stdout when omitted)
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Also write a gnuplot script; defaults to the CSV path with a .gp extension
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        plot_script: Option<Option<PathBuf>>,
        #[arg(long, value_enum, default_value_t)]
        functional: FunctionalArg,
    },
    /// Coarse-grained outcome probabilities and their correlation
    Coarse {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        normalize: bool,
    },
}

/// Runs one command, writing its report to `out` and warnings to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Validate { file, tol, normalize } => cmd_validate(&file, tol, normalize, out, err),
        Command::Steer {
            file,
            werner,
            gisin,
            functional,
            tol,
            normalize,
        } => {
            let source = match (file, werner, gisin) {
                (Some(path), None, None) => StateSource::File { path, normalize },
                (None, Some(p), None) => StateSource::Werner(p),
                (None, None, Some(v)) => StateSource::Gisin { x: v[0], a: v[1] },
                _ => StateSource::Missing,
            };
            cmd_steer(&source, functional, tol, out, err)
        }
        Command::Sweep {
            family,
            p_lo,
            p_hi,
            a,
            a_im,
            n,
            output,
            plot_script,
            functional,
        } => {
            let params = SweepParams {
                family,
                p_lo,
                p_hi,
                a: Complex64::new(a, a_im),
                n,
                functional,
            };
            cmd_sweep(&params, output.as_deref(), plot_script, out)
        }
        Command::Coarse { file, tol, normalize } => cmd_coarse(&file, tol, normalize, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn write_io(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<output>"),
        source,
    })
}

fn tolerance(tol: f64) -> Result<Tolerance, CliError> {
    Ok(Tolerance::new(tol)?)
}

pub fn load_state(
    path: &Path,
    normalize: bool,
    err: &mut dyn Write,
) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let rho = parse_density_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if !normalize {
        return Ok(rho);
    }
    let (rho, dev) = rho.normalize_trace()?;
    if dev > 0.0 {
        let _ = writeln!(err, "warning: trace deviated from 1 by {dev:.3e}; matrix rescaled");
    }
    Ok(rho)
}

pub fn cmd_validate(
    path: &Path,
    tol: f64,
    normalize: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let rho = load_state(path, normalize, err)?;
    let report = validate_density(&rho, tol);
    let mut text = format!(
        "convention: {}\nhermitian: {}\ntrace_dev: {}\nmin_eigenvalue: {}\npsd: {}\nvalid: {}\n",
        rho.convention(),
        report.hermitian,
        csv::fmt_sig(report.trace_dev),
        csv::fmt_sig(report.min_eigenvalue),
        report.psd,
        report.valid
    );
    if let Ok(ev) = hermitian_eigenvalues(&rho) {
        let ev: Vec<String> = ev.iter().map(|&v| csv::fmt_sig(v)).collect();
        text.push_str(&format!("eigenvalues: {}\n", ev.join(" ")));
    }
    write_io(out, &text)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_DOMAIN })
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSource {
    File { path: PathBuf, normalize: bool },
    Werner(f64),
    Gisin { x: f64, a: f64 },
    Missing,
}

impl StateSource {
    fn resolve(&self, err: &mut dyn Write) -> Result<(String, DensityMatrix), CliError> {
        match self {
            StateSource::File { path, normalize } => {
                Ok((path.display().to_string(), load_state(path, *normalize, err)?))
            }
            StateSource::Werner(p) => Ok((
                format!("werner p={p}"),
                xstate_to_density(&werner(WernerParam::new(*p)?)),
            )),
            StateSource::Gisin { x, a } => Ok((
                format!("gisin x={x} a={a}"),
                xstate_to_density(&gisin(GisinParam::from_a(*x, Complex64::new(*a, 0.0))?)),
            )),
            StateSource::Missing => Err(CliError::Parse(
                "give exactly one of FILE, --werner P, --gisin X A".into(),
            )),
        }
    }
}

pub fn cmd_steer(
    source: &StateSource,
    functional: FunctionalArg,
    tol: f64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let (name, rho) = source.resolve(err)?;
    let mut text = format!("state: {name}\n");
    for f in functional.functionals() {
        let r = steering_check(&rho, f, tol)?;
        text.push_str(&format!(
            "functional: {}\nlhs: {}\nrhs: {}\nfulfilled: {}\nentangled: {}\nclassification: {}\n",
            f.name(),
            csv::fmt_sig(r.lhs),
            csv::fmt_sig(r.rhs),
            r.fulfilled,
            r.entangled,
            r.classification
        ));
    }
    text.push_str(CONVENTION_NOTE);
    text.push('\n');
    write_io(out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub family: FamilyArg,
    pub p_lo: f64,
    pub p_hi: f64,
    pub a: Complex64,
    pub n: usize,
    pub functional: FunctionalArg,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            family: FamilyArg::Werner,
            p_lo: -1.0 / 3.0,
            p_hi: 1.0,
            a: Complex64::new(0.2, 0.0),
            n: 201,
            functional: FunctionalArg::SumSquared,
        }
    }
}

/// One record list per selected functional, in the order of
/// [`FunctionalArg::functionals`].
pub fn sweep_records(params: &SweepParams) -> Result<Vec<Vec<SweepRecord>>, CliError> {
    params
        .functional
        .functionals()
        .into_iter()
        .map(|f| match params.family {
            FamilyArg::Werner => sweep_werner(params.p_lo, params.p_hi, params.n, f),
            FamilyArg::Gisin => sweep_gisin(params.a, params.n, f),
        })
        .collect::<Result<_, _>>()
        .map_err(CliError::from)
}

pub fn cmd_sweep(
    params: &SweepParams,
    output: Option<&Path>,
    plot_script: Option<Option<PathBuf>>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let runs = sweep_records(params)?;
    let functionals = params.functional.functionals();
    let text = csv::render(&functionals, &runs);

    match output {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?,
        None => write_io(out, &text)?,
    }

    if let Some(script_path) = plot_script {
        let script_path = match (script_path, output) {
            (Some(p), _) => p,
            (None, Some(csv_path)) => csv_path.with_extension("gp"),
            (None, None) => {
                return Err(CliError::Domain(
                    "--plot-script needs a PATH when the CSV goes to stdout".into(),
                ))
            }
        };
        let csv_name = output
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "sweep.csv".into());
        let script = plot::gnuplot_script(params.family, &csv_name, &functionals);
        fs::write(&script_path, script).map_err(|source| CliError::Io {
            path: script_path.clone(),
            source,
        })?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_coarse(
    path: &Path,
    tol: f64,
    normalize: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let tol = tolerance(tol)?;
    let rho = load_state(path, normalize, err)?;
    let report = validate_density(&rho, tol);
    if !report.valid {
        return Err(CliError::Domain(format!("not a valid density matrix: {report}")));
    }
    let d = OutcomeDistribution::from_density(&rho, tol)?;
    let c = qudit_coarse(&d);
    let t33 = correlation_tensor(&rho)?.t(3, 3);
    let f = csv::fmt_sig;
    let text = format!(
        "p1 (3/2 or -1/2): {}\np2 (-3/2 or 1/2): {}\npt1 (3/2 or 1/2): {}\npt2 (-3/2 or -1/2): {}\n\
         correlation: {}\ncovariance: {}\nT33: {}\n",
        f(c.p1),
        f(c.p2),
        f(c.pt1),
        f(c.pt2),
        f(coarse_correlation(&d)),
        f(coarse_covariance(&d)),
        f(t33)
    );
    write_io(out, &text)?;
    Ok(EXIT_OK)
}
