//! Command-line front end for the couple-stress kernels.
//!
//! Subcommands:
//!
//! * `eval3d`, `eval2d`: evaluate a kernel family on a lattice or a point
//!   list and write CSV or JSON-lines records,
//! * `verify`: run the numerical invariant suite for one material,
//! * `catalogue`: list the implemented kernels.
//!
//! Lengths (coordinates, `--length-scale`, `--exclusion-radius`) share
//! whatever unit the caller uses. Options may also come from a `key=value`
//! file given with `--config`; flags take precedence.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a verification check
//! fails.

pub mod eval;
pub mod request;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use csgreen_core::verify::{run_all, CheckOutcome, SuiteOptions};
use csgreen_core::{KernelError, MaterialParams, VerifyError};

pub use eval::{cmd_eval, write_table, Table};
pub use request::{EvalRequest, FieldGrid, Format, GridSpec, Options, Quantity, Source};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {msg}")]
    Validation { field: &'static str, msg: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "csgreen", version, about = "Fundamental solutions of couple-stress elasticity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point force or point couple in three dimensions.
    Eval3d(EvalArgs),
    /// Line force or line couple in plane strain.
    Eval2d(EvalArgs),
    /// Run the verification suite for one material.
    Verify(VerifyArgs),
    /// List the implemented kernels.
    Catalogue,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MaterialArgs {
    /// Shear modulus.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Poisson ratio, -1 < nu < 0.5.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Material length l, in the units of the coordinates.
    #[arg(long = "length-scale", allow_hyphen_values = true)]
    pub length_scale: Option<String>,
    /// File of key=value lines using the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EvalArgs {
    /// force or couple.
    #[arg(long)]
    pub source: Option<String>,
    /// Comma-separated subset of U,Omega,Sigma,Mu,T,M.
    #[arg(long)]
    pub quantities: Option<String>,
    /// Surface normal for T and M, as nx,ny[,nz].
    #[arg(long, allow_hyphen_values = true)]
    pub normal: Option<String>,
    /// Lattice min:max:count per axis, comma separated; one axis applies to all.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// File with one point per line.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Points closer than this to the source are skipped (default 1e-9 l).
    #[arg(long = "exclusion-radius")]
    pub exclusion_radius: Option<String>,
    /// csv or records.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[command(flatten)]
    pub material: MaterialArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: Option<String>,
    #[command(flatten)]
    pub material: MaterialArgs,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn material_options(m: &MaterialArgs) -> Options {
    let mut o = Options::default();
    o.set("mu", m.mu.clone());
    o.set("nu", m.nu.clone());
    o.set("length-scale", m.length_scale.clone());
    o.set("output", m.output.as_ref().map(|p| p.display().to_string()));
    o
}

/// Configuration file values overridden by flags.
fn merged(m: &MaterialArgs, flags: Options) -> Result<Options, CliError> {
    let base = match &m.config {
        Some(path) => Options::from_config(&read_file(path)?)?,
        None => Options::default(),
    };
    Ok(base.overridden_by(flags))
}

pub fn eval_options(args: &EvalArgs) -> Result<Options, CliError> {
    let mut o = material_options(&args.material);
    o.set("source", args.source.clone());
    o.set("quantities", args.quantities.clone());
    o.set("normal", args.normal.clone());
    o.set("grid", args.grid.clone());
    o.set("points", args.points.as_ref().map(|p| p.display().to_string()));
    o.set("exclusion-radius", args.exclusion_radius.clone());
    o.set("format", args.format.clone());
    o.set("seed", args.seed.clone());
    merged(&args.material, o)
}

/// Runs the suite for `material` and writes one line per check. Returns
/// whether every check passed.
pub fn cmd_verify(material: MaterialParams, seed: u64, out: &mut impl Write) -> Result<bool, CliError> {
    if material.l() == 0.0 {
        return Err(CliError::Validation {
            field: "length-scale",
            msg: "verification samples radii in units of l, which must be positive".into(),
        });
    }
    let report: Vec<CheckOutcome> = run_all(&SuiteOptions::for_material(material, seed))?;
    let io = |source| CliError::Io { path: PathBuf::from("<output>"), source };
    let width = report.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report {
        writeln!(
            out,
            "{:<width$} {:.3e} {:.1e} {}",
            c.name,
            c.max_rel,
            c.threshold,
            if c.passed { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
    }
    let failed = report.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", report.len(), failed).map_err(io)?;
    Ok(failed == 0)
}

pub fn cmd_catalogue(out: &mut impl Write) -> io::Result<()> {
    out.write_all(csgreen_core::catalogue::render().as_bytes())
}

fn with_output<T>(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<T, CliError>) -> Result<T, CliError> {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
            let mut w = io::BufWriter::new(file);
            let v = f(&mut w)?;
            w.flush().map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
            Ok(v)
        }
        None => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            let v = f(&mut w)?;
            w.flush().map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
            Ok(v)
        }
    }
}

fn run_eval(dimension: usize, args: &EvalArgs) -> Result<i32, CliError> {
    let opts = eval_options(args)?;
    opts.seed()?;
    let format = opts.format()?;
    let req = opts.eval_request(dimension, read_file)?;
    let table = cmd_eval(&req)?;
    with_output(opts.output(), |w| {
        let mut w = w;
        write_table(&table, format, &mut w).map_err(|source| CliError::Io { path: PathBuf::from("<output>"), source })
    })?;
    eprintln!("skipped {} point(s) inside the exclusion radius", table.skipped);
    Ok(EXIT_OK)
}

fn run_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let mut flags = material_options(&args.material);
    flags.set("seed", args.seed.clone());
    let opts = merged(&args.material, flags)?;
    let material = opts.material()?;
    let seed = opts.seed()?;
    let passed = with_output(opts.output(), |w| {
        let mut w = w;
        cmd_verify(material, seed, &mut w)
    })?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval3d(a) => run_eval(3, a),
        Command::Eval2d(a) => run_eval(2, a),
        Command::Verify(a) => run_verify(a),
        Command::Catalogue => cmd_catalogue(&mut io::stdout().lock())
            .map(|_| EXIT_OK)
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
