//! `zfourier`: coefficient tables, verification suites and reconstructions
//! from the command line.

pub mod config;
pub mod error;
pub mod fsio;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zeta_fourier::analysis::{reconstruction_report, ReconstructionReport};
use zeta_fourier::coefficients::{
    calibrate_bar, calibrate_hat, calibrate_tilde_negative, calibrate_xi, check_method, compute_table, meta_hash,
    CalibrationReport, CustomFn, FunctionSpec, Method, SeriesForm, WeightVariant, ZeroTable,
};
use zeta_fourier::Complex64;

use config::{RunConfig, KEYS};
use error::CliError;
use verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "zfourier",
    version,
    about = "Fourier coefficients of zeta-related functions in the arctan basis"
)]
pub struct Cli {
    /// key=value configuration file
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long = "quadrature.nodes", global = true, value_name = "N")]
    quadrature_nodes: Option<String>,
    #[arg(long = "quadrature.y_max", global = true, value_name = "Y")]
    quadrature_y_max: Option<String>,
    #[arg(long = "quadrature.tol", global = true, value_name = "TOL")]
    quadrature_tol: Option<String>,
    #[arg(long = "zeta.em_terms", global = true, value_name = "N")]
    zeta_em_terms: Option<String>,
    #[arg(long = "zeta.em_bernoulli", global = true, value_name = "M")]
    zeta_em_bernoulli: Option<String>,
    #[arg(long = "deriv.radius", global = true, value_name = "R")]
    deriv_radius: Option<String>,
    #[arg(long = "deriv.nodes", global = true, value_name = "N")]
    deriv_nodes: Option<String>,
    #[arg(long = "series.k_max", global = true, value_name = "K")]
    series_k_max: Option<String>,
    #[arg(long = "zeros.count", global = true, value_name = "N")]
    zeros_count: Option<String>,
    #[arg(long = "zeros.path", global = true, value_name = "FILE")]
    zeros_path: Option<String>,
    #[arg(long = "cache.dir", global = true, value_name = "DIR")]
    cache_dir: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        let values = [
            &self.quadrature_nodes,
            &self.quadrature_y_max,
            &self.quadrature_tol,
            &self.zeta_em_terms,
            &self.zeta_em_bernoulli,
            &self.deriv_radius,
            &self.deriv_nodes,
            &self.series_k_max,
            &self.zeros_count,
            &self.zeros_path,
            &self.cache_dir,
        ];
        KEYS.iter()
            .zip(values)
            .filter_map(|(k, v)| v.as_deref().map(|v| (*k, v)))
            .collect()
    }

    /// The file configuration (or defaults) with flag overrides applied.
    pub fn run_config(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::parse(&fsio::read_text(path)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
            None => RunConfig::default(),
        };
        base.with_overrides(self.overrides())
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero-table management
    Zeros {
        #[command(subcommand)]
        action: ZerosCommand,
    },
    /// Coefficient table as CSV
    Coeffs(CoeffsArgs),
    /// Verification suite as a JSON report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partial-sum reconstruction errors as a JSON report
    Reconstruct(ReconstructArgs),
}

#[derive(Debug, Subcommand)]
pub enum ZerosCommand {
    /// Validates a zero file, computes zeta' at each zero and stores both in the cache
    Import { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionKind {
    /// f ≡ 1
    One,
    /// 1/ζ(σ + iy)
    InvZeta,
    /// 1/ζ(σ − iy)
    InvZetaConj,
    /// ζ(σ + iy) times a cosine power
    ZetaCosV,
    /// (¼ + y²) Ξ(y)
    XiWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    HalfAngle,
    DoubleAngle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Quadrature,
    Residue,
    Whittaker,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormArg {
    Printed,
    Rederived,
}

#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    #[arg(long, value_enum)]
    pub function: FunctionKind,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Cosine exponent, `a` or `a+bi`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, value_enum, default_value = "half-angle")]
    pub variant: VariantArg,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Index range `a..b`, inclusive
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: MethodArg,
    #[arg(long = "series-form", value_enum, default_value = "printed")]
    pub series_form: SeriesFormArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Recompute even when the cache holds the table
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Partial-sum order N
    #[arg(short = 'N', long = "order")]
    pub order: u32,
    /// Grid `lo:hi:count` in x
    #[arg(long, default_value = "-2:2:41", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot read {text:?} as a number a or a+bi"));
    let t = text.trim();
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let body = t.strip_suffix('i').ok_or_else(bad)?;
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .last()
        .ok_or_else(bad)?
        .0;
    let re = body[..split].parse::<f64>().map_err(|_| bad())?;
    let im_text = &body[split..];
    let im = match im_text {
        "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// `a..b` with a ≤ b.
pub fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("index range must be a..b with a <= b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// `lo:hi:count`, count ≥ 1 evenly spaced points.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("grid must be lo:hi:count, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 || !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect())
}

impl FunctionArgs {
    pub fn spec(&self) -> Result<FunctionSpec, CliError> {
        let sigma = || {
            self.sigma
                .ok_or_else(|| CliError::Usage("--sigma is required for this function".into()))
        };
        let spec = match self.function {
            FunctionKind::One => FunctionSpec::Custom(CustomFn::new("one", |_| Complex64::new(1.0, 0.0))),
            FunctionKind::InvZeta => FunctionSpec::InvZeta { sigma: sigma()? },
            FunctionKind::InvZetaConj => FunctionSpec::InvZetaConj { sigma: sigma()? },
            FunctionKind::ZetaCosV => FunctionSpec::ZetaCosV {
                sigma: sigma()?,
                v: parse_complex(&self.v)?,
                variant: match self.variant {
                    VariantArg::HalfAngle => WeightVariant::HalfAngle,
                    VariantArg::DoubleAngle => WeightVariant::DoubleAngle,
                },
            },
            FunctionKind::XiWeighted => FunctionSpec::XiWeighted,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// The zero table in effect: `zeros.path`, else an imported table, else
/// the bundled one; truncated to `zeros.count`.
pub fn load_zeros(config: &RunConfig) -> Result<ZeroTable, CliError> {
    let table = if let Some(path) = &config.zeros_path {
        ZeroTable::parse(&fsio::read_text(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    } else {
        let stored = fsio::stored_zeros_path(&config.cache_dir);
        if stored.exists() {
            fsio::zeros_from_csv(&stored, &fsio::read_text(&stored)?)?
        } else {
            ZeroTable::bundled()?
        }
    };
    Ok(table.truncated(config.zeros_count))
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fsio::atomic_write(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn require_selected(report: CalibrationReport) -> Result<(), CliError> {
    match report.selected {
        Some(_) => Ok(()),
        None => Err(CliError::Numeric(format!(
            "no reading of the {} formula agrees with quadrature (closest: {})",
            report.family,
            report.best().map_or("none", |c| c.convention.as_str())
        ))),
    }
}

/// Runs the calibration a residue or Theta table depends on.
fn calibrate_for(spec: &FunctionSpec, method: Method, config: &RunConfig, zeros: &ZeroTable) -> Result<(), CliError> {
    let q = config.quadrature();
    match (method, spec) {
        (Method::Residue, FunctionSpec::InvZeta { sigma }) => require_selected(calibrate_bar(*sigma, &q, 1e-7)?),
        (Method::Residue, FunctionSpec::InvZetaConj { sigma }) => {
            require_selected(calibrate_hat(*sigma, zeros, config.settings().k_trivial_max, &q)?)
        }
        (Method::Residue, FunctionSpec::ZetaCosV { sigma, .. }) => {
            require_selected(calibrate_tilde_negative(&[*sigma], &q, 1e-7)?)
        }
        (Method::ThetaIntegral, FunctionSpec::XiWeighted) => require_selected(calibrate_xi(&q, 1e-6)?),
        _ => Ok(()),
    }
}

fn cmd_coeffs(args: &CoeffsArgs, config: &RunConfig) -> Result<(), CliError> {
    let spec = args.function.spec()?;
    let (n_min, n_max) = parse_range(&args.n)?;
    let method = match args.method {
        MethodArg::Quadrature => Method::Quadrature,
        MethodArg::Residue => Method::Residue,
        MethodArg::Whittaker => Method::WhittakerSeries,
        MethodArg::Theta => Method::ThetaIntegral,
    };
    let series_form = match args.series_form {
        SeriesFormArg::Printed => SeriesForm::Printed,
        SeriesFormArg::Rederived => SeriesForm::Rederived,
    };
    let needs_zeros = matches!((method, &spec), (Method::Residue, FunctionSpec::InvZetaConj { .. }));
    let zeros = if needs_zeros { Some(load_zeros(config)?) } else { None };
    check_method(&spec, n_min, n_max, method, zeros.as_ref())?;

    let mut key: BTreeMap<String, String> = config.entries();
    key.insert("function".into(), spec.label());
    key.insert("method".into(), method.name().into());
    key.insert("n".into(), format!("{n_min}..{n_max}"));
    if method == Method::WhittakerSeries {
        key.insert("series.form".into(), series_form.name().into());
    }
    if let Some(z) = &zeros {
        let text: String = z.betas().iter().map(|b| format!("{b:e};")).collect();
        key.insert("zeros".into(), text);
    }
    let hash = meta_hash(&key);
    let cached = config.cache_dir.join(format!("coeffs-{hash}.csv"));
    let cacheable = !matches!(spec, FunctionSpec::Custom(_));
    if cacheable && !args.no_cache && cached.exists() {
        eprintln!("cache hit {}", cached.display());
        return emit(args.out.as_ref(), fsio::read_text(&cached)?.as_bytes());
    }
    calibrate_for(&spec, method, config, zeros.as_ref().unwrap_or(&ZeroTable::bundled()?))?;
    let settings = zeta_fourier::coefficients::TableSettings {
        series_form,
        ..config.settings()
    };
    let table = compute_table(&spec, n_min, n_max, method, &settings, zeros.as_ref())?;
    let csv = table.to_csv();
    if cacheable {
        fsio::atomic_write(&cached, csv.as_bytes())?;
        eprintln!("cached {}", cached.display());
    }
    emit(args.out.as_ref(), csv.as_bytes())
}

#[derive(Serialize)]
struct ReconstructOutput {
    config_hash: String,
    report: ReconstructionReport,
}

fn cmd_reconstruct(args: &ReconstructArgs, config: &RunConfig) -> Result<(), CliError> {
    let spec = args.function.spec()?;
    let grid = parse_grid(&args.grid)?;
    let n = args.order as i64;
    let table = compute_table(&spec, -n, n, Method::Quadrature, &config.settings(), None)?;
    let report = reconstruction_report(&spec, &table, &grid, args.order, &config.quadrature())?;
    let out = ReconstructOutput {
        config_hash: config.hash(),
        report,
    };
    let mut json = serde_json::to_string_pretty(&out).map_err(|e| CliError::Numeric(e.to_string()))?;
    json.push('\n');
    emit(args.out.as_ref(), json.as_bytes())
}

fn cmd_verify(suite: Suite, out: Option<&PathBuf>, config: &RunConfig) -> Result<(), CliError> {
    let zeros = load_zeros(config)?;
    let ctx = verify::Context {
        q: config.quadrature(),
        settings: config.settings(),
        zeros: &zeros,
    };
    let report = verify::run(suite, &ctx, config.hash())?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Numeric(e.to_string()))?;
    json.push('\n');
    emit(out, json.as_bytes())?;
    let failures = report.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failures.iter().map(|c| c.name.as_str()).collect();
        Err(CliError::Numeric(format!("failed checks: {}", names.join(", "))))
    }
}

fn cmd_zeros_import(path: &Path, config: &RunConfig) -> Result<(), CliError> {
    let table =
        ZeroTable::parse(&fsio::read_text(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let stored = fsio::stored_zeros_path(&config.cache_dir);
    fsio::atomic_write(&stored, fsio::zeros_to_csv(&table).as_bytes())?;
    let last = table.betas()[table.count() - 1];
    println!(
        "imported {} zeros (beta {} .. {last}) into {}",
        table.count(),
        table.betas()[0],
        stored.display()
    );
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let config = cli.run_config()?;
    config.profile().activate()?;
    match &cli.command {
        Command::Zeros {
            action: ZerosCommand::Import { path },
        } => cmd_zeros_import(path, &config),
        Command::Coeffs(args) => cmd_coeffs(args, &config),
        Command::Verify { suite, out } => cmd_verify(*suite, out.as_ref(), &config),
        Command::Reconstruct(args) => cmd_reconstruct(args, &config),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("zfourier: {e}");
            e.exit_code()
        }
    }
}
