//! `summatrix` — command-line front end for the summability toolkit.
//!
//! Subcommands:
//!
//! * `means` — Cesàro or weighted (Riesz) means of a series prefix;
//! * `matrix` — normal-matrix transform of a series prefix;
//! * `fourier` — Fourier coefficients and pointwise terms `C_n(x)`;
//! * `check` — hypothesis/conclusion checker reports, no artifacts;
//! * `experiment` — the full pipeline with artifact emission.
//!
//! Exit codes: `0` success (for `experiment`: the consistency rule holds or
//! the run correctly diagnosed a broken hypothesis), `1` consistency
//! violation (every gate hypothesis passed yet a conclusion failed), `2`
//! configuration/usage error, `3` runtime or numeric error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use summatrix::cesaro::{cesaro_means, riesz_mean};
use summatrix::experiment::{
    run_theorem_experiment, CoefficientMode, EmitMode, ExperimentConfig, FactorSpec, FunctionSpec,
    MatrixSpec, SequenceSpec,
};
use summatrix::fourier::{fourier_coefficients, named_function, tabulated_function, FourierData};
use summatrix::generators::named_generator;
use summatrix::matrix::{apply_series_form, weighted_mean_matrix, NormalMatrix};
use summatrix::sequences::{partial_sums, IndexBase, SequencePrefix, WeightSystem};
use summatrix::{io as sio, Error, Result};

/// Environment variable consulted for the artifact directory when neither
/// `--out-dir` nor the config file names one.
const OUT_DIR_ENV: &str = "SUMMATRIX_OUT";

#[derive(Parser)]
#[command(
    name = "summatrix",
    version,
    about = "Summability means, matrix transforms, Fourier series, and theorem-scale experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cesàro means (u_n, t_n) or weighted means of a series prefix.
    Means(MeansArgs),
    /// Apply a normal-matrix transform to a series prefix.
    Matrix(MatrixArgs),
    /// Fourier coefficients and pointwise terms C_n(x).
    Fourier(FourierArgs),
    /// Run every hypothesis checker and print the reports (no artifacts).
    Check(RunArgs),
    /// Run the full experiment pipeline and emit artifacts.
    Experiment(RunArgs),
}

#[derive(Args)]
struct SeriesInput {
    /// Named generator for the series terms (ones, zero, harmonic, linear,
    /// alternating, geometric:R, power:Q, random).
    #[arg(long, default_value = "ones", conflicts_with = "input")]
    generator: String,
    /// One-column CSV of series terms (overrides --generator).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Seed for the `random` generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prefix length; defaults to 32, or the full file for --input.
    #[arg(long)]
    len: Option<usize>,
}

impl SeriesInput {
    fn realize(&self) -> Result<SequencePrefix> {
        match &self.input {
            Some(path) => {
                let values = sio::read_sequence_csv(path)?;
                let take = self.len.unwrap_or(values.len());
                if take > values.len() {
                    return Err(Error::Config(format!(
                        "--len {} exceeds the {} values in {}",
                        take,
                        values.len(),
                        path.display()
                    )));
                }
                SequencePrefix::new(values[..take].to_vec(), IndexBase::Zero)
            }
            None => named_generator(&self.generator, self.seed)?
                .prefix(IndexBase::Zero, self.len.unwrap_or(32)),
        }
    }
}

#[derive(Args)]
struct MeansArgs {
    #[command(flatten)]
    series: SeriesInput,
    /// Cesàro order (ignored when --weights is given).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Weight generator; switches to weighted (Riesz) means.
    #[arg(long)]
    weights: Option<String>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Identity,
    CesaroOne,
    WeightedMean,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    series: SeriesInput,
    /// Matrix factory.
    #[arg(long, value_enum, default_value_t = MatrixKind::CesaroOne)]
    matrix: MatrixKind,
    /// Weight generator for --matrix weighted-mean.
    #[arg(long, default_value = "ones")]
    weights: String,
    /// Normal matrix from a JSON file ({"n": dim, "rows": [[...], ...]});
    /// overrides --matrix.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Analytic,
    Quadrature,
}

impl From<ModeArg> for CoefficientMode {
    fn from(m: ModeArg) -> CoefficientMode {
        match m {
            ModeArg::Auto => CoefficientMode::Auto,
            ModeArg::Analytic => CoefficientMode::Analytic,
            ModeArg::Quadrature => CoefficientMode::Quadrature,
        }
    }
}

#[derive(Args)]
struct FourierArgs {
    /// Catalog function key (sawtooth, square, abs, zero, sine:M, cosine:M,
    /// polyjump:LOC:HEIGHT).
    #[arg(long, default_value = "sawtooth", conflicts_with = "table")]
    function: String,
    /// Tabulated (t, f(t)) CSV, interpolated linearly (overrides --function).
    #[arg(long)]
    table: Option<PathBuf>,
    /// Evaluation point for the terms C_n(x).
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    x: f64,
    /// Highest harmonic.
    #[arg(long, default_value_t = 32)]
    n: usize,
    /// Coefficient route.
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Simpson subinterval count (default max(8192, 8n)).
    #[arg(long)]
    quadrature_points: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Json,
    Csv,
    Both,
}

impl From<EmitArg> for EmitMode {
    fn from(e: EmitArg) -> EmitMode {
        match e {
            EmitArg::Json => EmitMode::Json,
            EmitArg::Csv => EmitMode::Csv,
            EmitArg::Both => EmitMode::Both,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config JSON; defaults apply for omitted fields.
    #[arg(long, conflicts_with = "scenario")]
    config: Option<PathBuf>,
    /// Canned scenario: canonical-weighted-mean, zero-series,
    /// constant-lambda-control, collapsing-weights-control.
    #[arg(long)]
    scenario: Option<String>,
    /// Override: prefix length N.
    #[arg(long)]
    n: Option<usize>,
    /// Override: power k (repeat for several).
    #[arg(long = "k")]
    k_values: Vec<f64>,
    /// Override: evaluation point x.
    #[arg(long)]
    x: Option<f64>,
    /// Override: weight generator key.
    #[arg(long)]
    weights: Option<String>,
    /// Override: function catalog key.
    #[arg(long)]
    function: Option<String>,
    /// Override: matrix factory.
    #[arg(long, value_enum)]
    matrix: Option<MatrixKind>,
    /// Override: coefficient route.
    #[arg(long, value_enum)]
    coefficients: Option<ModeArg>,
    /// Override: Simpson subinterval count.
    #[arg(long)]
    quadrature_points: Option<usize>,
    /// Override: seed for every generator-sourced sequence in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Override: artifact families to write (experiment only).
    #[arg(long, value_enum)]
    emit: Option<EmitArg>,
    /// Artifact directory (experiment only); falls back to the config's
    /// out_dir, then $SUMMATRIX_OUT.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Print the effective config as JSON and exit without running.
    #[arg(long)]
    print_config: bool,
    /// Print reports as JSON instead of a text table (check only).
    #[arg(long)]
    json: bool,
}

fn seeded(spec: &mut SequenceSpec, seed: u64) {
    if let SequenceSpec::Generator { seed: s, .. } = spec {
        *s = seed;
    }
}

impl RunArgs {
    fn effective_config(&self, with_artifacts: bool) -> Result<ExperimentConfig> {
        let mut cfg = if let Some(name) = &self.scenario {
            ExperimentConfig::scenario(name)?
        } else if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read config {}: {}", path.display(), e))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?
        } else {
            ExperimentConfig::default()
        };
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if !self.k_values.is_empty() {
            cfg.k_values = self.k_values.clone();
        }
        if let Some(x) = self.x {
            cfg.x = x;
        }
        if let Some(key) = &self.weights {
            cfg.weights = SequenceSpec::generator(key.clone());
        }
        if let Some(key) = &self.function {
            cfg.function = FunctionSpec::Named { key: key.clone() };
        }
        if let Some(kind) = self.matrix {
            cfg.matrix = match kind {
                MatrixKind::Identity => MatrixSpec::Identity,
                MatrixKind::CesaroOne => MatrixSpec::CesaroOne,
                MatrixKind::WeightedMean => MatrixSpec::WeightedMean,
            };
        }
        if let Some(mode) = self.coefficients {
            cfg.coefficients = mode.into();
        }
        if let Some(q) = self.quadrature_points {
            cfg.quadrature_points = Some(q);
        }
        if let Some(seed) = self.seed {
            seeded(&mut cfg.weights, seed);
            if let FactorSpec::Explicit {
                lambda,
                companion,
                delta,
            } = &mut cfg.factors
            {
                seeded(lambda, seed);
                if let Some(c) = companion {
                    seeded(c, seed);
                }
                if let Some(d) = delta {
                    seeded(d, seed);
                }
            }
        }
        if let Some(mode) = self.emit {
            cfg.emit = mode.into();
        }
        if with_artifacts {
            cfg.out_dir = self
                .out_dir
                .clone()
                .or(cfg.out_dir)
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from));
        } else {
            cfg.out_dir = None;
        }
        Ok(cfg)
    }
}

/// Open `--out` or stdout.
fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            Ok(Box::new(std::fs::File::create(path)?))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{:.16e}", v),
        None => String::new(),
    }
}

fn run_means(args: &MeansArgs) -> Result<u8> {
    let a = args.series.realize()?;
    let s = partial_sums(&a)?;
    let mut out = writer(&args.out)?;
    match &args.weights {
        Some(key) => {
            let p = named_generator(key, args.series.seed)?.prefix(IndexBase::Zero, a.len())?;
            let w = WeightSystem::new(p)?;
            let m = riesz_mean(&s, &w)?;
            writeln!(out, "n,partial_sum,weighted_mean")?;
            for (n, v) in m.indexed() {
                writeln!(out, "{},{:.16e},{:.16e}", n, s.at(n), v)?;
            }
        }
        None => {
            let m = cesaro_means(&a, args.alpha)?;
            writeln!(out, "n,partial_sum,u,t")?;
            for (n, u) in m.u.indexed() {
                let t = if n >= 1 { Some(m.t.at(n)) } else { None };
                writeln!(out, "{},{:.16e},{:.16e},{}", n, s.at(n), u, fmt_opt(t))?;
            }
        }
    }
    Ok(0)
}

fn run_matrix(args: &MatrixArgs) -> Result<u8> {
    let a = args.series.realize()?;
    let m: NormalMatrix = match &args.matrix_file {
        Some(path) => sio::read_json(path)?,
        None => match args.matrix {
            MatrixKind::Identity => NormalMatrix::identity(a.len())?,
            MatrixKind::CesaroOne => NormalMatrix::cesaro_one(a.len())?,
            MatrixKind::WeightedMean => {
                let p = named_generator(&args.weights, args.series.seed)?
                    .prefix(IndexBase::Zero, a.len())?;
                weighted_mean_matrix(&WeightSystem::new(p)?, a.len())?
            }
        },
    };
    let result = apply_series_form(&m, &a)?;
    let mut out = writer(&args.out)?;
    writeln!(out, "n,an,d_an")?;
    for (n, v) in result.an.indexed() {
        let d = if n >= 1 {
            Some(result.d_an.at(n))
        } else {
            None
        };
        writeln!(out, "{},{:.16e},{}", n, v, fmt_opt(d))?;
    }
    Ok(0)
}

fn run_fourier(args: &FourierArgs) -> Result<u8> {
    if args.n == 0 {
        return Err(Error::Config("--n must be at least 1".into()));
    }
    let f = match &args.table {
        Some(path) => tabulated_function(
            format!("table:{}", path.display()),
            sio::read_pairs_csv(path)?,
        )?,
        None => named_function(&args.function)?,
    };
    let quadrature = || {
        let q = args.quadrature_points.unwrap_or(8192.max(8 * args.n));
        fourier_coefficients(f.function(), args.n, q)
    };
    let c = match args.mode {
        ModeArg::Analytic => f.analytic_coefficients(args.n)?.ok_or_else(|| {
            Error::Config(format!(
                "function \"{}\" has no closed-form coefficients",
                f.function().description()
            ))
        })?,
        ModeArg::Auto => match f.analytic_coefficients(args.n)? {
            Some(c) => c,
            None => quadrature()?,
        },
        ModeArg::Quadrature => quadrature()?,
    };
    let data = FourierData::from_coefficients(&c, args.x)?;
    let mut out = writer(&args.out)?;
    writeln!(out, "n,a,b,c")?;
    writeln!(out, "0,{:.16e},,", c.a0)?;
    for (n, cn) in data.c.indexed() {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e}",
            n,
            c.a.at(n),
            c.b.at(n),
            cn
        )?;
    }
    Ok(0)
}

fn run_check(args: &RunArgs) -> Result<u8> {
    let cfg = args.effective_config(false)?;
    if args.print_config {
        println!("{}", serde_json::to_string_pretty(&cfg)?);
        return Ok(0);
    }
    let outcome = run_theorem_experiment(&cfg)?;
    if args.json {
        let doc = serde_json::json!({
            "gates": outcome.gate_reports,
            "informational": outcome.informational_reports,
            "intermediate": outcome.lemma_reports,
            "conclusions": outcome.conclusion_reports,
            "consistency": outcome.consistency,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{}", outcome.summary);
    }
    // `check` is an inspection tool: verdicts are data, not process failures.
    Ok(0)
}

fn run_experiment(args: &RunArgs) -> Result<u8> {
    let cfg = args.effective_config(true)?;
    if args.print_config {
        println!("{}", serde_json::to_string_pretty(&cfg)?);
        return Ok(0);
    }
    let outcome = run_theorem_experiment(&cfg)?;
    print!("{}", outcome.summary);
    for path in &outcome.artifacts {
        eprintln!("wrote {}", path.display());
    }
    Ok(outcome.exit_code as u8)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Means(args) => run_means(args),
        Command::Matrix(args) => run_matrix(args),
        Command::Fourier(args) => run_fourier(args),
        Command::Check(args) => run_check(args),
        Command::Experiment(args) => run_experiment(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(match e {
                Error::Config(_) => 2,
                _ => 3,
            })
        }
    }
}
