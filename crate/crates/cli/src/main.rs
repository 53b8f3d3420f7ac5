use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use acb_core::families::ExampleSpec;
use acb_core::{
    construct_class_family, construct_example, parse_rational, BasicClass, FamilySpec,
    InputDocument, LieAlgebra, Mode, Rational, Report, Scalar, Tolerance, VerifyConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_LIE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "acb", version, about = "Classify and compute curvature of 3-dimensional Lie algebras with an almost contact B-metric structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental tensor, Lee forms, class parameters and special structures.
    Classify(PipelineArgs),
    /// Everything from `classify` plus connection and curvature.
    Curvature(PipelineArgs),
    /// Print the input document of a class family or the example family.
    Construct(ConstructArgs),
    /// Run the invariant suite over a parameter grid and random algebras.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args)]
struct PipelineArgs {
    /// Input document; `-` or absent reads standard input.
    #[arg(long, conflicts_with = "construct")]
    input: Option<PathBuf>,
    /// Build the input from a family instead: F1..F11 or `example`.
    #[arg(long)]
    construct: Option<String>,
    #[command(flatten)]
    params: FamilyParams,
    /// Overrides the document's mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Zero threshold in float mode (default 1e-9).
    #[arg(long)]
    tolerance: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FamilyParams {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a1: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a2: Option<Rational>,
}

#[derive(Args)]
struct ConstructArgs {
    /// F1, F4, F5, F8, F9, F10, F11 or `example`.
    target: String,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated rationals used for alpha, beta, a1 and a2.
    #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    grid: Option<Vec<Rational>>,
    /// Number of random algebras.
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    /// First random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on numerators and denominators of random coefficients.
    #[arg(long, default_value_t = 6)]
    bound: u32,
    #[arg(long, hide = true)]
    corrupt_reference: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
    /// Output to print before the error message.
    output: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into(), output: None }
    }
}

fn build_document(target: &str, p: &FamilyParams) -> Result<InputDocument, Failure> {
    let zero = || Rational::from_int(0);
    let alg = if target.eq_ignore_ascii_case("example") {
        if p.alpha.is_some() || p.beta.is_some() {
            return Err(Failure::input("the example family takes --a1 and --a2"));
        }
        let a1 = p.a1.clone().unwrap_or_else(zero);
        let a2 = p.a2.clone().unwrap_or_else(zero);
        construct_example(&ExampleSpec { a1, a2 })
    } else {
        let class: BasicClass = target.parse().map_err(Failure::input)?;
        if p.a1.is_some() || p.a2.is_some() {
            return Err(Failure::input("class families take --alpha and --beta"));
        }
        let alpha = p.alpha.clone().ok_or_else(|| Failure::input("--alpha is required"))?;
        let spec = FamilySpec::new(class, alpha, p.beta.clone().unwrap_or_else(zero))
            .map_err(|e| Failure::input(e.to_string()))?;
        construct_class_family(&spec).map_err(|e| Failure::input(e.to_string()))?
    };
    Ok(InputDocument::from_constants(alg.constants()))
}

fn read_document(path: Option<&PathBuf>) -> Result<InputDocument, Failure> {
    let (name, text) = match path {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display())))?;
            (p.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("cannot read standard input: {e}")))?;
            ("<stdin>".to_string(), text)
        }
    };
    InputDocument::parse(&text).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn pipeline<T: Scalar>(doc: &InputDocument, tol: &Tolerance, curvature: bool) -> Result<Report, Failure> {
    let alg = LieAlgebra::<T>::new(doc.to_constants(), tol)
        .map_err(|e| Failure { code: EXIT_NOT_LIE, message: e.to_string(), output: None })?;
    Ok(Report::build(doc, &alg, tol, curvature))
}

fn run_pipeline(args: &PipelineArgs, curvature: bool) -> Result<String, Failure> {
    let mut doc = match &args.construct {
        Some(target) => build_document(target, &args.params)?,
        None => {
            let p = &args.params;
            if p.alpha.is_some() || p.beta.is_some() || p.a1.is_some() || p.a2.is_some() {
                return Err(Failure::input("family parameters need --construct"));
            }
            read_document(args.input.as_ref())?
        }
    };
    if let Some(m) = args.mode {
        doc.mode = match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        };
    }
    if args.tolerance.is_some() && doc.mode == Mode::Exact {
        return Err(Failure::input("--tolerance applies only in float mode"));
    }
    doc.check_mode().map_err(Failure::input)?;
    if let Some(eps) = args.tolerance {
        doc.tolerance = Some(eps);
    }
    let tol = Tolerance::new(doc.tolerance.unwrap_or(1e-9)).map_err(|e| Failure::input(e.to_string()))?;
    let report = match doc.mode {
        Mode::Exact => pipeline::<Rational>(&doc, &tol, curvature)?,
        Mode::Float => pipeline::<f64>(&doc, &tol, curvature)?,
    };
    Ok(match args.output.format {
        Format::Pretty => report.to_string(),
        Format::Json => report.to_json(),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<String, Failure> {
    let mut cfg = VerifyConfig {
        seeds: args.seeds,
        base_seed: args.seed,
        bound: args.bound,
        corrupt_reference: args.corrupt_reference,
        ..VerifyConfig::default()
    };
    if let Some(grid) = &args.grid {
        if grid.is_empty() {
            return Err(Failure::input("--grid needs at least one value"));
        }
        cfg.grid = grid.clone();
    }
    let report = acb_core::verify::run(&cfg);
    let text = match args.output.format {
        Format::Pretty => report.to_string(),
        Format::Json => report.to_json(),
    };
    match report.first_failure() {
        None => Ok(text),
        Some((check, first)) => Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{}: {first}", check.name),
            output: Some(text),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => run_pipeline(a, false),
        Command::Curvature(a) => run_pipeline(a, true),
        Command::Construct(a) => build_document(&a.target, &a.params).map(|d| d.to_json()),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(text) = &f.output {
                emit(text);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end()).and_then(|_| out.flush());
}
