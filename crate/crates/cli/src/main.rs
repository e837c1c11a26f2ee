//! `bddf`: evaluate background driving distribution functions, draw samples
//! and run the verification suites.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bddf_core::catalog::{FamilyDescriptor, FamilyId};
use bddf_core::format::sig9;
use bddf_core::inversion::{bddf, cdf_of_x};
use bddf_core::simulate::{sample, DEFAULT_PATH_STEPS, DEFAULT_SERIES_TERMS};
use bddf_core::verify::{run_suite, CheckOutcome, Suite, VerifyOptions};
use bddf_core::{CdfEstimate, Error, QuadratureConfig, RngSeed, SampleMethod, SampleOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

type BoxResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

/// Relative `--output` paths are resolved against this directory.
const OUTPUT_DIR_ENV: &str = "BDDF_OUTPUT_DIR";

const EXIT_USAGE: u8 = 1;
const EXIT_NO_CONVERGENCE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "bddf", version, about = "Background driving distribution functions of selfdecomposable laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate G_X or F_X at a list of points or a range.
    Eval(EvalArgs),
    /// Tabulate G_X or F_X on `--from`, `--to`, `--step`.
    Table(TableArgs),
    /// Draw a seeded sample batch.
    Sample(SampleArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Family id, e.g. gamma, noncentral-chi-square.
    #[arg(long)]
    family: String,
    /// Family parameter as key=value; repeatable.
    #[arg(short = 'p', long = "param", value_parser = parse_key_value)]
    params: Vec<(String, f64)>,
}

#[derive(Args, Debug)]
struct QuadArgs {
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Integrate only over t in (0, T].
    #[arg(long, value_name = "T")]
    truncate_at: Option<f64>,
    #[arg(long)]
    max_half_periods: Option<usize>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long)]
    step: f64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Target::Bddf)]
    target: Target,
    /// Comma-separated evaluation points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["from", "to", "step"], required_unless_present = "from")]
    points: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["to", "step"])]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["from", "step"])]
    to: Option<f64>,
    #[arg(long, requires_all = ["from", "to"])]
    step: Option<f64>,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Target::Bddf)]
    target: Target,
    #[command(flatten)]
    range: RangeArgs,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(short = 'n', long = "n", default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Series terms for laplace-series.
    #[arg(long, default_value_t = DEFAULT_SERIES_TERMS)]
    terms: usize,
    /// Poisson horizon for shot-noise.
    #[arg(long)]
    horizon: Option<f64>,
    /// Brownian increments for path-discretized.
    #[arg(long, default_value_t = DEFAULT_PATH_STEPS)]
    steps: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = ["paper-tables", "identities", "samplers", "all"])]
    suite: String,
    #[arg(short = 'n', long = "n", default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
    format: VerifyFormat,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Target {
    /// Background driving distribution function G_X.
    Bddf,
    /// Distribution function F_X.
    Cdf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    RatioIdentity,
    ShotNoise,
    #[value(alias = "bdrv")]
    CompoundPoissonBdrv,
    LaplaceSeries,
    PathDiscretized,
}

impl From<Method> for SampleMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Exact => SampleMethod::Exact,
            Method::RatioIdentity => SampleMethod::RatioIdentity,
            Method::ShotNoise => SampleMethod::ShotNoise,
            Method::CompoundPoissonBdrv => SampleMethod::CompoundPoissonBdrv,
            Method::LaplaceSeries => SampleMethod::LaplaceSeries,
            Method::PathDiscretized => SampleMethod::PathDiscretized,
        }
    }
}

fn parse_key_value(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad value for `{k}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn family(args: &FamilyArgs) -> BoxResult<FamilyDescriptor> {
    let id: FamilyId = args.family.parse()?;
    let named: Vec<(&str, f64)> = args.params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(FamilyDescriptor::from_named(id, &named)?)
}

fn quad_config(q: &QuadArgs) -> BoxResult<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = q.abs_tol {
        cfg.abs_tol = t;
    }
    if let Some(m) = q.max_half_periods {
        cfg.max_half_periods = m;
    }
    cfg.hard_truncation = q.truncate_at;
    cfg.validate()?;
    Ok(cfg)
}

fn range_points(from: f64, to: f64, step: f64) -> BoxResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(format!("need finite --from <= --to and --step > 0, got {from}, {to}, {step}").into());
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(format!("range has {count} points; at most 1000000 allowed").into());
    }
    Ok((0..count).map(|k| from + step * k as f64).collect())
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(output: Option<&Path>, text: &str) -> BoxResult<()> {
    match output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(p) => {
            let path = resolve_output(p);
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalRow {
    a: f64,
    value: f64,
    error_estimate: f64,
    evaluations: usize,
    converged: bool,
    clipped: bool,
}

#[derive(Serialize)]
struct EvalReport {
    family: FamilyId,
    params: serde_json::Map<String, serde_json::Value>,
    target: Target,
    rows: Vec<EvalRow>,
}

fn evaluate(
    desc: &FamilyDescriptor,
    target: Target,
    points: &[f64],
    cfg: &QuadratureConfig,
    out: &OutputArgs,
) -> BoxResult<u8> {
    if let Some(bad) = points.iter().find(|a| !a.is_finite()) {
        return Err(format!("evaluation point {bad} is not finite").into());
    }
    let estimates: Vec<CdfEstimate> = points
        .par_iter()
        .map(|&a| match target {
            Target::Bddf => bddf(desc, a, cfg),
            Target::Cdf => cdf_of_x(desc, a, cfg),
        })
        .collect::<Result<_, Error>>()?;
    let rows: Vec<EvalRow> = points
        .iter()
        .zip(&estimates)
        .map(|(&a, e)| EvalRow {
            a,
            value: e.value,
            error_estimate: e.error_estimate,
            evaluations: e.evaluations,
            converged: e.converged,
            clipped: e.clipped,
        })
        .collect();
    let all_converged = rows.iter().all(|r| r.converged);

    let text = match out.format {
        Format::Csv => {
            let mut s = String::from("a,value,error_estimate,evaluations,converged\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    sig9(r.a),
                    sig9(r.value),
                    sig9(r.error_estimate),
                    r.evaluations,
                    r.converged
                ));
            }
            s
        }
        Format::Json => {
            let params = desc
                .params
                .named()
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
                .collect();
            let report = EvalReport {
                family: desc.id,
                params,
                target,
                rows,
            };
            serde_json::to_string_pretty(&report)? + "\n"
        }
    };
    emit(out.output.as_deref(), &text)?;
    if all_converged {
        Ok(0)
    } else {
        eprintln!("warning: some points did not converge");
        Ok(EXIT_NO_CONVERGENCE)
    }
}

fn cmd_eval(args: EvalArgs) -> BoxResult<u8> {
    let desc = family(&args.family)?;
    let cfg = quad_config(&args.quad)?;
    let points = match (args.from, args.to, args.step) {
        (Some(from), Some(to), Some(step)) => range_points(from, to, step)?,
        _ => args.points,
    };
    if points.is_empty() {
        return Err("no evaluation points given".into());
    }
    evaluate(&desc, args.target, &points, &cfg, &args.out)
}

fn cmd_table(args: TableArgs) -> BoxResult<u8> {
    let desc = family(&args.family)?;
    let cfg = quad_config(&args.quad)?;
    let points = range_points(args.range.from, args.range.to, args.range.step)?;
    evaluate(&desc, args.target, &points, &cfg, &args.out)
}

fn cmd_sample(args: SampleArgs) -> BoxResult<u8> {
    let desc = family(&args.family)?;
    let opts = SampleOptions {
        terms: args.terms,
        horizon: args.horizon,
        steps: args.steps,
    };
    let batch = sample(&desc, args.method.into(), args.n, RngSeed(args.seed), &opts)?;
    let text = match args.out.format {
        Format::Csv => batch.to_csv(),
        Format::Json => serde_json::to_string(&batch)? + "\n",
    };
    emit(args.out.output.as_deref(), &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: &'a str,
    n: usize,
    seed: u64,
    passed: usize,
    total: usize,
    checks: &'a [CheckOutcome],
}

fn verify_text(outcomes: &[CheckOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        for r in &o.rows {
            s.push_str(&format!(
                "{}[a={}] expected={} got={} tol={} {}\n",
                o.name,
                sig9(r.a),
                sig9(r.expected),
                sig9(r.computed),
                sig9(r.tolerance),
                if r.passed { "PASS" } else { "FAIL" }
            ));
        }
        s.push_str(&format!("{o}\n"));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    s.push_str(&format!("summary: {passed}/{} checks passed\n", outcomes.len()));
    s
}

fn cmd_verify(args: VerifyArgs) -> BoxResult<u8> {
    let suite: Suite = args.suite.parse()?;
    if args.n < 2 {
        return Err("--n must be at least 2".into());
    }
    let opts = VerifyOptions {
        n: args.n,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let outcomes = run_suite(suite, &opts)?;
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let text = match args.format {
        VerifyFormat::Text => verify_text(&outcomes),
        VerifyFormat::Json => {
            let report = VerifyReport {
                suite: &args.suite,
                n: args.n,
                seed: args.seed,
                passed,
                total: outcomes.len(),
                checks: &outcomes,
            };
            serde_json::to_string_pretty(&report)? + "\n"
        }
    };
    emit(args.output.as_deref(), &text)?;
    Ok(if passed == outcomes.len() { 0 } else { EXIT_USAGE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Table(a) => cmd_table(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::NoConvergence { .. }) => EXIT_NO_CONVERGENCE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}
