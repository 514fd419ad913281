//! Command-line front end.
//!
//! Results go to stdout (JSON for `fit`, `fit-data` and `moments`, CSV for
//! `pdf`, one value per line for `sample`). Failures print a single
//! `CODE: message` line to stderr and exit with 1 for bad input or 2 when
//! the numerics fail on well-formed input.

use std::fs::File;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::dist::{DistKind, DistributionParams};
use crate::empirical::{compute_raw_moments, load_samples, log_raw_moments, SampleFormat};
use crate::error::Error;
use crate::estimate::{fit, FitResult, MomentPair, SolverConfig};
use crate::synth::{sample, SeededGenerator};

const DEFAULT_TOL: &str = "1e-10";

#[derive(Debug, Parser)]
#[command(
    name = "momfit",
    version,
    about = "Fit Weibull, Gamma and Log-normal distributions from a pair of raw moments",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit parameters from two known raw moments.
    Fit(FitArgs),
    /// Compute raw moments from a sample file, then fit.
    FitData(FitDataArgs),
    /// Theoretical raw moments for given parameters.
    Moments(MomentsArgs),
    /// Density on an evenly spaced grid, as CSV.
    Pdf(PdfArgs),
    /// Draw reproducible random variates, one per line.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dist {
    Weibull,
    Gamma,
    Lognormal,
}

impl From<Dist> for DistKind {
    fn from(d: Dist) -> Self {
        match d {
            Dist::Weibull => DistKind::Weibull,
            Dist::Gamma => DistKind::Gamma,
            Dist::Lognormal => DistKind::LogNormal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Csv,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Moment orders N,M with N > M > 0 (decimals allowed)
    #[arg(long)]
    orders: String,
    /// Absolute bisection tolerance on the shape parameter
    #[arg(long, default_value = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    #[command(flatten)]
    solver: SolverArgs,
    /// Observed raw moments E(X^N),E(X^M)
    #[arg(long)]
    moments: String,
}

#[derive(Debug, Args)]
struct FitDataArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    #[command(flatten)]
    solver: SolverArgs,
    /// Sample file, or - for stdin
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Column to read when --format csv
    #[arg(long)]
    column: Option<String>,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    /// Parameters as NAME=VALUE pairs, e.g. k=2,lambda=3
    #[arg(long)]
    params: String,
    /// Comma-separated positive orders
    #[arg(long)]
    orders: String,
}

#[derive(Debug, Args)]
struct PdfArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    #[arg(long)]
    params: String,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long)]
    points: usize,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    #[arg(long)]
    params: String,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent sub-stream of the seed
    #[arg(long, default_value_t = 0)]
    stream: u64,
}

/// Diagnostic ready for stderr.
#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
    exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            exit: if e.is_numerical() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: "PARSE_ERROR", message: message.into(), exit: 1 }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return report(stderr, usage(first.trim_start_matches("error: ")));
        }
    };
    let outcome = match cli.command {
        Command::Fit(a) => cmd_fit(a, stdout),
        Command::FitData(a) => cmd_fit_data(a, stdin, stdout),
        Command::Moments(a) => cmd_moments(a, stdout),
        Command::Pdf(a) => cmd_pdf(a, stdout),
        Command::Sample(a) => cmd_sample(a, stdout),
    };
    match outcome.and_then(|()| stdout.flush().map_err(Failure::from)) {
        Ok(()) => 0,
        Err(f) => report(stderr, f),
    }
}

fn report(stderr: &mut dyn Write, f: Failure) -> i32 {
    let message = f.message.replace('\n', " ");
    let _ = writeln!(stderr, "{}: {}", f.code, message);
    f.exit
}

/// JSON number carrying 17 significant digits; `null` if not finite.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&format!("{x:.16e}")).unwrap_or(Value::Null)
}

fn parse_number(field: &str, text: &str) -> Result<f64, Failure> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| usage(format!("{field}: not a finite number: {text:?}")))
}

fn parse_list(field: &str, text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',').map(|t| parse_number(field, t)).collect()
}

fn parse_pair(field: &str, text: &str) -> Result<(f64, f64), Failure> {
    match parse_list(field, text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        other => Err(usage(format!("{field}: expected two values, got {}", other.len()))),
    }
}

fn parse_params(kind: DistKind, text: &str) -> Result<DistributionParams, Failure> {
    let names = kind.param_names();
    let mut values = [None, None];
    for item in text.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--params: expected NAME=VALUE, got {item:?}")))?;
        let key = key.trim();
        let slot = names.iter().position(|n| *n == key).ok_or_else(|| {
            usage(format!("--params: unknown parameter {key:?} for {kind} (expected {})", names.join(", ")))
        })?;
        if values[slot].is_some() {
            return Err(usage(format!("--params: {key} given twice")));
        }
        values[slot] = Some(parse_number("--params", value)?);
    }
    match values {
        [Some(a), Some(b)] => Ok(DistributionParams::new(kind, a, b)?),
        _ => Err(usage(format!("--params: {kind} needs {}", names.join(" and ")))),
    }
}

fn solver_config(args: &SolverArgs) -> Result<SolverConfig, Failure> {
    let cfg = SolverConfig::default().with_delta(args.tol);
    cfg.validate()?;
    Ok(cfg)
}

fn fit_json(kind: DistKind, fit: &FitResult, mp: &MomentPair, cfg: &SolverConfig) -> Map<String, Value> {
    let params: Map<String, Value> = fit
        .params
        .named_values()
        .iter()
        .map(|&(name, v)| (name.to_string(), num(v)))
        .collect();
    let mut out = Map::new();
    out.insert("dist".into(), json!(kind.name()));
    out.insert("params".into(), Value::Object(params));
    out.insert("iterations".into(), json!(fit.iterations));
    out.insert("final_bracket_width".into(), num(fit.final_bracket_width));
    out.insert("log_ratio_residual".into(), num(fit.log_ratio_residual));
    out.insert("expansions".into(), json!(fit.expansions));
    out.insert("orders".into(), json!([num(mp.n()), num(mp.m())]));
    out.insert(
        "solver".into(),
        json!({
            "tol": num(cfg.delta),
            "max_iterations": cfg.max_iterations,
            "bracket_lo": num(cfg.bracket_lo),
            "bracket_hi": num(cfg.bracket_hi),
            "max_expansions": cfg.max_expansions,
            "search_bracket": [num(fit.search_bracket.0), num(fit.search_bracket.1)],
        }),
    );
    out
}

fn write_json(stdout: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    serde_json::to_writer(&mut *stdout, value).map_err(|e| Failure::from(Error::Io(e.to_string())))?;
    writeln!(stdout)?;
    Ok(())
}

fn cmd_fit(a: FitArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let kind = DistKind::from(a.dist);
    let (n, m) = parse_pair("--orders", &a.solver.orders)?;
    let (vn, vm) = parse_pair("--moments", &a.moments)?;
    let cfg = solver_config(&a.solver)?;
    let mp = MomentPair::new(n, m, vn, vm)?;
    let result = fit(kind, &mp, &cfg)?;
    write_json(stdout, &Value::Object(fit_json(kind, &result, &mp, &cfg)))
}

fn cmd_fit_data(a: FitDataArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    let kind = DistKind::from(a.dist);
    let (n, m) = parse_pair("--orders", &a.solver.orders)?;
    let cfg = solver_config(&a.solver)?;
    let format = match (a.format, a.column) {
        (Format::Plain, None) => SampleFormat::Plain,
        (Format::Plain, Some(_)) => return Err(usage("--column only applies to --format csv")),
        (Format::Csv, Some(column)) => SampleFormat::Csv { column },
        (Format::Csv, None) => return Err(usage("--format csv requires --column")),
    };
    let data = if a.input == "-" {
        load_samples(stdin, &format)?
    } else {
        let file = File::open(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input)))?;
        load_samples(file, &format)?
    };

    let orders = [n, m];
    let log_moments: Vec<(f64, f64)> = match compute_raw_moments(&data, &orders) {
        Ok(summary) => summary.moments.iter().map(|&(o, v)| (o, v.ln())).collect(),
        Err(Error::OverflowAtOrder { .. }) => log_raw_moments(&data, &orders)?,
        Err(e) => return Err(e.into()),
    };
    let mp = MomentPair::from_log_moments(n, m, log_moments[0].1, log_moments[1].1)?;
    let result = fit(kind, &mp, &cfg)?;

    let mut out = fit_json(kind, &result, &mp, &cfg);
    out.insert("count".into(), json!(data.len()));
    let sample_moments: Vec<Value> = log_moments
        .iter()
        .map(|&(order, ln_v)| json!({"order": num(order), "value": num(ln_v.exp()), "log_value": num(ln_v)}))
        .collect();
    out.insert("sample_moments".into(), Value::Array(sample_moments));
    write_json(stdout, &Value::Object(out))
}

fn cmd_moments(a: MomentsArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let params = parse_params(a.dist.into(), &a.params)?;
    let orders = parse_list("--orders", &a.orders)?;
    let values = orders
        .iter()
        .map(|&i| Ok(json!({"order": num(i), "value": num(params.theoretical_moment(i)?)})))
        .collect::<Result<Vec<_>, Error>>()?;
    write_json(stdout, &Value::Array(values))
}

fn cmd_pdf(a: PdfArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let params = parse_params(a.dist.into(), &a.params)?;
    if a.points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    if !(a.from.is_finite() && a.to.is_finite()) {
        return Err(usage("--from and --to must be finite"));
    }
    writeln!(stdout, "x,density")?;
    let step = if a.points > 1 { (a.to - a.from) / (a.points - 1) as f64 } else { 0.0 };
    for i in 0..a.points {
        let x = if i + 1 == a.points && a.points > 1 { a.to } else { a.from + step * i as f64 };
        writeln!(stdout, "{x},{}", params.pdf(x))?;
    }
    Ok(())
}

fn cmd_sample(a: SampleArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let params = parse_params(a.dist.into(), &a.params)?;
    let mut gen = SeededGenerator::with_stream(a.seed, a.stream);
    for x in sample(&params, a.count, &mut gen)? {
        writeln!(stdout, "{x}")?;
    }
    Ok(())
}
