//! Command-line front end: computes double factorial Schur functions and
//! transfer-matrix elements, dumps row states, and runs verification
//! suites. Exit status: 0 success, 1 verification failure, 2 usage or
//! configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dfschur::currents::{PowersumSpec, Sign};
use dfschur::fock::Partition;
use dfschur::lattice::{row_state, RowState};
use dfschur::ring::{Coef, PSeries};
use dfschur::schur::{dfs, dfs_dual, ek_shifted, giambelli, hk_shifted, jacobi_trudi, series_json, Value};
use dfschur::shifted::{ParamEnv, Which};
use dfschur::verify::{run_suite, CheckReport, SuiteOptions, SUITES};
use rayon::prelude::*;
use serde::Serialize;
use std::process::ExitCode;

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "DFSCHUR_THREADS";

#[derive(Parser, Debug)]
#[command(name = "dfschur", version, about = "Exact double factorial Schur functions and free-fermionic six-vertex rows")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Json,
    Text,
    MathText,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a (dual) double factorial Schur function or a generator.
    Compute(ComputeArgs),
    /// One-row transfer matrix element `⟨bottom| T |top⟩`.
    Lattice(LatticeArgs),
    /// The unique row configuration behind a transfer matrix element.
    StateDump(LatticeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ComputeWhat {
    Dfs,
    DfsDual,
    Hk,
    Ek,
    Giambelli,
    JacobiTrudi,
}

#[derive(Args, Debug, Clone, Serialize)]
struct ParamArgs {
    /// Parameter file: `{"alpha": {"i": value}, "beta": {...}}`; values are
    /// rationals or expressions in named generators.
    #[arg(long)]
    params: Option<std::path::PathBuf>,
    /// Use generators `alpha[i]`, `beta[i]` on the window `LO,HI` instead
    /// of a parameter file.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    symbolic: Option<String>,
    /// Set one sequence identically to zero.
    #[arg(long, value_enum)]
    zero: Option<Seq>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Seq {
    Alpha,
    Beta,
}

#[derive(Args, Debug, Serialize)]
struct ComputeArgs {
    /// Function to evaluate.
    #[arg(value_enum)]
    what: ComputeWhat,
    /// Outer shape, e.g. `3,2,1` (empty string for ∅).
    #[arg(long, default_value = "")]
    shape: String,
    /// Inner shape of a skew function.
    #[arg(long, default_value = "")]
    inner: String,
    /// Degree `k` of `h_k` / `e_k`.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Index shift `s` of `h_k` / `e_k` (parameters `σ^s α, σ^s β`).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
    /// Series truncation in the power sums.
    #[arg(long)]
    trunc: Option<u32>,
    /// Specialize `p_k = Σ x_r^k − (−y_r)^k`; pairs `x/y` separated by commas.
    #[arg(long)]
    vars: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug, Serialize)]
struct LatticeArgs {
    /// Ket shape (the row's top boundary).
    #[arg(long, default_value = "")]
    top: String,
    /// Bra shape (the row's bottom boundary).
    #[arg(long, default_value = "")]
    bottom: String,
    /// Charge.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    charge: i64,
    /// Which row model.
    #[arg(long, value_enum, default_value_t = Model::Plus)]
    model: Model,
    /// Spectral variable `x`.
    #[arg(long, default_value = "x")]
    x: String,
    /// Spectral variable `y`.
    #[arg(long, default_value = "y")]
    y: String,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Model {
    Plus,
    Minus,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// Largest partition size examined.
    #[arg(long, default_value_t = 3)]
    max_size: u32,
    /// Series truncation.
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Seed for the sampled-parameter suite.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// A usage or configuration problem (exit status 2).
#[derive(Debug, thiserror::Error)]
enum UsageError {
    #[error("{0}")]
    Config(String),
}

fn config<E: std::fmt::Display>(e: E) -> UsageError {
    UsageError::Config(e.to_string())
}

fn parse_shape(s: &str) -> Result<Partition, UsageError> {
    Partition::parse(s).map_err(|e| UsageError::Config(format!("bad shape `{s}`: {e}")))
}

fn load_params(a: &ParamArgs) -> Result<ParamEnv, UsageError> {
    let env = match (&a.params, &a.symbolic) {
        (Some(_), Some(_)) => return Err(config("give either --params or --symbolic, not both")),
        (Some(path), None) => {
            let doc = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
            ParamEnv::from_json(&doc).map_err(config)?
        }
        (None, Some(w)) => {
            let (lo, hi) = w.split_once(',').ok_or_else(|| config("--symbolic expects LO,HI"))?;
            let lo: i64 = lo.trim().parse().map_err(config)?;
            let hi: i64 = hi.trim().parse().map_err(config)?;
            if lo > hi {
                return Err(config("--symbolic window is empty"));
            }
            ParamEnv::symbolic(lo, hi)
        }
        (None, None) => ParamEnv::zero(),
    };
    Ok(match a.zero {
        Some(Seq::Alpha) => env.with_zero(Which::Alpha),
        Some(Seq::Beta) => env.with_zero(Which::Beta),
        None => env,
    })
}

fn parse_coef(s: &str) -> Result<Coef, UsageError> {
    Coef::parse(s).map_err(config)
}

fn parse_pairs(s: &str) -> Result<Vec<(Coef, Coef)>, UsageError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, y) = t.split_once('/').ok_or_else(|| config(format!("variable pair `{t}` must be `x/y`")))?;
            Ok((parse_coef(x)?, parse_coef(y)?))
        })
        .collect()
}

/// Output of `compute`.
#[derive(Serialize)]
struct ComputeDoc<'a> {
    job: &'a ComputeArgs,
    params: serde_json::Value,
    route: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

fn render_series_text(f: &PSeries) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .iter()
        .map(|(m, c)| {
            let mut parts = m.parts(dfschur::ring::Family::P);
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let label = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            format!("p[{label}]\t{}", c.canonical())
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn compute(args: &ComputeArgs, format: Format) -> Result<ExitCode, UsageError> {
    let env = load_params(&args.params)?;
    let lambda = parse_shape(&args.shape)?;
    let mu = parse_shape(&args.inner)?;
    let spec = match (&args.vars, args.trunc) {
        (Some(_), Some(_)) => return Err(config("give either --trunc or --vars, not both")),
        (Some(v), None) => PowersumSpec::Pairs(parse_pairs(v)?),
        (None, Some(d)) => PowersumSpec::series(d),
        (None, None) => return Err(config("symbolic power sums need --trunc (or specialize with --vars)")),
    };
    let (route, value) = match args.what {
        ComputeWhat::Dfs => {
            let r = dfs(&env, &lambda, &mu, &spec);
            (r.route.to_string(), r.value)
        }
        ComputeWhat::DfsDual => {
            let r = dfs_dual(&env, &lambda, &mu, &spec);
            (r.route.to_string(), r.value)
        }
        ComputeWhat::Hk => ("definition".into(), hk_shifted(&env, args.k, args.shift, &spec)),
        ComputeWhat::Ek => ("definition".into(), ek_shifted(&env, args.k, args.shift, &spec)),
        ComputeWhat::Giambelli => {
            if !mu.is_empty() {
                return Err(config("Giambelli takes a straight shape"));
            }
            let r = giambelli(&env, &lambda, &spec);
            (r.route.to_string(), r.value)
        }
        ComputeWhat::JacobiTrudi => {
            let r = jacobi_trudi(&env, &lambda, &mu, lambda.len(), &spec).map_err(config)?;
            (r.route.to_string(), r.value)
        }
    };
    let out = match format {
        Format::Json => {
            let (series, value) = match &value {
                Value::Series(s) => (Some(series_json(s, args.trunc.unwrap_or(0))), None),
                Value::Exact(c) => (None, Some(c.canonical())),
            };
            let doc = ComputeDoc { job: args, params: env.to_json(), route, series, value };
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Text => match &value {
            Value::Series(s) => render_series_text(s),
            Value::Exact(c) => c.canonical(),
        },
        Format::MathText => match &value {
            Value::Series(s) => s.to_string(),
            Value::Exact(c) => c.to_string(),
        },
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn lattice_state(args: &LatticeArgs) -> Result<(ParamEnv, Option<RowState>), UsageError> {
    let env = load_params(&args.params)?;
    let (top, bottom) = (parse_shape(&args.top)?, parse_shape(&args.bottom)?);
    let (x, y) = (parse_coef(&args.x)?, parse_coef(&args.y)?);
    let model = match args.model {
        Model::Plus => Sign::Plus,
        Model::Minus => Sign::Minus,
    };
    let state = row_state(&env, &bottom, &top, args.charge, &x, &y, model);
    Ok((env, state))
}

#[derive(Serialize)]
struct LatticeDoc<'a> {
    job: &'a LatticeArgs,
    params: serde_json::Value,
    value: String,
}

fn lattice(args: &LatticeArgs, format: Format) -> Result<ExitCode, UsageError> {
    let (env, state) = lattice_state(args)?;
    let value = state.map(|s| s.weight).unwrap_or_else(Coef::zero);
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&LatticeDoc { job: args, params: env.to_json(), value: value.canonical() })
            .expect("serializable"),
        Format::Text => value.canonical(),
        Format::MathText => value.to_string(),
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ColumnDoc {
    column: i64,
    top: u8,
    bottom: u8,
    high: u8,
    low: u8,
    vertex: String,
    weight: String,
}

#[derive(Serialize)]
struct StateDoc<'a> {
    job: &'a LatticeArgs,
    params: serde_json::Value,
    columns: Vec<ColumnDoc>,
    total: String,
}

fn state_dump(args: &LatticeArgs, format: Format) -> Result<ExitCode, UsageError> {
    let (env, state) = lattice_state(args)?;
    let Some(state) = state else {
        return Err(config("no row configuration satisfies the ice rule for these boundaries"));
    };
    let out = match format {
        Format::Json => {
            let columns = state
                .columns
                .iter()
                .map(|c| {
                    let v = &c.vertex;
                    ColumnDoc {
                        column: v.column,
                        top: v.top as u8,
                        bottom: v.bottom as u8,
                        high: v.high as u8,
                        low: v.low as u8,
                        vertex: v.kind().map(|k| k.label(v.model)).unwrap_or("-").to_string(),
                        weight: c.weight.canonical(),
                    }
                })
                .collect();
            let doc = StateDoc { job: args, params: env.to_json(), columns, total: state.weight.canonical() };
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Text | Format::MathText => state.to_string(),
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    job: &'a VerifyArgs,
    passed: bool,
    checks: Vec<CheckReport>,
}

fn verify(args: &VerifyArgs, format: Format) -> Result<ExitCode, UsageError> {
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        return Err(config(format!("unknown suite `{}`; expected one of: all, {}", args.suite, SUITES.join(", "))));
    };
    let opts = SuiteOptions { max_size: args.max_size, degree: args.degree, seed: args.seed };
    let mut checks: Vec<CheckReport> = names.par_iter().map(|n| run_suite(n, &opts).expect("known suite")).collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().all(CheckReport::passed);
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&VerifyDoc { job: args, passed, checks: checks.clone() }).expect("serializable"))
        }
        Format::Text | Format::MathText => {
            for c in &checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                println!("{tag} {:<12} {:>6} cases {:>8} ms", c.name, c.cases, c.runtime_ms);
                for f in &c.failures {
                    println!("     {f}");
                }
            }
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn configure_threads() -> Result<(), UsageError> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.trim().parse().map_err(|_| config(format!("{THREADS_VAR} must be a positive integer")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(config)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Compute(a) => compute(a, cli.format),
        Command::Lattice(a) => lattice(a, cli.format),
        Command::StateDump(a) => state_dump(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
