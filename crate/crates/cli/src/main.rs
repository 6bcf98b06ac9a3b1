mod cache;

use cache::{Cache, Entry};
use clap::{Parser, Subcommand, ValueEnum};
use mzvkit_core::indices::parse_index;
use mzvkit_core::numerics::{bernoulli, zeta_value};
use mzvkit_core::series::{eval_mpl_with, polylog_half, EvalOptions, Method};
use mzvkit_core::suite::{run_suite, Status};
use mzvkit_core::zeta_poly::{gamma_ratio_coeffs, MAX_GAMMA_ORDER};
use mzvkit_core::{BigReal, Error, PrecisionContext};
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mzvkit", version, about = "Multiple zeta values and the identities among them")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "MZVKIT_PRECISION", default_value_t = 40)]
    precision: u32,
    /// Absolute error the evaluators must reach.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Term cap for the direct and Levin paths.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_terms: usize,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Also write machine-readable output to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Value cache for `eval`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Levin,
    Cvz,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Direct => Method::Direct,
            MethodArg::Levin => Method::Levin,
            MethodArg::Cvz => Method::Cvz,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an index such as `zs({2}^3)` or `za(1,2)`, or `li_half(k)`.
    Eval { expr: String },
    /// Run identity checks whose id matches PATTERN (`all`, an id, or a `*` glob).
    Verify {
        #[arg(default_value = "all")]
        pattern: String,
    },
    /// Print Bernoulli numbers, zeta values or gamma-ratio coefficients.
    Constants {
        #[arg(value_enum)]
        kind: ConstKind,
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConstKind {
    Bernoulli,
    Zeta,
    GammaCoeffs,
}

const MAX_BERNOULLI: usize = 500;
const MAX_ZETA: usize = 100;

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence(_) => EXIT_NONCONVERGENCE,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure { code: EXIT_FAIL, msg: e.to_string() }
}

fn context(cli: &Cli) -> Result<PrecisionContext, Failure> {
    let floor = 10f64.powi(10 - cli.precision as i32);
    let tol = cli.tol.unwrap_or_else(|| 1e-12f64.max(floor));
    Ok(PrecisionContext::new(cli.precision, tol)?)
}

fn write_json(cli: &Cli, v: &serde_json::Value) -> Result<(), Failure> {
    if let Some(p) = &cli.json {
        let s = serde_json::to_string_pretty(v).expect("json value serializes");
        fs::write(p, s + "\n").map_err(io_fail)?;
    }
    Ok(())
}

fn named_series(expr: &str, ctx: &PrecisionContext) -> Option<Result<BigReal, Failure>> {
    let inner = expr.strip_prefix("li_half(")?.strip_suffix(')')?;
    Some(match inner.trim().parse::<u32>() {
        Ok(k) => Ok(polylog_half(k, ctx)),
        Err(_) => Err(usage(format!("li_half expects an integer, got `{inner}`"))),
    })
}

fn cmd_eval(cli: &Cli, expr: &str) -> Result<(), Failure> {
    let ctx = context(cli)?;
    let digits = ctx.digits();
    if let Some(v) = named_series(expr.trim(), &ctx) {
        let v = v?;
        println!("{}", v.to_decimal(digits as usize));
        println!("err {:.2e}  method direct", v.err());
        return write_json(cli, &json!({"expr": expr, "value": v.to_decimal(digits as usize), "err": v.err(), "digits": digits}));
    }
    let idx = parse_index(expr)?;
    let key = idx.to_string();
    let mut cache = match &cli.cache {
        Some(p) => Some(Cache::open(p).map_err(io_fail)?),
        None => None,
    };
    if let Some(e) = cache.as_ref().and_then(|c| c.get(&key, digits)) {
        println!("{}", e.value);
        println!("err {:.2e}  cached ({} digits)", e.err, e.digits);
        return write_json(cli, &json!({"expr": key, "value": e.value, "err": e.err, "digits": e.digits, "cached": true}));
    }
    let opts = EvalOptions { method: cli.method.into(), max_terms: cli.max_terms };
    let v = eval_mpl_with(&idx, &ctx, opts)?;
    let shown = v.value.to_decimal(digits as usize);
    println!("{shown}");
    println!("err {:.2e}  terms {}  method {}", v.value.err(), v.terms_used, v.method);
    if let Some(c) = cache.as_mut() {
        c.put(key.clone(), Entry { value: shown.clone(), err: v.value.err(), digits });
        c.save().map_err(io_fail)?;
    }
    write_json(
        cli,
        &json!({"expr": key, "value": shown, "err": v.value.err(), "terms": v.terms_used,
                "method": v.method.to_string(), "digits": digits}),
    )
}

fn cmd_verify(cli: &Cli, pattern: &str) -> Result<(), Failure> {
    let ctx = context(cli)?;
    let report = run_suite(Some(pattern), &ctx)?;
    for r in &report.results {
        println!("{r}");
    }
    if let Some(p) = &cli.json {
        fs::write(p, report.to_json() + "\n").map_err(io_fail)?;
    }
    println!("{}", report.summary());
    if report.results.iter().any(|r| r.status == Status::Fail) {
        return Err(Failure { code: EXIT_FAIL, msg: String::new() });
    }
    Ok(())
}

fn cmd_constants(cli: &Cli, kind: ConstKind, upto: usize) -> Result<(), Failure> {
    let ctx = context(cli)?;
    let rows: Vec<(String, String)> = match kind {
        ConstKind::Bernoulli => {
            if upto > MAX_BERNOULLI {
                return Err(usage(format!("--upto {upto} above {MAX_BERNOULLI}")));
            }
            (0..=upto).map(|n| (format!("B_{n}"), bernoulli(n).to_string())).collect()
        }
        ConstKind::Zeta => {
            if !(2..=MAX_ZETA).contains(&upto) {
                return Err(usage(format!("--upto must lie in 2..={MAX_ZETA}")));
            }
            let mut out = Vec::new();
            for k in 2..=upto as u32 {
                out.push((format!("zeta({k})"), zeta_value(k, &ctx)?.to_decimal(ctx.digits() as usize)));
            }
            out
        }
        ConstKind::GammaCoeffs => {
            if upto > MAX_GAMMA_ORDER {
                return Err(usage(format!("--upto {upto} above {MAX_GAMMA_ORDER}")));
            }
            let g = gamma_ratio_coeffs(upto)?;
            g.coeffs.iter().enumerate().map(|(i, p)| (format!("c_{i}"), p.to_string())).collect()
        }
    };
    for (k, v) in &rows {
        println!("{k} = {v}");
    }
    let arr: Vec<_> = rows.iter().map(|(k, v)| json!({"name": k, "value": v})).collect();
    write_json(cli, &serde_json::Value::Array(arr))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Eval { expr } => cmd_eval(&cli, expr),
        Cmd::Verify { pattern } => cmd_verify(&cli, pattern),
        Cmd::Constants { kind, upto } => cmd_constants(&cli, *kind, *upto),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("mzvkit: {}", f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}
