//! `weierstrass`: classify candidate functions, reproduce the constants, run
//! the catalog and check the concrete inequalities.
//!
//! Exit codes: 0 success, 1 catalog mismatch, 2 usage/parse/domain error,
//! 3 numeric failure.

mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use weierstrass::catalog::run_catalog;
use weierstrass::criteria::{classify, CertifyConfig, ClassifyError};
use weierstrass::expr::{parse, DomainKind, DomainSpec, Expression};
use weierstrass::inequalities::{self as ineq, IneqError, DEFAULT_SEED};
use weierstrass::special::{Constants, XI_SERIES_TERMS};

#[derive(Parser)]
#[command(
    name = "weierstrass",
    version,
    about = "Certify Weierstrass-type functional inequalities"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Domain J: the unit interval (0, 1] or the ray [1, inf)
    #[arg(long, global = true, value_enum)]
    domain: Option<DomainArg>,
    /// Left cut of the unit interval
    #[arg(long, global = true, default_value_t = DomainSpec::DEFAULT_LEFT_CUT)]
    delta: f64,
    /// Right cap of the ray
    #[arg(long, global = true, default_value_t = DomainSpec::DEFAULT_RIGHT_CAP)]
    cap: f64,
    /// Maximum bisection depth of the sign certificates
    #[arg(long, global = true, default_value_t = CertifyConfig::default().max_depth)]
    max_depth: u32,
    /// Counterexample search grid size
    #[arg(long, global = true, default_value_t = CertifyConfig::default().grid_n)]
    grid: usize,
    /// Fuzz seed
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Leaf tolerance of weak certificates
    #[arg(long, global = true, default_value_t = CertifyConfig::default().sign_tol)]
    sign_tol: f64,
    /// Minimum confirmed margin of a reported counterexample
    #[arg(long, global = true, default_value_t = CertifyConfig::default().report_tol)]
    report_tol: f64,
    /// Wall-clock budget per certificate, in milliseconds
    #[arg(long, global = true, default_value_t = CertifyConfig::default().time_budget_ms)]
    time_budget_ms: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum DomainArg {
    Unit,
    Ray,
}

impl From<DomainArg> for DomainKind {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Unit => DomainKind::UnitInterval,
            DomainArg::Ray => DomainKind::RayFromOne,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify f against every property on the chosen domain
    Classify {
        /// Expression in x, e.g. "log2(1+x)"
        expr: String,
    },
    /// Reproduce euler_gamma, x_min, x1 and xi
    Constants {
        /// Terms of the xi series before the tail enclosure
        #[arg(long, default_value_t = XI_SERIES_TERMS)]
        terms: usize,
    },
    /// Run the catalog of named examples (all entries when no id is given)
    Catalog { ids: Vec<String> },
    /// Check one inequality at a point, or fuzz it with --fuzz
    Ineq {
        /// classical | product | logprod | sandwich | sin | gamma | gamma-uv
        name: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
        /// f for the sandwich chain
        #[arg(long, default_value = "(4/pi)*arctan(x)")]
        expr: String,
        /// Run this many seeded random samples instead of a point check
        #[arg(long)]
        fuzz: Option<usize>,
    },
}

const INEQ_NAMES: [&str; 7] = [
    "classical",
    "product",
    "logprod",
    "sandwich",
    "sin",
    "gamma",
    "gamma-uv",
];

/// Resolved settings, echoed in every JSON envelope.
#[derive(Serialize)]
struct CliConfig {
    domain: Option<DomainArg>,
    delta: f64,
    cap: f64,
    max_depth: u32,
    grid: usize,
    seed: u64,
    sign_tol: f64,
    report_tol: f64,
    time_budget_ms: u64,
    format: Format,
}

impl Opts {
    fn config(&self) -> CliConfig {
        CliConfig {
            domain: self.domain,
            delta: self.delta,
            cap: self.cap,
            max_depth: self.max_depth,
            grid: self.grid,
            seed: self.seed,
            sign_tol: self.sign_tol,
            report_tol: self.report_tol,
            time_budget_ms: self.time_budget_ms,
            format: self.format,
        }
    }

    fn certify(&self) -> CertifyConfig {
        CertifyConfig {
            max_depth: self.max_depth,
            sign_tol: self.sign_tol,
            report_tol: self.report_tol,
            time_budget_ms: self.time_budget_ms,
            grid_n: self.grid,
            ..CertifyConfig::default()
        }
    }

    fn domain_spec(&self, kind: DomainKind) -> Result<DomainSpec, Failure> {
        DomainSpec::new(kind, self.delta, self.cap).map_err(|e| Failure::usage(e.to_string()))
    }

    fn default_domain(&self) -> Result<DomainSpec, Failure> {
        self.domain_spec(self.domain.map_or(DomainKind::UnitInterval, Into::into))
    }
}

/// A command's outcome before rendering.
struct Output {
    results: Vec<Value>,
    text: String,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
    /// Partial report, when there is one (e.g. a failed normalisation check).
    results: Vec<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            results: Vec::new(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            ..Failure::usage(message)
        }
    }
}

impl From<IneqError> for Failure {
    fn from(e: IneqError) -> Self {
        match e {
            IneqError::Special(_) => Failure::numeric(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse_expr(src: &str) -> Result<Expression, Failure> {
    parse(src).map_err(|e| {
        Failure::usage(format!(
            "{e}\n  {src}\n  {:>width$}",
            "^",
            width = e.column()
        ))
    })
}

fn cmd_classify(opts: &Opts, src: &str) -> Result<Output, Failure> {
    let f = parse_expr(src)?;
    let domain = opts.default_domain()?;
    match classify(&f, &domain, &opts.certify()) {
        Ok(c) => Ok(Output {
            text: report::classification(&c),
            results: vec![to_value(&c)],
            code: 0,
        }),
        Err(ClassifyError::NotNormalized(n)) => {
            let message = format!(
                "{f} is not admissible on {domain}: {}",
                report::normalization(&n)
            );
            Err(Failure {
                code: 2,
                results: vec![json!({
                    "expression": f.to_string(),
                    "domain": domain,
                    "normalization": n,
                    "error": message,
                })],
                message,
            })
        }
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn cmd_constants(terms: usize) -> Result<Output, Failure> {
    let c = if terms == XI_SERIES_TERMS {
        Ok(*Constants::get())
    } else {
        Constants::compute(terms)
    }
    .map_err(|e| Failure::numeric(e.to_string()))?;
    Ok(Output {
        text: report::constants(&c),
        results: vec![to_value(&c)],
        code: 0,
    })
}

fn cmd_catalog(opts: &Opts, ids: &[String]) -> Result<Output, Failure> {
    let filter = (!ids.is_empty()).then_some(ids);
    let entries =
        run_catalog(filter, &opts.certify()).map_err(|e| Failure::usage(e.to_string()))?;
    let all = entries.iter().all(|e| e.matched);
    Ok(Output {
        text: report::catalog(&entries),
        results: entries.iter().map(to_value).collect(),
        code: if all { 0 } else { 1 },
    })
}

fn arity(name: &str, args: &[f64], n: usize) -> Result<(), Failure> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "`ineq {name}` takes {n} numbers, got {}",
            args.len()
        )))
    }
}

fn cmd_ineq(
    opts: &Opts,
    name: &str,
    args: &[f64],
    expr: &str,
    fuzz: Option<usize>,
) -> Result<Output, Failure> {
    if !INEQ_NAMES.contains(&name) {
        return Err(Failure::usage(format!(
            "unknown inequality name `{name}` (known: {})",
            INEQ_NAMES.join(", ")
        )));
    }
    if let Some(samples) = fuzz {
        return fuzz_ineq(opts, name, args, expr, samples);
    }
    let report = match name {
        "classical" => to_value(&ineq::check_classical(args)?),
        "product" => to_value(&ineq::check_product_form(args)?),
        "logprod" => {
            let kind = match opts.domain {
                Some(d) => d.into(),
                None => ineq::infer_domain(args)?,
            };
            to_value(&ineq::check_log_product(args, kind)?)
        }
        "sandwich" => {
            arity(name, args, 2)?;
            let f = parse_expr(expr)?;
            let d = opts.default_domain()?;
            to_value(&ineq::check_sandwich(&f, &d, args[0], args[1])?)
        }
        "sin" => {
            arity(name, args, 2)?;
            to_value(&ineq::check_sin_display(args[0], args[1])?)
        }
        "gamma" => {
            arity(name, args, 3)?;
            to_value(&ineq::check_gamma_ineq(args[0], args[1], args[2])?)
        }
        "gamma-uv" => {
            arity(name, args, 3)?;
            to_value(&ineq::check_gamma_uv(args[0], args[1], args[2])?)
        }
        _ => unreachable!("checked against INEQ_NAMES"),
    };
    Ok(Output {
        text: report::ineq(&report),
        results: vec![report],
        code: 0,
    })
}

fn fuzz_ineq(
    opts: &Opts,
    name: &str,
    args: &[f64],
    expr: &str,
    samples: usize,
) -> Result<Output, Failure> {
    let seed = opts.seed;
    let summaries = match name {
        "classical" => vec![ineq::fuzz_classical(samples, seed)],
        "logprod" => {
            let kinds = match opts.domain {
                Some(d) => vec![d.into()],
                None => vec![DomainKind::UnitInterval, DomainKind::RayFromOne],
            };
            kinds
                .into_iter()
                .map(|k| ineq::fuzz_log_product(k, samples, seed))
                .collect()
        }
        "gamma" | "gamma-uv" => {
            arity(name, args, 1)?;
            let a = args[0];
            // Validate `a` once so a bad value is an error, not an empty run.
            if name == "gamma" {
                ineq::check_gamma_ineq(a, 1.0, 1.0)?;
                vec![ineq::fuzz_gamma(a, samples, seed)]
            } else {
                ineq::check_gamma_uv(a, a, a)?;
                vec![ineq::fuzz_gamma_uv(a, samples, seed)]
            }
        }
        "sandwich" => {
            let lo = match args {
                [] => 1e-3,
                [lo] => *lo,
                _ => {
                    return Err(Failure::usage(
                        "`ineq sandwich --fuzz` takes at most a lower bound",
                    ))
                }
            };
            let f = parse_expr(expr)?;
            let d = opts.default_domain()?;
            if !d.contains(lo) {
                return Err(Failure::usage(format!("lower bound {lo} is outside {d}")));
            }
            ineq::invert_numeric(&f, &d, 1.0)?;
            vec![ineq::fuzz_sandwich(&f, &d, lo, samples, seed)]
        }
        _ => return Err(Failure::usage(format!("`ineq {name}` has no fuzz harness"))),
    };
    Ok(Output {
        text: summaries.iter().map(report::fuzz).collect(),
        results: summaries.iter().map(to_value).collect(),
        code: 0,
    })
}

fn envelope(command: &str, opts: &Opts, results: &[Value], error: Option<&str>) -> Value {
    let mut v = json!({
        "command": command,
        "config": to_value(&opts.config()),
        "results": results,
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let Some(e) = error {
        v["error"] = json!(e);
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let (command, out) = match &cli.command {
        Command::Classify { expr } => ("classify", cmd_classify(opts, expr)),
        Command::Constants { terms } => ("constants", cmd_constants(*terms)),
        Command::Catalog { ids } => ("catalog", cmd_catalog(opts, ids)),
        Command::Ineq {
            name,
            args,
            expr,
            fuzz,
        } => ("ineq", cmd_ineq(opts, name, args, expr, *fuzz)),
    };
    let json = opts.format == Format::Json;
    let code = match out {
        Ok(o) => {
            if json {
                println!("{:#}", envelope(command, opts, &o.results, None));
            } else {
                print!("{}", o.text);
            }
            o.code
        }
        Err(f) => {
            if json {
                println!(
                    "{:#}",
                    envelope(command, opts, &f.results, Some(&f.message))
                );
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}
