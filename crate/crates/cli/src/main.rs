use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use greenhall_core::characters::{character_table, ClassFunction};
use greenhall_core::dvr::{build_matrix, compare, fuzz, render, ValuationMatrixSpec};
use greenhall_core::exact::{parse_rational, to_exact_string, Rational};
use greenhall_core::hall::{g_upper, hall_polynomial_report};
use greenhall_core::hecke::{hecke_identity_check, LocalHeckeInstance};
use greenhall_core::io::{parse_divisors_for, parse_local_system};
use greenhall_core::kostka::{kostka_foulkes, kostka_tilde};
use greenhall_core::suite::{default_bound, run_identity_suite_with, SuiteReport};
use greenhall_core::whittaker::{green_polynomial, whittaker_global, x_polynomial, WhittakerMode};
use greenhall_core::{Error, Partition};

#[derive(Parser)]
#[command(name = "greenhall", version, about = "Exact Hall, Green and Whittaker computations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format. JSON is stable; text is for reading.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for eigenvalue and fuzz draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size bound for suites; each suite has its own default.
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Record per-case wall time in suite reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Kostka-Foulkes polynomial K_{λμ}(t), or the modified K̃ with --tilde.
    Kostka {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        tilde: bool,
    },
    /// Character table of S_n.
    Chartable {
        #[arg(long)]
        n: u32,
    },
    /// Hall polynomial g^λ_{μν}(t) with its samples and checks.
    Hall {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
    /// Green polynomial Q^λ(t), or X^λ(t) with --x.
    Green {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        x: bool,
    },
    /// Global Whittaker function for a local system and divisor tuple.
    Whittaker {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        divisors: PathBuf,
        #[arg(long)]
        top: bool,
    },
    /// Checks the local Hecke eigen-identity at one place.
    HeckeCheck {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "")]
        mu: Partition,
        #[arg(long, default_value = "")]
        nu: Partition,
        /// Comma-separated rationals, e.g. 2,-1/3,5.
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: String,
    },
    /// Elementary divisors of the bordered diagonal matrix, two ways.
    SnfCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        d: Vec<u32>,
    },
    /// Seeded comparison of the closed form against minor valuations.
    SnfFuzz {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_val: u32,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Runs a named identity suite.
    Suite { name: String },
    /// Shorthand for `suite orthogonality`.
    OrthogonalityCheck,
}

struct Output {
    json: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn value(json: Value, text: String) -> Self {
        Output { json, text, pass: true }
    }
}

fn parse_eigenvalues(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_rational(x.trim()))
        .collect()
}

fn class_function_text(f: &ClassFunction) -> String {
    f.values()
        .iter()
        .map(|(c, v)| format!("  ({c}): {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn suite_output(rep: SuiteReport) -> Output {
    let mut text = format!(
        "{}: {}/{} passed (bound {}, seed {})",
        rep.suite, rep.summary.passed, rep.summary.total, rep.bound, rep.seed
    );
    for c in rep.failures() {
        text.push_str(&format!("\nFAIL {}: {} vs {}", c.id, c.lhs, c.rhs));
        if let Some(e) = &c.error {
            text.push_str(&format!(" ({e})"));
        }
    }
    Output {
        pass: rep.all_passed(),
        json: serde_json::to_value(&rep).expect("report serializes"),
        text,
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    let g = &cli.global;
    Ok(match cli.command {
        Command::Kostka { lambda, mu, tilde } => {
            let p = if tilde { kostka_tilde(&lambda, &mu) } else { kostka_foulkes(&lambda, &mu) };
            Output::value(
                json!({"lambda": lambda, "mu": mu, "tilde": tilde, "polynomial": p}),
                p.to_string(),
            )
        }
        Command::Chartable { n } => {
            let table = character_table(n);
            let json_rows: serde_json::Map<String, Value> = table
                .iter()
                .map(|(l, f)| {
                    let v: serde_json::Map<String, Value> =
                        f.values().iter().map(|(c, x)| (c.to_string(), json!(x.to_string()))).collect();
                    (l.to_string(), Value::Object(v))
                })
                .collect();
            let text = table
                .iter()
                .map(|(l, f)| format!("χ^({l}):\n{}", class_function_text(f)))
                .collect::<Vec<_>>()
                .join("\n");
            Output::value(json!({"n": n, "characters": json_rows}), text)
        }
        Command::Hall { lambda, mu, nu } => {
            let rep = hall_polynomial_report(&lambda, &mu, &nu)?;
            let upper = g_upper(&lambda, &mu, &nu)?;
            let text = format!("g = {}\ng_upper = {}", rep.polynomial, upper);
            Output::value(
                json!({"report": rep, "g_upper": upper, "g_upper_text": upper.to_string()}),
                text,
            )
        }
        Command::Green { lambda, x } => {
            let f = if x { x_polynomial(&lambda) } else { green_polynomial(&lambda) };
            let text = class_function_text(&f);
            Output::value(json!({"lambda": lambda, "kind": if x { "X" } else { "Q" }, "function": f}), text)
        }
        Command::Whittaker { spec, divisors, top } => {
            let spec = parse_local_system(&spec)?;
            let text = std::fs::read_to_string(&divisors)?;
            let d = parse_divisors_for(&text, &spec)?;
            let mode = if top { WhittakerMode::Top } else { WhittakerMode::Plain };
            let v = to_exact_string(&whittaker_global(&spec, &d, mode)?);
            Output::value(json!({"mode": mode, "divisors": d, "value": v}), v.clone())
        }
        Command::HeckeCheck { q, mu, nu, eigenvalues } => {
            let inst = LocalHeckeInstance::new(q, mu, nu, parse_eigenvalues(&eigenvalues)?)?;
            let rep = hecke_identity_check(&inst)?;
            let text = format!(
                "T(w) = {} (structure form {}), w(mu) w(nu) = {}: {}",
                rep.lhs,
                rep.lhs_structure_form,
                rep.rhs,
                if rep.equal { "equal" } else { "NOT equal" }
            );
            Output {
                pass: rep.equal,
                json: serde_json::to_value(&rep).expect("report serializes"),
                text,
            }
        }
        Command::SnfCheck { a, d } => {
            let spec = ValuationMatrixSpec::new(a, d)?;
            let c = compare(&spec)?;
            let m = render(&build_matrix(&spec));
            let text = format!(
                "matrix {m}\nclosed form d' = {:?}, valuations {:?}\nminor oracle {:?}: {}",
                c.closed,
                c.closed_valuations,
                c.oracle_valuations,
                if c.equal { "equal" } else { "NOT equal" }
            );
            Output {
                pass: c.equal,
                json: json!({"matrix": m, "comparison": c}),
                text,
            }
        }
        Command::SnfFuzz { count, max_val, max_size } => {
            let rep = fuzz(count, g.seed, max_size, max_val)?;
            let text = format!("{}/{} specs agree (seed {})", rep.passed, rep.count, rep.seed);
            Output {
                pass: rep.failed == 0,
                json: serde_json::to_value(&rep).expect("report serializes"),
                text,
            }
        }
        Command::Suite { name } => {
            let bound = match g.bound {
                Some(b) => b,
                None => default_bound(&name)?,
            };
            suite_output(run_identity_suite_with(&name, bound, g.seed, g.timings)?)
        }
        Command::OrthogonalityCheck => {
            let bound = g.bound.unwrap_or(default_bound("orthogonality")?);
            suite_output(run_identity_suite_with("orthogonality", bound, g.seed, g.timings)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
                Format::Text => println!("{}", out.text),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InternalConsistency(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
