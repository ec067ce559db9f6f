//! `pconway` — command-line front end for the partial-conway library.
//!
//! Subcommands:
//!
//! - `eval`: evaluate a rational expression to a `word<TAB>coefficient`
//!   listing in the truncated-series algebra.
//! - `compile`: compile an expression to a weighted automaton and print it
//!   in the JSON interchange format.
//! - `behavior`: read a JSON automaton and print the coefficient listing of
//!   its behavior. `compile` piped through `behavior` reproduces `eval`
//!   byte for byte.
//! - `check`: run one randomized identity suite (or all of them) and print
//!   a pass/fail report per suite.
//!
//! All output is deterministic for fixed flags and seed. Exit codes:
//!
//! | code | meaning                                    |
//! |------|--------------------------------------------|
//! | 0    | success                                    |
//! | 1    | expression syntax error                    |
//! | 2    | star/plus applied to a non-proper argument |
//! | 3    | coefficient overflow                       |
//! | 4    | unreadable or malformed input file         |
//! | 5    | unknown suite name                         |
//! | 6    | a check suite found a failing identity     |
//! | 64   | command-line usage error                   |
//! | 70   | internal error                             |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use partial_conway::instances::{Booleans, ExtendedNaturals, NatMatrix2, Naturals};
use partial_conway::{
    compile, eval_series, parse_expr, run_suite, Alphabet, Automaton, Error, SeriesSemiring,
    VerifyConfig, SUITE_NAMES,
};

const EXIT_SYNTAX: u8 = 1;
const EXIT_ILL_STARRED: u8 = 2;
const EXIT_OVERFLOW: u8 = 3;
const EXIT_BAD_INPUT: u8 = 4;
const EXIT_UNKNOWN_SUITE: u8 = 5;
const EXIT_CHECK_FAILED: u8 = 6;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "pconway",
    version,
    about = "Partial Conway semiring algebra: rational expressions, weighted automata, identity suites",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a rational expression to a coefficient listing
    Eval(EvalArgs),
    /// Compile a rational expression to a JSON weighted automaton
    Compile(CompileArgs),
    /// Print the coefficient listing of a JSON automaton's behavior
    Behavior(BehaviorArgs),
    /// Run randomized identity suites
    Check(CheckArgs),
}

/// Coefficient semiring selection shared by expression-handling commands.
#[derive(Args)]
struct RingArgs {
    /// Coefficient semiring
    #[arg(short = 's', long = "semiring", value_enum, default_value_t = RingName::Nat)]
    semiring: RingName,
    /// Alphabet, given as a string of distinct lowercase ASCII letters
    #[arg(short = 'a', long = "alphabet", default_value = "xy")]
    alphabet: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RingName {
    /// Booleans with or/and; star is constantly 1
    Bool,
    /// Machine naturals; star defined only at 0, overflow is reported
    Nat,
    /// Naturals extended with infinity; star is total
    Natinf,
    /// 2x2 matrices of machine naturals; star defined on nilpotents
    Natmat2,
}

#[derive(Args)]
struct EvalArgs {
    /// Rational expression, e.g. "(x + 2.y)^*"
    #[arg(short = 'e', long = "expr")]
    expr: String,
    #[command(flatten)]
    ring: RingArgs,
    /// List coefficients of words up to this length
    #[arg(short = 'L', long = "maxlen", default_value_t = 6)]
    maxlen: usize,
    /// Write the listing to this file instead of stdout
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompileArgs {
    /// Rational expression to compile
    #[arg(short = 'e', long = "expr")]
    expr: String,
    #[command(flatten)]
    ring: RingArgs,
    /// Write the JSON automaton to this file instead of stdout
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BehaviorArgs {
    /// Path to a JSON automaton file; its "semiring" field selects the ring
    file: PathBuf,
    /// List coefficients of words up to this length
    #[arg(short = 'L', long = "maxlen", default_value_t = 6)]
    maxlen: usize,
    /// Write the listing to this file instead of stdout
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name (basic, conway, matrix, permutation, block, duality,
    /// functorial, group, kleene) or "all"
    #[arg(short = 't', long = "suite", default_value = "all")]
    suite: String,
    #[command(flatten)]
    ring: RingArgs,
    /// Series truncation length used inside the suites
    #[arg(short = 'L', long = "maxlen", default_value_t = 6)]
    maxlen: usize,
    /// Seed for the deterministic random generator
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    /// Number of random cases per suite
    #[arg(long = "cases", default_value_t = 100)]
    cases: usize,
    /// Write the reports to this file instead of stdout
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

/// A diagnostic plus the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax { .. } => EXIT_SYNTAX,
            Error::IllStarred(_) => EXIT_ILL_STARRED,
            Error::Overflow(_) => EXIT_OVERFLOW,
            Error::InvalidAutomaton(_)
            | Error::InvalidGroup(_)
            | Error::UnknownLetter(_)
            | Error::SizeMismatch { .. } => EXIT_BAD_INPUT,
            Error::InvalidAlphabet(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

/// Bind `$ring` to the instance named by a [`RingName`] and evaluate the
/// body once with that concrete type.
macro_rules! with_ring {
    ($name:expr, $ring:ident => $body:expr) => {
        match $name {
            RingName::Bool => {
                let $ring = Booleans;
                $body
            }
            RingName::Nat => {
                let $ring = Naturals;
                $body
            }
            RingName::Natinf => {
                let $ring = ExtendedNaturals;
                $body
            }
            RingName::Natmat2 => {
                let $ring = NatMatrix2;
                $body
            }
        }
    };
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval(args) => {
            let text = cmd_eval(&args)?;
            emit(&text, args.out.as_deref())?;
            Ok(0)
        }
        Command::Compile(args) => {
            let text = cmd_compile(&args)?;
            emit(&text, args.out.as_deref())?;
            Ok(0)
        }
        Command::Behavior(args) => {
            let text = cmd_behavior(&args)?;
            emit(&text, args.out.as_deref())?;
            Ok(0)
        }
        Command::Check(args) => {
            let (text, all_passed) = cmd_check(&args)?;
            emit(&text, args.out.as_deref())?;
            Ok(if all_passed { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<String, Failure> {
    let alphabet = Alphabet::new(&args.ring.alphabet)?;
    let e = parse_expr(&args.expr, &alphabet)?;
    with_ring!(args.ring.semiring, ring => {
        let sr = SeriesSemiring::new(ring, alphabet.clone(), args.maxlen);
        let s = eval_series(&sr, &e)?;
        Ok(sr.dump(&s))
    })
}

fn cmd_compile(args: &CompileArgs) -> Result<String, Failure> {
    let alphabet = Alphabet::new(&args.ring.alphabet)?;
    let e = parse_expr(&args.expr, &alphabet)?;
    with_ring!(args.ring.semiring, ring => {
        let aut = compile(&ring, &alphabet, &e)?;
        let mut text = serde_json::to_string_pretty(&aut.to_json())
            .expect("automaton JSON values always serialize");
        text.push('\n');
        Ok(text)
    })
}

fn cmd_behavior(args: &BehaviorArgs) -> Result<String, Failure> {
    let raw = fs::read_to_string(&args.file).map_err(|e| {
        Failure::new(
            EXIT_BAD_INPUT,
            format!("cannot read {}: {e}", args.file.display()),
        )
    })?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("malformed JSON: {e}")))?;
    let name = value
        .get("semiring")
        .and_then(Value::as_str)
        .ok_or_else(|| {
            Failure::new(
                EXIT_BAD_INPUT,
                "malformed automaton: missing string field \"semiring\"",
            )
        })?;
    let ring_name = ring_name_from_str(name).ok_or_else(|| {
        Failure::new(
            EXIT_BAD_INPUT,
            format!("unknown semiring {name:?} (expected bool, nat, natinf, or natmat2)"),
        )
    })?;
    with_ring!(ring_name, ring => {
        let aut = Automaton::from_json(ring, &value)?;
        let s = aut.behavior(args.maxlen)?;
        let sr = SeriesSemiring::new(ring, aut.alphabet().clone(), args.maxlen);
        Ok(sr.dump(&s))
    })
}

fn cmd_check(args: &CheckArgs) -> Result<(String, bool), Failure> {
    let alphabet = Alphabet::new(&args.ring.alphabet)?;
    let mut cfg = VerifyConfig::new(alphabet);
    cfg.max_len = args.maxlen;
    cfg.cases = args.cases;
    cfg.seed = args.seed;
    let names: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    with_ring!(args.ring.semiring, ring => {
        let mut text = String::new();
        let mut all_passed = true;
        for name in &names {
            let report = run_suite(&ring, name, &cfg).ok_or_else(|| {
                Failure::new(
                    EXIT_UNKNOWN_SUITE,
                    format!(
                        "unknown suite {name:?} (expected one of: {}, or all)",
                        SUITE_NAMES.join(", ")
                    ),
                )
            })??;
            all_passed &= report.passed();
            text.push_str(&report.to_string());
            text.push('\n');
        }
        Ok((text, all_passed))
    })
}

fn ring_name_from_str(name: &str) -> Option<RingName> {
    match name {
        "bool" => Some(RingName::Bool),
        "nat" => Some(RingName::Nat),
        "natinf" => Some(RingName::Natinf),
        "natmat2" => Some(RingName::Natmat2),
        _ => None,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|e| {
            Failure::new(
                EXIT_BAD_INPUT,
                format!("cannot write {}: {e}", path.display()),
            )
        }),
    }
}
