//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a checked suite fails, 2 on flag,
//! parse or conversion errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::dynamic::{self, AnyTerm, FamilyKind, Repr, SampleRequest, Strategy};
use crate::error::Error;
use crate::gen::Rng;
use crate::props::{self, Bounds};

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "LAMBDA_SKELETONS_SEED";

pub const DEFAULT_FILTER_MAX: u32 = 1000;

#[derive(Debug, Parser)]
#[command(name = "lambda-skeletons", version, about = "Enumerate, count, sample, convert and check λ-term skeleton families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Target {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long, value_enum, default_value_t = Repr::Base)]
    pub repr: Repr,
    /// Openness `m`; required for family `open`.
    #[arg(long, short = 'm')]
    pub openness: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every family member of the given size in canonical order.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Count the family members of the given size.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Draw seeded random members.
    Sample {
        #[command(flatten)]
        target: Target,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        fuel: u32,
        #[arg(long, default_value_t = DEFAULT_FILTER_MAX)]
        filter_max: u32,
        #[arg(long, default_value_t = 10)]
        samples: u64,
        /// Defaults to `structural` where available, `derived` otherwise.
        #[arg(long, value_enum)]
        strategy: Option<Strategy>,
        #[command(flatten)]
        out: Output,
    },
    /// Print a term in the other representation of its family.
    Convert {
        #[command(flatten)]
        target: Target,
        /// Term to convert; read one per line from stdin when absent.
        #[arg(long)]
        term: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Print skeleton, openness and labeling facts about a term.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        term: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run property suites; exits 1 if any fails.
    Check {
        /// Suites to run (default: all).
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(props::SUITES))]
        suites: Vec<String>,
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        #[arg(long, default_value_t = 8)]
        max_open_size: usize,
        #[arg(long, default_value_t = 2)]
        max_m: u64,
        #[arg(long, default_value_t = 5)]
        max_counter: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 10)]
        fuel: u32,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
}

/// A failure that maps to a nonzero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Error message with a caret under the failing byte for parse errors.
fn describe(err: &Error, input: &str) -> String {
    match err {
        Error::Parse { pos, .. } if !input.contains('\n') => {
            format!("{err}\n  {input}\n  {}^", " ".repeat(input[..*pos].chars().count()))
        }
        _ => err.to_string(),
    }
}

fn check_openness(target: &Target) -> Result<(), Failure> {
    match (target.family, target.openness) {
        (FamilyKind::Open, None) => Err(usage("--openness is required for family open")),
        _ => Ok(()),
    }
}

fn reject_openness(target: &Target) -> Result<(), Failure> {
    match (target.family, target.openness) {
        (FamilyKind::Motzkin | FamilyKind::Closable | FamilyKind::Ucs, Some(_)) => Err(usage(format!(
            "--openness does not apply to family {}",
            target.family.name()
        ))),
        _ => Ok(()),
    }
}

fn term_inputs(term: Option<String>, stdin: &mut dyn BufRead) -> Result<Vec<String>, Failure> {
    if let Some(t) = term {
        return Ok(vec![t]);
    }
    let mut out = Vec::new();
    for line in stdin.lines() {
        let line = line.map_err(|e| usage(format!("reading stdin: {e}")))?;
        if !line.trim().is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn object(fields: Vec<(String, Value)>) -> Value {
    Value::Object(fields.into_iter().collect::<Map<_, _>>())
}

fn render(format: Format, text: Vec<String>, json_items: Vec<Value>) -> String {
    match format {
        Format::Text => {
            let mut s = text.join("\n");
            if !s.is_empty() {
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Array(json_items)).expect("json output");
            s.push('\n');
            s
        }
    }
}

fn err(input: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| usage(describe(&e, input))
}

fn execute(command: Command, stdin: &mut dyn BufRead) -> Result<(String, Option<PathBuf>, i32), Failure> {
    match command {
        Command::Enumerate { target, size, out } => {
            check_openness(&target)?;
            reject_openness(&target)?;
            let terms = dynamic::enumerate(target.family, target.repr, size, target.openness).map_err(err(""))?;
            let text = terms.iter().map(AnyTerm::to_string).collect();
            let items = terms
                .iter()
                .map(|t| json!({"term": t.to_string(), "size": t.size111()}))
                .collect();
            Ok((render(out.format, text, items), out.output, 0))
        }
        Command::Count { target, size, out } => {
            check_openness(&target)?;
            reject_openness(&target)?;
            let n = dynamic::count(target.family, size, target.openness).map_err(err(""))?;
            let count_json = u64::try_from(&n).map(Value::from).unwrap_or_else(|_| json!(n.to_string()));
            let item = json!({"family": target.family.name(), "size": size, "count": count_json});
            Ok((render(out.format, vec![n.to_string()], vec![item]), out.output, 0))
        }
        Command::Sample {
            target,
            seed,
            fuel,
            filter_max,
            samples,
            strategy,
            out,
        } => {
            check_openness(&target)?;
            reject_openness(&target)?;
            let seed = seed.ok_or_else(|| usage(format!("--seed (or {SEED_ENV}) is required for sample")))?;
            let request = SampleRequest {
                kind: target.family,
                repr: target.repr,
                strategy: strategy.unwrap_or_else(|| target.family.default_strategy()),
                fuel,
                filter_max,
                openness: target.openness,
            };
            let mut rng = Rng::new(seed);
            let mut text = Vec::new();
            let mut items = Vec::new();
            for _ in 0..samples {
                let (t, stats) = dynamic::sample(&request, &mut rng).map_err(err(""))?;
                let mut item = json!({"term": t.to_string()});
                if let Some(s) = stats {
                    item["attempts"] = json!(s.attempts);
                    item["discarded"] = json!(s.discarded);
                    item["exhausted"] = json!(s.exhausted);
                }
                text.push(t.to_string());
                items.push(item);
            }
            Ok((render(out.format, text, items), out.output, 0))
        }
        Command::Convert { target, term, out } => {
            check_openness(&target)?;
            reject_openness(&target)?;
            let mut text = Vec::new();
            let mut items = Vec::new();
            for input in term_inputs(term, stdin)? {
                let parsed = dynamic::parse(target.family, target.repr, &input).map_err(err(&input))?;
                let converted = dynamic::convert(target.family, &parsed, target.openness).map_err(err(&input))?;
                text.push(converted.to_string());
                items.push(json!({"term": converted.to_string(), "input": parsed.to_string()}));
            }
            Ok((render(out.format, text, items), out.output, 0))
        }
        Command::Analyze { target, term, out } => {
            check_openness(&target)?;
            let mut text = Vec::new();
            let mut items = Vec::new();
            for input in term_inputs(term, stdin)? {
                let parsed = dynamic::parse(target.family, target.repr, &input).map_err(err(&input))?;
                let facts = dynamic::analyze(target.family, &parsed, target.openness).map_err(err(&input))?;
                for (k, v) in &facts {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        Value::Array(xs) => xs
                            .iter()
                            .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                            .collect::<Vec<_>>()
                            .join(" "),
                        other => other.to_string(),
                    };
                    text.push(format!("{k}: {shown}"));
                }
                items.push(object(facts));
            }
            Ok((render(out.format, text, items), out.output, 0))
        }
        Command::Check {
            suites,
            max_size,
            max_open_size,
            max_m,
            max_counter,
            samples,
            fuel,
            seed,
            out,
        } => {
            let bounds = Bounds {
                max_size,
                max_open_size,
                max_m,
                max_counter,
                samples,
                fuel,
                seed: seed.unwrap_or(Bounds::default().seed),
            };
            let names: Vec<String> = if suites.is_empty() {
                props::SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suites
            };
            let mut reports = Vec::new();
            for name in &names {
                let report = props::run_suite(name, &bounds).ok_or_else(|| usage(format!("unknown suite {name}")))?;
                reports.push(report);
            }
            let code = if reports.iter().all(|r| r.pass) { 0 } else { 1 };
            let output = match out.format {
                Format::Text => reports.iter().map(ToString::to_string).collect::<String>(),
                Format::Json => {
                    let values: Vec<Value> = reports
                        .iter()
                        .map(|r| serde_json::to_value(r).expect("report serializes"))
                        .collect();
                    let mut s = serde_json::to_string_pretty(&values).expect("json output");
                    s.push('\n');
                    s
                }
            };
            Ok((output, out.output, code))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(cli.command, stdin) {
        Ok((output, path, code)) => {
            let written = match path {
                Some(path) => File::create(&path).and_then(|mut f| f.write_all(output.as_bytes())),
                None => stdout.write_all(output.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return 2;
            }
            code
        }
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

/// [`run`] against the process's standard streams.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let stderr = io::stderr();
    let mut stderr = stderr.lock();
    run(std::env::args_os(), &mut stdin, &mut stdout, &mut stderr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut args_full = vec!["lambda-skeletons"];
        args_full.extend_from_slice(args);
        let code = run(args_full, &mut io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_motzkin() {
        assert_eq!(run_str(&["count", "--family", "motzkin", "--size", "5"]), (0, "9\n".into(), String::new()));
    }

    #[test]
    fn convert_not_closable() {
        let (code, out, err) = run_str(&["convert", "--family", "closable", "--repr", "base", "--term", "a(l(v),v)"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("NotClosable"), "{err}");
    }

    #[test]
    fn parse_error_has_caret() {
        let (code, _, err) = run_str(&["convert", "--family", "closable", "--term", "l(x)"]);
        assert_eq!(code, 2);
        assert!(err.contains("at byte 2"), "{err}");
        assert!(err.contains("\n    ^"), "{err}");
    }

    #[test]
    fn openness_required_for_open() {
        let (code, _, err) = run_str(&["enumerate", "--family", "open", "--size", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("--openness"));
        let (code, out, _) = run_str(&["enumerate", "--family", "open", "--size", "3", "-m", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "lam(lam(var(0)))\nlam(lam(var(1)))\n");
    }

    #[test]
    fn bad_flags_exit_2() {
        assert_eq!(run_str(&["count", "--family", "nope", "--size", "3"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["count", "--family", "lmt", "--size", "3"]).0, 2);
    }
}
