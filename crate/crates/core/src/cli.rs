//! The `pal` command line. [`run`] returns the exit code and captured
//! output so the binary stays a one-liner and tests need no subprocess.
//!
//! Exit codes: 0 success, 1 failed check or order-axiom violation,
//! 2 usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{AlgebraElem, FreeAlgebra};
use crate::error::Error;
use crate::expr::Expr;
use crate::lattice::{to_lattice_elem, LatticeMode};
use crate::miners::{longest_descending_chain, max_antichain};
use crate::poset::Poset;
use crate::stone::StoneSpace;
use crate::verify::{self, Suite, SuiteConfig};
use crate::wqo::{classify_array, ArrayLabeling};

#[derive(Parser, Debug)]
#[command(name = "pal", version, about = "Free Boolean algebras and lattices over finite posets")]
struct Cli {
    /// Pretty, human-oriented output instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    human: bool,
    /// Force JSON output where the default is plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a poset file.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Evaluate terms in the free Boolean algebra of a poset.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Run a verification suite over the built-in corpus.
    Verify(VerifyArgs),
    /// Work with labelled arrays on a front.
    #[command(subcommand)]
    Array(ArrayCmd),
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Validate the order axioms.
    Check { file: PathBuf },
    /// Summarize: covers, extremal elements, width and height.
    Show { file: PathBuf },
    /// Hasse diagram in Graphviz format.
    ExportDot { file: PathBuf },
}

#[derive(Args, Debug)]
struct AlgCommon {
    #[arg(short = 'p', long = "poset", value_name = "FILE")]
    poset: PathBuf,
    /// Also evaluate through the Stone space and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    /// Are two terms equal?
    Eq {
        #[command(flatten)]
        common: AlgCommon,
        lhs: String,
        rhs: String,
    },
    /// Is the first term below the second?
    Leq {
        #[command(flatten)]
        common: AlgCommon,
        lhs: String,
        rhs: String,
    },
    /// Canonical representation: support, true traces and lattice form.
    Normalize {
        #[command(flatten)]
        common: AlgCommon,
        term: String,
    },
    /// Disjoint normal form.
    Dnf {
        #[command(flatten)]
        common: AlgCommon,
        term: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    max_size: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..))]
    horizon: u64,
    /// Exclude the unit from Π(P) and L(P).
    #[arg(long, num_args = 0..=1, default_missing_value = "true", default_value_t = false)]
    strict_lattice: bool,
}

#[derive(Subcommand, Debug)]
enum ArrayCmd {
    /// Classify an array file as bad, perfect or mixed.
    Classify {
        file: PathBuf,
        /// Target poset; required unless the file names a generator.
        #[arg(short = 'p', long = "poset", value_name = "FILE")]
        poset: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

enum Failure {
    /// Exit 1: a check failed or the input violates the order axioms.
    Check(Value),
    /// Exit 2: unreadable or malformed input.
    Usage(Value),
}

fn input_error(e: Error) -> Failure {
    match e {
        Error::Cycle(a, b) => Failure::Check(json!({ "error": "cycle", "witness": [a, b] })),
        Error::Parse(m) => Failure::Usage(json!({ "error": "parse", "message": m })),
        other => Failure::Usage(json!({ "error": "invalid", "message": other.to_string() })),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| {
        Failure::Usage(json!({ "error": "io", "path": path.display().to_string(), "message": e.to_string() }))
    })
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    Poset::from_json(&read(path)?).map_err(input_error)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

struct Style {
    human: bool,
    json: bool,
}

impl Style {
    fn render(&self, v: &Value) -> String {
        if self.human {
            pretty(v)
        } else {
            compact(v)
        }
    }
}

/// Parses and runs `pal` with the given arguments (including the program
/// name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let style = Style { human: cli.human, json: cli.json };
    let result = match &cli.command {
        Command::Poset(cmd) => poset_cmd(cmd, &style),
        Command::Alg(cmd) => alg_cmd(cmd, &style),
        Command::Verify(args) => verify_cmd(args, &style),
        Command::Array(cmd) => array_cmd(cmd, &style),
    };
    let (code, text) = match result {
        Ok((code, text)) => (code, text),
        Err(Failure::Check(v)) => (1, style.render(&v)),
        Err(Failure::Usage(v)) => return Outcome { code: 2, stdout: String::new(), stderr: style.render(&v) + "\n" },
    };
    let mut text = text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => {
                Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) }
            }
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

type CmdResult = Result<(i32, String), Failure>;

fn poset_cmd(cmd: &PosetCmd, style: &Style) -> CmdResult {
    match cmd {
        PosetCmd::Check { file } => {
            let p = load_poset(file)?;
            let pairs = p.strict_pairs().count();
            Ok((0, style.render(&json!({ "elements": p.len(), "relationPairs": pairs }))))
        }
        PosetCmd::Show { file } => {
            let p = load_poset(file)?;
            let width = max_antichain(p.len(), |a, b| p.leq(a, b));
            let height = longest_descending_chain(p.len(), |a, b| p.leq(a, b));
            let names = |v: &[usize]| v.iter().map(|&i| p.element_name(i).to_string()).collect::<Vec<_>>();
            let covers: Vec<[&str; 2]> =
                p.covers().into_iter().map(|(a, b)| [p.element_name(a), p.element_name(b)]).collect();
            let v = json!({
                "name": p.name(),
                "elements": p.names(),
                "covers": covers,
                "minimal": p.set_names(p.minimals(p.all())),
                "maximal": p.set_names(p.maximals(p.all())),
                "width": width.len(),
                "maxAntichain": names(&width.members),
                "height": height.len(),
                "longestChain": names(&height),
            });
            Ok((0, style.render(&v)))
        }
        PosetCmd::ExportDot { file } => Ok((0, load_poset(file)?.to_dot())),
    }
}

fn parse_term(alg: &FreeAlgebra, text: &str) -> Result<(Expr, AlgebraElem), Failure> {
    let e = Expr::parse(text).map_err(input_error)?;
    let value = e.eval(alg, &|n: &str| alg.gen_named(n)).map_err(input_error)?;
    Ok((e, value))
}

fn alg_cmd(cmd: &AlgCmd, style: &Style) -> CmdResult {
    let common = match cmd {
        AlgCmd::Eq { common, .. } | AlgCmd::Leq { common, .. } => common,
        AlgCmd::Normalize { common, .. } | AlgCmd::Dnf { common, .. } => common,
    };
    let poset = Arc::new(load_poset(&common.poset)?);
    let alg = FreeAlgebra::new(poset.clone());
    let space = if common.oracle {
        Some(StoneSpace::new(poset.clone(), crate::poset::DEFAULT_ENUM_CAP).map_err(input_error)?)
    } else {
        None
    };
    let internal = |e: Error| Failure::Check(json!({ "error": "internal", "message": e.to_string() }));

    let (result, oracle): (Value, Option<bool>) = match cmd {
        AlgCmd::Eq { lhs, rhs, .. } | AlgCmd::Leq { lhs, rhs, .. } => {
            let is_eq = matches!(cmd, AlgCmd::Eq { .. });
            let (ea, a) = parse_term(&alg, lhs)?;
            let (eb, b) = parse_term(&alg, rhs)?;
            let verdict = if is_eq { a.equals(&b) } else { a.leq(&b) }.map_err(internal)?;
            let oracle = match &space {
                Some(s) => {
                    let (da, db) = (s.denote_expr(&ea).map_err(input_error)?, s.denote_expr(&eb).map_err(input_error)?);
                    Some(verdict == if is_eq { da == db } else { da.is_subset(&db) })
                }
                None => None,
            };
            (json!(verdict), oracle)
        }
        AlgCmd::Dnf { term, .. } => {
            let (e, value) = parse_term(&alg, term)?;
            let oracle = match &space {
                Some(s) => Some(s.denote(&value).map_err(internal)? == s.denote_expr(&e).map_err(input_error)?),
                None => None,
            };
            (json!(value.to_dnf_string()), oracle)
        }
        AlgCmd::Normalize { term, .. } => {
            let (e, value) = parse_term(&alg, term)?;
            let reduced = value.support_reduce();
            let traces: Vec<Vec<String>> = reduced.true_traces().map(|t| poset.set_names(t)).collect();
            let lattice = to_lattice_elem(&reduced).map(|l| l.to_string());
            let oracle = match &space {
                Some(s) => Some(s.denote(&reduced).map_err(internal)? == s.denote_expr(&e).map_err(input_error)?),
                None => None,
            };
            let v = json!({
                "support": poset.set_names(reduced.support()),
                "trueTraces": traces,
                "dnf": reduced.to_dnf_string(),
                "lattice": lattice,
            });
            (v, oracle)
        }
    };
    let code = if oracle == Some(false) { 1 } else { 0 };
    let plain = !style.json && !style.human;
    let text = if plain && !matches!(cmd, AlgCmd::Normalize { .. }) {
        let mut s = match &result {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        if let Some(agree) = oracle {
            s.push_str(if agree { "\noracle: agrees" } else { "\noracle: DISAGREES" });
        }
        s
    } else {
        let mut v = json!({ "result": result });
        if let Some(agree) = oracle {
            v["oracleAgrees"] = json!(agree);
        }
        if plain {
            compact(&v)
        } else {
            style.render(&v)
        }
    };
    Ok((code, text))
}

fn verify_cmd(args: &VerifyArgs, style: &Style) -> CmdResult {
    let config = SuiteConfig {
        suite: args.suite,
        max_size: args.max_size as usize,
        samples: args.samples.map(|s| s as usize),
        seed: args.seed,
        horizon: args.horizon as usize,
        lattice_mode: if args.strict_lattice { LatticeMode::Strict } else { LatticeMode::Inclusive },
        ..SuiteConfig::new(args.suite)
    };
    let report =
        verify::run(&config).map_err(|e| Failure::Usage(json!({ "error": "config", "message": e.to_string() })))?;
    let code = if report.passed() { 0 } else { 1 };
    if style.human {
        let mut lines = Vec::new();
        let mut describe = |r: &verify::SuiteReport| {
            let status = if r.passed() { "pass" } else { "FAIL" };
            lines.push(format!("{:<18} {status}  cases {:>4}  failures {}", r.suite, r.cases, r.failures));
        };
        if report.suites.is_empty() {
            describe(&report);
        } else {
            report.suites.iter().for_each(&mut describe);
        }
        if let Some(f) = report.first_failure() {
            lines.push(format!(
                "first counterexample: {}",
                pretty(&serde_json::to_value(f).expect("verdicts serialize"))
            ));
        }
        return Ok((code, lines.join("\n")));
    }
    let mut v = serde_json::to_value(&report).expect("reports serialize");
    if let Some(f) = report.first_failure() {
        v["counterexample"] = serde_json::to_value(f).expect("verdicts serialize");
    }
    Ok((code, style.render(&v)))
}

fn array_cmd(cmd: &ArrayCmd, style: &Style) -> CmdResult {
    match cmd {
        ArrayCmd::Classify { file, poset } => {
            let target = poset.as_deref().map(load_poset).transpose()?;
            let (target, arr) = ArrayLabeling::from_json(&read(file)?, target.as_ref()).map_err(input_error)?;
            let verdict = classify_array(&target, &arr).map_err(input_error)?;
            Ok((0, style.render(&serde_json::to_value(&verdict).expect("verdicts serialize"))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal(args: &[&str]) -> Outcome {
        run(std::iter::once("pal").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(pal(&["frobnicate"]).code, 2);
        assert_eq!(pal(&["verify", "--suite", "nope"]).code, 2);
        assert_eq!(pal(&["verify", "--suite", "rado", "--max-size", "0"]).code, 2);
        assert_eq!(pal(&["--help"]).code, 0);
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let out = pal(&["poset", "check", "/nonexistent/poset.json"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("\"io\""));
    }

    #[test]
    fn verify_reports_json() {
        let out = pal(&["verify", "--suite", "interval-algebra"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["cases"], 6);
        assert_eq!(v["failures"], 0);
    }
}
