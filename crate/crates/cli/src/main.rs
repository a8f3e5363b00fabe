//! `cone-green`: symbols, inverses, strip bases and Green's formulas for
//! Fuchs-type operators, all in exact arithmetic.
//!
//! Every command prints one pretty JSON document
//! `{"schema": …, "command": …, "result": …}`. Failures print an error
//! record to stderr and exit with the code from [`exit_code`].

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cone_green::algebra::Gq;
use cone_green::asymptotic::strip_basis_with_roots;
use cone_green::green::{render_green_formula, verify_theorem_main};
use cone_green::io::json::matrix_json;
use cone_green::io::{parse_operator, OperatorJson, RationalJson, SCHEMA};
use cone_green::mellin::{
    invert_complete_symbol, leading_roots, residue_table, CompleteMellinSymbol, FuchsOperator,
    WeightContext,
};
use cone_green::suites::{run_suites, Suite};
use cone_green::Error;

const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Parser)]
#[command(name = "cone-green", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Operator in the expression language, e.g. `d^3 + t^-1*d^2`.
    #[arg(long, conflicts_with = "operator", required_unless_present = "operator")]
    expr: Option<String>,
    /// Operator as a `cone-green/1` JSON document.
    #[arg(long)]
    operator: Option<PathBuf>,
    /// Parameter binding `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Conormal symbols of the operator.
    Symbols {
        #[command(flatten)]
        input: Input,
    },
    /// Terms of the inverse symbol with their residue tables.
    Invert {
        #[command(flatten)]
        input: Input,
        /// Number of terms; defaults to twice the order.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Characteristic basis of the strip below the weight line.
    Basis {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Strip depth; defaults to the order.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Conjugate bases, pairing matrix and rendered Green's formula.
    Green {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Run invariant suites; exits nonzero when a check fails.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        delta: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Local,
    Global,
    Green,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Local => vec![Suite::Local],
            SuiteArg::Global => vec![Suite::Global],
            SuiteArg::Green => vec![Suite::Green],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// A failure on the way to an output document.
enum Failure {
    Engine(Error),
    Io(String),
    Usage(String),
    /// The result was produced, but some check in it failed.
    Verification { result: Value, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ParseError { .. }
        | Error::UnboundParameter { .. }
        | Error::InvalidNumber(_)
        | Error::InvalidInput(_)
        | Error::DimensionMismatch(_) => 2,
        Error::PreconditionViolation(_) => 3,
        Error::UnsupportedExponentField(_) => 4,
        Error::VerificationFailure(_) => 5,
        Error::NotFuchsType(_) => 6,
        Error::SingularSymbol => 7,
        Error::DegenerateBasis(_) => 8,
        Error::BeyondTruncation { .. } => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidNumber(_) => "invalid_number",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::BeyondTruncation { .. } => "beyond_truncation",
        Error::NotFuchsType(_) => "not_fuchs_type",
        Error::SingularSymbol => "singular_symbol",
        Error::UnsupportedExponentField(_) => "unsupported_exponent_field",
        Error::PreconditionViolation(_) => "precondition_violation",
        Error::DegenerateBasis(_) => "degenerate_basis",
        Error::ParseError { .. } => "parse_error",
        Error::UnboundParameter { .. } => "unbound_parameter",
        Error::InvalidInput(_) => "invalid_input",
        Error::VerificationFailure(_) => "verification_failure",
    }
}

fn error_record(kind: &str, code: u8, message: String, e: Option<&Error>) -> Value {
    let mut err = json!({ "kind": kind, "exit_code": code, "message": message });
    match e {
        Some(Error::ParseError { line, column, .. })
        | Some(Error::UnboundParameter { line, column, .. }) => {
            err["line"] = json!(line);
            err["column"] = json!(column);
        }
        _ => {}
    }
    json!({ "schema": SCHEMA, "error": err })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn load(input: &Input) -> Result<FuchsOperator, Failure> {
    let mut bindings = BTreeMap::new();
    for p in &input.params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("parameter `{p}` is not of the form name=value")))?;
        bindings.insert(name.trim().to_string(), value.parse::<Gq>()?);
    }
    match (&input.expr, &input.operator) {
        (Some(src), _) => Ok(parse_operator(src, &bindings)?.to_fuchs()?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut doc: OperatorJson = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            doc.parameters.extend(bindings);
            Ok(doc.to_operator()?)
        }
        (None, None) => Err(Failure::Usage("one of --expr and --operator is required".into())),
    }
}

fn weight(delta: &str, mu: usize) -> Result<WeightContext, Failure> {
    Ok(WeightContext::new(delta.parse()?, mu as i64)?)
}

fn symbols(a: &FuchsOperator) -> Result<Value, Failure> {
    let s = CompleteMellinSymbol::from_operator(a);
    let terms: Vec<Value> = (0..=a.t_degree())
        .map(|j| Ok(json!({ "j": j, "order": s.mu() - j as i64, "symbol": RationalJson::from(&s.try_term(j)?) })))
        .collect::<Result<_, Error>>()?;
    let roots: Vec<Value> = leading_roots(&s, None)?
        .roots
        .iter()
        .map(|(p, m)| json!({ "point": p, "multiplicity": m }))
        .collect();
    Ok(json!({
        "operator": OperatorJson::from(a),
        "mu": s.mu(),
        "size": s.size(),
        "terms": terms,
        "leading_roots": roots,
    }))
}

fn invert(a: &FuchsOperator, k: usize) -> Result<Value, Failure> {
    let s = CompleteMellinSymbol::from_operator(a);
    let inv = invert_complete_symbol(&s, k.saturating_sub(1))?;
    let mut terms = Vec::new();
    for l in 0..k {
        let residues: Vec<Value> = residue_table(&inv, l)?
            .iter()
            .map(|(p, m)| json!({ "point": p, "residue": matrix_json(m) }))
            .collect();
        terms.push(json!({
            "l": l,
            "order": inv.mu() - l as i64,
            "symbol": RationalJson::from(&inv.try_term(l)?),
            "residues": residues,
        }));
    }
    Ok(json!({ "mu": inv.mu(), "size": inv.size(), "terms": terms }))
}

fn max_depth() -> Result<usize, Failure> {
    match std::env::var("CONE_GREEN_MAX_DEPTH") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("CONE_GREEN_MAX_DEPTH=`{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_DEPTH),
    }
}

fn basis(a: &FuchsOperator, delta: &str, depth: Option<usize>) -> Result<Value, Failure> {
    let w = weight(delta, a.mu())?;
    let depth = depth.unwrap_or(a.mu());
    let cap = max_depth()?;
    if depth > cap {
        return Err(Failure::Usage(format!(
            "depth {depth} exceeds the cap {cap} (CONE_GREEN_MAX_DEPTH)"
        )));
    }
    let s = CompleteMellinSymbol::from_operator(a);
    let b = strip_basis_with_roots(&s, &w, depth, None)?;
    Ok(serde_json::to_value(&b).expect("strip bases serialize"))
}

fn green(a: &FuchsOperator, delta: &str) -> Result<Value, Failure> {
    let w = weight(delta, a.mu())?;
    let report = verify_theorem_main(a, &w)?;
    let rendered = render_green_formula(&report);
    let result = json!({
        "text": rendered.text,
        "primal_expansion": rendered.formula.primal_expansion(),
        "adjoint_expansion": rendered.formula.adjoint_expansion(),
        "report": report,
    });
    if report.verified {
        Ok(result)
    } else {
        Err(Failure::Verification {
            result,
            message: format!("failed checks: {}", report.checks.failures().join(", ")),
        })
    }
}

fn verify(a: &FuchsOperator, suite: SuiteArg, delta: &str) -> Result<Value, Failure> {
    let w = weight(delta, a.mu())?;
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for (s, r) in run_suites(&suite.suites(), a, &w, None) {
        let r = r?;
        failed.extend(
            r.checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{s}/{}", c.name)),
        );
        reports.push(r);
    }
    let result = json!({ "passed": failed.is_empty(), "suites": reports });
    if failed.is_empty() {
        Ok(result)
    } else {
        Err(Failure::Verification {
            result,
            message: format!("failed checks: {}", failed.join(", ")),
        })
    }
}

fn run(cmd: &Command) -> Result<Value, Failure> {
    match cmd {
        Command::Symbols { input } => symbols(&load(input)?),
        Command::Invert { input, terms } => {
            let a = load(input)?;
            invert(&a, terms.unwrap_or(2 * a.mu()))
        }
        Command::Basis {
            input,
            delta,
            depth,
        } => basis(&load(input)?, delta, *depth),
        Command::Green { input, delta } => green(&load(input)?, delta),
        Command::Verify {
            input,
            suite,
            delta,
        } => verify(&load(input)?, *suite, delta),
    }
}

fn name(cmd: &Command) -> (&'static str, &Input) {
    match cmd {
        Command::Symbols { input } => ("symbols", input),
        Command::Invert { input, .. } => ("invert", input),
        Command::Basis { input, .. } => ("basis", input),
        Command::Green { input, .. } => ("green", input),
        Command::Verify { input, .. } => ("verify", input),
    }
}

fn emit(input: &Input, text: &str) -> Result<(), Failure> {
    match &input.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(kind: &str, code: u8, message: String, e: Option<&Error>) -> ExitCode {
    eprint!("{}", pretty(&error_record(kind, code, message, e)));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail("usage", 9, e.kind().to_string(), None);
        }
    };
    let (command, input) = name(&cli.command);
    let envelope = |result: Value| json!({ "schema": SCHEMA, "command": command, "result": result });
    let outcome = run(&cli.command);
    let outcome = match outcome {
        Ok(result) => emit(input, &pretty(&envelope(result))),
        Err(Failure::Verification { result, message }) => {
            if let Err(f) = emit(input, &pretty(&envelope(result))) {
                Err(f)
            } else {
                Err(Failure::Verification {
                    result: Value::Null,
                    message,
                })
            }
        }
        Err(f) => Err(f),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Engine(e)) => fail(error_kind(&e), exit_code(&e), e.to_string(), Some(&e)),
        Err(Failure::Verification { message, .. }) => fail("verification_failure", 5, message, None),
        Err(Failure::Usage(m)) => fail("usage", 9, m, None),
        Err(Failure::Io(m)) => fail("io", 9, m, None),
    }
}
