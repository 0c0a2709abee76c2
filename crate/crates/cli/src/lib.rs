//! Command implementations behind the `padic` binary. Every command returns
//! its full output as text so the binary and the tests share one code path.

mod format;
mod repl;

use std::io;

use num_bigint::BigUint;
use padic_core::completion::CauchyOutcome;
use padic_core::{
    adele_of, archimedean_probe, expansion_of, hensel_sqrt, idempotent_witness, is_cauchy, norm,
    product_formula, Error, ErrorCategory, EvalContext, Expr, Func, Place, Rational, SyntaxError,
    Value,
};
use thiserror::Error;

pub use format::{machine_value, rational_text};
pub use repl::run_repl;

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const SYNTAX: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const CAPABILITY: i32 = 4;
    pub const IO: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("line {line}: {source}")]
    Sequence { line: usize, source: SyntaxError },
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.category() {
                ErrorCategory::Syntax => exit::SYNTAX,
                ErrorCategory::Domain => exit::DOMAIN,
                ErrorCategory::Capability => exit::CAPABILITY,
            },
            CliError::Sequence { .. } => exit::SYNTAX,
            CliError::Io { .. } => exit::IO,
        }
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Core(Error::Syntax(e))
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Evaluation context plus output format.
#[derive(Debug, Clone)]
pub struct Session {
    pub ctx: EvalContext,
    pub machine: bool,
}

impl Session {
    pub fn new(base: BigUint, precision: usize, marker: bool, machine: bool) -> CliResult<Self> {
        let mut ctx = EvalContext::new(base, precision)?;
        ctx.marker = marker;
        Ok(Session { ctx, machine })
    }

    fn place(&self, real: bool) -> CliResult<Place> {
        if real {
            return Ok(Place::Real);
        }
        self.ctx
            .place()
            .cloned()
            .ok_or_else(|| Error::NonPrimeBase(self.ctx.base().clone()).into())
    }

    fn show(&self, value: &Value) -> String {
        if self.machine {
            machine_value(value)
        } else {
            value.render(self.ctx.marker)
        }
    }
}

/// Warning for a base that passed Miller-Rabin above the proven range.
pub fn probable_prime_note(ctx: &EvalContext) -> Option<String> {
    match ctx.place() {
        Some(Place::Finite(p)) if !p.is_certified() => Some(format!(
            "note: {p} is a probable prime (beyond the deterministic Miller-Rabin range)"
        )),
        _ => None,
    }
}

/// Reads `[-]INT[/INT]` with optional surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational, SyntaxError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let digits = |i: &mut usize| -> Option<(usize, usize)> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > start).then_some((start, *i))
    };
    let err = |offset: usize, expected: &[&str]| SyntaxError {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };

    skip_ws(&mut i);
    let negative = bytes.get(i) == Some(&b'-');
    if negative {
        i += 1;
    }
    let (s, e) = digits(&mut i).ok_or_else(|| err(i, &["integer"]))?;
    let mut numer: num_bigint::BigInt = text[s..e].parse().expect("digits");
    let mut denom = num_bigint::BigInt::from(1);
    if bytes.get(i) == Some(&b'/') {
        i += 1;
        let at = i;
        let (s, e) = digits(&mut i).ok_or_else(|| err(i, &["integer"]))?;
        denom = text[s..e].parse().expect("digits");
        if denom == num_bigint::BigInt::from(0) {
            return Err(err(at, &["nonzero denominator"]));
        }
    }
    skip_ws(&mut i);
    if i < bytes.len() {
        return Err(err(i, &["`/`", "end of input"]));
    }
    if negative {
        numer = -numer;
    }
    Ok(Rational::new(numer, denom))
}

/// Literal node for a rational of either sign.
fn literal(q: &Rational) -> Expr {
    if *q < Rational::default() {
        Expr::Neg(Box::new(Expr::Lit(-q)))
    } else {
        Expr::Lit(q.clone())
    }
}

fn call(func: Func, args: &[&Rational]) -> Expr {
    Expr::Call(func, args.iter().map(|q| literal(q)).collect())
}

pub fn eval_command(session: &Session, text: &str) -> CliResult<String> {
    let value = padic_core::eval_str(text, &session.ctx)?;
    Ok(session.show(&value))
}

pub fn expand_command(session: &Session, q: &Rational) -> CliResult<String> {
    let e = expansion_of(q, session.ctx.base())?;
    Ok(session.show(&Value::Expansion(e)))
}

pub fn val_command(session: &Session, q: &Rational) -> CliResult<String> {
    let value = padic_core::eval(&call(Func::Val, &[q]), &session.ctx)?;
    Ok(session.show(&value))
}

pub fn norm_command(session: &Session, q: &Rational, real: bool) -> CliResult<String> {
    if real {
        return Ok(session.show(&Value::Norm(norm(q, &Place::Real))));
    }
    let value = padic_core::eval(&call(Func::Norm, &[q]), &session.ctx)?;
    Ok(session.show(&value))
}

pub fn dist_command(
    session: &Session,
    a: &Rational,
    b: &Rational,
    real: bool,
) -> CliResult<String> {
    if real {
        return Ok(session.show(&Value::Norm(norm(&(a - b), &Place::Real))));
    }
    let value = padic_core::eval(&call(Func::Dist, &[a, b]), &session.ctx)?;
    Ok(session.show(&value))
}

pub fn sqrt_command(session: &Session, q: &Rational) -> CliResult<String> {
    let root = hensel_sqrt(q, session.ctx.base(), session.ctx.precision())?;
    Ok(session.show(&Value::Number(root)))
}

pub fn idempotent_command(session: &Session) -> CliResult<String> {
    let (e, f) = idempotent_witness(session.ctx.base(), session.ctx.precision())?;
    if session.machine {
        return Ok(format!(
            "role=e {}\nrole=complement {}",
            machine_value(&Value::Number(e)),
            machine_value(&Value::Number(f))
        ));
    }
    let marker = session.ctx.marker;
    Ok(format!(
        "e     = {}\n1 - e = {}",
        e.render(marker),
        f.render(marker)
    ))
}

pub fn probe_command(session: &Session, q: &Rational, n_max: u64, real: bool) -> CliResult<String> {
    let place = session.place(real)?;
    let norms = archimedean_probe(q, &place, n_max)?;
    let lines: Vec<String> = norms
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if session.machine {
                format!(
                    "kind=norm place={place} n={} {}",
                    i + 1,
                    format::norm_fields(v)
                )
            } else {
                format!("|{} * x|_{place} = {v}", i + 1)
            }
        })
        .collect();
    Ok(lines.join("\n"))
}

pub fn product_formula_command(
    session: &Session,
    q: &Rational,
    expansions: bool,
) -> CliResult<String> {
    let product = product_formula(q)?;
    let adele = adele_of(q, session.ctx.precision(), expansions)?;
    Ok(format::product_table(
        &adele,
        &product,
        session.ctx.marker,
        session.machine,
    ))
}

/// One rational per line; blank lines and `#` comments are skipped.
pub fn parse_sequence(text: &str) -> CliResult<Vec<Rational>> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let q = parse_rational(content).map_err(|source| CliError::Sequence {
            line: i + 1,
            source,
        })?;
        terms.push(q);
    }
    Ok(terms)
}

pub fn cauchy_command(
    session: &Session,
    terms: &[Rational],
    depth: Option<usize>,
    k_max: u32,
    real: bool,
) -> CliResult<String> {
    let place = session.place(real)?;
    let depth = depth.unwrap_or(terms.len());
    let report = is_cauchy(terms, &place, depth, k_max)?;
    let mut out = Vec::new();
    if session.machine {
        out.push(format!(
            "kind=cauchy place={place} depth={}",
            report.depth_checked
        ));
    } else {
        out.push(format!(
            "place {place}, first {} terms (says nothing about later terms)",
            report.depth_checked
        ));
    }
    for check in &report.schedule {
        let tol = rational_text(&check.tolerance.to_rational());
        out.push(match (&check.outcome, session.machine) {
            (CauchyOutcome::Certified { start }, false) => {
                format!(
                    "k={:<3} tolerance {tol:<12} all pairs from index {start} are closer",
                    check.k
                )
            }
            (CauchyOutcome::Failed { m, n, distance }, false) => format!(
                "k={:<3} tolerance {tol:<12} not certified: d(x_{m}, x_{n}) = {distance}",
                check.k
            ),
            (CauchyOutcome::Certified { start }, true) => format!(
                "kind=tolerance k={} {} status=certified m={start}",
                check.k,
                format::fraction_fields("tolerance", &check.tolerance.to_rational())
            ),
            (CauchyOutcome::Failed { m, n, distance }, true) => format!(
                "kind=tolerance k={} {} status=failed m={m} n={n} {}",
                check.k,
                format::fraction_fields("tolerance", &check.tolerance.to_rational()),
                format::fraction_fields("distance", &distance.to_rational())
            ),
        });
    }
    Ok(out.join("\n"))
}

/// Human-readable diagnostic; syntax errors point at the offending byte.
pub fn describe_error(err: &CliError, input: Option<&str>) -> String {
    let mut text = format!("error: {err}");
    let syntax = match err {
        CliError::Core(Error::Syntax(s)) => Some(s),
        _ => None,
    };
    if let (Some(s), Some(input)) = (syntax, input) {
        let column = input[..s.offset.min(input.len())].chars().count();
        text.push_str(&format!("\n  {input}\n  {}^", " ".repeat(column)));
    }
    text
}
