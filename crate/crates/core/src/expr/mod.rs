//! Expression language over exact rationals: recursive-descent parser,
//! canonical printer and evaluator.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := RATLIT | call | '(' expr ')'
//! call   := NAME '(' expr (',' expr)* ')'
//! RATLIT := INT ('/' INT)?
//! ```
//!
//! `INT '/' INT` is a single rational literal, so `343/2` never becomes a
//! division node.

mod eval;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::valuation::Rational;

pub use eval::{eval, eval_str, EvalContext, Value};
pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Val,
    Norm,
    Dist,
    Sqrt,
    Expand,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Val, Func::Norm, Func::Dist, Func::Sqrt, Func::Expand];

    pub fn name(self) -> &'static str {
        match self {
            Func::Val => "val",
            Func::Norm => "norm",
            Func::Dist => "dist",
            Func::Sqrt => "sqrt",
            Func::Expand => "expand",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Dist => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Parsed literals are nonnegative; negation is always a `Neg` node.
    Lit(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Parse failure at a byte offset, with the tokens that would have been
/// accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}", .expected.join(" or "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
}

impl SyntaxError {
    pub(crate) fn new(offset: usize, expected: &[&str]) -> Self {
        SyntaxError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Product,
    Unary,
}

impl Expr {
    fn prec(&self) -> Prec {
        match self {
            Expr::Add(..) | Expr::Sub(..) => Prec::Sum,
            Expr::Mul(..) | Expr::Div(..) => Prec::Product,
            _ => Prec::Unary,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min: Prec) -> fmt::Result {
        if self.prec() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical form: binary operators surrounded by single spaces, minimal
/// parentheses. Reparsing the output yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.write_operand(f, Prec::Unary)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let op = if matches!(self, Expr::Add(..)) {
                    "+"
                } else {
                    "-"
                };
                a.write_operand(f, Prec::Sum)?;
                write!(f, " {op} ")?;
                b.write_operand(f, Prec::Product)
            }
            Expr::Mul(a, b) => {
                a.write_operand(f, Prec::Product)?;
                f.write_str(" * ")?;
                b.write_operand(f, Prec::Unary)
            }
            Expr::Div(a, b) => {
                // `2 / 3` would read back as the literal 2/3
                let left = a.to_string();
                let left_needs_parens =
                    a.prec() < Prec::Product || left.ends_with(|c: char| c.is_ascii_digit());
                if left_needs_parens {
                    write!(f, "({left})")?;
                } else {
                    f.write_str(&left)?;
                }
                f.write_str(" / ")?;
                b.write_operand(f, Prec::Unary)
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}
