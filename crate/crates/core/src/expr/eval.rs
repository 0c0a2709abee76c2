use std::fmt;

use num_bigint::BigUint;

use super::{parse, Expr, Func};
use crate::completion::hensel_sqrt;
use crate::error::{Error, Result};
use crate::number::{self, expansion_of, PadicNumber, RationalExpansion};
use crate::valuation::{self, NormValue, Place, Prime, Rational, Valuation};

/// Base, precision and output options for evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalContext {
    base: BigUint,
    precision: usize,
    /// `Some` when the base is prime; norms then come from the valuation
    /// module rather than from digit agreement.
    place: Option<Place>,
    pub marker: bool,
}

impl EvalContext {
    pub fn new(base: BigUint, precision: usize) -> Result<Self> {
        if base < BigUint::from(2u32) {
            return Err(Error::InvalidBase(base));
        }
        if precision == 0 {
            return Err(Error::InvalidPrecision);
        }
        let place = Prime::new(base.clone()).ok().map(Place::Finite);
        Ok(EvalContext {
            base,
            precision,
            place,
            marker: false,
        })
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// The finite place of a prime base; `None` in composite-base mode.
    pub fn place(&self) -> Option<&Place> {
        self.place.as_ref()
    }

    pub fn set_base(&mut self, base: BigUint) -> Result<()> {
        let marker = self.marker;
        *self = EvalContext::new(base, self.precision)?;
        self.marker = marker;
        Ok(())
    }

    pub fn set_precision(&mut self, precision: usize) -> Result<()> {
        if precision == 0 {
            return Err(Error::InvalidPrecision);
        }
        self.precision = precision;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Number(PadicNumber),
    Valuation(Valuation),
    Norm(NormValue),
    Expansion(RationalExpansion),
}

impl Value {
    pub fn render(&self, marker: bool) -> String {
        match self {
            Value::Number(x) => x.render(marker),
            Value::Valuation(v) => v.to_string(),
            Value::Norm(n) => n.to_string(),
            Value::Expansion(e) => e.to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// A subexpression's digit series, plus its exact value when every leaf
/// below it was an exact rational.
struct Term {
    exact: Option<Rational>,
    number: PadicNumber,
}

pub fn eval_str(text: &str, ctx: &EvalContext) -> Result<Value> {
    eval(&parse(text)?, ctx)
}

pub fn eval(expr: &Expr, ctx: &EvalContext) -> Result<Value> {
    match expr {
        Expr::Call(Func::Val, args) => {
            let t = term(&args[0], ctx)?;
            Ok(Value::Valuation(match (&t.exact, &ctx.place) {
                (Some(q), Some(Place::Finite(p))) => p.valuation(q),
                (Some(q), _) => number::rational_digit_valuation(q, &ctx.base)?,
                (None, _) => t.number.digit_valuation()?,
            }))
        }
        Expr::Call(Func::Norm, args) => {
            let t = term(&args[0], ctx)?;
            Ok(Value::Norm(exact_or_digit_norm(&t, ctx)?))
        }
        Expr::Call(Func::Dist, args) => {
            let a = term(&args[0], ctx)?;
            let b = term(&args[1], ctx)?;
            let diff = Term {
                exact: a.exact.zip(b.exact).map(|(x, y)| x - y),
                number: a.number.sub(&b.number)?,
            };
            Ok(Value::Norm(exact_or_digit_norm(&diff, ctx)?))
        }
        Expr::Call(Func::Expand, args) => {
            let t = term(&args[0], ctx)?;
            let q = t.exact.ok_or(Error::InexactOperand("expand"))?;
            Ok(Value::Expansion(expansion_of(&q, &ctx.base)?))
        }
        _ => Ok(Value::Number(term(expr, ctx)?.number)),
    }
}

fn exact_or_digit_norm(t: &Term, ctx: &EvalContext) -> Result<NormValue> {
    match (&t.exact, &ctx.place) {
        (Some(q), Some(place)) => Ok(valuation::norm(q, place)),
        (Some(q), None) => number::digit_distance(q, &Rational::default(), &ctx.base),
        (None, _) => t.number.digit_norm(),
    }
}

fn term(expr: &Expr, ctx: &EvalContext) -> Result<Term> {
    let binary = |a: &Expr,
                  b: &Expr,
                  digits: fn(&PadicNumber, &PadicNumber) -> Result<PadicNumber>,
                  exact: fn(Rational, Rational) -> Rational|
     -> Result<Term> {
        let x = term(a, ctx)?;
        let y = term(b, ctx)?;
        Ok(Term {
            number: digits(&x.number, &y.number)?,
            exact: x.exact.zip(y.exact).map(|(p, q)| exact(p, q)),
        })
    };
    match expr {
        Expr::Lit(q) => Ok(Term {
            number: PadicNumber::from_rational(q, &ctx.base, ctx.precision)?,
            exact: Some(q.clone()),
        }),
        Expr::Neg(x) => {
            let t = term(x, ctx)?;
            Ok(Term {
                number: t.number.negate(),
                exact: t.exact.map(|q| -q),
            })
        }
        Expr::Add(a, b) => binary(a, b, PadicNumber::add, |p, q| p + q),
        Expr::Sub(a, b) => binary(a, b, PadicNumber::sub, |p, q| p - q),
        Expr::Mul(a, b) => binary(a, b, PadicNumber::mul, |p, q| p * q),
        // a successful digit division implies a nonzero exact divisor
        Expr::Div(a, b) => binary(a, b, PadicNumber::div, |p, q| p / q),
        Expr::Call(Func::Sqrt, args) => {
            let t = term(&args[0], ctx)?;
            let q = t.exact.ok_or(Error::InexactOperand("sqrt"))?;
            if ctx.place.is_none() {
                return Err(Error::NonPrimeBase(ctx.base.clone()));
            }
            Ok(Term {
                number: hensel_sqrt(&q, &ctx.base, ctx.precision)?,
                exact: None,
            })
        }
        Expr::Call(func, _) => Err(Error::NotANumber(func.name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(base: u32, precision: usize) -> EvalContext {
        EvalContext::new(base.into(), precision).unwrap()
    }

    fn show(text: &str, base: u32, precision: usize) -> String {
        eval_str(text, &ctx(base, precision)).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(show("1/3", 10, 4), "...6667");
        assert_eq!(show("norm(12)", 2, 12), "1/4");
        assert_eq!(show("sqrt(2)", 7, 3), "...213");
        assert_eq!(show("-58", 10, 6), "...999942");
        assert_eq!(show("val(343/2)", 7, 12), "3");
    }

    #[test]
    fn arithmetic_goes_through_the_digit_series() {
        assert_eq!(show("111123 + 7", 10, 6), "...111130");
        assert_eq!(show("111123 * 7", 10, 6), "...777861");
        assert_eq!(show("1 / 3 * 3", 10, 4), "...0001");
        assert_eq!(show("-58 + 58", 10, 6), "0 + O(10^6)");
        assert_eq!(show("0", 10, 6), "0");
    }

    #[test]
    fn valuations_and_norms() {
        assert_eq!(show("val(0)", 5, 4), "inf");
        assert_eq!(show("val(5/9)", 3, 4), "-2");
        assert_eq!(show("dist(9, -1)", 2, 4), "1/2");
        assert_eq!(show("dist(99, -1)", 5, 4), "1/25");
        // composite base: digit agreement
        assert_eq!(show("dist(9, -1)", 10, 4), "1/10");
        assert_eq!(show("dist(99, -1)", 10, 4), "1/100");
        assert_eq!(show("val(1/50)", 10, 4), "-2");
        // exact route sees the true valuation; digits alone cannot
        assert_eq!(show("val(3 - 3)", 5, 4), "inf");
        assert_eq!(show("norm(7)", 5, 4), "1");
        assert_eq!(show("norm(sqrt(4/25))", 5, 4), "5");
        assert_eq!(
            eval_str("val(sqrt(4) - sqrt(4))", &ctx(5, 4)),
            Err(Error::PrecisionLoss {
                base: 5u32.into(),
                bound: 4
            })
        );
    }

    #[test]
    fn expansions() {
        assert_eq!(show("expand(1/3)", 10, 4), "(6)7");
        assert_eq!(show("expand(-1)", 10, 4), "(9)");
        assert_eq!(show("expand(1/2 + 1/4)", 10, 4), "(0).75");
        assert_eq!(
            eval_str("expand(sqrt(2))", &ctx(7, 4)),
            Err(Error::InexactOperand("expand"))
        );
    }

    #[test]
    fn errors() {
        let c10 = ctx(10, 6);
        assert!(matches!(
            eval_str("sqrt(4)", &c10),
            Err(Error::NonPrimeBase(_))
        ));
        assert_eq!(eval_str("1/(3-3)", &c10), Err(Error::ZeroOperand));
        assert_eq!(eval_str("1/(2+3)", &c10), Err(Error::NotInvertible));
        assert_eq!(eval_str("val(2) + 1", &c10), Err(Error::NotANumber("val")));
        assert!(matches!(eval_str("1 +", &c10), Err(Error::Syntax(_))));
        assert!(matches!(
            eval_str("sqrt(3)", &ctx(5, 4)),
            Err(Error::NoSquareRoot(_))
        ));
        assert!(EvalContext::new(1u32.into(), 3).is_err());
        assert!(EvalContext::new(10u32.into(), 0).is_err());
    }
}
