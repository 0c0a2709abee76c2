//! Exact p-adic arithmetic over ℚ.
//!
//! - [`valuation`]: `v_p`, the norms at every place of ℚ and the induced metric.
//! - [`number`]: truncated digit series in any base `b >= 2`, with tracked
//!   precision, and exact periodic expansions of rationals.
//! - [`completion`]: Cauchy analysis, Hensel square roots, idempotents in
//!   composite bases, and the non-Archimedean probe.
//! - [`adeles`]: diagonal adele vectors and the product formula.
//! - [`expr`]: a small expression language evaluated over the above.
//!
//! No floating point is used anywhere; every norm is an exact power or
//! rational.

pub mod adeles;
pub mod arith;
pub mod completion;
mod error;
pub mod expr;
pub mod number;
pub mod valuation;

pub use adeles::{adele_add, adele_mul, adele_of, product_formula, AdeleVector};
pub use completion::{
    archimedean_probe, hensel_sqrt, idempotent_witness, is_cauchy, CauchyOutcome, CauchyReport,
};
pub use error::{Error, ErrorCategory, Result};
pub use expr::{eval, eval_str, parse, EvalContext, Expr, Func, SyntaxError, Value};
pub use number::{expansion_of, rational_of, PadicKind, PadicNumber, RationalExpansion};
pub use valuation::{
    ball_contains, distance, norm, valuation_int, valuation_rat, Ball, NormValue, Place, Prime,
    Rational, Valuation,
};

pub use num_bigint::{BigInt, BigUint};
