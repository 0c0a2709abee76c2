//! The p-adic valuation on ℤ and ℚ, the norms attached to each place of ℚ,
//! and the induced metric. Everything here is exact: a norm is a power of
//! `p` stored as `(p, exponent)`, never a float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Primality};
use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Result of `v_p`: a finite exponent, or `Infinite` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A prime that has passed a primality check.
///
/// Primes below ~3.3·10²⁴ are proven; larger ones are probable primes and
/// report `is_certified() == false` so callers can flag them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime {
    value: BigUint,
    certified: bool,
}

impl Prime {
    pub fn new(value: BigUint) -> Result<Self> {
        match arith::primality(&value) {
            Primality::Composite => Err(Error::NonPrimeBase(value)),
            Primality::Prime => Ok(Prime {
                value,
                certified: true,
            }),
            Primality::ProbablePrime => Ok(Prime {
                value,
                certified: false,
            }),
        }
    }

    pub fn from_u64(value: u64) -> Result<Self> {
        Self::new(BigUint::from(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `v_p(n)` by repeated exact division.
    pub fn valuation_int(&self, n: &BigInt) -> Valuation {
        if n.is_zero() {
            return Valuation::Infinite;
        }
        let mut m = n.magnitude().clone();
        let e = arith::strip_factor(&mut m, &self.value);
        Valuation::Finite(i64::try_from(e).expect("valuation fits i64"))
    }

    /// `v_p(a/b) = v_p(a) - v_p(b)`.
    pub fn valuation(&self, q: &Rational) -> Valuation {
        if q.is_zero() {
            return Valuation::Infinite;
        }
        match (self.valuation_int(q.numer()), self.valuation_int(q.denom())) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => unreachable!("nonzero numerator and denominator"),
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// A place of ℚ: the real absolute value or a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::from_u64(p).map(Place::Finite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Finite(p) => p.fmt(f),
        }
    }
}

/// Exact value of a norm.
///
/// Equality and ordering compare the denoted nonnegative rationals, so
/// `Power(2, 0)` equals `RealAbs(1)`.
#[derive(Debug, Clone)]
pub enum NormValue {
    Zero,
    /// `base^exponent`.
    Power {
        base: BigUint,
        exponent: i64,
    },
    /// `|α|` at the real place; always nonnegative.
    RealAbs(Rational),
}

impl NormValue {
    pub fn power(base: impl Into<BigUint>, exponent: i64) -> Self {
        NormValue::Power {
            base: base.into(),
            exponent,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            NormValue::Zero => true,
            NormValue::Power { .. } => false,
            NormValue::RealAbs(r) => r.is_zero(),
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            NormValue::Zero => Rational::zero(),
            NormValue::Power { base, exponent } => {
                let magnitude = BigInt::from(arith::big_pow(base, exponent.unsigned_abs()));
                if *exponent >= 0 {
                    Rational::from_integer(magnitude)
                } else {
                    Rational::new(BigInt::one(), magnitude)
                }
            }
            NormValue::RealAbs(r) => r.clone(),
        }
    }

    /// Product of two norms. Powers of the same base multiply by adding
    /// exponents; any other combination falls back to the exact rational.
    pub fn mul(&self, other: &NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Zero, _) | (_, NormValue::Zero) => NormValue::Zero,
            (
                NormValue::Power {
                    base: a,
                    exponent: x,
                },
                NormValue::Power {
                    base: b,
                    exponent: y,
                },
            ) if a == b => NormValue::Power {
                base: a.clone(),
                exponent: x + y,
            },
            _ => {
                let r = self.to_rational() * other.to_rational();
                if r.is_zero() {
                    NormValue::Zero
                } else {
                    NormValue::RealAbs(r)
                }
            }
        }
    }
}

impl PartialEq for NormValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for NormValue {}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (
                NormValue::Power {
                    base: a,
                    exponent: x,
                },
                NormValue::Power {
                    base: b,
                    exponent: y,
                },
            ) if a == b => x.cmp(y),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_rational();
        if r.is_integer() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}

/// `v_p(n)` for an integer; fails if `p` is not prime.
pub fn valuation_int(n: &BigInt, p: &BigUint) -> Result<Valuation> {
    Ok(Prime::new(p.clone())?.valuation_int(n))
}

/// `v_p(q)` for a rational; fails if `p` is not prime.
pub fn valuation_rat(q: &Rational, p: &BigUint) -> Result<Valuation> {
    Ok(Prime::new(p.clone())?.valuation(q))
}

pub fn norm(q: &Rational, place: &Place) -> NormValue {
    if q.is_zero() {
        return NormValue::Zero;
    }
    match place {
        Place::Real => NormValue::RealAbs(q.abs()),
        Place::Finite(p) => {
            let v = p.valuation(q).finite().expect("nonzero");
            NormValue::Power {
                base: p.value().clone(),
                exponent: -v,
            }
        }
    }
}

pub fn distance(a: &Rational, b: &Rational, place: &Place) -> NormValue {
    norm(&(a - b), place)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ball {
    Open,
    Closed,
}

/// Whether `x` lies in the ball of the given radius around `center`.
pub fn ball_contains(
    center: &Rational,
    radius: &NormValue,
    x: &Rational,
    place: &Place,
    ball: Ball,
) -> bool {
    let d = distance(center, x, place);
    match ball {
        Ball::Open => d < *radius,
        Ball::Closed => d <= *radius,
    }
}
