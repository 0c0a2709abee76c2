//! Truncated digit series `Σ a_i b^i + O(b^M)` over a prime or composite base.
//!
//! A nonzero value is stored as `b^v · u` where the mantissa `u` is the
//! residue of the unit part modulo `b^N`; digits are materialized from `u`
//! on demand. Absolute precision `M = v + N` follows the usual big-oh rules:
//! sums keep the smaller absolute precision, products the smaller relative
//! precision.

mod expansion;
pub mod schoolbook;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::valuation::{NormValue, Rational, Valuation};

pub use expansion::{expansion_of, rational_of, RationalExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    base: BigUint,
    kind: PadicKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PadicKind {
    /// The number 0, valuation +∞.
    ExactZero,
    /// `b^valuation · mantissa + O(b^(valuation + precision))` with
    /// `0 < mantissa < b^precision` and `b ∤ mantissa`.
    Approx {
        valuation: i64,
        mantissa: BigUint,
        precision: usize,
    },
    /// Congruent to 0 modulo `b^bound`; true valuation unknown.
    InexactZero { bound: i64 },
}

fn check_base(base: &BigUint) -> Result<()> {
    if *base < BigUint::from(2u32) {
        return Err(Error::InvalidBase(base.clone()));
    }
    Ok(())
}

fn precision_to_i64(n: usize) -> i64 {
    i64::try_from(n).expect("precision fits i64")
}

pub(crate) fn modulus(base: &BigUint, exponent: usize) -> BigUint {
    arith::big_pow(base, exponent as u64)
}

/// `q = b^valuation · numer / denom` with `gcd(denom, b) = 1` and `b ∤ numer`.
#[derive(Debug, Clone)]
pub(crate) struct Normalized {
    pub valuation: i64,
    pub numer: BigInt,
    pub denom: BigUint,
}

/// Shifts every base-dividing factor out of `q`. For a composite base the
/// denominator is cleared one `gcd` at a time, multiplying the numerator by
/// the complementary cofactor.
pub(crate) fn normalize(q: &Rational, base: &BigUint) -> Normalized {
    debug_assert!(!q.is_zero());
    let mut valuation = 0i64;
    let sign = q.numer().sign();
    let mut numer = q.numer().magnitude().clone();
    let mut denom = q.denom().magnitude().clone();
    loop {
        let g = denom.gcd(base);
        if g.is_one() {
            break;
        }
        denom /= &g;
        numer *= base / &g;
        valuation -= 1;
    }
    valuation += i64::try_from(arith::strip_factor(&mut numer, base)).expect("fits");
    Normalized {
        valuation,
        numer: BigInt::from_biguint(sign, numer),
        denom,
    }
}

impl PadicNumber {
    pub fn zero(base: BigUint) -> Result<Self> {
        check_base(&base)?;
        Ok(PadicNumber {
            base,
            kind: PadicKind::ExactZero,
        })
    }

    /// The digit expansion of `q` to `precision` significant digits.
    pub fn from_rational(q: &Rational, base: &BigUint, precision: usize) -> Result<Self> {
        check_base(base)?;
        if precision == 0 {
            return Err(Error::InvalidPrecision);
        }
        if q.is_zero() {
            return Ok(PadicNumber {
                base: base.clone(),
                kind: PadicKind::ExactZero,
            });
        }
        let norm = normalize(q, base);
        let m = BigInt::from(modulus(base, precision));
        let inv = arith::mod_inverse(&BigInt::from(norm.denom), &m).expect("denominator is a unit");
        let mantissa = (norm.numer * inv).mod_floor(&m);
        Ok(PadicNumber {
            base: base.clone(),
            kind: PadicKind::Approx {
                valuation: norm.valuation,
                mantissa: mantissa.to_biguint().expect("nonnegative"),
                precision,
            },
        })
    }

    pub fn from_integer(n: i64, base: &BigUint, precision: usize) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(n.into()), base, precision)
    }

    /// The class of `value` modulo `b^modulus_exponent`.
    pub fn from_residue(base: &BigUint, value: &BigInt, modulus_exponent: i64) -> Result<Self> {
        check_base(base)?;
        Ok(Self::reduce(
            base.clone(),
            0,
            value.clone(),
            modulus_exponent,
        ))
    }

    /// Canonical form of `b^valuation · value + O(b^abs)`.
    fn reduce(base: BigUint, valuation: i64, value: BigInt, abs: i64) -> Self {
        if abs <= valuation {
            return PadicNumber {
                base,
                kind: PadicKind::InexactZero { bound: abs },
            };
        }
        let width = usize::try_from(abs - valuation).expect("width fits usize");
        let m = BigInt::from(modulus(&base, width));
        let mut u = value.mod_floor(&m).to_biguint().expect("nonnegative");
        if u.is_zero() {
            return PadicNumber {
                base,
                kind: PadicKind::InexactZero { bound: abs },
            };
        }
        let shift = i64::try_from(arith::strip_factor(&mut u, &base)).expect("fits");
        let valuation = valuation + shift;
        let precision = usize::try_from(abs - valuation).expect("positive");
        PadicNumber {
            base,
            kind: PadicKind::Approx {
                valuation,
                mantissa: u,
                precision,
            },
        }
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn kind(&self) -> &PadicKind {
        &self.kind
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.kind, PadicKind::ExactZero)
    }

    /// True for exact zero and for values indistinguishable from zero.
    pub fn is_zero(&self) -> bool {
        !matches!(self.kind, PadicKind::Approx { .. })
    }

    /// Significant digits, `None` for either zero.
    pub fn precision(&self) -> Option<usize> {
        match self.kind {
            PadicKind::Approx { precision, .. } => Some(precision),
            _ => None,
        }
    }

    /// Exponent `M` of the `O(b^M)` term; `None` for an exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.kind {
            PadicKind::ExactZero => None,
            PadicKind::Approx {
                valuation,
                precision,
                ..
            } => Some(valuation + precision_to_i64(precision)),
            PadicKind::InexactZero { bound } => Some(bound),
        }
    }

    /// Little-endian digits starting at the valuation: `digits()[i]` is the
    /// coefficient of `b^(v+i)`. Empty for zeros.
    pub fn digits(&self) -> Vec<BigUint> {
        match &self.kind {
            PadicKind::Approx {
                mantissa,
                precision,
                ..
            } => {
                let mut out = Vec::with_capacity(*precision);
                let mut rest = mantissa.clone();
                for _ in 0..*precision {
                    let (q, r) = rest.div_rem(&self.base);
                    out.push(r);
                    rest = q;
                }
                out
            }
            _ => Vec::new(),
        }
    }

    fn check_same_base(&self, other: &PadicNumber) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base.clone(), other.base.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_base(other)?;
        let (abs_x, abs_y) = match (self.absolute_precision(), other.absolute_precision()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let abs = abs_x.min(abs_y);
        let terms: Vec<(i64, &BigUint)> = [self, other]
            .into_iter()
            .filter_map(|x| match &x.kind {
                PadicKind::Approx {
                    valuation,
                    mantissa,
                    ..
                } => Some((*valuation, mantissa)),
                _ => None,
            })
            .collect();
        let Some(low) = terms.iter().map(|(v, _)| *v).min() else {
            return Ok(PadicNumber {
                base: self.base.clone(),
                kind: PadicKind::InexactZero { bound: abs },
            });
        };
        if low >= abs {
            return Ok(PadicNumber {
                base: self.base.clone(),
                kind: PadicKind::InexactZero { bound: abs },
            });
        }
        let mut sum = BigInt::zero();
        for (v, u) in terms {
            let shift = usize::try_from(v - low).expect("nonnegative");
            // Terms entirely above the result precision only cost a big power.
            if v < abs {
                sum += BigInt::from(u * modulus(&self.base, shift));
            }
        }
        Ok(Self::reduce(self.base.clone(), low, sum, abs))
    }

    pub fn negate(&self) -> PadicNumber {
        let kind = match &self.kind {
            PadicKind::Approx {
                valuation,
                mantissa,
                precision,
            } => PadicKind::Approx {
                valuation: *valuation,
                mantissa: modulus(&self.base, *precision) - mantissa,
                precision: *precision,
            },
            other => other.clone(),
        };
        PadicNumber {
            base: self.base.clone(),
            kind,
        }
    }

    pub fn sub(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_base(other)?;
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_base(other)?;
        let base = self.base.clone();
        match (&self.kind, &other.kind) {
            (PadicKind::ExactZero, _) | (_, PadicKind::ExactZero) => Ok(PadicNumber {
                base,
                kind: PadicKind::ExactZero,
            }),
            (PadicKind::InexactZero { bound: a }, PadicKind::InexactZero { bound: b }) => {
                Ok(PadicNumber {
                    base,
                    kind: PadicKind::InexactZero { bound: a + b },
                })
            }
            (PadicKind::InexactZero { bound }, PadicKind::Approx { valuation, .. })
            | (PadicKind::Approx { valuation, .. }, PadicKind::InexactZero { bound }) => {
                Ok(PadicNumber {
                    base,
                    kind: PadicKind::InexactZero {
                        bound: bound + valuation,
                    },
                })
            }
            (
                PadicKind::Approx {
                    valuation: vx,
                    mantissa: ux,
                    precision: nx,
                },
                PadicKind::Approx {
                    valuation: vy,
                    mantissa: uy,
                    precision: ny,
                },
            ) => {
                let n = (*nx).min(*ny);
                let v = vx + vy;
                let product = BigInt::from(ux * uy);
                Ok(Self::reduce(base, v, product, v + precision_to_i64(n)))
            }
        }
    }

    pub fn invert(&self) -> Result<PadicNumber> {
        let PadicKind::Approx {
            valuation,
            mantissa,
            precision,
        } = &self.kind
        else {
            return Err(Error::ZeroOperand);
        };
        let m = BigInt::from(modulus(&self.base, *precision));
        let inv =
            arith::mod_inverse(&BigInt::from(mantissa.clone()), &m).ok_or(Error::NotInvertible)?;
        Ok(PadicNumber {
            base: self.base.clone(),
            kind: PadicKind::Approx {
                valuation: -valuation,
                mantissa: inv.to_biguint().expect("nonnegative"),
                precision: *precision,
            },
        })
    }

    pub fn div(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_base(other)?;
        self.mul(&other.invert()?)
    }

    /// Index of the first nonzero digit. Fails for an inexact zero, whose
    /// valuation is only bounded below.
    pub fn digit_valuation(&self) -> Result<Valuation> {
        match self.kind {
            PadicKind::ExactZero => Ok(Valuation::Infinite),
            PadicKind::Approx { valuation, .. } => Ok(Valuation::Finite(valuation)),
            PadicKind::InexactZero { bound } => Err(Error::PrecisionLoss {
                base: self.base.clone(),
                bound,
            }),
        }
    }

    /// `b^(-v)`, the size read off the digit series.
    pub fn digit_norm(&self) -> Result<NormValue> {
        Ok(match self.digit_valuation()? {
            Valuation::Infinite => NormValue::Zero,
            Valuation::Finite(v) => NormValue::power(self.base.clone(), -v),
        })
    }

    /// Digits from most to least significant, without the `...` prefix,
    /// radix point or filler zeros.
    pub fn digit_string(&self) -> String {
        let mut digits = self.digits();
        digits.reverse();
        join_digits(&self.base, &digits)
    }

    /// Text form: `...d_k…d_0` (zeros filled up to the valuation) or
    /// `...d…d.d_{-1}…d_v` for negative valuations. With `marker` the
    /// precision is appended as ` + O(b^M)`.
    ///
    /// When every stored digit lies below `b^-1` the gap to the radix point
    /// is unknown, so the marker is always shown.
    pub fn render(&self, marker: bool) -> String {
        let mut out = String::new();
        match &self.kind {
            PadicKind::ExactZero => return "0".to_string(),
            PadicKind::InexactZero { bound } => {
                return format!("0 + O({}^{})", self.base, bound);
            }
            PadicKind::Approx {
                valuation,
                precision,
                ..
            } => {
                let v = *valuation;
                let n = precision_to_i64(*precision);
                let mut digits = self.digits();
                digits.reverse();
                out.push_str("...");
                let sep = if digit_chars(&self.base) { "" } else { " " };
                if v >= 0 {
                    out.push_str(&join_digits(&self.base, &digits));
                    for _ in 0..v {
                        out.push_str(sep);
                        out.push('0');
                    }
                } else {
                    let int_len = usize::try_from((v + n).max(0)).expect("fits");
                    let (int_part, frac_part) = digits.split_at(int_len);
                    out.push_str(&join_digits(&self.base, int_part));
                    out.push_str(sep);
                    out.push('.');
                    out.push_str(sep);
                    out.push_str(&join_digits(&self.base, frac_part));
                }
                if marker || v + n < 0 {
                    out.push_str(&format!(" + O({}^{})", self.base, v + n));
                }
            }
        }
        out
    }
}

impl std::ops::Neg for &PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        self.negate()
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Bases up to 36 print one character per digit; larger bases print each
/// digit in decimal, space separated.
pub(crate) fn digit_chars(base: &BigUint) -> bool {
    *base <= BigUint::from(36u32)
}

pub(crate) fn join_digits(base: &BigUint, digits: &[BigUint]) -> String {
    if digit_chars(base) {
        digits
            .iter()
            .map(|d| {
                let d = u32::try_from(d).expect("digit below 36");
                char::from_digit(d, 36).expect("digit below 36")
            })
            .collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `v_b(q)`: the exponent of the first nonzero digit of `q` in base `b`
/// (the usual valuation when `b` is prime).
pub fn rational_digit_valuation(q: &Rational, base: &BigUint) -> Result<Valuation> {
    check_base(base)?;
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(normalize(q, base).valuation))
}

/// `|a - b|` measured by digit agreement in base `b`: `b^(-v)` where `v` is
/// the first position at which the expansions differ. For composite bases
/// this reproduces the decadic distances `|9 - (-1)| = 10^-1`.
pub fn digit_distance(a: &Rational, b: &Rational, base: &BigUint) -> Result<NormValue> {
    Ok(match rational_digit_valuation(&(a - b), base)? {
        Valuation::Infinite => NormValue::Zero,
        Valuation::Finite(v) => NormValue::power(base.clone(), -v),
    })
}

impl PadicNumber {
    /// `(valuation, mantissa, precision)` of a nonzero value.
    pub(crate) fn parts(&self) -> Option<(i64, &BigUint, usize)> {
        match &self.kind {
            PadicKind::Approx {
                valuation,
                mantissa,
                precision,
            } => Some((*valuation, mantissa, *precision)),
            _ => None,
        }
    }
}
