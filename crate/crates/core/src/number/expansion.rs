use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{check_base, digit_chars, join_digits, normalize};
use crate::arith;
use crate::error::Result;
use crate::valuation::Rational;

/// Eventually periodic digit stream of a rational: `preperiod` followed by
/// `period` repeated forever, the first digit sitting at `b^valuation`.
/// Both blocks are little-endian and minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalExpansion {
    pub base: BigUint,
    pub valuation: i64,
    pub preperiod: Vec<BigUint>,
    pub period: Vec<BigUint>,
}

impl RationalExpansion {
    /// Digit of `b^(valuation + i)`.
    pub fn digit(&self, i: usize) -> &BigUint {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The first `n` digits of the stream.
    pub fn digits(&self, n: usize) -> Vec<BigUint> {
        (0..n).map(|i| self.digit(i).clone()).collect()
    }
}

/// Renders as `(period)preperiod` most significant first, with a radix point
/// for negative valuations: `1/3` in base 10 is `(6)7`, `-1` is `(9)`.
impl fmt::Display for RationalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pre = self.preperiod.clone();
        let mut per = self.period.clone();
        let frac_len = usize::try_from((-self.valuation).max(0)).expect("fits");
        while pre.len() < frac_len {
            pre.push(per[0].clone());
            per.rotate_left(1);
        }
        per.reverse();
        pre.reverse();
        let (int_part, frac_part) = pre.split_at(pre.len() - frac_len);
        let sep = if digit_chars(&self.base) { "" } else { " " };
        write!(f, "({})", join_digits(&self.base, &per))?;
        if !int_part.is_empty() {
            write!(f, "{sep}{}", join_digits(&self.base, int_part))?;
        }
        for _ in 0..self.valuation.max(0) {
            write!(f, "{sep}0")?;
        }
        if frac_len > 0 {
            write!(f, "{sep}.{sep}{}", join_digits(&self.base, frac_part))?;
        }
        Ok(())
    }
}

/// Exact periodic expansion of `q` by digit-at-a-time long division.
///
/// With `q = b^v · n/d`, `gcd(d, b) = 1`, each step emits the digit `a` with
/// `d·a ≡ n (mod b)` and continues with `(n - a·d)/b`. The numerators stay
/// bounded, so some state repeats; since the state determines the rest of
/// the stream, the first repeat gives the minimal preperiod and period.
pub fn expansion_of(q: &Rational, base: &BigUint) -> Result<RationalExpansion> {
    check_base(base)?;
    if q.is_zero() {
        return Ok(RationalExpansion {
            base: base.clone(),
            valuation: 0,
            preperiod: Vec::new(),
            period: vec![BigUint::zero()],
        });
    }
    let norm = normalize(q, base);
    let (preperiod, period) = match (norm.numer.to_i64(), norm.denom.to_i64(), base.to_i64()) {
        (Some(n), Some(d), Some(b)) => long_division_small(n, d, b),
        _ => long_division(
            norm.numer,
            BigInt::from(norm.denom),
            BigInt::from(base.clone()),
        ),
    };
    Ok(RationalExpansion {
        base: base.clone(),
        valuation: norm.valuation,
        preperiod,
        period,
    })
}

fn long_division(mut state: BigInt, d: BigInt, b: BigInt) -> (Vec<BigUint>, Vec<BigUint>) {
    let d_inv = arith::mod_inverse(&d, &b).expect("denominator is a unit");
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    let start = loop {
        if let Some(&i) = seen.get(&state) {
            break i;
        }
        seen.insert(state.clone(), digits.len());
        let a = (&state * &d_inv).mod_floor(&b);
        state = (&state - &a * &d) / &b;
        digits.push(a.to_biguint().expect("nonnegative"));
    };
    let period = digits.split_off(start);
    (digits, period)
}

/// Same walk on machine integers; states stay within `max(|n|, d)`.
fn long_division_small(n: i64, d: i64, b: i64) -> (Vec<BigUint>, Vec<BigUint>) {
    let (d, b) = (i128::from(d), i128::from(b));
    let d_inv = arith::mod_inverse(&BigInt::from(d), &BigInt::from(b))
        .and_then(|x| x.to_i128())
        .expect("denominator is a unit");
    let mut seen: HashMap<i128, usize> = HashMap::new();
    let mut digits: Vec<i128> = Vec::new();
    let mut state = i128::from(n);
    let start = loop {
        if let Some(&i) = seen.get(&state) {
            break i;
        }
        seen.insert(state, digits.len());
        let a = (state.rem_euclid(b) * d_inv).rem_euclid(b);
        state = (state - a * d) / b;
        digits.push(a);
    };
    let to_big = |v: &[i128]| {
        v.iter()
            .map(|&a| BigUint::from(a as u128))
            .collect::<Vec<_>>()
    };
    (to_big(&digits[..start]), to_big(&digits[start..]))
}

/// Sums the geometric series: `P + b^L · C / (1 - b^K)`, scaled by `b^v`.
pub fn rational_of(e: &RationalExpansion) -> Rational {
    let b = BigInt::from(e.base.clone());
    let horner = |digits: &[BigUint]| {
        digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, d| acc * &b + BigInt::from(d.clone()))
    };
    let pre = Rational::from_integer(horner(&e.preperiod));
    let cycle = horner(&e.period);
    let b_pow = |k: usize| num_traits::pow::pow(b.clone(), k);
    let tail = Rational::new(
        cycle * b_pow(e.preperiod.len()),
        BigInt::one() - b_pow(e.period.len()),
    );
    let scale = Rational::from_integer(b_pow(e.valuation.unsigned_abs() as usize));
    let value = pre + tail;
    if e.valuation >= 0 {
        value * scale
    } else {
        value / scale
    }
}
