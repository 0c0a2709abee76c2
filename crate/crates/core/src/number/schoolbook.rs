//! Digit-vector arithmetic: carry-propagating addition, convolution
//! multiplication and digit-by-digit inversion on little-endian digits.
//!
//! These mirror the integer-residue operations on [`PadicNumber`] and must
//! agree with them exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{PadicKind, PadicNumber};
use crate::arith;
use crate::error::{Error, Result};

/// `a + b` truncated to `len` digits.
pub fn add_digits(a: &[BigUint], b: &[BigUint], base: &BigUint, len: usize) -> Vec<BigUint> {
    let zero = BigUint::zero();
    let mut out = Vec::with_capacity(len);
    let mut carry = BigUint::zero();
    for i in 0..len {
        let s = a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero) + &carry;
        let (c, d) = s.div_rem(base);
        out.push(d);
        carry = c;
    }
    out
}

/// `-a` modulo `base^len`: complement every digit, then add one.
pub fn negate_digits(a: &[BigUint], base: &BigUint) -> Vec<BigUint> {
    let top = base - 1u32;
    let complement: Vec<BigUint> = a.iter().map(|d| &top - d).collect();
    add_digits(&complement, &[BigUint::one()], base, a.len())
}

/// `a · b` truncated to `len` digits.
pub fn mul_digits(a: &[BigUint], b: &[BigUint], base: &BigUint, len: usize) -> Vec<BigUint> {
    let mut columns = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            columns[i + j] += x * y;
        }
    }
    add_digits(&columns, &[], base, len)
}

/// Inverse of `a` modulo `base^len`, found one digit at a time: with the
/// partial product `a·c` known, the next digit of `c` cancels the next digit
/// of the product. Requires `gcd(a_0, base) = 1`.
pub fn invert_digits(a: &[BigUint], base: &BigUint, len: usize) -> Option<Vec<BigUint>> {
    let b = BigInt::from(base.clone());
    let a0_inv = arith::mod_inverse(&BigInt::from(a.first()?.clone()), &b)?;
    let mut inverse = Vec::with_capacity(len);
    // running product a · inverse, with a leading 1 pending cancellation
    let mut product = vec![BigUint::zero(); len];
    for k in 0..len {
        let target = if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        let current = BigInt::from(product[k].clone());
        let digit = ((target - current) * &a0_inv).mod_floor(&b);
        let digit = digit.to_biguint().expect("nonnegative");
        let mut shifted = vec![BigUint::zero(); k];
        shifted.extend(a.iter().map(|x| x * &digit));
        product = add_digits(&product, &shifted, base, len);
        inverse.push(digit);
    }
    Some(inverse)
}

/// Builds a canonical value from digits of `b^valuation…` known to `abs`.
fn from_digits(base: &BigUint, valuation: i64, digits: &[BigUint], abs: i64) -> PadicNumber {
    let Some(first) = digits.iter().position(|d| !d.is_zero()) else {
        return PadicNumber {
            base: base.clone(),
            kind: PadicKind::InexactZero { bound: abs },
        };
    };
    let kept = &digits[first..];
    let mantissa = kept
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, d| acc * base + d);
    PadicNumber {
        base: base.clone(),
        kind: PadicKind::Approx {
            valuation: valuation + i64::try_from(first).expect("fits"),
            mantissa,
            precision: kept.len(),
        },
    }
}

fn same_base(x: &PadicNumber, y: &PadicNumber) -> Result<()> {
    if x.base != y.base {
        return Err(Error::BaseMismatch(x.base.clone(), y.base.clone()));
    }
    Ok(())
}

/// Digit-level counterpart of [`PadicNumber::add`].
pub fn add(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    same_base(x, y)?;
    let (ax, ay) = match (x.absolute_precision(), y.absolute_precision()) {
        (None, _) => return Ok(y.clone()),
        (_, None) => return Ok(x.clone()),
        (Some(a), Some(b)) => (a, b),
    };
    let abs = ax.min(ay);
    let low = [x, y].iter().filter_map(|z| z.parts().map(|p| p.0)).min();
    let Some(low) = low.filter(|&l| l < abs) else {
        return Ok(PadicNumber {
            base: x.base.clone(),
            kind: PadicKind::InexactZero { bound: abs },
        });
    };
    let len = usize::try_from(abs - low).expect("positive");
    let aligned = |z: &PadicNumber| -> Vec<BigUint> {
        match z.parts() {
            Some((v, _, _)) => {
                let offset = usize::try_from(v - low).expect("nonnegative");
                let mut out = vec![BigUint::zero(); offset.min(len)];
                out.extend(z.digits().into_iter().take(len.saturating_sub(offset)));
                out
            }
            None => Vec::new(),
        }
    };
    let sum = add_digits(&aligned(x), &aligned(y), &x.base, len);
    Ok(from_digits(&x.base, low, &sum, abs))
}

/// Digit-level counterpart of [`PadicNumber::negate`].
pub fn negate(x: &PadicNumber) -> PadicNumber {
    match x.parts() {
        Some((v, _, n)) => {
            let digits = negate_digits(&x.digits(), &x.base);
            from_digits(&x.base, v, &digits, v + i64::try_from(n).expect("fits"))
        }
        None => x.clone(),
    }
}

/// Digit-level counterpart of [`PadicNumber::mul`].
pub fn mul(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    same_base(x, y)?;
    match (x.parts(), y.parts()) {
        (Some((vx, _, nx)), Some((vy, _, ny))) => {
            let len = nx.min(ny);
            let product = mul_digits(&x.digits(), &y.digits(), &x.base, len);
            let v = vx + vy;
            Ok(from_digits(
                &x.base,
                v,
                &product,
                v + i64::try_from(len).expect("fits"),
            ))
        }
        // zero operands carry no digits; the residue path handles them
        _ => x.mul(y),
    }
}

/// Digit-level counterpart of [`PadicNumber::invert`].
pub fn invert(x: &PadicNumber) -> Result<PadicNumber> {
    let Some((v, _, n)) = x.parts() else {
        return Err(Error::ZeroOperand);
    };
    let inverse = invert_digits(&x.digits(), &x.base, n).ok_or(Error::NotInvertible)?;
    Ok(from_digits(
        &x.base,
        -v,
        &inverse,
        -v + i64::try_from(n).expect("fits"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::Rational;
    use proptest::prelude::*;

    fn padic(n: i64, d: i64, base: u32, precision: usize) -> PadicNumber {
        PadicNumber::from_rational(&Rational::new(n.into(), d.into()), &base.into(), precision)
            .unwrap()
    }

    #[test]
    fn worked_examples() {
        let x = padic(111123, 1, 10, 6);
        let seven = padic(7, 1, 10, 6);
        assert_eq!(add(&x, &seven).unwrap().to_string(), "...111130");
        assert_eq!(mul(&x, &seven).unwrap().to_string(), "...777861");
        assert_eq!(invert(&padic(3, 1, 10, 4)).unwrap().to_string(), "...6667");
        assert_eq!(negate(&padic(58, 1, 10, 6)).to_string(), "...999942");
        assert_eq!(invert(&padic(5, 1, 10, 4)), Err(Error::NotInvertible));
    }

    proptest! {
        #[test]
        fn agrees_with_residue_path(
            base in prop::sample::select(vec![2u32, 3, 5, 6, 10, 12]),
            (n1, d1) in (-10_000i64..10_000, 1i64..500),
            (n2, d2) in (-10_000i64..10_000, 1i64..500),
            p1 in 1usize..12,
            p2 in 1usize..12,
        ) {
            let x = padic(n1, d1, base, p1);
            let y = padic(n2, d2, base, p2);
            prop_assert_eq!(add(&x, &y).unwrap(), x.add(&y).unwrap());
            prop_assert_eq!(mul(&x, &y).unwrap(), x.mul(&y).unwrap());
            prop_assert_eq!(negate(&x), x.negate());
            prop_assert_eq!(invert(&x), x.invert());
        }
    }
}
