//! Diagonal adele vectors of rationals and the product formula.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::number::PadicNumber;
use crate::valuation::{NormValue, Rational};

pub use crate::arith::DEFAULT_FACTOR_BOUND;

/// Local data at one finite place of the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalEntry {
    pub norm: NormValue,
    pub expansion: Option<PadicNumber>,
}

/// The image of a rational in every completion at once. Only places where
/// the norm differs from 1 are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeleVector {
    value: Rational,
    precision: usize,
    real_norm: NormValue,
    finite_entries: BTreeMap<BigUint, LocalEntry>,
    with_expansions: bool,
}

impl AdeleVector {
    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn real_norm(&self) -> &NormValue {
        &self.real_norm
    }

    pub fn finite_entries(&self) -> &BTreeMap<BigUint, LocalEntry> {
        &self.finite_entries
    }

    /// Primes with `|q|_p ≠ 1`, ascending.
    pub fn support(&self) -> impl Iterator<Item = &BigUint> {
        self.finite_entries.keys()
    }

    /// `|q|_p`, which is 1 away from the support.
    pub fn norm_at(&self, p: &BigUint) -> NormValue {
        match self.finite_entries.get(p) {
            Some(entry) => entry.norm.clone(),
            None if self.value.is_zero() => NormValue::Zero,
            None => NormValue::power(p.clone(), 0),
        }
    }

    pub fn has_expansions(&self) -> bool {
        self.with_expansions
    }
}

pub fn adele_of(q: &Rational, precision: usize, expansions: bool) -> Result<AdeleVector> {
    adele_of_with_bound(q, precision, expansions, DEFAULT_FACTOR_BOUND)
}

/// Builds the adele vector of `q`, discovering its support by trial
/// division up to `bound`.
pub fn adele_of_with_bound(
    q: &Rational,
    precision: usize,
    expansions: bool,
    bound: u64,
) -> Result<AdeleVector> {
    if precision == 0 {
        return Err(Error::InvalidPrecision);
    }
    let mut finite_entries = BTreeMap::new();
    if q.is_zero() {
        return Ok(AdeleVector {
            value: q.clone(),
            precision,
            real_norm: NormValue::Zero,
            finite_entries,
            with_expansions: expansions,
        });
    }
    let numer = q.numer().magnitude();
    let denom = q.denom().magnitude();
    let mut exponents: BTreeMap<BigUint, i64> = BTreeMap::new();
    for (p, e) in arith::factorize(numer, bound)? {
        *exponents.entry(p).or_default() += i64::try_from(e).expect("fits");
    }
    for (p, e) in arith::factorize(denom, bound)? {
        *exponents.entry(p).or_default() -= i64::try_from(e).expect("fits");
    }
    for (p, v) in exponents {
        let expansion = if expansions {
            Some(PadicNumber::from_rational(q, &p, precision)?)
        } else {
            None
        };
        let norm = NormValue::power(p.clone(), -v);
        finite_entries.insert(p, LocalEntry { norm, expansion });
    }
    Ok(AdeleVector {
        value: q.clone(),
        precision,
        real_norm: NormValue::RealAbs(q.abs()),
        finite_entries,
        with_expansions: expansions,
    })
}

/// `∏_v |q|_v` over the real place and every prime; 1 for every nonzero `q`.
pub fn product_formula(q: &Rational) -> Result<Rational> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let adele = adele_of(q, 1, false)?;
    Ok(product_of(&adele))
}

/// Exact product of the norms stored in `adele`.
pub fn product_of(adele: &AdeleVector) -> Rational {
    adele
        .finite_entries
        .values()
        .fold(adele.real_norm.to_rational(), |acc, entry| {
            acc * entry.norm.to_rational()
        })
}

fn combine(
    x: &AdeleVector,
    y: &AdeleVector,
    value: Rational,
    precision: usize,
) -> Result<AdeleVector> {
    adele_of(&value, precision, x.with_expansions || y.with_expansions)
}

/// Componentwise sum; for diagonal adeles this is the adele of the sum.
pub fn adele_add(x: &AdeleVector, y: &AdeleVector, precision: usize) -> Result<AdeleVector> {
    combine(x, y, &x.value + &y.value, precision)
}

/// Componentwise product; for diagonal adeles this is the adele of the product.
pub fn adele_mul(x: &AdeleVector, y: &AdeleVector, precision: usize) -> Result<AdeleVector> {
    combine(x, y, &x.value * &y.value, precision)
}

impl AdeleVector {
    /// Precision of the attached expansions.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `true` when the product of all stored norms is exactly 1.
    pub fn satisfies_product_formula(&self) -> bool {
        !self.value.is_zero() && product_of(self).is_one()
    }
}
