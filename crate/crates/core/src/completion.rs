//! Computational witnesses for the completion of ℚ: prefix-certified Cauchy
//! analysis, Hensel lifting of square roots, idempotents in composite bases,
//! and the non-Archimedean probe.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::number::{modulus, PadicNumber};
use crate::valuation::{norm, NormValue, Place, Prime, Rational, Valuation};

/// Outcome of one tolerance level of [`is_cauchy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CauchyOutcome {
    /// Every pair `start <= i < j < depth` is closer than the tolerance.
    Certified { start: usize },
    /// No start index inside the prefix works; `(m, n)` is the last pair
    /// at or beyond the tolerance.
    Failed {
        m: usize,
        n: usize,
        distance: NormValue,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToleranceCheck {
    pub k: u32,
    pub tolerance: NormValue,
    pub outcome: CauchyOutcome,
}

impl ToleranceCheck {
    /// Least certified start, or `depth - 1` (the vacuous index) on failure.
    pub fn start_index(&self, depth: usize) -> usize {
        match self.outcome {
            CauchyOutcome::Certified { start } => start,
            CauchyOutcome::Failed { .. } => depth - 1,
        }
    }
}

/// Cauchy analysis of a finite prefix. Says nothing about later terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyReport {
    pub place: Place,
    pub depth_checked: usize,
    pub schedule: Vec<ToleranceCheck>,
}

impl CauchyReport {
    pub fn is_certified(&self) -> bool {
        self.schedule
            .iter()
            .all(|c| matches!(c.outcome, CauchyOutcome::Certified { .. }))
    }
}

/// Tolerance `p^-k` at a finite place, `10^-k` at the real place.
pub fn tolerance(place: &Place, k: u32) -> NormValue {
    match place {
        Place::Finite(p) => NormValue::power(p.value().clone(), -i64::from(k)),
        Place::Real => NormValue::RealAbs(Rational::new(
            BigInt::one(),
            num_traits::pow::pow(BigInt::from(10), k as usize),
        )),
    }
}

/// For each `k` in `1..=k_max`, the least `m` such that all pairs
/// `m <= i < j < depth` satisfy `d(x_i, x_j) < tolerance(k)`.
pub fn is_cauchy(
    seq: &[Rational],
    place: &Place,
    depth: usize,
    k_max: u32,
) -> Result<CauchyReport> {
    if depth < 2 || seq.len() < 2 {
        return Err(Error::InsufficientDepth(depth.min(seq.len())));
    }
    if depth > seq.len() {
        return Err(Error::DepthExceedsSequence {
            depth,
            len: seq.len(),
        });
    }
    let prefix = &seq[..depth];
    let distances: Vec<Vec<NormValue>> = (0..depth)
        .map(|i| {
            ((i + 1)..depth)
                .map(|j| norm(&(&prefix[j] - &prefix[i]), place))
                .collect()
        })
        .collect();

    let schedule = (1..=k_max)
        .map(|k| {
            let tol = tolerance(place, k);
            // last i with some j > i at or beyond the tolerance
            let worst = (0..depth).rev().find_map(|i| {
                distances[i]
                    .iter()
                    .position(|d| *d >= tol)
                    .map(|offset| (i, i + 1 + offset))
            });
            let outcome = match worst {
                None => CauchyOutcome::Certified { start: 0 },
                Some((i, _)) if i + 2 < depth => CauchyOutcome::Certified { start: i + 1 },
                Some((i, j)) => CauchyOutcome::Failed {
                    m: i,
                    n: j,
                    distance: distances[i][j - i - 1].clone(),
                },
            };
            ToleranceCheck {
                k,
                tolerance: tol,
                outcome,
            }
        })
        .collect();

    Ok(CauchyReport {
        place: place.clone(),
        depth_checked: depth,
        schedule,
    })
}

/// Square root of `a` in ℚ_p to `precision` digits by digit-by-digit
/// lifting. Returns the root whose unit digit lies in `[1, (p-1)/2]`; the
/// other root is its negation.
pub fn hensel_sqrt(a: &Rational, p: &BigUint, precision: usize) -> Result<PadicNumber> {
    let prime = Prime::new(p.clone())?;
    if *p == BigUint::from(2u32) {
        return Err(Error::EvenPrimeUnsupported);
    }
    if precision == 0 {
        return Err(Error::InvalidPrecision);
    }
    let v = match prime.valuation(a) {
        Valuation::Infinite => return PadicNumber::zero(p.clone()),
        Valuation::Finite(v) => v,
    };
    if v % 2 != 0 {
        return Err(Error::OddValuation(v));
    }
    // unit part a / p^v as a residue modulo p^precision
    let unit = PadicNumber::from_rational(a, p, precision)?;
    let (_, unit_residue, _) = unit.parts().expect("nonzero");
    let unit_residue = unit_residue.clone();

    let r0 = &unit_residue % p;
    let mut root = arith::sqrt_mod_prime(&r0, p).ok_or_else(|| Error::NoSquareRoot(p.clone()))?;
    let half = (p - 1u32) >> 1u32;
    if root > half {
        root = p - root;
    }

    let pb = BigInt::from(p.clone());
    let two_root_inv = arith::mod_inverse(&(BigInt::from(root.clone()) * 2), &pb)
        .expect("2·root is a unit for odd p");
    let mut x = BigInt::from(root);
    let target = BigInt::from(unit_residue);
    let mut p_k = pb.clone();
    for _ in 1..precision {
        // x² ≡ a (mod p^k); pick t with (x + t·p^k)² ≡ a (mod p^(k+1))
        let excess = (&x * &x - &target).mod_floor(&(&p_k * &pb)) / &p_k;
        let t = (-excess * &two_root_inv).mod_floor(&pb);
        x += t * &p_k;
        p_k *= &pb;
    }
    PadicNumber::from_residue(p, &x, i64::try_from(precision).expect("fits"))
        .map(|root| shift(&root, v / 2))
}

fn shift(x: &PadicNumber, by: i64) -> PadicNumber {
    if by == 0 {
        return x.clone();
    }
    let p = x.base().clone();
    let factor = if by > 0 {
        Rational::from_integer(BigInt::from(arith::big_pow(&p, by as u64)))
    } else {
        Rational::new(
            BigInt::one(),
            BigInt::from(arith::big_pow(&p, by.unsigned_abs())),
        )
    };
    // multiplying by an exact power only moves the valuation
    let precision = x.precision().expect("nonzero root");
    let scale = PadicNumber::from_rational(&factor, &p, precision).expect("valid base");
    x.mul(&scale).expect("same base")
}

/// A nontrivial idempotent `e` and its complement `1 - e` modulo `base^N`.
///
/// `e` is `≡ 0` modulo the largest prime-power block of the base and `≡ 1`
/// modulo the rest. Starting from that block itself (5 for base 10), the
/// iteration `x ← 3x² - 2x³` doubles the number of correct digits per step.
pub fn idempotent_witness(base: &BigUint, precision: usize) -> Result<(PadicNumber, PadicNumber)> {
    if *base < BigUint::from(2u32) {
        return Err(Error::InvalidBase(base.clone()));
    }
    if precision == 0 {
        return Err(Error::InvalidPrecision);
    }
    let factors = arith::factorize(base, arith::DEFAULT_FACTOR_BOUND)?;
    if factors.len() < 2 {
        return Err(Error::NoNontrivialIdempotent(base.clone()));
    }
    let block = factors
        .iter()
        .map(|(p, e)| arith::big_pow(p, *e))
        .max()
        .expect("at least two factors");
    let cofactor = base / &block;

    // seed ≡ 0 mod block, ≡ 1 mod cofactor
    let block_i = BigInt::from(block.clone());
    let cofactor_i = BigInt::from(cofactor);
    let seed = &block_i * arith::mod_inverse(&block_i, &cofactor_i).expect("coprime blocks");

    let m = BigInt::from(modulus(base, precision));
    let mut x = seed.mod_floor(&m);
    loop {
        let x2 = (&x * &x).mod_floor(&m);
        let next = (BigInt::from(3) * &x2 - BigInt::from(2) * (&x2 * &x)).mod_floor(&m);
        if next == x {
            break;
        }
        x = next;
    }
    let abs = i64::try_from(precision).expect("fits");
    let complement = (BigInt::one() - &x).mod_floor(&m);
    Ok((
        PadicNumber::from_residue(base, &x, abs)?,
        PadicNumber::from_residue(base, &complement, abs)?,
    ))
}

/// `|n·x|` at `place` for `n = 1..=n_max`.
pub fn archimedean_probe(x: &Rational, place: &Place, n_max: u64) -> Result<Vec<NormValue>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok((1..=n_max)
        .map(|n| norm(&(x * Rational::from_integer(BigInt::from(n))), place))
        .collect())
}

/// Residue of a successful root in `[0, p^M)`; helper for callers that
/// verify roots against `a` directly.
pub fn root_residue(x: &PadicNumber) -> Option<BigInt> {
    x.parts().map(|(_, u, _)| BigInt::from(u.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn seq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn geometric_partial_sums_are_five_adic_cauchy() {
        let s = seq(&[1, 6, 31, 156, 781]);
        let report = is_cauchy(&s, &Place::prime(5).unwrap(), 5, 3).unwrap();
        let starts: Vec<_> = report.schedule.iter().map(|c| c.outcome.clone()).collect();
        assert_eq!(
            starts,
            vec![
                CauchyOutcome::Certified { start: 1 },
                CauchyOutcome::Certified { start: 2 },
                CauchyOutcome::Certified { start: 3 },
            ]
        );
        assert!(report.is_certified());
    }

    #[test]
    fn integers_diverge_at_the_real_place() {
        let report = is_cauchy(&seq(&[1, 2, 3, 4]), &Place::Real, 4, 1).unwrap();
        assert_eq!(
            report.schedule[0].outcome,
            CauchyOutcome::Failed {
                m: 2,
                n: 3,
                distance: NormValue::RealAbs(int(1))
            }
        );
        assert!(!report.is_certified());
    }

    #[test]
    fn constant_sequence() {
        for place in [Place::Real, Place::prime(3).unwrap()] {
            let report = is_cauchy(&seq(&[7, 7, 7]), &place, 3, 4).unwrap();
            for check in &report.schedule {
                assert_eq!(check.outcome, CauchyOutcome::Certified { start: 0 });
            }
        }
    }

    #[test]
    fn cauchy_depth_errors() {
        let s = seq(&[1, 2, 3]);
        assert_eq!(
            is_cauchy(&s, &Place::Real, 1, 2),
            Err(Error::InsufficientDepth(1))
        );
        assert_eq!(
            is_cauchy(&s, &Place::Real, 4, 2),
            Err(Error::DepthExceedsSequence { depth: 4, len: 3 })
        );
        // only the first `depth` terms are inspected
        let r = is_cauchy(&seq(&[5, 5, 100]), &Place::Real, 2, 2).unwrap();
        assert!(r.is_certified());
    }

    #[test]
    fn hensel_examples() {
        let seven = BigUint::from(7u32);
        let root = hensel_sqrt(&int(2), &seven, 3).unwrap();
        assert_eq!(root.to_string(), "...213");
        assert_eq!(root_residue(&root), Some(BigInt::from(108)));
        assert_eq!(
            hensel_sqrt(&int(3), &BigUint::from(5u32), 4),
            Err(Error::NoSquareRoot(BigUint::from(5u32)))
        );
        let one = hensel_sqrt(&int(1), &seven, 5).unwrap();
        assert_eq!(one, PadicNumber::from_integer(1, &seven, 5).unwrap());
    }

    #[test]
    fn hensel_errors_and_shifts() {
        let five = BigUint::from(5u32);
        assert_eq!(hensel_sqrt(&int(5), &five, 3), Err(Error::OddValuation(1)));
        assert_eq!(
            hensel_sqrt(&int(2), &BigUint::from(2u32), 3),
            Err(Error::EvenPrimeUnsupported)
        );
        assert!(matches!(
            hensel_sqrt(&int(2), &BigUint::from(9u32), 3),
            Err(Error::NonPrimeBase(_))
        ));
        assert!(hensel_sqrt(&int(0), &five, 3).unwrap().is_exact_zero());

        // sqrt(4/25) = 2/5 in Q_5
        let r = hensel_sqrt(&Rational::new(4.into(), 25.into()), &five, 4).unwrap();
        assert_eq!(r.digit_valuation().unwrap(), Valuation::Finite(-1));
        let sq = r.mul(&r).unwrap();
        let expected =
            PadicNumber::from_rational(&Rational::new(4.into(), 25.into()), &five, 4).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn idempotent_examples() {
        let ten = BigUint::from(10u32);
        let (e, f) = idempotent_witness(&ten, 6).unwrap();
        assert_eq!(root_residue(&e), Some(BigInt::from(890625)));
        assert_eq!(root_residue(&f), Some(BigInt::from(109376)));
        let (e, f) = idempotent_witness(&ten, 1).unwrap();
        assert_eq!(e.to_string(), "...5");
        assert_eq!(f.to_string(), "...6");
        assert_eq!(
            idempotent_witness(&BigUint::from(8u32), 4),
            Err(Error::NoNontrivialIdempotent(BigUint::from(8u32)))
        );
        assert!(idempotent_witness(&BigUint::from(7u32), 4).is_err());
    }

    #[test]
    fn idempotents_for_other_composites() {
        for base in [6u32, 12, 15, 21, 30, 35, 36, 100] {
            let b = BigUint::from(base);
            let m = BigInt::from(modulus(&b, 8));
            let (e, f) = idempotent_witness(&b, 8).unwrap();
            let e = root_residue(&e).unwrap();
            let f = root_residue(&f).unwrap();
            assert_eq!((&e * &e).mod_floor(&m), e, "base {base}");
            assert_eq!((&e * &f).mod_floor(&m), BigInt::zero());
            assert_eq!((&e + &f).mod_floor(&m), BigInt::one());
            let bb = BigInt::from(base);
            assert!(!e.mod_floor(&bb).is_zero() && !e.mod_floor(&bb).is_one());
        }
    }

    #[test]
    fn probe_examples() {
        let p2 = Place::prime(2).unwrap();
        let norms = archimedean_probe(&int(1), &p2, 4).unwrap();
        let expected: Vec<NormValue> = [0, -1, 0, -2]
            .iter()
            .map(|&e| NormValue::power(2u32, e))
            .collect();
        assert_eq!(norms, expected);
        let real = archimedean_probe(&int(1), &Place::Real, 3).unwrap();
        assert_eq!(
            real,
            vec![
                NormValue::RealAbs(int(1)),
                NormValue::RealAbs(int(2)),
                NormValue::RealAbs(int(3))
            ]
        );
        let x = Rational::new(9.into(), 20.into());
        assert_eq!(archimedean_probe(&x, &p2, 1).unwrap()[0], norm(&x, &p2));
        assert_eq!(archimedean_probe(&int(0), &p2, 3), Err(Error::ZeroInput));
    }
}
