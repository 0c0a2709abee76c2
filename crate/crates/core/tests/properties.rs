use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use padic_core::adeles::{adele_of, product_of};
use padic_core::completion::root_residue;
use padic_core::{
    adele_add, adele_mul, distance, expansion_of, hensel_sqrt, idempotent_witness, is_cauchy, norm,
    rational_of, valuation_rat, CauchyOutcome, Error, NormValue, PadicKind, PadicNumber, Place,
    Rational, Valuation,
};
use proptest::prelude::*;

fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero(bound: i64) -> impl Strategy<Value = Rational> {
    rational(bound).prop_filter("nonzero", |q| !q.is_zero())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97])
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 97])
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        prime().prop_map(|p| Place::prime(p).unwrap()),
        Just(Place::Real),
    ]
}

fn base() -> impl Strategy<Value = BigUint> {
    prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 12]).prop_map(BigUint::from)
}

fn value_of(x: &PadicNumber) -> Rational {
    match x.kind() {
        PadicKind::Approx {
            valuation,
            mantissa,
            ..
        } => {
            let b = BigInt::from(x.base().clone());
            let scale = num_traits::pow::pow(b, valuation.unsigned_abs() as usize);
            let m = Rational::from_integer(BigInt::from(mantissa.clone()));
            if *valuation >= 0 {
                m * scale
            } else {
                m / scale
            }
        }
        _ => Rational::zero(),
    }
}

/// `x ≡ y (mod b^m)` for `b`-integral differences.
fn congruent(x: &Rational, y: &Rational, b: &BigUint, m: i64) -> bool {
    let b = BigInt::from(b.clone());
    let scale = num_traits::pow::pow(b.clone(), m.unsigned_abs() as usize);
    let q = if m >= 0 {
        (x - y) / scale
    } else {
        (x - y) * scale
    };
    q.denom().gcd(&b).is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valuation_is_additive(x in nonzero(1_000_000), y in nonzero(1_000_000), p in prime()) {
        let p = BigUint::from(p);
        let vx = valuation_rat(&x, &p).unwrap();
        let vy = valuation_rat(&y, &p).unwrap();
        prop_assert_eq!(valuation_rat(&(&x * &y), &p).unwrap(), vx + vy);
        prop_assert!(valuation_rat(&(&x + &y), &p).unwrap() >= vx.min(vy));
        prop_assert_eq!(valuation_rat(&Rational::zero(), &p).unwrap(), Valuation::Infinite);
    }

    #[test]
    fn metric_laws(x in rational(10_000), y in rational(10_000), z in rational(10_000), place in place()) {
        let d = |a: &Rational, b: &Rational| distance(a, b, &place);
        prop_assert_eq!(d(&x, &y).is_zero(), x == y);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z).to_rational() <= d(&x, &y).to_rational() + d(&y, &z).to_rational());
        if let Place::Finite(_) = place {
            prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
        }
        prop_assert_eq!(norm(&(&x * &y), &place), norm(&x, &place).mul(&norm(&y, &place)));
    }

    #[test]
    fn isosceles_triangles(x in nonzero(10_000), y in nonzero(10_000), p in prime()) {
        let place = Place::prime(p).unwrap();
        let (nx, ny) = (norm(&x, &place), norm(&y, &place));
        if nx != ny {
            prop_assert_eq!(norm(&(&x + &y), &place), nx.max(ny));
        }
    }

    #[test]
    fn ring_laws_hold_to_precision(
        a in rational(100_000), b in rational(100_000), c in rational(100_000),
        base in base(), n in 1usize..10,
    ) {
        let lift = |q: &Rational| PadicNumber::from_rational(q, &base, n).unwrap();
        let (x, y, z) = (lift(&a), lift(&b), lift(&c));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let left = x.add(&y).unwrap().add(&z).unwrap();
        let right = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // distributivity holds modulo the coarser of the two precisions
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        let m = lhs.absolute_precision().unwrap_or(i64::MAX)
            .min(rhs.absolute_precision().unwrap_or(i64::MAX));
        if m != i64::MAX {
            prop_assert!(congruent(&value_of(&lhs), &value_of(&rhs), &base, m));
        }
    }

    #[test]
    fn complement_and_inverse(q in nonzero(1_000_000), base in base(), n in 1usize..12) {
        let x = PadicNumber::from_rational(&q, &base, n).unwrap();
        let zero = x.add(&x.negate()).unwrap();
        prop_assert!(zero.is_zero() && !zero.is_exact_zero());
        prop_assert_eq!(zero.absolute_precision(), x.absolute_precision());
        if let Ok(inv) = x.invert() {
            let one = x.mul(&inv).unwrap();
            prop_assert_eq!(one.digits()[0].clone(), BigUint::one());
            prop_assert!(congruent(&value_of(&one), &Rational::one(), &base, one.absolute_precision().unwrap()));
        }
    }

    #[test]
    fn residues_are_sound(q in rational(1_000_000), r in rational(20_000), base in base(), n in 1usize..12) {
        let x = PadicNumber::from_rational(&q, &base, n).unwrap();
        if let Some(m) = x.absolute_precision() {
            prop_assert!(congruent(&value_of(&x), &q, &base, m));
        }
        prop_assert_eq!(rational_of(&expansion_of(&r, &base).unwrap()), r);
    }

    #[test]
    fn digit_norm_matches_valuation(q in nonzero(1_000_000), p in prime(), n in 1usize..12) {
        let pb = BigUint::from(p);
        let x = PadicNumber::from_rational(&q, &pb, n).unwrap();
        let v = valuation_rat(&q, &pb).unwrap();
        prop_assert_eq!(x.digit_valuation().unwrap(), v);
        prop_assert_eq!(x.digit_norm().unwrap(), norm(&q, &Place::prime(p).unwrap()));
    }

    #[test]
    fn cauchy_starts_are_monotone(terms in prop::collection::vec(rational(1_000), 2..12), p in prime()) {
        let place = Place::prime(p).unwrap();
        let report = is_cauchy(&terms, &place, terms.len(), 6).unwrap();
        let starts: Vec<usize> = report.schedule.iter().map(|c| c.start_index(terms.len())).collect();
        prop_assert!(starts.windows(2).all(|w| w[0] <= w[1]));
        for check in &report.schedule {
            if let CauchyOutcome::Certified { start } = check.outcome {
                for i in start..terms.len() {
                    for j in i + 1..terms.len() {
                        prop_assert!(distance(&terms[i], &terms[j], &place) < check.tolerance);
                    }
                }
            }
        }
    }

    #[test]
    fn hensel_roots_square_back(a in 1i64..10_000, p in odd_prime(), n in 1usize..10) {
        let pb = BigUint::from(p);
        let q = Rational::from_integer(a.into());
        let m = BigInt::from(num_traits::pow::pow(pb.clone(), n));
        match hensel_sqrt(&q, &pb, n) {
            Ok(root) => {
                let x = value_of(&root);
                let v = match root.kind() {
                    PadicKind::Approx { valuation, .. } => *valuation,
                    _ => unreachable!("nonzero input"),
                };
                let square = &x * &x;
                let abs = 2 * v + n as i64;
                prop_assert!(congruent(&square, &q, &pb, abs));
                if v == 0 {
                    let r = root_residue(&root).unwrap();
                    prop_assert!((&r * &r - BigInt::from(a)).mod_floor(&m).is_zero());
                }
            }
            Err(Error::NoSquareRoot(_)) | Err(Error::OddValuation(_)) => {
                let pp = BigInt::from(p);
                let unit = {
                    let mut u = BigInt::from(a);
                    while u.is_multiple_of(&pp) { u /= &pp; }
                    u
                };
                let v = valuation_rat(&q, &pb).unwrap().finite().unwrap();
                let residue = (0..p).any(|x| (BigInt::from(x * x) - &unit).mod_floor(&pp).is_zero());
                prop_assert!(v % 2 != 0 || !residue);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn idempotents_split_composite_bases(
        base in prop::sample::select(vec![6u64, 10, 12, 14, 15, 21, 30, 36, 100]),
        n in 1usize..10,
    ) {
        let b = BigUint::from(base);
        let (e, f) = idempotent_witness(&b, n).unwrap();
        let (x, y) = (value_of(&e), value_of(&f));
        let m = n as i64;
        prop_assert!(congruent(&(&x * &x), &x, &b, m));
        prop_assert!(congruent(&(&x * &y), &Rational::zero(), &b, m));
        prop_assert!(congruent(&(&x + &y), &Rational::one(), &b, m));
    }

    #[test]
    fn adele_support_and_product(x in nonzero(100_000), y in nonzero(100_000)) {
        let ax = adele_of(&x, 6, false).unwrap();
        let ay = adele_of(&y, 6, false).unwrap();
        prop_assert!(ax.satisfies_product_formula());
        prop_assert!(product_of(&ax).is_one());
        for p in ax.support() {
            prop_assert!(ax.norm_at(p) != NormValue::power(1u32, 0));
        }
        let prod = adele_mul(&ax, &ay, 6).unwrap();
        prop_assert_eq!(prod.value(), &(&x * &y));
        prop_assert!(prod.satisfies_product_formula());
        if let Ok(sum) = adele_add(&ax, &ay, 6) {
            prop_assert_eq!(sum.value(), &(&x + &y));
            prop_assert!(sum.satisfies_product_formula());
        }
    }
}
