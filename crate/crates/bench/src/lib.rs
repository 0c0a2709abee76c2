//! Criterion benchmarks for the core arithmetic, driven from
//! `benches/arithmetic.rs`.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use padic_core::{expansion_of, hensel_sqrt, product_formula, BigUint, PadicNumber, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reproducible operands with numerator and denominator up to `bound`.
pub fn sample_rationals(count: usize, bound: i64, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let n: i64 = rng.gen_range(-bound..=bound);
            if n != 0 {
                break Rational::new(n.into(), rng.gen_range(1..=bound).into());
            }
        })
        .collect()
}

fn lifted(qs: &[Rational], base: &BigUint, precision: usize) -> Vec<PadicNumber> {
    qs.iter()
        .map(|q| PadicNumber::from_rational(q, base, precision).expect("valid base"))
        .collect()
}

pub fn benchmarks(c: &mut Criterion) {
    let qs = sample_rationals(64, 1_000_000, 7);
    let primes = [BigUint::from(5u32), BigUint::from(10_007u32)];

    let mut group = c.benchmark_group("from_rational");
    for precision in [16usize, 256] {
        let base = BigUint::from(10u32);
        group.bench_with_input(
            BenchmarkId::from_parameter(precision),
            &precision,
            |b, &n| b.iter(|| lifted(black_box(&qs), &base, n)),
        );
    }
    group.finish();

    let mut group = c.benchmark_group("mul");
    for base in &primes {
        for precision in [16usize, 256] {
            let xs = lifted(&qs, base, precision);
            group.bench_function(format!("p={base}/N={precision}"), |b| {
                b.iter(|| {
                    for pair in xs.windows(2) {
                        black_box(pair[0].mul(&pair[1]).expect("same base"));
                    }
                })
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("invert");
    for base in &primes {
        let xs = lifted(&qs, base, 256);
        group.bench_function(format!("p={base}/N=256"), |b| {
            b.iter(|| {
                for x in &xs {
                    black_box(x.invert().ok());
                }
            })
        });
    }
    group.finish();

    let mut group = c.benchmark_group("hensel_sqrt");
    let two = Rational::from_integer(2.into());
    let seven = BigUint::from(7u32);
    for precision in [16usize, 128] {
        group.bench_with_input(
            BenchmarkId::from_parameter(precision),
            &precision,
            |b, &n| {
                b.iter(|| hensel_sqrt(black_box(&two), &seven, n).expect("2 is a square mod 7"))
            },
        );
    }
    group.finish();

    c.bench_function("product_formula", |b| {
        b.iter(|| {
            for q in &qs {
                black_box(product_formula(q).expect("nonzero"));
            }
        })
    });

    c.bench_function("expansion_of", |b| {
        let base = BigUint::from(10u32);
        b.iter(|| {
            for q in &qs[..8] {
                black_box(expansion_of(q, &base).expect("valid base"));
            }
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_nonzero() {
        let a = sample_rationals(32, 100, 1);
        assert_eq!(a, sample_rationals(32, 100, 1));
        assert!(a.iter().all(|q| *q != Rational::default()));
    }
}
