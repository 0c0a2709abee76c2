//! Integer helpers shared by the arithmetic modules: modular inverses,
//! primality, and bounded trial-division factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bound for trial-division factorization.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime witnesses is exact below this value.
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic witness set).
    Prime,
    /// Passed every witness but lies above the deterministic range.
    ProbablePrime,
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return Primality::Composite;
        }
        for &w in &WITNESSES {
            if small == u64::from(w) {
                return Primality::Prime;
            }
            if small % u64::from(w) == 0 {
                return Primality::Composite;
            }
        }
    } else {
        for &w in &WITNESSES {
            if (n % w).is_zero() {
                return Primality::Composite;
            }
        }
    }

    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> twos;

    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&odd, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..twos {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return Primality::Composite;
    }

    let limit: BigUint = DETERMINISTIC_LIMIT.parse().expect("valid literal");
    if *n < limit {
        Primality::Prime
    } else {
        Primality::ProbablePrime
    }
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n) != Primality::Composite
}

/// Inverse of `a` modulo `m` in `[0, m)`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let a = a.mod_floor(m);
    let egcd = a.extended_gcd(m);
    if !egcd.gcd.is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

pub fn big_pow(base: &BigUint, exp: u64) -> BigUint {
    num_traits::pow::pow(
        base.clone(),
        usize::try_from(exp).expect("exponent fits usize"),
    )
}

/// Strips every factor `p` from `n`, returning the count.
pub fn strip_factor(n: &mut BigUint, p: &BigUint) -> u64 {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

/// Prime factorization by trial division up to `bound`.
///
/// A cofactor left over after trial division is accepted when it is provably
/// prime (either below `bound²` or certified by the deterministic
/// Miller-Rabin range); anything else is reported rather than guessed.
pub fn factorize(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u64)>> {
    assert!(!n.is_zero(), "factorize(0)");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small, bound);
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= bound {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        let e = strip_factor(&mut rest, &big_d);
        if e > 0 {
            factors.push((big_d, e));
            if let Some(small) = rest.to_u64() {
                for (p, e) in factorize_u64(small, bound)? {
                    factors.push((p, e));
                }
                return Ok(factors);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        accept_cofactor(rest, bound, &mut factors)?;
    }
    Ok(factors)
}

fn factorize_u64(mut n: u64, bound: u64) -> Result<Vec<(BigUint, u64)>> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= bound && d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        accept_cofactor(BigUint::from(n), bound, &mut factors)?;
    }
    Ok(factors)
}

fn accept_cofactor(rest: BigUint, bound: u64, factors: &mut Vec<(BigUint, u64)>) -> Result<()> {
    let bound_sq = BigUint::from(bound) * BigUint::from(bound);
    if rest <= bound_sq || primality(&rest) == Primality::Prime {
        factors.push((rest, 1));
        Ok(())
    } else {
        Err(Error::FactorizationLimitExceeded {
            cofactor: rest,
            bound,
        })
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), or `None`
/// for non-residues. `a` must already be reduced and nonzero.
pub fn sqrt_mod_prime(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let p_minus_one = p - &one;
    let half = &p_minus_one >> 1u32;
    if a.modpow(&half, p) != one {
        return None;
    }
    let s = p_minus_one.trailing_zeros().unwrap_or(0);
    let q = &p_minus_one >> s;
    if s == 1 {
        let exp = (p + &one) >> 2u32;
        return Some(a.modpow(&exp, p));
    }
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1u32), p);
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}
