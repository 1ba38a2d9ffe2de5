//! Arbitrary-precision counting helpers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative count. All orders and sizes in this crate use it.
pub type BigCount = BigUint;

/// `n!` exactly.
#[must_use]
pub fn factorial(n: u64) -> BigCount {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `log2(n)` as a real number, accurate to f64 rounding.
///
/// Uses the top 53 bits of `n`, so the absolute error stays near machine
/// epsilon even for orders far beyond `u64`.
#[must_use]
pub fn log2_real(n: &BigCount) -> f64 {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_u64().expect("small") as f64).log2();
    }
    let shift = bits - 53;
    let top: BigUint = n >> shift;
    (top.to_u64().expect("53 bits") as f64).log2() + shift as f64
}

/// Largest `k` with `p^k | n`, together with `n / p^k`.
#[must_use]
pub fn p_adic_split(n: &BigCount, p: u64) -> (u32, BigCount) {
    assert!(p >= 2);
    let p_big = BigUint::from(p);
    let mut rest = n.clone();
    let mut val = 0u32;
    while !rest.is_zero() && (&rest % &p_big).is_zero() {
        rest /= &p_big;
        val += 1;
    }
    (val, rest)
}

/// `p^k` part of `n`.
#[must_use]
pub fn p_part(n: &BigCount, p: u64) -> BigCount {
    let (val, _) = p_adic_split(n, p);
    BigUint::from(p).pow(val)
}

/// True iff `n = p^k` for some `k >= 0`.
#[must_use]
pub fn is_prime_power_of(n: &BigCount, p: u64) -> bool {
    let (_, rest) = p_adic_split(n, p);
    rest.is_one()
}

/// Trial-division primality for the small primes this crate meets.
#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime divisors of `n`, ascending. Errors if a prime factor exceeds
/// `u64`, which no desk-scale group order does.
pub fn prime_divisors(n: &BigCount) -> Result<Vec<u64>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !rest.is_one() && !rest.is_zero() {
        if BigUint::from(p).pow(2) > rest {
            let big = rest
                .to_u64()
                .ok_or_else(|| Error::FormulaDomain {
                    message: "prime factor beyond u64".into(),
                })?;
            out.push(big);
            break;
        }
        if (&rest % p).is_zero() {
            out.push(p);
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        let f70 = factorial(70);
        assert!(f70 > BigUint::from(10u8).pow(100));
    }

    #[test]
    fn log2_matches_f64_for_small() {
        for n in 1u64..2000 {
            let exact = (n as f64).log2();
            let got = log2_real(&BigUint::from(n));
            assert!((exact - got).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn log2_of_powers_of_two_is_exact() {
        for e in [1u32, 10, 53, 64, 100, 200] {
            let n = BigUint::one() << e;
            assert!((log2_real(&n) - f64::from(e)).abs() < 1e-9);
        }
    }

    #[test]
    fn p_adic_split_works() {
        let n = BigUint::from(24u32 * 24 * 24);
        let (v2, rest2) = p_adic_split(&n, 2);
        assert_eq!(v2, 9);
        assert_eq!(rest2, BigUint::from(27u32));
        assert_eq!(p_part(&n, 3), BigUint::from(27u32));
        assert!(is_prime_power_of(&BigUint::from(243u32), 3));
        assert!(!is_prime_power_of(&BigUint::from(24u32), 2));
    }

    #[test]
    fn primality_and_divisors() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        let n = BigUint::from(7_962_624u64); // 2^15 * 3^5
        assert_eq!(prime_divisors(&n).unwrap(), vec![2, 3]);
    }
}
