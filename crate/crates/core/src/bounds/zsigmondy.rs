//! Primitive prime divisors and p-parts.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::chartab::CycField;
use crate::error::{Error, Result};

/// Trial division stops here; larger unfactored cofactors are an error.
const TRIAL_LIMIT: u64 = 10_000_000;

/// Multiplicative order of `q` modulo the prime `p` (`None` if `p | q`).
pub fn mult_order(q: &BigUint, p: u64) -> Option<u64> {
    let r = (q % p).to_u64().unwrap();
    if r == 0 {
        return None;
    }
    let mut x = r;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * r as u128) % p as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// `Φ_e(q)`.
pub fn cyclotomic_value(q: &BigUint, e: u32) -> BigInt {
    let f = CycField::get(e);
    let q = BigInt::from(q.clone());
    f.poly.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &q + BigInt::from(c))
}

/// All primitive prime divisors of `q^e − 1`, ascending: the primes dividing
/// `Φ_e(q)` with `ord_p(q) = e` (each is `≡ 1 mod e`).
pub fn primitive_prime_divisors(q: u64, e: u32) -> Result<Vec<u64>> {
    if q < 2 || e == 0 {
        return Err(Error::Expr(format!("need q ≥ 2 and e ≥ 1 (got q = {q}, e = {e})")));
    }
    let qb = BigUint::from(q);
    let mut n = cyclotomic_value(&qb, e).to_biguint().unwrap_or_default();
    let mut found = Vec::new();
    // Non-primitive prime factors of Φ_e(q) divide e; strip them first.
    for d in 2..=e as u64 {
        if e as u64 % d == 0 && (2..d).all(|k| d % k != 0) {
            while !n.is_zero() && (&n % d).is_zero() {
                n /= d;
            }
        }
    }
    let mut cand = e as u64 + 1;
    while cand <= TRIAL_LIMIT && BigUint::from(cand) * cand <= n {
        if (&n % cand).is_zero() {
            if mult_order(&qb, cand) == Some(e as u64) {
                found.push(cand);
            }
            while (&n % cand).is_zero() {
                n /= cand;
            }
        }
        cand += e as u64;
    }
    if n > BigUint::one() {
        let limit = BigUint::from(TRIAL_LIMIT);
        if n > &limit * &limit {
            return Err(Error::Expr(format!("Φ_{e}({q}) has a cofactor {n} too large to factor")));
        }
        let p = n.to_u64().unwrap();
        if mult_order(&qb, p) == Some(e as u64) {
            found.push(p);
        }
    }
    found.sort_unstable();
    Ok(found)
}

/// Smallest prime `p` with `ord_p(q) = e`, or `None` for a Zsigmondy exception.
pub fn zsigmondy_ppd(q: u64, e: u32) -> Result<Option<u64>> {
    Ok(primitive_prime_divisors(q, e)?.first().copied())
}

/// Largest power of `p` dividing `n` (`n ≠ 0`).
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let mut n = n.clone();
    let mut out = BigUint::one();
    if n.is_zero() {
        return BigUint::zero();
    }
    while (&n % p).is_zero() {
        n /= p;
        out *= p;
    }
    out
}

/// `q = r^k` with `r` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let r = (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q);
    let mut x = q;
    let mut k = 0;
    while x % r == 0 {
        x /= r;
        k += 1;
    }
    (x == 1).then_some((r, k))
}

pub fn is_prime(n: u64) -> bool {
    prime_power(n) == Some((n, 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(zsigmondy_ppd(2, 6).unwrap(), None);
        assert_eq!(zsigmondy_ppd(2, 18).unwrap(), Some(19));
        assert_eq!(zsigmondy_ppd(3, 5).unwrap(), Some(11));
        assert_eq!(zsigmondy_ppd(2, 1).unwrap(), None);
        assert_eq!(zsigmondy_ppd(3, 2).unwrap(), None); // 3 + 1 = 2²
        assert_eq!(zsigmondy_ppd(7, 2).unwrap(), None); // 7 + 1 = 2³
        assert_eq!(zsigmondy_ppd(5, 2).unwrap(), Some(3));
        assert_eq!(primitive_prime_divisors(2, 30).unwrap(), vec![331]);
        assert_eq!(primitive_prime_divisors(2, 12).unwrap(), vec![13]);
        assert_eq!(primitive_prime_divisors(5, 30).unwrap(), vec![61, 7621]);
        assert_eq!(p_part(&BigUint::from(2000u32), 5), BigUint::from(125u32));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }

    /// Brute-force ppd: scan every prime below the bound.
    fn brute(q: u64, e: u32) -> Vec<u64> {
        let n = q.pow(e) - 1;
        (2..=n).filter(|&p| n % p == 0 && is_prime(p) && mult_order(&BigUint::from(q), p) == Some(e as u64)).collect()
    }

    proptest! {
        #[test]
        fn matches_brute_force(q in 2u64..8, e in 1u32..9) {
            prop_assume!(q.checked_pow(e).is_some_and(|v| v < 2_000_000));
            prop_assert_eq!(primitive_prime_divisors(q, e).unwrap(), brute(q, e));
        }
    }
}
