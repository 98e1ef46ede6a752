//! Elementary number theory: sieve, Euler phi, Möbius, divisors and
//! overflow-checked lcm/product over any primitive integer width.

use num_traits::PrimInt;

use crate::error::{Error, Result};

/// All primes up to and including `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: usize,
    primes: Vec<usize>,
}

impl PrimeTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    pub fn contains(&self, n: usize) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: usize) -> PrimeTable {
    if limit < 2 {
        return PrimeTable { limit, primes: Vec::new() };
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for n in 2..=limit {
        if composite[n] {
            continue;
        }
        primes.push(n);
        let mut m = n * n;
        while m <= limit {
            composite[m] = true;
            m += n;
        }
    }
    PrimeTable { limit, primes }
}

fn nonzero<T: PrimInt>(n: T) -> Result<T> {
    if n.is_zero() {
        Err(Error::ZeroArgument)
    } else {
        Ok(n)
    }
}

/// Distinct prime factors with multiplicity, by trial division.
pub fn factorize<T: PrimInt>(n: T) -> Result<Vec<(T, u32)>> {
    let mut n = nonzero(n)?;
    let mut out = Vec::new();
    let two = T::one() + T::one();
    let mut p = two;
    while p * p <= n {
        if (n % p).is_zero() {
            let mut e = 0;
            while (n % p).is_zero() {
                n = n / p;
                e += 1;
            }
            out.push((p, e));
        }
        p = if p == two { p + T::one() } else { p + two };
    }
    if n > T::one() {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn euler_phi<T: PrimInt>(n: T) -> Result<T> {
    let mut phi = nonzero(n)?;
    for (p, _) in factorize(n)? {
        phi = phi / p * (p - T::one());
    }
    Ok(phi)
}

pub fn moebius<T: PrimInt>(n: T) -> Result<i8> {
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Divisors of `n` in ascending order.
pub fn divisors<T: PrimInt>(n: T) -> Result<Vec<T>> {
    let n = nonzero(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = T::one();
    while d * d <= n {
        if (n % d).is_zero() {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d = d + T::one();
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `phi[k]` for every `k <= limit` (`phi[0] = 0`).
pub fn phi_table(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for p in 2..=limit {
        if phi[p] == p {
            let mut m = p;
            while m <= limit {
                phi[m] -= phi[m] / p;
                m += p;
            }
        }
    }
    phi
}

pub fn gcd<T: PrimInt>(mut a: T, mut b: T) -> T {
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple, `None` on overflow. `lcm(0, x) = 0`.
pub fn checked_lcm<T: PrimInt>(a: T, b: T) -> Option<T> {
    if a.is_zero() || b.is_zero() {
        return Some(T::zero());
    }
    (a / gcd(a, b)).checked_mul(&b)
}

/// lcm of all items; the empty lcm is 1.
pub fn checked_lcm_all<T: PrimInt, I: IntoIterator<Item = T>>(items: I) -> Option<T> {
    items
        .into_iter()
        .try_fold(T::one(), |acc, x| checked_lcm(acc, x))
}

/// Product of all items; the empty product is 1.
pub fn checked_product<T: PrimInt, I: IntoIterator<Item = T>>(items: I) -> Option<T> {
    items
        .into_iter()
        .try_fold(T::one(), |acc, x| acc.checked_mul(&x))
}

/// `2^exp`, `None` when it does not fit in `T`.
pub fn checked_pow2<T: PrimInt>(exp: usize) -> Option<T> {
    let bits = std::mem::size_of::<T>() * 8 - if T::min_value() < T::zero() { 1 } else { 0 };
    if exp >= bits {
        None
    } else {
        Some(T::one() << exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_up_to(10).primes(), &[2, 3, 5, 7]);
        assert!(primes_up_to(1).primes().is_empty());
        assert!(primes_up_to(0).primes().is_empty());
        assert_eq!(primes_up_to(13).primes(), &[2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let table = primes_up_to(10_000);
        let trial: Vec<usize> = (2..=10_000usize)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(table.primes(), trial.as_slice());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1u32).unwrap(), 1);
        assert_eq!(euler_phi(12u64).unwrap(), 4);
        assert_eq!(euler_phi(9usize).unwrap(), 6);
        assert_eq!(euler_phi(0u64), Err(Error::ZeroArgument));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1u32).unwrap(), 1);
        assert_eq!(moebius(6u32).unwrap(), 1);
        assert_eq!(moebius(12u32).unwrap(), 0);
        assert_eq!(moebius(30u32).unwrap(), -1);
        assert!(moebius(0u32).is_err());
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(12u32).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1u32).unwrap(), vec![1]);
        assert_eq!(divisors(7u32).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36u64).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(0u32).is_err());
    }

    #[test]
    fn gauss_and_moebius_sums() {
        for n in 1..=1000u64 {
            let ds = divisors(n).unwrap();
            let phi_sum: u64 = ds.iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(phi_sum, n);
            let mu_sum: i64 = ds.iter().map(|&d| moebius(d).unwrap() as i64).sum();
            assert_eq!(mu_sum, (n == 1) as i64);
        }
    }

    #[test]
    fn phi_table_agrees() {
        let table = phi_table(500);
        for n in 1..=500usize {
            assert_eq!(table[n], euler_phi(n).unwrap());
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(checked_lcm(4u8, 6u8), Some(12));
        assert_eq!(checked_lcm(255u8, 254u8), None);
        assert_eq!(checked_product([16u8, 16u8]), None);
        assert_eq!(checked_lcm_all(Vec::<u32>::new()), Some(1));
        assert_eq!(checked_pow2::<u8>(7), Some(128));
        assert_eq!(checked_pow2::<u8>(8), None);
        assert_eq!(checked_pow2::<i8>(7), None);
        assert_eq!(checked_pow2::<u128>(127), Some(1u128 << 127));
    }

    proptest! {
        #[test]
        fn lcm_is_common_multiple(a in 1u64..10_000, b in 1u64..10_000) {
            let l = checked_lcm(a, b).unwrap();
            prop_assert_eq!(l % a, 0);
            prop_assert_eq!(l % b, 0);
            prop_assert_eq!(l * gcd(a, b), a * b);
        }
    }
}
