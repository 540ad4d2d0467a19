//! Primality testing and prime enumeration.
//!
//! `is_prime` is Miller–Rabin with the fixed witness set
//! {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}, which is deterministic
//! for every n below 3.317 · 10^24 (Sorenson–Webster). Above that threshold
//! the same witnesses are kept and 12 further small-prime witnesses are
//! added, so the answer is still reproducible; the error probability is
//! below 4^-25 for the composite case.

use crate::Natural;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Deterministic below this bound (≈ 3.317 · 10^24).
pub const DETERMINISTIC_BOUND_DIGITS: &str = "3317044064679887385961981";

/// Witnesses that make Miller–Rabin deterministic below the bound above.
pub const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const EXTRA_WITNESSES: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub fn is_prime(n: &Natural) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let deterministic = *n < deterministic_bound();
    let mut witnesses: Vec<u64> = WITNESSES.to_vec();
    if !deterministic {
        witnesses.extend_from_slice(&EXTRA_WITNESSES);
    }
    miller_rabin_big(n, &witnesses)
}

fn deterministic_bound() -> Natural {
    static BOUND: OnceLock<Natural> = OnceLock::new();
    BOUND
        .get_or_init(|| DETERMINISTIC_BOUND_DIGITS.parse().unwrap())
        .clone()
}

fn miller_rabin_big(n: &Natural, witnesses: &[u64]) -> bool {
    let one = Natural::one();
    let two = Natural::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    'next_witness: for &a in witnesses {
        let a = Natural::from(a) % n;
        if a.is_zero() || a.is_one() || a == n_minus_1 {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'next_witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'next: for &a in &WITNESSES {
        let a = a % n;
        if a <= 1 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n + 1;
    if c <= 2 {
        return 2;
    }
    if c % 2 == 0 {
        c += 1;
    }
    while !is_prime_u64(c) {
        c += 2;
    }
    c
}

/// Largest prime strictly below `bound`, if any.
pub fn largest_prime_below(bound: u64) -> Option<u64> {
    if bound <= 2 {
        return None;
    }
    if bound == 3 {
        return Some(2);
    }
    let mut c = bound - 1;
    if c % 2 == 0 {
        if c == 2 {
            return Some(2);
        }
        c -= 1;
    }
    while c >= 3 {
        if is_prime_u64(c) {
            return Some(c);
        }
        c -= 2;
    }
    Some(2)
}

/// Ascending iterator over primes, starting from the smallest prime ≥ `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    let mut next = if from <= 2 { 1 } else { from - 1 };
    std::iter::from_fn(move || {
        next = next_prime_u64(next);
        Some(next)
    })
}

/// Simple sieve of Eratosthenes; returns all primes ≤ `limit`.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for 0..=limit (0 and 1 map to 0).
pub fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Num;

    #[test]
    fn known_values() {
        assert!(!is_prime(&Natural::from(1u32)));
        assert!(is_prime(&Natural::from(2u32)));
        assert!(is_prime(&Natural::from(1093u32)));
        // 2047 = 23 * 89
        assert!(!is_prime(&Natural::from(2047u32)));
        assert!(is_prime(&Natural::from(100000007u64)));
        assert!(is_prime(&Natural::from(17179869143u64)));
    }

    #[test]
    fn big_inputs() {
        // 2^89 - 1 is a Mersenne prime; 2^67 - 1 = 193707721 * 761838257287
        let m89 = (Natural::one() << 89) - Natural::one();
        assert!(is_prime(&m89));
        let m67 = (Natural::one() << 67) - Natural::one();
        assert!(!is_prime(&m67));
        // beyond the deterministic bound: a known prime (10^30 + 57)
        let p = Natural::from_str_radix("1000000000000000000000000000057", 10).unwrap();
        assert!(is_prime(&p));
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(largest_prime_below(8), Some(7));
        assert_eq!(largest_prime_below(32), Some(31));
        assert_eq!(largest_prime_below(112), Some(109));
        assert_eq!(largest_prime_below(3), Some(2));
        assert_eq!(largest_prime_below(2), None);
        assert_eq!(next_prime_u64(7), 11);
        let ps: Vec<u64> = primes_from(7).take(4).collect();
        assert_eq!(ps, vec![7, 11, 13, 17]);
    }

    #[test]
    fn sieve_agrees_with_miller_rabin() {
        let sieved = sieve_primes(2000);
        let checked: Vec<u64> = (2..=2000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieved, checked);
    }
}
