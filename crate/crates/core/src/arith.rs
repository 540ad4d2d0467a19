//! The classical multiplicative arithmetic functions and the perfect-number
//! machinery built on them.

use crate::factor::Factorization;
use crate::primality::{is_prime, is_prime_u64};
use crate::rational::Rational;
use crate::{Error, Natural, Result};
use num_bigint::BigInt;

use num_traits::{One, ToPrimitive, Zero};

/// d, σ, φ, ω, Ω of one integer, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalValues {
    pub d: Natural,
    pub sigma: Natural,
    pub phi: Natural,
    pub omega: u32,
    pub big_omega: u64,
}

/// σ(p^e) = (p^{e+1} - 1)/(p - 1).
pub fn sigma_prime_power(p: &Natural, e: u32) -> Natural {
    (p.pow(e + 1) - Natural::one()) / (p - Natural::one())
}

/// Divisor sum from a complete factorization.
pub fn sigma(f: &Factorization) -> Natural {
    let mut acc = Natural::one();
    for (p, e) in f.factors() {
        acc *= sigma_prime_power(p, *e);
    }
    acc
}

/// All five classical values from a complete factorization.
pub fn classical(f: &Factorization) -> ClassicalValues {
    let mut d = Natural::one();
    let mut s = Natural::one();
    let mut phi = Natural::one();
    for (p, e) in f.factors() {
        d *= Natural::from(*e as u64 + 1);
        s *= sigma_prime_power(p, *e);
        phi *= p.pow(e - 1) * (p - Natural::one());
    }
    ClassicalValues {
        d,
        sigma: s,
        phi,
        omega: f.omega(),
        big_omega: f.big_omega(),
    }
}

const ORACLE_LIMIT: u64 = 10_000_000;

/// Independent brute-force divisor sum: loops every d ≤ n. Test oracle only,
/// so the input is capped.
pub fn divisor_sum_oracle(n: &Natural) -> Result<Natural> {
    let small = n.to_u64().filter(|&v| v <= ORACLE_LIMIT).ok_or_else(|| {
        Error::LimitExceeded {
            given: n.to_string(),
            max: ORACLE_LIMIT.to_string(),
        }
    })?;
    if small == 0 {
        return Err(Error::Domain("divisor sum of 0 is undefined".into()));
    }
    let mut sum: u64 = 0;
    for d in 1..=small {
        if small % d == 0 {
            sum += d;
        }
    }
    Ok(Natural::from(sum))
}

/// σ(n) for every n ≤ limit, as a table. Shared by bulk scans and tests.
pub fn sigma_sieve_u64(limit: usize) -> Vec<u64> {
    let mut sig = vec![0u64; limit + 1];
    if limit >= 1 {
        for v in sig.iter_mut().skip(1) {
            *v = 1;
        }
    }
    for d in 2..=limit {
        let mut j = d;
        while j <= limit {
            sig[j] += d as u64;
            j += d;
        }
    }
    sig
}

/// Euclid's construction: 2^{p-1}(2^p - 1) when 2^p - 1 is prime.
///
/// Composite exponents are pre-rejected (Cataldi–Fermat: a prime 2^p - 1
/// forces p prime), so the expensive primality test only runs on prime p.
pub fn euclid_euler(p: u64) -> Option<Natural> {
    if p < 2 || !is_prime_u64(p) {
        return None;
    }
    let mersenne = (Natural::one() << p) - Natural::one();
    if is_prime(&mersenne) {
        Some((Natural::one() << (p - 1)) * mersenne)
    } else {
        None
    }
}

/// A perfect number together with its Euclid-form certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectCertificate {
    pub value: Natural,
    pub exponent: u64,
    pub mersenne: Natural,
}

const PERFECT_SCAN_LIMIT_LOG10: u32 = 18;

/// Every perfect number ≤ `limit`, each carrying its Euclid certificate.
///
/// Completeness of the list rests on two facts: Euler's theorem that every
/// even perfect number has Euclid's form, and the Brent–Cohen–te Riele bound
/// that any odd perfect number exceeds 10^300, far above the supported
/// limit. No odd candidate can therefore appear in range.
pub fn perfect_scan(limit: &Natural) -> Result<Vec<PerfectCertificate>> {
    let max = Natural::from(10u32).pow(PERFECT_SCAN_LIMIT_LOG10);
    if *limit > max {
        return Err(Error::LimitExceeded {
            given: limit.to_string(),
            max: max.to_string(),
        });
    }
    let mut found = Vec::new();
    let mut p = 2u64;
    loop {
        let lower = if p == 2 {
            Natural::from(6u32)
        } else {
            // 2^{p-1} alone already exceeds any N = 2^{p-1}(2^p - 1) bound check
            Natural::one() << (p - 1)
        };
        if lower > *limit {
            break;
        }
        if let Some(n) = euclid_euler(p) {
            if n <= *limit {
                found.push(PerfectCertificate {
                    mersenne: (Natural::one() << p) - Natural::one(),
                    value: n,
                    exponent: p,
                });
            }
        }
        p = crate::primality::next_prime_u64(p);
    }
    Ok(found)
}

const VAN_DER_POL_LIMIT: u64 = 10_000;

/// Checks the divisor-sum recursion
/// (n²(n−1)/12)·σ(n) = Σ_{k=1}^{n−1} [5k(n−k) − n²] σ(k) σ(n−k)
/// as exact rationals.
pub fn van_der_pol_check(n: u64) -> Result<bool> {
    if !(2..=VAN_DER_POL_LIMIT).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "n must be in 2..={VAN_DER_POL_LIMIT}, got {n}"
        )));
    }
    let sig = sigma_sieve_u64(n as usize);
    let nn = BigInt::from(n);
    let lhs_num = &nn * &nn * (&nn - 1) * BigInt::from(sig[n as usize]);
    let lhs = Rational::new(lhs_num, BigInt::from(12));
    let mut rhs = BigInt::zero();
    for k in 1..n {
        let term = BigInt::from(5) * BigInt::from(k) * BigInt::from(n - k) - &nn * &nn;
        rhs += term * BigInt::from(sig[k as usize]) * BigInt::from(sig[(n - k) as usize]);
    }
    Ok(lhs == Rational::from_integer(rhs))
}

const TWO_SQUARES_LIMIT: u64 = 1_000_000_000_000;

/// Smallest representation n = a² + b² with a ≤ b, by brute force over a.
pub fn sum_of_two_squares(n: u64) -> Result<Option<(u64, u64)>> {
    if n > TWO_SQUARES_LIMIT {
        return Err(Error::LimitExceeded {
            given: n.to_string(),
            max: TWO_SQUARES_LIMIT.to_string(),
        });
    }
    let mut a = 0u64;
    while a * a * 2 <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Ok(Some((a, b)));
        }
        a += 1;
    }
    Ok(None)
}

/// The even-perfect property list checked by `verify even-perfect-props`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenPerfectProperties {
    pub value: Natural,
    pub ends_in_6_or_8: bool,
    pub triangular: bool,
    pub digital_root_one_or_six: bool,
    pub binary_shape: bool,
}

impl EvenPerfectProperties {
    pub fn all_hold(&self) -> bool {
        self.ends_in_6_or_8
            && self.triangular
            && self.digital_root_one_or_six
            && self.binary_shape
    }
}

/// Check the classical even-perfect properties of one certificate:
/// last digit 6 or 8; triangular; digital root 1 (except N = 6); binary
/// form of p ones followed by p−1 zeros.
pub fn even_perfect_properties(cert: &PerfectCertificate) -> EvenPerfectProperties {
    let n = &cert.value;
    let last = (n % Natural::from(10u32)).to_u64().unwrap();
    let ends_in_6_or_8 = last == 6 || last == 8;

    // triangular: 8n + 1 a perfect square
    let disc = n * Natural::from(8u32) + Natural::one();
    let root = disc.sqrt();
    let triangular = &root * &root == disc;

    let dr = (n % Natural::from(9u32)).to_u64().unwrap();
    let digital_root = if dr == 0 { 9 } else { dr };
    let digital_root_one_or_six = if *n == Natural::from(6u32) {
        digital_root == 6
    } else {
        digital_root == 1
    };

    let bits = format!("{:b}", n);
    let p = cert.exponent as usize;
    let binary_shape =
        bits.len() == 2 * p - 1 && bits[..p].bytes().all(|b| b == b'1') && bits[p..]
            .bytes()
            .all(|b| b == b'0');

    EvenPerfectProperties {
        value: n.clone(),
        ends_in_6_or_8,
        triangular,
        digital_root_one_or_six,
        binary_shape,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor_complete;

    fn f(n: u64) -> Factorization {
        factor_complete(&Natural::from(n)).unwrap()
    }

    #[test]
    fn sigma_worked_examples() {
        assert_eq!(sigma(&f(28)), Natural::from(56u32));
        assert_eq!(sigma(&f(36)), Natural::from(91u32));
        assert_eq!(sigma(&f(1024)), Natural::from(2047u32));
        assert_eq!(sigma(&f(2145)), Natural::from(4032u32));
        assert_eq!(sigma(&f(1)), Natural::one());
    }

    #[test]
    fn classical_worked_examples() {
        let c28 = classical(&f(28));
        assert_eq!(c28.d, Natural::from(6u32));
        assert_eq!(c28.phi, Natural::from(12u32));

        let c36 = classical(&f(36));
        assert_eq!(c36.d, Natural::from(9u32));
        assert_eq!(c36.phi, Natural::from(12u32));
        assert_eq!(c36.omega, 2);
        assert_eq!(c36.big_omega, 4);

        let c1024 = classical(&f(1024));
        assert_eq!(c1024.d, Natural::from(11u32));
        assert_eq!(c1024.phi, Natural::from(512u32));
        assert_eq!(c1024.omega, 1);
        assert_eq!(c1024.big_omega, 10);

        let c2145 = classical(&f(2145));
        assert_eq!(c2145.d, Natural::from(16u32));
        assert_eq!(c2145.sigma, Natural::from(4032u32));
        assert_eq!(c2145.phi, Natural::from(960u32));
        assert_eq!(c2145.omega, 4);
        assert_eq!(c2145.big_omega, 4);
    }

    #[test]
    fn oracle_values() {
        assert_eq!(divisor_sum_oracle(&Natural::from(6u32)).unwrap(), Natural::from(12u32));
        assert_eq!(divisor_sum_oracle(&Natural::from(28u32)).unwrap(), Natural::from(56u32));
        assert_eq!(divisor_sum_oracle(&Natural::one()).unwrap(), Natural::one());
        assert!(divisor_sum_oracle(&Natural::from(ORACLE_LIMIT + 1)).is_err());
    }

    #[test]
    fn euclid_euler_construction() {
        assert_eq!(euclid_euler(2), Some(Natural::from(6u32)));
        assert_eq!(euclid_euler(5), Some(Natural::from(496u32)));
        assert_eq!(euclid_euler(11), None); // 2047 = 23 * 89
        assert_eq!(euclid_euler(4), None); // composite exponent
        assert_eq!(euclid_euler(1), None);
    }

    #[test]
    fn perfect_scan_known_prefix() {
        let small = perfect_scan(&Natural::from(10_000u32)).unwrap();
        let values: Vec<u64> = small.iter().map(|c| c.value.to_u64().unwrap()).collect();
        assert_eq!(values, vec![6, 28, 496, 8128]);

        let none = perfect_scan(&Natural::from(5u32)).unwrap();
        assert!(none.is_empty());

        let bigger = perfect_scan(&Natural::from(100_000_000u64)).unwrap();
        let values: Vec<u64> = bigger.iter().map(|c| c.value.to_u64().unwrap()).collect();
        assert_eq!(values, vec![6, 28, 496, 8128, 33550336]);
        for cert in &bigger {
            assert_eq!(
                &cert.value,
                &((Natural::one() << (cert.exponent - 1)) * &cert.mersenne)
            );
        }
    }

    #[test]
    fn van_der_pol_small_cases() {
        // n = 3: both sides equal 6; n = 2: both sides equal 1
        assert!(van_der_pol_check(3).unwrap());
        assert!(van_der_pol_check(2).unwrap());
        assert!(van_der_pol_check(1).is_err());
    }

    #[test]
    fn two_squares_examples() {
        assert_eq!(sum_of_two_squares(5).unwrap(), Some((1, 2)));
        assert_eq!(sum_of_two_squares(13).unwrap(), Some((2, 3)));
        assert_eq!(sum_of_two_squares(3).unwrap(), None);
        assert_eq!(sum_of_two_squares(0).unwrap(), Some((0, 0)));
    }

    #[test]
    fn even_perfect_property_list() {
        let certs = perfect_scan(&Natural::from(10u64).pow(18)).unwrap();
        assert_eq!(certs.len(), 7);
        for cert in &certs {
            let props = even_perfect_properties(cert);
            assert!(props.all_hold(), "failed for {}", cert.value);
        }
    }
}
