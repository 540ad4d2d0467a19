//! Residue-class sieves for odd-perfect-number candidates, a CRT solver for
//! possibly non-coprime moduli, and the Euler-form decomposition.

use crate::factor::Factorization;
use crate::primality::sieve_primes;
use crate::{Error, Natural, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

/// A residue class: `residue` (mod `modulus`), with residue < modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    residue: Natural,
    modulus: Natural,
}

impl Congruence {
    pub fn new(residue: Natural, modulus: Natural) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::Domain("modulus must be >= 1".into()));
        }
        Ok(Congruence {
            residue: &residue % &modulus,
            modulus,
        })
    }

    pub fn from_u64(residue: u64, modulus: u64) -> Result<Self> {
        Self::new(Natural::from(residue), Natural::from(modulus))
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn holds_for(&self, n: &Natural) -> bool {
        (n % &self.modulus) == self.residue
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrtOutcome {
    Solution(Congruence),
    /// Some pair of congruences violates a_i ≡ a_j (mod gcd(n_i, n_j)).
    Incompatible,
}

/// Solve a simultaneous system x ≡ a_i (mod n_i). Moduli need not be
/// pairwise coprime; the solution, when it exists, is unique modulo the lcm.
pub fn crt_solve(congruences: &[Congruence]) -> Result<CrtOutcome> {
    if congruences.is_empty() {
        return Err(Error::Domain("empty congruence system".into()));
    }
    let mut acc = congruences[0].clone();
    for c in &congruences[1..] {
        match merge(&acc, c) {
            Some(next) => acc = next,
            None => return Ok(CrtOutcome::Incompatible),
        }
    }
    Ok(CrtOutcome::Solution(acc))
}

fn merge(a: &Congruence, b: &Congruence) -> Option<Congruence> {
    let m1 = BigInt::from(a.modulus.clone());
    let m2 = BigInt::from(b.modulus.clone());
    let r1 = BigInt::from(a.residue.clone());
    let r2 = BigInt::from(b.residue.clone());

    let ext = m1.extended_gcd(&m2);
    let g = ext.gcd;
    let diff = &r2 - &r1;
    let (q, rem) = diff.div_rem(&g);
    if !rem.is_zero() {
        return None;
    }
    let lcm = (&m1 / &g) * &m2;
    // x = r1 + m1 * (q * x_coeff mod (m2/g))
    let m2_over_g = &m2 / &g;
    let t = (q * ext.x).mod_floor(&m2_over_g);
    let x = (r1 + m1 * t).mod_floor(&lcm);
    Some(Congruence {
        residue: x.magnitude().clone(),
        modulus: lcm.magnitude().clone(),
    })
}

/// Touchard: an OPN is 1 (mod 12) or 9 (mod 36).
pub fn touchard_filter(n: &Natural) -> Result<bool> {
    if n.is_even() {
        return Err(Error::EvenInput);
    }
    let r12 = (n % Natural::from(12u32)).to_u64().unwrap();
    let r36 = (n % Natural::from(36u32)).to_u64().unwrap();
    Ok(r12 == 1 || r36 == 9)
}

pub fn touchard_filter_u64(n: u64) -> bool {
    n % 12 == 1 || n % 36 == 9
}

/// Roberts' refinement: 1 (mod 12), 117 (mod 468), or 81 (mod 324).
pub fn roberts_filter(n: &Natural) -> Result<bool> {
    if n.is_even() {
        return Err(Error::EvenInput);
    }
    Ok(roberts_filter_u64_parts(
        (n % Natural::from(12u32)).to_u64().unwrap(),
        (n % Natural::from(468u32)).to_u64().unwrap(),
        (n % Natural::from(324u32)).to_u64().unwrap(),
    ))
}

fn roberts_filter_u64_parts(r12: u64, r468: u64, r324: u64) -> bool {
    r12 == 1 || r468 == 117 || r324 == 81
}

pub fn roberts_filter_u64(n: u64) -> bool {
    roberts_filter_u64_parts(n % 12, n % 468, n % 324)
}

/// The Euler split of an odd number: N = p^k · m² with p ≡ k ≡ 1 (mod 4),
/// p prime, gcd(p, m) = 1, m odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerDecomposition {
    pub p: Natural,
    pub k: u32,
    pub m: Natural,
}

/// Decompose when the factorization has exactly one odd exponent, that
/// exponent is 1 (mod 4), and its prime is 1 (mod 4).
pub fn euler_decompose(f: &Factorization) -> Result<Option<EulerDecomposition>> {
    if !f.is_odd() {
        return Err(Error::EvenInput);
    }
    let odd_exponents: Vec<&(Natural, u32)> =
        f.factors().iter().filter(|(_, e)| e % 2 == 1).collect();
    if odd_exponents.len() != 1 {
        return Ok(None);
    }
    let (p, k) = (odd_exponents[0].0.clone(), odd_exponents[0].1);
    if k % 4 != 1 {
        return Ok(None);
    }
    if (&p % Natural::from(4u32)).to_u64().unwrap() != 1 {
        return Ok(None);
    }
    let mut m = Natural::one();
    for (q, e) in f.factors() {
        if *q != p {
            m *= q.pow(*e / 2);
        }
    }
    Ok(Some(EulerDecomposition { p, k, m }))
}

/// Reject when 3, 5 and 7 all divide n (no OPN is divisible by 105).
pub fn div105_reject(f: &Factorization) -> bool {
    [3u64, 5, 7]
        .iter()
        .all(|&p| f.factors().iter().any(|(q, _)| *q == Natural::from(p)))
}

pub const SIEVE_STAGES: [&str; 6] = [
    "odd",
    "touchard",
    "roberts",
    "105_free",
    "euler_form",
    "sigma_perfect",
];

/// Counts surviving each successive filter of the candidate pipeline, plus
/// any survivors of the full pipeline (expected: none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveReport {
    pub limit: u64,
    /// One count per entry of `SIEVE_STAGES`, weakly decreasing.
    pub stage_counts: Vec<u64>,
    pub found: Vec<u64>,
}

impl SieveReport {
    fn zero(limit: u64) -> Self {
        SieveReport {
            limit,
            stage_counts: vec![0; SIEVE_STAGES.len()],
            found: Vec::new(),
        }
    }

    fn absorb(&mut self, other: &SieveReport) {
        for (mine, theirs) in self.stage_counts.iter_mut().zip(&other.stage_counts) {
            *mine += theirs;
        }
        self.found.extend_from_slice(&other.found);
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "limit": self.limit,
            "stage_counts": SIEVE_STAGES
                .iter()
                .zip(&self.stage_counts)
                .map(|(name, count)| json!([name, count]))
                .collect::<Vec<_>>(),
            "found": self.found,
        })
    }
}

const SIEVE_LIMIT: u64 = 100_000_000;

/// Run the candidate pipeline over odd n in [3, limit]:
/// odd → Touchard → Roberts → 105-free → Euler form → σ(n) = 2n.
///
/// `threads` may partition the range; counts are summed in partition order
/// so the report does not depend on scheduling. `progress` emits one line
/// per 10^6 numbers on stderr.
pub fn opn_sieve(limit: u64, threads: usize, progress: bool) -> Result<SieveReport> {
    if limit > SIEVE_LIMIT {
        return Err(Error::LimitExceeded {
            given: limit.to_string(),
            max: SIEVE_LIMIT.to_string(),
        });
    }
    let threads = threads.max(1);
    // trial primes up to sqrt(limit): any surviving cofactor is prime
    let root = (limit as f64).sqrt() as u64 + 1;
    let primes = sieve_primes(root.max(3));

    let mut report = SieveReport::zero(limit);
    if limit < 3 {
        return Ok(report);
    }

    let chunk = ((limit / threads as u64) + 1).max(1_000);
    let mut spans = Vec::new();
    let mut lo = 3u64;
    while lo <= limit {
        let hi = (lo + chunk - 1).min(limit);
        spans.push((lo, hi));
        lo = hi + 1;
    }

    let primes_ref = &primes;
    let partials: Vec<SieveReport> = if threads == 1 {
        spans
            .iter()
            .map(|&(lo, hi)| sieve_span(lo, hi, primes_ref, progress))
            .collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = spans
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || sieve_span(lo, hi, primes_ref, progress)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    for partial in &partials {
        report.absorb(partial);
    }
    report.found.sort_unstable();
    Ok(report)
}

fn sieve_span(lo: u64, hi: u64, primes: &[u64], progress: bool) -> SieveReport {
    let mut r = SieveReport::zero(hi);
    let mut n = if lo % 2 == 0 { lo + 1 } else { lo };
    while n <= hi {
        if progress && n % 1_000_000 <= 1 {
            eprintln!("sieve: at {n}");
        }
        sieve_one(n, primes, &mut r);
        n += 2;
    }
    r
}

fn sieve_one(n: u64, primes: &[u64], r: &mut SieveReport) {
    r.stage_counts[0] += 1;
    if !touchard_filter_u64(n) {
        return;
    }
    r.stage_counts[1] += 1;
    if !roberts_filter_u64(n) {
        return;
    }
    r.stage_counts[2] += 1;
    if n % 105 == 0 {
        return;
    }
    r.stage_counts[3] += 1;

    // factor by trial division; cofactor left over is prime since the
    // prime list reaches sqrt(limit)
    let mut m = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in primes {
        if p * p > m {
            break;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if m > 1 {
        factors.push((m, 1));
    }

    // Euler form: exactly one odd exponent, on a prime ≡ 1 (mod 4), with
    // the exponent ≡ 1 (mod 4)
    let odd: Vec<&(u64, u32)> = factors.iter().filter(|(_, e)| e % 2 == 1).collect();
    if odd.len() != 1 || odd[0].1 % 4 != 1 || odd[0].0 % 4 != 1 {
        return;
    }
    r.stage_counts[4] += 1;

    let sigma: u64 = factors
        .iter()
        .map(|&(p, e)| {
            let mut s = 1u64;
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                s += pk;
            }
            s
        })
        .product();
    if sigma == 2 * n {
        r.stage_counts[5] += 1;
        r.found.push(n);
    }
}

/// True when no n ≤ limit has n and n + 1 both perfect. Scans the perfect
/// numbers produced by the Euclid–Euler enumeration; absence of odd entries
/// in range is backed by the 10^300 lower bound for any OPN.
pub fn consecutive_perfect_check(limit: u64) -> Result<bool> {
    if limit > SIEVE_LIMIT {
        return Err(Error::LimitExceeded {
            given: limit.to_string(),
            max: SIEVE_LIMIT.to_string(),
        });
    }
    let perfects = crate::arith::perfect_scan(&Natural::from(limit))?;
    let values: Vec<u64> = perfects
        .iter()
        .map(|c| c.value.to_u64().expect("fits u64 below 1e8"))
        .collect();
    Ok(values.windows(2).all(|w| w[1] != w[0] + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor_complete;

    fn c(r: u64, m: u64) -> Congruence {
        Congruence::from_u64(r, m).unwrap()
    }

    #[test]
    fn touchard_examples() {
        assert!(touchard_filter(&Natural::from(13u32)).unwrap());
        assert!(touchard_filter(&Natural::from(45u32)).unwrap());
        assert!(!touchard_filter(&Natural::from(35u32)).unwrap());
        assert!(touchard_filter(&Natural::from(12u32)).is_err());
    }

    #[test]
    fn roberts_examples() {
        assert!(roberts_filter(&Natural::from(117u32)).unwrap());
        assert!(roberts_filter(&Natural::from(81u32)).unwrap());
        assert!(!roberts_filter(&Natural::from(45u32)).unwrap());
        assert!(touchard_filter(&Natural::from(45u32)).unwrap());
    }

    #[test]
    fn crt_reproduces_roberts_classes() {
        let out = crt_solve(&[c(9, 36), c(0, 13)]).unwrap();
        assert_eq!(out, CrtOutcome::Solution(c(117, 468)));

        let out = crt_solve(&[c(9, 36), c(0, 81)]).unwrap();
        assert_eq!(out, CrtOutcome::Solution(c(81, 324)));

        let out = crt_solve(&[c(1, 6), c(1, 4)]).unwrap();
        assert_eq!(out, CrtOutcome::Solution(c(1, 12)));
    }

    #[test]
    fn crt_detects_incompatibility() {
        let out = crt_solve(&[c(1, 4), c(3, 8)]).unwrap();
        assert_eq!(out, CrtOutcome::Incompatible);
        assert!(crt_solve(&[]).is_err());
        assert!(Congruence::from_u64(1, 0).is_err());
    }

    #[test]
    fn crt_solution_satisfies_inputs() {
        let system = [c(2, 3), c(3, 5), c(2, 7)];
        match crt_solve(&system).unwrap() {
            CrtOutcome::Solution(sol) => {
                assert_eq!(sol, c(23, 105));
                for cg in &system {
                    assert!(cg.holds_for(sol.residue()));
                }
            }
            CrtOutcome::Incompatible => panic!("expected solution"),
        }
    }

    #[test]
    fn euler_decomposition_examples() {
        let f = Factorization::from_u64_pairs(&[(3, 2), (5, 1)]).unwrap();
        let d = euler_decompose(&f).unwrap().unwrap();
        assert_eq!(d.p, Natural::from(5u32));
        assert_eq!(d.k, 1);
        assert_eq!(d.m, Natural::from(3u32));

        let f = Factorization::from_u64_pairs(&[(3, 2), (5, 2)]).unwrap();
        assert_eq!(euler_decompose(&f).unwrap(), None);

        let f = Factorization::from_u64_pairs(&[(3, 1), (5, 2)]).unwrap();
        assert_eq!(euler_decompose(&f).unwrap(), None);

        let f = Factorization::from_u64_pairs(&[(2, 1), (3, 2)]).unwrap();
        assert!(euler_decompose(&f).is_err());
    }

    #[test]
    fn div105_examples() {
        let reject = |n: u64| div105_reject(&factor_complete(&Natural::from(n)).unwrap());
        assert!(reject(105));
        assert!(reject(945));
        assert!(!reject(15));
    }

    #[test]
    fn sieve_small_limits() {
        let r = opn_sieve(10_000, 1, false).unwrap();
        assert!(r.found.is_empty());
        for w in r.stage_counts.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let r1 = opn_sieve(1, 1, false).unwrap();
        assert_eq!(r1.stage_counts, vec![0; 6]);

        // partitioning must not change the report
        let a = opn_sieve(200_000, 1, false).unwrap();
        let b = opn_sieve(200_000, 4, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn consecutive_perfects_absent() {
        assert!(consecutive_perfect_check(10_000).unwrap());
        assert!(consecutive_perfect_check(29).unwrap());
    }

    #[test]
    fn report_json_shape() {
        let r = opn_sieve(100, 1, false).unwrap();
        let v = r.to_json();
        assert_eq!(v["limit"], 100);
        assert_eq!(v["stage_counts"].as_array().unwrap().len(), 6);
        assert_eq!(v["stage_counts"][0][0], "odd");
        assert!(v["found"].as_array().unwrap().is_empty());
    }
}
