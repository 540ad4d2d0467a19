//! Canonical prime-power factorization.
//!
//! Strategy: trial division by primes up to 10^6, then Brent's cycle variant
//! of Pollard rho with fixed (seeded) parameters so runs are reproducible.
//! The budget is counted in rho iterations; when it runs out before a
//! cofactor splits, the result is a `PartialFactorization` carrying the
//! unsplit composites. Partial results are first-class: the chain engine
//! terminates branches on them instead of aborting.

use crate::primality::{is_prime, mul_mod_u64, sieve_primes};
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_primes(TRIAL_DIVISION_LIMIT))
}

/// Effort limit for the splitting phase, in rho iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 2_000_000,
        }
    }
}

impl FactorBudget {
    pub fn new(rho_iterations: u64) -> Self {
        FactorBudget { rho_iterations }
    }
}

/// Canonical factorization: strictly increasing primes, exponents ≥ 1.
/// The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
        }
    }

    /// Validates the canonical-form invariants: primes strictly increasing,
    /// each passing the primality test, exponents ≥ 1.
    pub fn new(factors: Vec<(Natural, u32)>) -> Result<Self> {
        for window in factors.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::Domain(
                    "factorization primes must be strictly increasing".into(),
                ));
            }
        }
        for (p, e) in &factors {
            if *e == 0 {
                return Err(Error::Domain("factorization exponents must be >= 1".into()));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
        }
        Ok(Factorization { factors })
    }

    pub fn from_u64_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(p, e)| (Natural::from(p), e))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reassemble the integer this factorization represents.
    pub fn value(&self) -> Natural {
        let mut n = Natural::one();
        for (p, e) in &self.factors {
            n *= p.pow(*e);
        }
        n
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exponent_of(&self, p: &Natural) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_odd(&self) -> bool {
        self.factors
            .first()
            .map(|(p, _)| p.is_odd())
            .unwrap_or(true)
    }

    /// All divisors, ascending. Refuses to enumerate more than `cap`.
    pub fn divisors(&self, cap: usize) -> Result<Vec<Natural>> {
        let count: u128 = self
            .factors
            .iter()
            .map(|(_, e)| (*e as u128) + 1)
            .product();
        if count > cap as u128 {
            return Err(Error::LimitExceeded {
                given: count.to_string(),
                max: cap.to_string(),
            });
        }
        let mut divs = vec![Natural::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            let mut pk = Natural::one();
            for _ in 0..=*e {
                for d in &divs {
                    next.push(d * &pk);
                }
                pk *= p;
            }
            divs = next;
        }
        divs.sort();
        Ok(divs)
    }
}

/// Result of a factorization attempt that ran out of budget: the split part
/// plus the composite cofactors that would not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub prime_factors: Vec<(Natural, u32)>,
    pub composite_cofactors: Vec<Natural>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome {
    Complete(Factorization),
    Partial(PartialFactorization),
}

impl FactorOutcome {
    pub fn complete(self) -> Result<Factorization> {
        match self {
            FactorOutcome::Complete(f) => Ok(f),
            FactorOutcome::Partial(_) => Err(Error::PartialFactorization),
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, FactorOutcome::Complete(_))
    }
}

/// Factor `n ≥ 1` within the given budget.
pub fn factor(n: &Natural, budget: FactorBudget) -> Result<FactorOutcome> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    if n.is_one() {
        return Ok(FactorOutcome::Complete(Factorization::one()));
    }

    let mut remaining = n.clone();
    let mut factors: Vec<(Natural, u32)> = Vec::new();

    for &p in trial_primes() {
        let pb = Natural::from(p);
        if &pb * &pb > remaining {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = remaining.div_rem(&pb);
            if r.is_zero() {
                remaining = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            factors.push((pb, e));
        }
        if remaining.is_one() {
            break;
        }
    }

    let mut composites: Vec<Natural> = Vec::new();
    if !remaining.is_one() {
        let mut iterations_left = budget.rho_iterations;
        let mut stack = vec![remaining];
        let mut split_primes: Vec<Natural> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(&m) {
                split_primes.push(m);
                continue;
            }
            match split_composite(&m, &mut iterations_left) {
                Some(d) => {
                    let q = &m / &d;
                    stack.push(d);
                    stack.push(q);
                }
                None => composites.push(m),
            }
        }
        split_primes.sort();
        for p in split_primes {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, e)) => *e += 1,
                None => factors.push((p, 1)),
            }
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    if composites.is_empty() {
        Ok(FactorOutcome::Complete(Factorization { factors }))
    } else {
        composites.sort();
        Ok(FactorOutcome::Partial(PartialFactorization {
            prime_factors: factors,
            composite_cofactors: composites,
        }))
    }
}

/// Factor with the default budget and require completeness.
pub fn factor_complete(n: &Natural) -> Result<Factorization> {
    factor(n, FactorBudget::default())?.complete()
}

pub fn factor_u64(n: u64, budget: FactorBudget) -> Result<FactorOutcome> {
    factor(&Natural::from(n), budget)
}

/// Find one nontrivial divisor of a known composite, spending iterations
/// from `left`. Fixed parameter sequence keeps this deterministic.
fn split_composite(n: &Natural, left: &mut u64) -> Option<Natural> {
    if n.is_even() {
        return Some(Natural::from(2u32));
    }
    // perfect squares defeat rho's random walk cheaply
    let root = n.sqrt();
    if &(&root * &root) == n {
        return Some(root);
    }
    if let Some(small) = n.to_u64() {
        return brent_u64(small, left).map(Natural::from);
    }
    brent_big(n, left)
}

fn brent_u64(n: u64, left: &mut u64) -> Option<u64> {
    for c in 1u64.. {
        if *left == 0 {
            return None;
        }
        if let Some(d) = brent_u64_once(n, c, left) {
            return Some(d);
        }
    }
    None
}

fn brent_u64_once(n: u64, c: u64, left: &mut u64) -> Option<u64> {
    let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
    const M: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = M.min(r - k);
            if *left < steps {
                *left = 0;
                return None;
            }
            *left -= steps;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += M;
        }
        r *= 2;
    }
    if g == n {
        g = 1;
        while g == 1 {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
        }
    }
    if g != n {
        Some(g)
    } else {
        None // cycle collapsed; caller retries with the next c
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brent_big(n: &Natural, left: &mut u64) -> Option<Natural> {
    let one = Natural::one();
    for c in 1u64.. {
        if *left == 0 {
            return None;
        }
        let cb = Natural::from(c);
        let f = |x: &Natural| (x * x + &cb) % n;
        let mut y = Natural::from(2u32);
        let mut r: u64 = 1;
        let mut q = Natural::one();
        let mut g = Natural::one();
        let mut x = Natural::zero();
        let mut ys = Natural::zero();
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = M.min(r - k);
                if *left < steps {
                    *left = 0;
                    return None;
                }
                *left -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            g = one.clone();
            while g.is_one() {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
