//! Path state for the chain search: the λ·μ·ν bookkeeping, Eulerian
//! exponent enumeration, the Lemma-X interval, and contradiction detection.

use super::{ChainConfig, ContradictionCode, P1_THRESHOLD, P2_THRESHOLD, P3_THRESHOLD};
use crate::primality::next_prime_u64;
use crate::rational::{ratio_u64, two, Rational};
use crate::{Error, Result};
use num_traits::{One, ToPrimitive};
use std::collections::BTreeMap;

/// Exponent of an initial component: exact, or unknown-beyond-B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainExponent {
    Finite(u32),
    Inf,
}

/// Admissible exponents for an initial component of prime `p` under the
/// ceiling `B`: even a ≥ 2 with p^{a+1} ≤ B, plus a ≡ 1 (mod 4) when p ≡ 1
/// (mod 4) and the special slot is open. Always ends with the ∞ marker
/// covering every exponent beyond the ceiling.
pub fn eulerian_exponents(p: u64, b: u64, special_open: bool) -> Vec<ChainExponent> {
    let mut finite: Vec<u32> = Vec::new();
    let mut a = 2u32;
    while pow_fits(p, a + 1, b) {
        finite.push(a);
        a += 2;
    }
    if special_open && p % 4 == 1 {
        let mut a = 1u32;
        while pow_fits(p, a + 1, b) {
            finite.push(a);
            a += 4;
        }
    }
    finite.sort_unstable();
    let mut out: Vec<ChainExponent> = finite.into_iter().map(ChainExponent::Finite).collect();
    out.push(ChainExponent::Inf);
    out
}

fn pow_fits(p: u64, e: u32, b: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc *= p as u128;
        if acc > b as u128 {
            return false;
        }
    }
    true
}

/// Largest e with p^e ≤ B (zero when p > B): the least exponent an
/// ∞-component could still have is derived from this.
fn b_zero(p: u64, b: u64) -> u32 {
    let mut e = 0u32;
    let mut acc: u128 = 1;
    loop {
        acc *= p as u128;
        if acc > b as u128 {
            return e;
        }
        e += 1;
    }
}

/// σ(p^a) for component-sized inputs (p^{a+1} ≤ B ≤ u64::MAX).
pub fn sigma_pp_u64(p: u64, a: u32) -> u64 {
    let mut sum: u128 = 1;
    let mut pk: u128 = 1;
    for _ in 0..a {
        pk *= p as u128;
        sum += pk;
    }
    u64::try_from(sum).expect("sigma of an in-budget component fits u64")
}

fn index_pp(p: u64, a: u32) -> Rational {
    let mut pk: u128 = 1;
    for _ in 0..a {
        pk *= p as u128;
    }
    Rational::new((sigma_pp_u64(p, a) as u128).into(), pk.into())
}

/// The λ/μ bookkeeping of one path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainState {
    /// Components with exact exponents, in path order.
    pub lambda: Vec<(u64, u32)>,
    /// Initial primes whose exponent went past B (exponent unknown ≥ b₀).
    pub mu_inf: Vec<u64>,
    /// Known primes not yet used as initial primes, ascending.
    pub consequents: Vec<u64>,
    /// Occurrences of each prime inside σ factorizations along the path.
    pub counts: BTreeMap<u64, u32>,
    /// The special prime, once an odd exponent fixes it.
    pub special: Option<u64>,
    /// Lemma X's last chosen candidate: every later new prime must exceed
    /// it, or contradiction S fires.
    pub min_remaining: Option<u64>,
    /// Set when a new prime undercut `min_remaining`.
    pub s_violation: Option<u64>,
    /// Set when a σ value carried the wrong power of 2 for its component.
    pub parity_violation: bool,
}

impl ChainState {
    pub fn new() -> Self {
        ChainState::default()
    }

    /// Count of distinct primes known along the path.
    pub fn k(&self) -> u32 {
        (self.lambda.len() + self.mu_inf.len() + self.consequents.len()) as u32
    }

    pub fn special_open(&self) -> bool {
        self.special.is_none()
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.lambda.iter().any(|&(q, _)| q == p)
            || self.mu_inf.contains(&p)
            || self.consequents.contains(&p)
    }

    fn mu_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.mu_inf.iter().chain(self.consequents.iter()).copied()
    }

    /// Assume the component p^a and absorb the factorization of σ(p^a).
    /// The prime may be new (a Lemma-X candidate) or a waiting consequent.
    pub fn apply_component(&mut self, p: u64, a: u32, sigma_factors: &[(u64, u32)]) {
        self.consequents.retain(|&q| q != p);
        self.lambda.push((p, a));
        if a % 2 == 1 {
            debug_assert!(self.special.is_none() && p % 4 == 1 && a % 4 == 1);
            self.special = Some(p);
        }

        // the single factor of 2 belongs to the special component only
        let two_mult = sigma_factors
            .iter()
            .find(|(q, _)| *q == 2)
            .map(|(_, e)| *e)
            .unwrap_or(0);
        let expected = if a % 2 == 1 { 1 } else { 0 };
        if two_mult != expected {
            self.parity_violation = true;
        }

        for &(q, e) in sigma_factors {
            if q == 2 {
                continue;
            }
            *self.counts.entry(q).or_insert(0) += e;
            if !self.contains_prime(q) {
                if let Some(r) = self.min_remaining {
                    if q < r {
                        self.s_violation = Some(q);
                    }
                }
                self.consequents.push(q);
            }
        }
        self.consequents.sort_unstable();
    }

    /// Assume the exponent of `p` lies beyond the ceiling: p^∞.
    pub fn apply_inf(&mut self, p: u64) {
        self.consequents.retain(|&q| q != p);
        if !self.mu_inf.contains(&p) {
            self.mu_inf.push(p);
            self.mu_inf.sort_unstable();
        }
    }

    pub fn index_lambda(&self) -> Rational {
        let mut acc = Rational::one();
        for &(p, a) in &self.lambda {
            acc *= index_pp(p, a);
        }
        acc
    }

    /// Conservative exponents β for the μ primes, mirroring the published
    /// assembly: ∞-initials get b₀ rounded up to even, consequents get 2,
    /// and — when the special prime is not fixed in λ — the smallest
    /// candidate q ≡ 1 (mod 4) keeps its odd option (b₀ for an ∞-initial
    /// with b₀ ≡ 1 (mod 4), 1 for a consequent). Giving the odd slot to the
    /// smallest candidate minimises the product, so the result is a true
    /// lower bound whichever prime really is special.
    pub fn mu_bar_exponents(&self, b: u64) -> Vec<(u64, u32)> {
        let mut betas: BTreeMap<u64, u32> = BTreeMap::new();
        for &q in &self.mu_inf {
            let b0 = b_zero(q, b);
            let beta = if b0 == 0 {
                2
            } else if b0 % 2 == 0 {
                b0
            } else {
                b0 + 1
            };
            betas.insert(q, beta);
        }
        for &q in &self.consequents {
            betas.insert(q, 2);
        }
        if self.special_open() {
            let q1_candidates = self
                .mu_inf
                .iter()
                .copied()
                .filter(|&q| q % 4 == 1 && b_zero(q, b) % 4 == 1);
            let q2_candidates = self.consequents.iter().copied().filter(|&q| q % 4 == 1);
            if let Some(q_star) = q1_candidates.chain(q2_candidates).min() {
                let beta = if self.mu_inf.contains(&q_star) {
                    b_zero(q_star, b)
                } else {
                    1
                };
                betas.insert(q_star, beta);
            }
        }
        betas.into_iter().collect()
    }

    /// I(λμ̄): the maintained lower bound on I(N) from the known part.
    pub fn index_lambda_mu_bar(&self, b: u64) -> Rational {
        let mut acc = self.index_lambda();
        for (q, beta) in self.mu_bar_exponents(b) {
            acc *= index_pp(q, beta);
        }
        acc
    }

    /// I(λμ^∞): the ceiling with every unknown exponent pushed to its
    /// limit value q/(q−1).
    pub fn index_lambda_mu_inf(&self) -> Rational {
        let mut acc = self.index_lambda();
        for q in self.mu_primes() {
            acc *= ratio_u64(q, q - 1);
        }
        acc
    }

    /// First applicable contradiction in the fixed priority order
    /// M2, M1, A, D, P1, P2, P3, S, N, Pi.
    pub fn detect_contradiction(&self, config: &ChainConfig) -> Option<ContradictionCode> {
        let t = config.t;
        let k = self.k();

        // M2: an exact exponent was exceeded by consequent occurrences
        if self.parity_violation
            || self
                .lambda
                .iter()
                .any(|(p, a)| self.counts.get(p).copied().unwrap_or(0) > *a)
        {
            return Some(ContradictionCode::M2);
        }
        if k > t {
            return Some(ContradictionCode::M1);
        }
        if self.index_lambda_mu_bar(config.b) > two() {
            return Some(ContradictionCode::A);
        }
        if k == t && self.index_lambda_mu_inf() < two() {
            return Some(ContradictionCode::D);
        }
        // Pigeonhole on the published large-prime floors: the primes above
        // each threshold, plus the t - k still unnamed ones, must cover the
        // demanded count.
        let slots = (t - k) as u64;
        let above = |threshold: u64| {
            self.lambda
                .iter()
                .map(|&(p, _)| p)
                .chain(self.mu_primes())
                .filter(|&p| p > threshold)
                .count() as u64
                + slots
        };
        if above(P1_THRESHOLD) < 1 {
            return Some(ContradictionCode::P1);
        }
        if t >= 2 && above(P2_THRESHOLD) < 2 {
            return Some(ContradictionCode::P2);
        }
        if t >= 3 && above(P3_THRESHOLD) < 3 {
            return Some(ContradictionCode::P3);
        }
        if self.s_violation.is_some() {
            return Some(ContradictionCode::S);
        }
        if k < t && self.consequents.is_empty() {
            // N is only meaningful when Lemma X has a finite interval
            if self.index_lambda_mu_inf() < two()
                && self
                    .lemma_x_candidates(config)
                    .map(|c| c.is_empty())
                    .unwrap_or(false)
            {
                return Some(ContradictionCode::N);
            }
        }
        if k == t && self.special_open() {
            let candidate = self.mu_primes().any(|q| q % 4 == 1);
            if !candidate {
                return Some(ContradictionCode::Pi);
            }
        }
        None
    }

    /// New primes admissible as the smallest remaining prime factor, per
    /// the Lemma-X interval. `None` when the interval is unbounded.
    pub fn lemma_x_candidates(&self, config: &ChainConfig) -> Option<Vec<u64>> {
        let (low, high) = match lemma_x_interval(self, config) {
            Ok(pair) => pair,
            Err(_) => return Some(Vec::new()),
        };
        let high = high?;
        let strict = !self.mu_inf.is_empty()
            || !self.consequents.is_empty()
            || config.t - self.k() >= 2;
        let mut out = Vec::new();
        // smallest odd prime >= low (or > low when strict)
        let floor = low.floor().to_integer().to_u64().unwrap_or(u64::MAX);
        let mut r = if floor <= 2 { 3 } else { next_prime_u64(floor.saturating_sub(1)) };
        loop {
            let rq = ratio_u64(r, 1);
            if rq >= high {
                break;
            }
            let above_low = if strict { rq > low } else { rq >= low };
            if above_low && r != 2 && !self.contains_prime(r) {
                out.push(r);
            }
            r = next_prime_u64(r);
        }
        Some(out)
    }
}

/// Lemma-Y's two maintained values for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaYValues {
    pub lower: Rational,
    pub ceiling: Rational,
}

pub fn lemma_y_values(state: &ChainState, config: &ChainConfig) -> LemmaYValues {
    LemmaYValues {
        lower: state.index_lambda_mu_bar(config.b),
        ceiling: state.index_lambda_mu_inf(),
    }
}

/// The interval Lemma X allows for the smallest remaining prime r₁:
/// low = I(λμ̄)/(2 − I(λμ̄)) (the r₁^{c₁−1} factor is taken as 1, weakening
/// but never unsounding the bound), and
/// high = (2 + I(λμ^∞)(w − 1))/(2 − I(λμ^∞)) when I(λμ^∞) < 2, unbounded
/// otherwise.
pub fn lemma_x_interval(
    state: &ChainState,
    config: &ChainConfig,
) -> Result<(Rational, Option<Rational>)> {
    let k = state.k();
    if k >= config.t {
        return Err(Error::Domain("Lemma X needs w >= 1 remaining primes".into()));
    }
    let w = config.t - k;
    let ibar = state.index_lambda_mu_bar(config.b);
    let two = two();
    if ibar >= two {
        return Err(Error::Domain(
            "I(lambda mu-bar) >= 2: contradiction A applies instead".into(),
        ));
    }
    let low = &ibar / (&two - &ibar);
    let iinf = state.index_lambda_mu_inf();
    let high = if iinf < two {
        let num = &two + &iinf * Rational::from_integer((w as u64 - 1).into());
        Some(num / (&two - &iinf))
    } else {
        None
    };
    Ok((low, high))
}
