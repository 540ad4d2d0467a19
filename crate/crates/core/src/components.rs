//! The Euler-factor component calculus: for a split N = p^k·m², the ratios
//! ρ and μ between σ values and the two components, the sharp X + Y bounds,
//! the magnitude trichotomy, the 2/3 divisibility filter, and the witness
//! that the (X, Y) correspondence misses rational points.
//!
//! Every operation takes arbitrary (p, k, m) satisfying the congruence and
//! coprimality preconditions, not just genuine OPN splits (none are known);
//! each theorem-derived implication is re-checked on the inputs rather than
//! assumed.

use crate::arith::{sigma, sigma_prime_power};
use crate::factor::{factor_complete, Factorization};
use crate::primality::is_prime_u64;
use crate::rational::{ratio, ratio_u64, two, Rational};
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

fn check_split(p: u64, k: u32, m: &Natural) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p % 4 != 1 {
        return Err(Error::Congruence(format!("p = {p} must be 1 mod 4")));
    }
    if k % 4 != 1 {
        return Err(Error::Congruence(format!("k = {k} must be 1 mod 4")));
    }
    if m.is_zero() || m.is_even() {
        return Err(Error::Congruence(format!("m = {m} must be odd and positive")));
    }
    if (m % Natural::from(p)).is_zero() {
        return Err(Error::NotCoprime {
            a: p.to_string(),
            b: m.to_string(),
        });
    }
    Ok(())
}

/// The seven ratios attached to a split N = p^k·m².
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentRatios {
    /// σ(p^k)/p^k
    pub rho1: Rational,
    /// σ(p^k)/m²
    pub rho2: Rational,
    /// σ(p^k)/m
    pub rho3: Rational,
    /// σ(m²)/m²
    pub mu1: Rational,
    /// σ(m²)/p^k
    pub mu2: Rational,
    /// σ(m)/m
    pub mu3: Rational,
    /// σ(m)/p^k
    pub mu4: Rational,
}

pub fn component_ratios(p: u64, k: u32, m: &Natural) -> Result<ComponentRatios> {
    check_split(p, k, m)?;
    let pk = Natural::from(p).pow(k);
    let sig_pk = sigma_prime_power(&Natural::from(p), k);
    let m2 = m * m;
    let sig_m2 = sigma(&factor_complete(&m2)?);
    let sig_m = sigma(&factor_complete(m)?);
    Ok(ComponentRatios {
        rho1: ratio(&sig_pk, &pk)?,
        rho2: ratio(&sig_pk, &m2)?,
        rho3: ratio(&sig_pk, m)?,
        mu1: ratio(&sig_m2, &m2)?,
        mu2: ratio(&sig_m2, &pk)?,
        mu3: ratio(&sig_m, m)?,
        mu4: ratio(&sig_m, &pk)?,
    })
}

/// The four bound values (p+1)/p, p/(p−1), 2(p−1)/p, 2p/(p+1) framing the
/// Euler-factor indices, with the middle inequality p/(p−1) < 2(p−1)/p
/// certified for p ≥ 5.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactorBounds {
    pub lower_x: Rational,
    pub upper_x: Rational,
    pub lower_y: Rational,
    pub upper_y: Rational,
}

pub fn euler_factor_bounds(p: u64) -> Result<EulerFactorBounds> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p % 4 != 1 {
        return Err(Error::Congruence(format!("p = {p} must be 1 mod 4")));
    }
    if p < 5 {
        return Err(Error::OutOfRange("no Euler prime below 5".into()));
    }
    let bounds = EulerFactorBounds {
        lower_x: ratio_u64(p + 1, p),
        upper_x: ratio_u64(p, p - 1),
        lower_y: ratio_u64(2 * (p - 1), p),
        upper_y: ratio_u64(2 * p, p + 1),
    };
    debug_assert!(bounds.upper_x < bounds.lower_y);
    Ok(bounds)
}

/// The sharp window L(p) < X + Y ≤ U(p) for X = σ(p^k)/p^k, Y = σ(m²)/m²:
/// L(p) = (3p² − 4p + 2)/(p(p − 1)), U(p) = (3p² + 2p + 1)/(p(p + 1)).
pub fn xy_sum_bounds(p: u64) -> Result<(Rational, Rational)> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p % 4 != 1 || p < 5 {
        return Err(Error::Congruence(format!("p = {p} must be a prime 1 mod 4")));
    }
    let l = ratio_u64(3 * p * p - 4 * p + 2, p * (p - 1));
    let u = ratio_u64(3 * p * p + 2 * p + 1, p * (p + 1));
    debug_assert!(l < u);
    Ok((l, u))
}

/// Magnitude relation between p^k and m decided by ρ₃ = σ(p^k)/m against 1
/// and against μ₄ = σ(m)/p^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrichotomyCase {
    /// ρ₃ < 1 forces p^k < m.
    Rho3Below1,
    /// 1 < ρ₃ < μ₄ forces (4/5)m < p^k < √2·m.
    MiddleBand,
    /// μ₄ < ρ₃ (with 1 < ρ₃) forces m < p^k.
    Mu4BelowRho3,
}

/// Apply the trichotomy and re-check its implied magnitude inequality
/// directly on p^k and m. ρ₃ = 1 or ρ₃ = μ₄ cannot happen for an OPN
/// split, so those inputs are rejected as inconsistent.
pub fn trichotomy(p: u64, k: u32, m: &Natural) -> Result<TrichotomyCase> {
    let ratios = component_ratios(p, k, m)?;
    let one = Rational::one();
    if ratios.rho3 == one || ratios.rho3 == ratios.mu4 {
        return Err(Error::Domain(
            "rho3 = 1 or rho3 = mu4: not a possible OPN split".into(),
        ));
    }
    let pk = Natural::from(p).pow(k);
    let case = if ratios.rho3 < one {
        if pk >= *m {
            return Err(Error::Domain("rho3 < 1 but p^k >= m".into()));
        }
        TrichotomyCase::Rho3Below1
    } else if ratios.rho3 < ratios.mu4 {
        // (4/5) m < p^k < sqrt(2) m, checked as 5 p^k > 4 m and p^{2k} < 2 m^2
        let five_pk = Natural::from(5u32) * &pk;
        let four_m = Natural::from(4u32) * m;
        let pk_sq = &pk * &pk;
        let two_m2 = Natural::from(2u32) * m * m;
        if five_pk <= four_m || pk_sq >= two_m2 {
            return Err(Error::Domain("middle band bounds failed on inputs".into()));
        }
        TrichotomyCase::MiddleBand
    } else {
        if pk <= *m {
            return Err(Error::Domain("mu4 < rho3 but p^k <= m".into()));
        }
        TrichotomyCase::Mu4BelowRho3
    };
    Ok(case)
}

/// Per-prime verdicts for σ(pᵢ^αᵢ) ≤ (2/3)·N/pᵢ^αᵢ, plus the corollary test
/// N^{2−r} ≤ (1/3)(2/3)^{r−1}. A candidate failing any per-prime check is
/// rejected as a possible OPN.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoThirdsReport {
    pub verdicts: Vec<(Natural, u32, bool)>,
    pub overall: bool,
    pub corollary_holds: bool,
}

pub fn two_thirds_filter(f: &Factorization) -> Result<TwoThirdsReport> {
    if !f.is_odd() {
        return Err(Error::EvenInput);
    }
    let n = f.value();
    let mut verdicts = Vec::new();
    let mut overall = true;
    for (p, a) in f.factors() {
        let part = p.pow(*a);
        let sig_part = sigma_prime_power(p, *a);
        let rest = &n / &part;
        // sigma(p^a) <= (2/3) * rest  ⇔  3 sigma(p^a) <= 2 rest
        let holds = Natural::from(3u32) * &sig_part <= Natural::from(2u32) * &rest;
        overall &= holds;
        verdicts.push((p.clone(), *a, holds));
    }
    // N^{2-r} <= (1/3)(2/3)^{r-1}  ⇔  3^r N^2 <= 2^{r-1} N^r  (for r >= 1)
    let r = f.omega();
    let corollary_holds = if r == 0 {
        false
    } else {
        let lhs = Natural::from(3u32).pow(r) * &n * &n;
        let rhs = Natural::from(2u32).pow(r - 1) * n.pow(r);
        lhs <= rhs
    };
    Ok(TwoThirdsReport {
        verdicts,
        overall,
        corollary_holds,
    })
}

/// A rational point (X₀, Y₀) on XY = 2 inside the admissible region whose
/// X₀ = σ(pq)/pq is not σ(r^s)/r^s for any prime power (prime powers are
/// solitary), witnessing that the correspondence is not onto.
#[derive(Debug, Clone, PartialEq)]
pub struct SurjectivityWitness {
    pub x0: Rational,
    pub y0: Rational,
    pub region_x: bool,
    pub region_y: bool,
    pub region_sum: bool,
}

pub fn non_surjectivity_witness(p: u64, q: u64) -> Result<SurjectivityWitness> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if !(5 < p && p < q) {
        return Err(Error::OutOfRange(format!("need 5 < p < q, got {p}, {q}")));
    }
    let x0 = Rational::new(
        ((p + 1) as u128 * (q + 1) as u128).into(),
        (p as u128 * q as u128).into(),
    );
    let y0 = two() / &x0;
    let region_x = Rational::one() < x0 && x0 < ratio_u64(5, 4);
    let region_y = ratio_u64(8, 5) < y0 && y0 < two();
    let sum = &x0 + &y0;
    let region_sum = ratio_u64(57, 20) < sum && sum < ratio_u64(3, 1);
    Ok(SurjectivityWitness {
        x0,
        y0,
        region_x,
        region_y,
        region_sum,
    })
}

/// Structural exclusions for a split: p^k ≠ m²; σ(p^k) ≠ σ(m²) by parity;
/// and the integrality chain for μ₂ = σ(m²)/p^k (p^k | σ(m²) with μ₂ odd
/// and ≥ 3). Any violation disqualifies the split as a possible OPN.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralFacts {
    pub pk_not_m_squared: bool,
    pub sigma_parity_distinct: bool,
    pub mu2_integral: bool,
    pub mu2_odd_and_at_least_3: bool,
}

impl StructuralFacts {
    pub fn qualifies(&self) -> bool {
        self.pk_not_m_squared
            && self.sigma_parity_distinct
            && self.mu2_integral
            && self.mu2_odd_and_at_least_3
    }
}

pub fn structural_no_gos(p: u64, k: u32, m: &Natural) -> Result<StructuralFacts> {
    check_split(p, k, m)?;
    let pk = Natural::from(p).pow(k);
    let m2 = m * m;
    let sig_pk = sigma_prime_power(&Natural::from(p), k);
    let sig_m2 = sigma(&factor_complete(&m2)?);

    let pk_not_m_squared = pk != m2;
    // sigma(p^k) ≡ 2 (mod 4) while sigma(m²) is odd
    let sigma_parity_distinct = (&sig_pk % Natural::from(4u32)) == Natural::from(2u32)
        && sig_m2.is_odd()
        && sig_pk != sig_m2;
    let (q, r) = sig_m2.div_rem(&pk);
    let mu2_integral = r.is_zero();
    let mu2_odd_and_at_least_3 = mu2_integral && q.is_odd() && q >= Natural::from(3u32);
    Ok(StructuralFacts {
        pk_not_m_squared,
        sigma_parity_distinct,
        mu2_integral,
        mu2_odd_and_at_least_3,
    })
}

/// I(p^k)·I(m) sits in (2√10/5, 2); both ends are checked without leaving
/// the rationals by squaring (the left against 8/5).
pub fn index_product_band(p: u64, k: u32, m: &Natural) -> Result<(Rational, bool)> {
    check_split(p, k, m)?;
    let pk = Natural::from(p).pow(k);
    let sig_pk = sigma_prime_power(&Natural::from(p), k);
    let sig_m = sigma(&factor_complete(m)?);
    let product = ratio(&(&sig_pk * &sig_m), &(&pk * m))?;
    let squared = &product * &product;
    let within = squared > ratio_u64(8, 5) && product < two();
    Ok((product, within))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_fraction;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn ratios_worked_examples() {
        let r = component_ratios(5, 1, &nat(3)).unwrap();
        assert_eq!(r.rho1, ratio_u64(6, 5));
        assert_eq!(r.mu1, ratio_u64(13, 9));
        assert_eq!(&r.rho1 * &r.mu1, ratio_u64(26, 15));
        assert_eq!(&r.rho2 * &r.mu2, ratio_u64(26, 15));

        let r = component_ratios(13, 1, &nat(3)).unwrap();
        assert_eq!(r.rho3, ratio_u64(14, 3));
        assert_eq!(r.mu4, ratio_u64(4, 13));

        let r = component_ratios(5, 1, &Natural::one()).unwrap();
        assert_eq!(r.mu1, Rational::one());
        assert_eq!(r.rho2, ratio_u64(6, 1));
    }

    #[test]
    fn ratio_preconditions() {
        assert!(component_ratios(7, 1, &nat(3)).is_err()); // 7 = 3 mod 4
        assert!(component_ratios(5, 2, &nat(3)).is_err()); // k even
        assert!(component_ratios(5, 1, &nat(6)).is_err()); // m even
        assert!(component_ratios(5, 1, &nat(15)).is_err()); // gcd(p, m) > 1
    }

    #[test]
    fn euler_factor_bound_values() {
        let b = euler_factor_bounds(5).unwrap();
        assert_eq!(b.lower_x, ratio_u64(6, 5));
        assert_eq!(b.upper_x, ratio_u64(5, 4));
        assert_eq!(b.lower_y, ratio_u64(8, 5));
        assert_eq!(b.upper_y, ratio_u64(5, 3));

        let b = euler_factor_bounds(13).unwrap();
        assert_eq!(b.lower_x, ratio_u64(14, 13));
        assert_eq!(b.upper_x, ratio_u64(13, 12));
        assert_eq!(b.lower_y, ratio_u64(24, 13));
        assert_eq!(b.upper_y, ratio_u64(13, 7));

        assert!(euler_factor_bounds(7).is_err());
    }

    #[test]
    fn xy_bound_values() {
        let (l, u) = xy_sum_bounds(5).unwrap();
        assert_eq!(l, ratio_u64(57, 20));
        assert_eq!(u, ratio_u64(43, 15));
        let (l13, _) = xy_sum_bounds(13).unwrap();
        assert_eq!(l13, ratio_u64(457, 156));
    }

    #[test]
    fn trichotomy_examples() {
        assert_eq!(trichotomy(5, 1, &nat(13)).unwrap(), TrichotomyCase::Rho3Below1);
        assert_eq!(trichotomy(13, 1, &nat(3)).unwrap(), TrichotomyCase::Mu4BelowRho3);
        assert_eq!(trichotomy(5, 1, &nat(9)).unwrap(), TrichotomyCase::Rho3Below1);
    }

    #[test]
    fn two_thirds_rejects_945() {
        // 945 = 3^3 * 5 * 7: sigma(27) = 40 > (2/3)(35)
        let f = factor_complete(&nat(945)).unwrap();
        let report = two_thirds_filter(&f).unwrap();
        assert!(!report.overall);
        let v3 = report
            .verdicts
            .iter()
            .find(|(p, _, _)| *p == nat(3))
            .unwrap();
        assert!(!v3.2);
    }

    #[test]
    fn two_thirds_prime_power_rejected_by_corollary() {
        let f = factor_complete(&nat(243)).unwrap();
        let report = two_thirds_filter(&f).unwrap();
        assert!(!report.corollary_holds);
        assert!(!report.overall);
        assert!(two_thirds_filter(&factor_complete(&nat(12)).unwrap()).is_err());
    }

    #[test]
    fn surjectivity_witness_values() {
        let w = non_surjectivity_witness(7, 11).unwrap();
        assert_eq!(w.x0, ratio_u64(96, 77));
        assert!(w.region_x && w.region_y && w.region_sum);

        let w = non_surjectivity_witness(7, 13).unwrap();
        assert_eq!(w.x0, ratio_u64(16, 13));
        let w = non_surjectivity_witness(11, 13).unwrap();
        assert_eq!(w.x0, ratio_u64(168, 143));
        assert!(non_surjectivity_witness(5, 11).is_err());
        assert!(non_surjectivity_witness(11, 7).is_err());
    }

    #[test]
    fn structural_facts_examples() {
        // (5,1,3): mu2 = 13/5 not integral
        let facts = structural_no_gos(5, 1, &nat(3)).unwrap();
        assert!(!facts.mu2_integral);
        assert!(!facts.qualifies());

        // (5,1,13): p^k = 5 != 169
        let facts = structural_no_gos(5, 1, &nat(13)).unwrap();
        assert!(facts.pk_not_m_squared);
        assert!(facts.sigma_parity_distinct);
    }

    #[test]
    fn index_band_is_exact() {
        let (product, _) = index_product_band(5, 1, &nat(3)).unwrap();
        assert_eq!(product, parse_fraction("24/15").unwrap());
    }
}
