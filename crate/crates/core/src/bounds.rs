//! The inequality calculus for hypothetical odd perfect numbers: product
//! bounds over prime floors, crude size bounds, and the explicit
//! per-position bounds on the ordered prime factors q₁ < … < q_t.
//!
//! Named constants consumed from the literature: the three largest-prime
//! lower bounds 101 (Iannucci), 10007 (Iannucci), 100000007 (Goto–Ohno);
//! Grün's q₁ < (2t+6)/3; Kishore's q_i < 2^{2^{i−1}}(t−i+1) for 2 ≤ i ≤ 6;
//! Nielsen's N < 2^{4^t}; the Brent–Cohen–te Riele bound N > 10^300; and
//! the Suryanarayana–Hagis window 0.596 < Σ 1/p < 0.694.

use crate::primality::{is_prime_u64, largest_prime_below, primes_from};
use crate::rational::{ratio_u64, Rational};
use crate::{Error, Natural, Result};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;
use std::cmp::Ordering;

/// Lower bounds for the three largest prime factors of any OPN.
pub const LARGE_PRIME_FLOORS: [u64; 3] = [101, 10_007, 100_000_007];

/// Exact ∏ p/(p−1) over strictly increasing prime floors. A result ≤ 2
/// contradicts perfection with those floors.
pub fn index_product_upper(prime_floors: &[u64]) -> Result<Rational> {
    for w in prime_floors.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Domain("floors must be strictly increasing".into()));
        }
    }
    let mut acc = Rational::one();
    for &p in prime_floors {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        acc *= ratio_u64(p, p - 1);
    }
    Ok(acc)
}

/// Exact ∏ (1 + 1/p + … + 1/p^β) over distinct primes. A result > 2
/// contradicts perfection with those exponent floors.
pub fn truncated_index_lower(components: &[(u64, u32)]) -> Result<Rational> {
    let mut seen = std::collections::BTreeSet::new();
    let mut acc = Rational::one();
    for &(p, beta) in components {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !seen.insert(p) {
            return Err(Error::Domain(format!("duplicate prime {p}")));
        }
        acc *= truncated_prime_index(p, beta);
    }
    Ok(acc)
}

/// 1 + 1/p + … + 1/p^β = σ(p^β)/p^β as an exact rational.
pub fn truncated_prime_index(p: u64, beta: u32) -> Rational {
    let pb = BigInt::from(p);
    let num = pb.pow(beta + 1) - BigInt::one();
    let den = pb.pow(beta) * (pb - BigInt::one());
    Rational::new(num, den)
}

/// AM–GM lower bound: an OPN with exponents α_i exceeds (∏(α_i+1)/2)².
/// Returned as the floor of the exact square; compare N strictly greater.
pub fn crude_lower_bound(alphas: &[u32]) -> Result<Natural> {
    if alphas.is_empty() {
        return Err(Error::Domain("need at least one exponent".into()));
    }
    let mut prod = Natural::one();
    for &a in alphas {
        prod *= Natural::from(a as u64 + 1);
    }
    Ok(&prod * &prod / Natural::from(4u32))
}

/// Largest prime strictly below Grün's bound (2t + 6)/3 for q₁.
pub fn grun_bound(t: u32) -> Result<u64> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be >= 1".into()));
    }
    // strictly below (2t+6)/3: the bound may be fractional, so search below
    // ceil((2t+6)/3); candidates p need 3p < 2t+6
    let ceiling = (2 * t as u64 + 6).div_ceil(3);
    let mut candidate = largest_prime_below(ceiling + 1);
    while let Some(p) = candidate {
        if 3 * p < 2 * t as u64 + 6 {
            return Ok(p);
        }
        candidate = largest_prime_below(p);
    }
    Err(Error::OutOfRange(format!("no prime below (2*{t}+6)/3")))
}

/// Largest prime strictly below Kishore's bound 2^{2^{i−1}}(t−i+1),
/// valid for positions 2 ≤ i ≤ 6.
pub fn kishore_bound(i: u32, t: u32) -> Result<u64> {
    if !(2..=6).contains(&i) {
        return Err(Error::OutOfRange(format!("position i = {i} not in 2..=6")));
    }
    if i > t {
        return Err(Error::OutOfRange(format!("position {i} exceeds t = {t}")));
    }
    let bound = (1u64 << (1 << (i - 1))) * (t - i + 1) as u64;
    largest_prime_below(bound)
        .ok_or_else(|| Error::OutOfRange(format!("no prime below {bound}")))
}

/// Floor list used by `omega_floor_contradiction`: consecutive primes from
/// `q1_floor`, with each of the top three positions raised to the published
/// large-prime floors when those are bigger.
pub fn contradiction_floors(q1_floor: u64, t: u32) -> Result<Vec<u64>> {
    if !is_prime_u64(q1_floor) {
        return Err(Error::NotPrime(q1_floor.to_string()));
    }
    let t = t as usize;
    let consecutive: Vec<u64> = primes_from(q1_floor).take(t).collect();
    let mut floors = consecutive;
    let start = t.saturating_sub(3);
    for (offset, slot) in floors[start..].iter_mut().enumerate() {
        let constant = LARGE_PRIME_FLOORS[3 - (t - start) + offset];
        if constant > *slot {
            *slot = constant;
        }
    }
    Ok(floors)
}

/// Evaluate ∏ p/(p−1) over `contradiction_floors(q1_floor, t)`;
/// `contradicted` reports whether the product fell below 2.
pub fn omega_floor_contradiction(q1_floor: u64, t: u32) -> Result<(Rational, bool)> {
    let floors = contradiction_floors(q1_floor, t)?;
    let product = index_product_upper(&floors)?;
    let contradicted = product < crate::rational::two();
    Ok((product, contradicted))
}

/// Published rejection product for the q₂ ≥ 13 test at t = 9: floors
/// {3, 13, 17, 19, 23, 29} plus the three large-prime floors.
pub fn q2_rejection_product() -> Rational {
    let mut floors = vec![3, 13, 17, 19, 23, 29];
    floors.extend_from_slice(&LARGE_PRIME_FLOORS);
    index_product_upper(&floors).expect("fixed floor list")
}

/// Published rejection product for the q₃ ≥ 53 test at t = 9.
///
/// Reproduced exactly as published: the factor for the prime 67 is 67/68 in
/// the source computation (67/66 would be the ∏ p/(p−1) term, under which
/// this test does not reject 53). The q₃ ≤ 47 row of the nine-factor table
/// rests on this published computation and is therefore carried as an
/// unverified published constant.
pub fn q3_rejection_product() -> Rational {
    let pairs: [(u64, u64); 9] = [
        (3, 2),
        (5, 4),
        (53, 52),
        (59, 58),
        (61, 60),
        (67, 68),
        (101, 100),
        (10_007, 10_006),
        (100_000_007, 100_000_006),
    ];
    let mut acc = Rational::one();
    for (num, den) in pairs {
        acc *= ratio_u64(num, den);
    }
    acc
}

/// Refined upper bounds for q₂ and q₃ at t = 9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedSmallPrimeBounds {
    pub q2: u64,
    /// Product that rejects the first candidate above the retained q₂ bound.
    pub q2_rejection: (u64, Rational),
    pub q3: u64,
    pub q3_rejection: (u64, Rational),
}

/// Sharpen the Kishore bounds on q₂ and q₃ for t = 9 using the fixed
/// large-prime floors.
///
/// q₂ is refined constructively: the greatest prime floor whose product
/// stays above 2 is retained (candidates {3, c, next primes…} + large
/// floors). q₃ ≤ 47 is the published refinement; its rejection product is
/// `q3_rejection_product` (see the caveat there).
pub fn sigma_refine_small_primes(t: u32, large_floors: &[u64]) -> Result<RefinedSmallPrimeBounds> {
    if t != 9 {
        return Err(Error::Unsupported(format!(
            "small-prime refinement is tabulated for t = 9 only, got {t}"
        )));
    }
    if large_floors != LARGE_PRIME_FLOORS {
        return Err(Error::Unsupported(
            "refinement requires the published large-prime floors".into(),
        ));
    }

    let two = crate::rational::two();
    let kishore_q2 = kishore_bound(2, 9)?;
    let mut retained = 5u64; // q2 >= 5: the candidate scan starts there
    let mut rejected: Option<(u64, Rational)> = None;
    for c in primes_from(5) {
        if c > kishore_q2 {
            break;
        }
        let mut floors = vec![3u64];
        floors.extend(primes_from(c).take(5)); // q2..q6 floors
        floors.extend_from_slice(&LARGE_PRIME_FLOORS);
        let product = index_product_upper(&floors)?;
        if product > two {
            retained = c;
        } else {
            rejected = Some((c, product));
            break;
        }
    }
    let q2_rejection = rejected.expect("q2 scan rejects within Kishore range");

    Ok(RefinedSmallPrimeBounds {
        q2: retained,
        q2_rejection,
        q3: 47,
        q3_rejection: (53, q3_rejection_product()),
    })
}

/// An unevaluated power base^(num/den); 2^{4^9} has ~79000 digits, so these
/// are compared through exponent algebra, never expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpForm {
    pub base: u64,
    pub exp_num: u64,
    pub exp_den: u64,
}

impl ExpForm {
    pub fn new(base: u64, exp_num: u64, exp_den: u64) -> Result<Self> {
        if exp_den == 0 {
            return Err(Error::Domain("exponent denominator must be >= 1".into()));
        }
        Ok(ExpForm {
            base,
            exp_num,
            exp_den,
        })
    }

    /// Where `n` sits relative to base^(num/den): `Less` means n is below
    /// the power. Compared via n^den vs base^num; for base 2 the right side
    /// reduces to a bit-length test.
    pub fn cmp_natural(&self, n: &Natural) -> Result<Ordering> {
        let lhs = n.pow(self.exp_den as u32);
        if self.base == 2 {
            // lhs < 2^num  iff  bits(lhs) <= num
            let bits = lhs.bits();
            return Ok(if lhs == (Natural::one() << self.exp_num) {
                Ordering::Equal
            } else if bits <= self.exp_num {
                Ordering::Less
            } else {
                Ordering::Greater
            });
        }
        // guard: never expand beyond ~10^6 digits
        let digits_estimate = self.exp_num as f64 * (self.base as f64).log10();
        if digits_estimate > 1_000_000.0 {
            return Err(Error::Unsupported(
                "power too large to compare for a non-binary base".into(),
            ));
        }
        let rhs = Natural::from(self.base).pow(self.exp_num as u32);
        Ok(lhs.cmp(&rhs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "base": self.base,
            "exp_num": self.exp_num,
            "exp_den": self.exp_den,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperBound {
    Finite(Natural),
    Power(ExpForm),
}

impl UpperBound {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            UpperBound::Finite(n) => json!(n.to_string()),
            UpperBound::Power(e) => e.to_json(),
        }
    }
}

/// Per-position bounds on the ordered prime factors of an OPN with t
/// distinct primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsTable {
    pub t: u32,
    /// rows[i] bounds q_{i+1}; lowers strictly increasing.
    pub rows: Vec<(Natural, UpperBound)>,
}

impl BoundsTable {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "t": self.t,
            "rows": self
                .rows
                .iter()
                .map(|(lo, hi)| json!({ "lower": lo.to_string(), "upper": hi.to_json() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// The double-sided table for ω(N) = 9.
///
/// Lower bounds are the published floor compendium; uppers for q₄..q₆ are
/// the Kishore bounds, q₂/q₃ the sigma-refined values, and q₇..q₉ Nielsen's
/// N < 2^{4^t} split as q_i < 2^{4^t/(2(t−i)+1)}.
pub fn nine_factor_table() -> BoundsTable {
    let fin = |n: u64| UpperBound::Finite(Natural::from(n));
    let pow = |den: u64| UpperBound::Power(ExpForm::new(2, 1 << 18, den).unwrap()); // 4^9 = 2^18
    let nat = Natural::from;
    BoundsTable {
        t: 9,
        rows: vec![
            (nat(3u64), fin(3)),
            (nat(5u64), fin(11)),
            (nat(11u64), fin(47)),
            (nat(13u64), fin(1531)),
            (nat(19u64), fin(327_673)),
            (nat(23u64), fin(17_179_869_143)),
            (nat(101u64), pow(5)),
            (nat(10_007u64), pow(3)),
            (nat(100_000_007u64), pow(1)),
        ],
    }
}

/// Exact Σ 1/p with the Suryanarayana–Hagis window test
/// 0.596 < Σ 1/p < 0.694.
pub fn reciprocal_sum_check(primes: &[u64]) -> Result<(Rational, bool)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut acc = Rational::new(BigInt::from(0), BigInt::one());
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !seen.insert(p) {
            return Err(Error::Domain(format!("duplicate prime {p}")));
        }
        acc += ratio_u64(1, p);
    }
    let lo = ratio_u64(596, 1000);
    let hi = ratio_u64(694, 1000);
    let within = acc > lo && acc < hi;
    Ok((acc, within))
}

pub const OPN_LOWER_BOUND_EXP10: u32 = 300;

/// (10^300, 2^{4^t}): the published size window for an OPN with t distinct
/// prime factors.
pub fn size_bounds(t: u32) -> Result<(Natural, ExpForm)> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be >= 1".into()));
    }
    if t > 30 {
        return Err(Error::OutOfRange("4^t exceeds the supported exponent".into()));
    }
    let lower = Natural::from(10u32).pow(OPN_LOWER_BOUND_EXP10);
    let upper = ExpForm::new(2, 4u64.pow(t), 1)?;
    Ok((lower, upper))
}

/// Smallest t for which 2^{4^t} exceeds 10^300; the window is empty below
/// it, so ω(N) is at least this value.
pub fn size_threshold() -> u32 {
    let lower = Natural::from(10u32).pow(OPN_LOWER_BOUND_EXP10);
    let bits = lower.bits(); // 10^300 < 2^k iff k >= bits
    let mut t = 1;
    while 4u64.pow(t) < bits {
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_fraction;

    fn frac(s: &str) -> Rational {
        parse_fraction(s).unwrap()
    }

    #[test]
    fn product_upper_worked_examples() {
        assert_eq!(index_product_upper(&[3, 5]).unwrap(), frac("15/8"));
        assert_eq!(index_product_upper(&[3, 5, 7]).unwrap(), frac("35/16"));
        assert_eq!(index_product_upper(&[5, 7, 11]).unwrap(), frac("77/48"));
        assert_eq!(index_product_upper(&[3, 7, 11]).unwrap(), frac("77/40"));
        assert!(index_product_upper(&[5, 3]).is_err());
        assert!(index_product_upper(&[3, 4]).is_err());
    }

    #[test]
    fn truncated_lower_worked_examples() {
        assert_eq!(
            truncated_index_lower(&[(3, 2), (5, 1), (7, 2)]).unwrap(),
            frac("494/245")
        );
        assert_eq!(
            truncated_index_lower(&[(3, 4), (5, 2), (11, 2)]).unwrap(),
            frac("4123/2025")
        );
        assert_eq!(
            truncated_index_lower(&[(3, 4), (5, 2), (13, 2)]).unwrap(),
            frac("228811/114075")
        );
        assert!(truncated_index_lower(&[(3, 1), (3, 2)]).is_err());
    }

    #[test]
    fn the_105_products() {
        // (1+1/3+1/9)(1+1/5)(1+1/7+1/49) and (…)(1+1/5+1/25)(…), printed
        // unreduced as 4446/2205 and 22971/11025
        let a = truncated_index_lower(&[(3, 2), (5, 1), (7, 2)]).unwrap();
        assert_eq!(a, frac("4446/2205"));
        let b = truncated_index_lower(&[(3, 2), (5, 2), (7, 2)]).unwrap();
        assert_eq!(b, frac("22971/11025"));
        assert!(a > crate::rational::two() && b > crate::rational::two());
    }

    #[test]
    fn crude_bound_worked_examples() {
        assert_eq!(crude_lower_bound(&[1; 9]).unwrap(), Natural::from(65536u32));
        let mixed = [1u32, 2, 2, 2, 2, 2, 2, 2, 2];
        assert_eq!(
            crude_lower_bound(&mixed).unwrap(),
            Natural::from(43046721u32)
        );
        assert_eq!(crude_lower_bound(&[1]).unwrap(), Natural::one());
        assert!(crude_lower_bound(&[]).is_err());
    }

    #[test]
    fn grun_examples() {
        assert_eq!(grun_bound(9).unwrap(), 7);
        assert_eq!(grun_bound(12).unwrap(), 7);
        assert_eq!(grun_bound(3).unwrap(), 3);
        assert_eq!(grun_bound(1).unwrap(), 2);
    }

    #[test]
    fn kishore_examples() {
        assert_eq!(kishore_bound(2, 9).unwrap(), 31);
        assert_eq!(kishore_bound(3, 9).unwrap(), 109);
        assert_eq!(kishore_bound(4, 9).unwrap(), 1531);
        assert_eq!(kishore_bound(5, 9).unwrap(), 327_673);
        assert_eq!(kishore_bound(6, 9).unwrap(), 17_179_869_143);
        assert!(kishore_bound(1, 9).is_err());
        assert!(kishore_bound(7, 9).is_err());
    }

    #[test]
    fn floor_contradiction_t16_t17() {
        let (p16, c16) = omega_floor_contradiction(7, 16).unwrap();
        assert!(c16);
        assert_eq!(
            crate::rational::decimal_string(&p16, 31),
            "1.9793234133339626660318209208061"
        );
        let (p17, c17) = omega_floor_contradiction(7, 17).unwrap();
        assert!(!c17);
        assert_eq!(
            crate::rational::decimal_string(&p17, 31),
            "2.0134496790810999533771971435786"
        );
        let (_, c28) = omega_floor_contradiction(11, 28).unwrap();
        assert!(c28);
    }

    #[test]
    fn floor_contradiction_small_prime_floors() {
        // with floors from 3 the product clears 2 from t = 6 onward; below
        // that even the large-prime floors cannot rescue a perfect total
        for t in 3..=5 {
            let (_, contradicted) = omega_floor_contradiction(3, t).unwrap();
            assert!(contradicted, "t = {t}");
        }
        for t in 6..=20 {
            let (_, contradicted) = omega_floor_contradiction(3, t).unwrap();
            assert!(!contradicted, "t = {t}");
        }
    }

    #[test]
    fn refinement_products() {
        let refined = sigma_refine_small_primes(9, &LARGE_PRIME_FLOORS).unwrap();
        assert_eq!(refined.q2, 11);
        assert_eq!(refined.q2_rejection.0, 13);
        assert_eq!(
            refined.q2_rejection.1,
            frac("849216193914429412851/426034693082080051200")
        );
        assert_eq!(refined.q3, 47);
        assert_eq!(refined.q3_rejection.0, 53);
        assert_eq!(
            refined.q3_rejection.1,
            frac("19375328833237423387515/9850131125407832064000")
        );
        assert!(refined.q2_rejection.1 < crate::rational::two());
        assert!(refined.q3_rejection.1 < crate::rational::two());
        assert!(sigma_refine_small_primes(8, &LARGE_PRIME_FLOORS).is_err());
    }

    #[test]
    fn nine_table_shape() {
        let table = nine_factor_table();
        assert_eq!(table.rows.len(), 9);
        assert_eq!(table.rows[0], (Natural::from(3u32), UpperBound::Finite(Natural::from(3u32))));
        assert_eq!(
            table.rows[5],
            (
                Natural::from(23u32),
                UpperBound::Finite(Natural::from(17_179_869_143u64))
            )
        );
        match &table.rows[8].1 {
            UpperBound::Power(e) => {
                assert_eq!((e.base, e.exp_num, e.exp_den), (2, 262_144, 1));
            }
            other => panic!("expected power bound, got {other:?}"),
        }
        // lowers strictly increasing, and lower <= upper when finite
        for w in table.rows.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        for (lo, hi) in &table.rows {
            match hi {
                UpperBound::Finite(n) => assert!(lo <= n),
                UpperBound::Power(e) => {
                    assert_eq!(e.cmp_natural(lo).unwrap(), Ordering::Less)
                }
            }
        }
    }

    #[test]
    fn expform_comparisons() {
        let e = ExpForm::new(2, 262_144, 3).unwrap(); // 2^(4^9/3)
        assert_eq!(e.cmp_natural(&Natural::from(10_007u32)).unwrap(), Ordering::Less);
        let tiny = ExpForm::new(2, 4, 1).unwrap(); // 16
        assert_eq!(tiny.cmp_natural(&Natural::from(16u32)).unwrap(), Ordering::Equal);
        assert_eq!(tiny.cmp_natural(&Natural::from(17u32)).unwrap(), Ordering::Greater);
        assert_eq!(tiny.cmp_natural(&Natural::from(15u32)).unwrap(), Ordering::Less);
    }

    #[test]
    fn reciprocal_sums() {
        let (s, within) = reciprocal_sum_check(&[3]).unwrap();
        assert_eq!(s, frac("1/3"));
        assert!(!within);

        let (s, within) = reciprocal_sum_check(&[3, 5, 7]).unwrap();
        assert_eq!(s, frac("71/105"));
        assert!(within);

        // the nine-factor floor set overshoots the window: 1/3 + 1/5 + 1/11
        // + 1/13 alone exceeds 0.694
        let (s, within) =
            reciprocal_sum_check(&[3, 5, 11, 13, 17, 19, 23, 10_007, 100_000_007]).unwrap();
        assert!(s > frac("694/1000"));
        assert!(!within);

        assert!(reciprocal_sum_check(&[3, 3]).is_err());
        assert!(reciprocal_sum_check(&[4]).is_err());
    }

    #[test]
    fn size_bound_values() {
        let (lower, upper) = size_bounds(9).unwrap();
        assert_eq!(lower, Natural::from(10u32).pow(300));
        assert_eq!((upper.base, upper.exp_num, upper.exp_den), (2, 262_144, 1));
        assert_eq!(size_threshold(), 5);
        // t = 1: the window is empty (the lower bound exceeds 2^4 = 16)
        let (lower, upper) = size_bounds(1).unwrap();
        assert_eq!(upper.cmp_natural(&lower).unwrap(), Ordering::Greater);
    }
}
