//! The abundancy index I(n) = σ(n)/n, classifiers for index/outlaw status,
//! friendly/solitary machinery, and the recursive solver for I(x) = a/b.

use crate::arith::{sigma, sigma_prime_power, sigma_sieve_u64};
use crate::factor::{factor, factor_complete, FactorBudget, FactorOutcome, Factorization};
use crate::primality::{is_prime_u64, primes_from};
use crate::rational::{ratio, ratio_u64, Rational};
use crate::{Error, Natural, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Three-way comparison of I(n) against 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbundancyClass {
    Deficient,
    Perfect,
    Abundant,
}

/// Outcome of trying to classify a fraction as an abundancy index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexStatus {
    /// A witness n with I(n) equal to the queried fraction, re-verified on
    /// construction.
    Index { witness: Natural },
    Outlaw { criterion: OutlawCriterion },
    /// Search exhausted without a decision.
    Unknown { nodes_spent: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutlawCriterion {
    Weiner,
    StantonHoldener,
    QpForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolitaryStatus {
    Solitary { criterion: SolitaryCriterion },
    Friendly { partner: Natural },
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolitaryCriterion {
    Greening,
}

/// I(n) = σ(n)/n as a reduced fraction.
pub fn abundancy_index(f: &Factorization) -> Rational {
    let n = f.value();
    let s = sigma(f);
    ratio(&s, &n).expect("n >= 1")
}

pub fn classify(f: &Factorization) -> AbundancyClass {
    let idx = abundancy_index(f);
    let two = crate::rational::two();
    match idx.cmp(&two) {
        std::cmp::Ordering::Less => AbundancyClass::Deficient,
        std::cmp::Ordering::Equal => AbundancyClass::Perfect,
        std::cmp::Ordering::Greater => AbundancyClass::Abundant,
    }
}

/// Weiner's criterion: for coprime m, n with n < m < σ(n), the fraction m/n
/// is not an abundancy index. `true` means the criterion applies (outlaw);
/// `false` means it is silent, not that m/n is an index.
pub fn weiner_outlaw(m: &Natural, n: &Natural) -> Result<bool> {
    if m.gcd(n) != Natural::one() {
        return Err(Error::NotCoprime {
            a: m.to_string(),
            b: n.to_string(),
        });
    }
    let sig_n = sigma(&factor_complete(n)?);
    Ok(n < m && *m < sig_n)
}

/// Greening's criterion: gcd(n, σ(n)) = 1 suffices for n to be solitary.
/// The criterion is one-sided, so anything else stays `Unknown`.
pub fn greening_solitary(n: &Natural) -> Result<SolitaryStatus> {
    if n.is_zero() {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let sig = sigma(&factor_complete(n)?);
    if n.gcd(&sig) == Natural::one() {
        Ok(SolitaryStatus::Solitary {
            criterion: SolitaryCriterion::Greening,
        })
    } else {
        Ok(SolitaryStatus::Unknown)
    }
}

/// Greening first; failing that, look for a partner with the same index up
/// to `partner_limit`.
pub fn solitary_status(n: u64, partner_limit: u64) -> Result<SolitaryStatus> {
    let status = greening_solitary(&Natural::from(n))?;
    if !matches!(status, SolitaryStatus::Unknown) {
        return Ok(status);
    }
    let limit = partner_limit.min(1_000_000) as usize;
    let sig = sigma_sieve_u64(limit);
    let (sn, g) = {
        let s = sigma(&factor_complete(&Natural::from(n))?)
            .to_u64()
            .ok_or_else(|| Error::OutOfRange("n too large for partner search".into()))?;
        (s, s.gcd(&n))
    };
    let (rn, rd) = (sn / g, n / g);
    for b in 1..=limit as u64 {
        if b == n {
            continue;
        }
        let sb = sig[b as usize];
        let gb = sb.gcd(&b);
        if sb / gb == rn && b / gb == rd {
            return Ok(SolitaryStatus::Friendly {
                partner: Natural::from(b),
            });
        }
    }
    Ok(SolitaryStatus::Unknown)
}

/// All pairs a < b ≤ limit with I(a) = I(b), each re-verified exactly.
pub fn friendly_search(limit: u64) -> Result<Vec<(u64, u64, Rational)>> {
    if limit > 1_000_000 {
        return Err(Error::LimitExceeded {
            given: limit.to_string(),
            max: "1000000".into(),
        });
    }
    let sig = sigma_sieve_u64(limit as usize);
    let mut classes: HashMap<(u64, u64), Vec<u64>> = HashMap::new();
    for n in 1..=limit {
        let s = sig[n as usize];
        let g = s.gcd(&n);
        classes.entry((s / g, n / g)).or_default().push(n);
    }
    let mut pairs = Vec::new();
    for ((num, den), members) in classes {
        if members.len() < 2 {
            continue;
        }
        let idx = ratio_u64(num, den);
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                debug_assert_eq!(ratio_u64(sig[members[i] as usize], members[i]), idx);
                pairs.push((members[i], members[j], idx.clone()));
            }
        }
    }
    pairs.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    Ok(pairs)
}

/// The target fraction I(n) = 2p^α(p−1)/(p^{α+1}−1) whose attainment by an
/// n coprime to p would produce an odd perfect number.
pub fn opn_equivalent_target(p: u64, alpha: u32) -> Result<Rational> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p % 4 != 1 {
        return Err(Error::Congruence(format!("p = {p} must be 1 mod 4")));
    }
    if alpha % 4 != 1 {
        return Err(Error::Congruence(format!("alpha = {alpha} must be 1 mod 4")));
    }
    let pb = Natural::from(p);
    let num = Natural::from(2u32) * pb.pow(alpha) * (&pb - Natural::one());
    let den = pb.pow(alpha + 1) - Natural::one();
    ratio(&num, &den)
}

/// Holdener–Stanton conditions under which (σ(N) + t)/N is an outlaw.
/// `true` means outlaw; `false` means the criterion is silent.
pub fn stanton_holdener_outlaw(n_fact: &Factorization, t: &Natural) -> Result<bool> {
    const DIVISOR_CAP: usize = 10_000;
    let n = n_fact.value();
    let sig_n = sigma(n_fact);
    let numerator = &sig_n + t;
    if numerator.gcd(&n) != Natural::one() {
        return Err(Error::NotReduced {
            a: numerator.to_string(),
            b: n.to_string(),
        });
    }
    let frac = ratio(&numerator, &n)?;
    for (p_j, k_j) in n_fact.factors() {
        let part = p_j.pow(*k_j);
        let rest = &n / &part;
        let sig_rest = sigma(&factor_complete(&rest)?);
        // p_j < (1/t) * sigma(N / p_j^{k_j})
        if p_j * t >= sig_rest {
            continue;
        }
        let sig_part = sigma_prime_power(p_j, *k_j);
        let part_index = ratio(&sig_part, &part)?;
        let sig_part_fact = factor_complete(&sig_part)?;
        let divisors = match sig_part_fact.divisors(DIVISOR_CAP) {
            Ok(d) => d,
            Err(_) => continue, // too many divisors to enumerate; stay silent
        };
        for d in divisors.iter().filter(|d| **d > Natural::one()) {
            let d_fact = factor_complete(d)?;
            let d_index = abundancy_index(&d_fact);
            let cond1 =
                &part_index * &d_index > frac && d.gcd(t) == Natural::one();
            let cond2 = d.gcd(&(&n * t)) == Natural::one();
            if cond1 || cond2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// For primes p > q > 2 with p > q² − q − 1, the fraction
/// (σ(qp) + q − 1)/(qp) is an abundancy outlaw.
pub fn qp_outlaw(q: u64, p: u64) -> Result<bool> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !(p > q && q > 2) {
        return Err(Error::OutOfRange(format!(
            "need p > q > 2, got q = {q}, p = {p}"
        )));
    }
    Ok(p > q * q - q - 1)
}

/// Index-transfer rewriter: if a/b is a known abundancy index and D | b has
/// I(p·D) > a/b for every prime p | D, then (D/σ(D))·(a/b) is an index too.
/// Returns the derived fraction when the hypothesis checks out.
pub fn czarnecki_holdener_rewrite(
    known_index: &Rational,
    d_fact: &Factorization,
) -> Result<Option<Rational>> {
    let b = known_index.denom().magnitude();
    let d = d_fact.value();
    if !(b % &d).is_zero() {
        return Err(Error::Domain(format!("{d} does not divide the denominator {b}")));
    }
    for (p, _) in d_fact.factors() {
        let pd = p * &d;
        let idx = abundancy_index(&factor_complete(&pd)?);
        if idx <= *known_index {
            return Ok(None);
        }
    }
    let sig_d = sigma(d_fact);
    Ok(Some(known_index * ratio(&d, &sig_d)?))
}

// ---------------------------------------------------------------------------
// The recursive solver for I(x) = a/b.
// ---------------------------------------------------------------------------

/// Search limits for `ludwick_solve`. The defaults fit the worked 7/2
/// searches with a wide margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LudwickConfig {
    pub max_depth: u32,
    pub exponent_cap: u32,
    pub node_budget: u64,
    /// How many candidate primes to branch over when a target has
    /// denominator 1 (integer targets have no forced prime).
    pub integer_target_width: u32,
    /// Targets whose denominator exceeds this many bits are impractical to
    /// pursue (their σ would need factorizations beyond desk scale) and
    /// are abandoned in the trace.
    pub max_denominator_bits: u64,
    /// Rho iterations allowed when factoring a target denominator.
    pub factor_budget: u64,
}

impl Default for LudwickConfig {
    fn default() -> Self {
        LudwickConfig {
            max_depth: 8,
            exponent_cap: 40,
            node_budget: 100_000,
            integer_target_width: 25,
            max_denominator_bits: 80,
            factor_budget: 500_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// b < a < σ(b): Weiner's lemma kills the target.
    Weiner,
    /// a < σ(b) in general (any solution is divisible by b, so I ≥ σ(b)/b).
    SigmaPrecondition,
    /// The target's denominator shares this prime with the excluded set.
    ExcludedDivisor(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abandonment {
    DepthLimit,
    NodeBudget,
    WidthCap,
    /// Denominator too large to pursue at desk scale.
    Impractical,
    /// Denominator would not factor within the configured budget.
    Unfactorable,
}

/// One subproblem in the search tree: find m with I(m) = `target` and
/// gcd(m, e) = 1 for every excluded prime e.
#[derive(Debug, Clone)]
pub struct LudwickNode {
    pub target: Rational,
    pub excluded: Vec<Natural>,
    pub depth: u32,
    pub outcome: LudwickOutcome,
    /// Children keyed by the (prime, exponent) choice that produced them.
    pub children: Vec<(Natural, u32, LudwickNode)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LudwickOutcome {
    /// Target reached 1: the local witness is m = 1.
    Solved,
    Refuted(Refutation),
    Abandoned(Abandonment),
    Expanded,
}

#[derive(Debug, Clone)]
pub struct LudwickTrace {
    pub root: LudwickNode,
    pub nodes_spent: u64,
}

impl LudwickTrace {
    /// Walk the trace along (prime, exponent) branch choices.
    pub fn descend(&self, path: &[(u64, u32)]) -> Option<&LudwickNode> {
        let mut node = &self.root;
        for &(p, k) in path {
            let pb = Natural::from(p);
            node = node
                .children
                .iter()
                .find(|(q, e, _)| *q == pb && *e == k)
                .map(|(_, _, child)| child)?;
        }
        Some(node)
    }
}

/// Arena node used while the search runs; flattened back into the nested
/// trace when it finishes.
struct ArenaNode {
    target: Rational,
    excluded: Vec<Natural>,
    depth: u32,
    outcome: LudwickOutcome,
    edge: (Natural, u32),
    children: Vec<usize>,
}

/// Find integers n with I(n) = a/b by the recursive prime-power reduction,
/// breadth-first so shallow witnesses surface before the budget drains.
///
/// At a node with target a'/b': the largest prime-power divisor p^c of b'
/// forces p^k || m for some k ≥ c; each k yields the child target
/// a'·p^{k−c} / ((b'/p^c)·σ(p^k)). Integer targets (b' = 1) branch over the
/// smallest primes not yet excluded. A child whose denominator shares a
/// factor with the excluded set, or with a' < σ(b'), is refuted on sight.
pub fn ludwick_solve(
    a: &Natural,
    b: &Natural,
    cfg: &LudwickConfig,
) -> Result<(Vec<Natural>, LudwickTrace)> {
    if a.gcd(b) != Natural::one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    if b.is_zero() || a <= b {
        return Err(Error::Domain("target fraction must exceed 1".into()));
    }
    let target = ratio(a, b)?;

    let mut arena: Vec<ArenaNode> = vec![ArenaNode {
        target,
        excluded: Vec::new(),
        depth: 0,
        outcome: LudwickOutcome::Expanded,
        edge: (Natural::one(), 0),
        children: Vec::new(),
    }];
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut nodes_left = cfg.node_budget;

    while let Some(idx) = queue.pop_front() {
        if nodes_left == 0 {
            arena[idx].outcome = LudwickOutcome::Abandoned(Abandonment::NodeBudget);
            continue;
        }
        nodes_left -= 1;
        process_node(&mut arena, idx, cfg);
        let pending: Vec<usize> = arena[idx]
            .children
            .iter()
            .copied()
            .filter(|&c| arena[c].outcome == LudwickOutcome::Expanded)
            .collect();
        queue.extend(pending);
    }

    let trace = LudwickTrace {
        root: rebuild(&arena, 0),
        nodes_spent: cfg.node_budget - nodes_left,
    };
    let solutions = ludwick_witnesses(&trace);
    for n in &solutions {
        let idx = abundancy_index(&factor_complete(n)?);
        debug_assert_eq!(idx, ratio(a, b)?);
    }
    Ok((solutions, trace))
}

fn rebuild(arena: &[ArenaNode], idx: usize) -> LudwickNode {
    let node = &arena[idx];
    LudwickNode {
        target: node.target.clone(),
        excluded: node.excluded.clone(),
        depth: node.depth,
        outcome: node.outcome.clone(),
        children: node
            .children
            .iter()
            .map(|&c| (arena[c].edge.0.clone(), arena[c].edge.1, rebuild(arena, c)))
            .collect(),
    }
}

fn process_node(arena: &mut Vec<ArenaNode>, idx: usize, cfg: &LudwickConfig) {
    let target = arena[idx].target.clone();
    if target.is_one() {
        arena[idx].outcome = LudwickOutcome::Solved;
        return;
    }
    let a = target.numer().magnitude().clone();
    let b = target.denom().magnitude().clone();

    // any solution m has b | m, so an excluded prime dividing b is fatal
    for e in &arena[idx].excluded {
        if (&b % e).is_zero() {
            let p = e.to_u64().unwrap_or(u64::MAX);
            arena[idx].outcome = LudwickOutcome::Refuted(Refutation::ExcludedDivisor(p));
            return;
        }
    }
    // b | m forces I(m) >= sigma(b)/b > 1, so a <= b is already fatal
    if a <= b {
        arena[idx].outcome = LudwickOutcome::Refuted(Refutation::SigmaPrecondition);
        return;
    }
    if b.is_one() {
        // integer target >= 2: nothing to refute cheaply
        if arena[idx].depth >= cfg.max_depth {
            arena[idx].outcome = LudwickOutcome::Abandoned(Abandonment::DepthLimit);
            return;
        }
        arena[idx].outcome = LudwickOutcome::Expanded;
        expand_integer_target(arena, idx, cfg);
        return;
    }
    if b.bits() > cfg.max_denominator_bits {
        arena[idx].outcome = LudwickOutcome::Abandoned(Abandonment::Impractical);
        return;
    }
    let b_fact = match factor(&b, FactorBudget::new(cfg.factor_budget)) {
        Ok(FactorOutcome::Complete(f)) => f,
        _ => {
            arena[idx].outcome = LudwickOutcome::Abandoned(Abandonment::Unfactorable);
            return;
        }
    };
    let sig_b = sigma(&b_fact);
    if a < sig_b {
        // b < a < sigma(b) is exactly Weiner's configuration
        arena[idx].outcome = LudwickOutcome::Refuted(Refutation::Weiner);
        return;
    }

    if arena[idx].depth >= cfg.max_depth {
        arena[idx].outcome = LudwickOutcome::Abandoned(Abandonment::DepthLimit);
        return;
    }

    arena[idx].outcome = LudwickOutcome::Expanded;
    expand_prime_power_target(arena, idx, cfg, &b, &b_fact);
}

fn push_child(
    arena: &mut Vec<ArenaNode>,
    parent: usize,
    p: &Natural,
    k: u32,
    target: Rational,
    outcome: LudwickOutcome,
) {
    let mut excluded = arena[parent].excluded.clone();
    excluded.push(p.clone());
    excluded.sort();
    excluded.dedup();
    let depth = arena[parent].depth + 1;
    arena.push(ArenaNode {
        target,
        excluded,
        depth,
        outcome,
        edge: (p.clone(), k),
        children: Vec::new(),
    });
    let id = arena.len() - 1;
    arena[parent].children.push(id);
}

/// b > 1: split off the largest prime-power divisor p^c of b.
fn expand_prime_power_target(
    arena: &mut Vec<ArenaNode>,
    idx: usize,
    cfg: &LudwickConfig,
    b: &Natural,
    b_fact: &Factorization,
) {
    let (p, c) = b_fact
        .factors()
        .iter()
        .max_by_key(|(p, e)| p.pow(*e))
        .map(|(p, e)| (p.clone(), *e))
        .expect("b > 1");
    let rest = b / p.pow(c);
    for k in c..=cfg.exponent_cap {
        let num = arena[idx].target.numer().magnitude() * p.pow(k - c);
        let den = &rest * sigma_prime_power(&p, k);
        let child_target = ratio(&num, &den).expect("den > 0");
        push_child(arena, idx, &p, k, child_target, LudwickOutcome::Expanded);
    }
}

/// b = 1: no forced prime; branch over the smallest allowed primes.
fn expand_integer_target(arena: &mut Vec<ArenaNode>, idx: usize, cfg: &LudwickConfig) {
    let mut width = 0;
    for p in primes_from(2) {
        if width >= cfg.integer_target_width {
            let target = arena[idx].target.clone();
            push_child(
                arena,
                idx,
                &Natural::from(p),
                0,
                target,
                LudwickOutcome::Abandoned(Abandonment::WidthCap),
            );
            break;
        }
        let pb = Natural::from(p);
        if arena[idx].excluded.contains(&pb) {
            continue;
        }
        width += 1;
        for k in 1..=cfg.exponent_cap {
            let num = arena[idx].target.numer().magnitude() * pb.pow(k);
            let den = sigma_prime_power(&pb, k);
            let child_target = ratio(&num, &den).expect("den > 0");
            push_child(arena, idx, &pb, k, child_target, LudwickOutcome::Expanded);
        }
    }
}

/// Assemble every witness from the solved leaves of a trace.
fn collect_witnesses(node: &LudwickNode, acc: &Natural, out: &mut Vec<Natural>) {
    if matches!(node.outcome, LudwickOutcome::Solved) {
        out.push(acc.clone());
    }
    for (p, k, child) in &node.children {
        if *k == 0 {
            continue; // width-cap sentinel
        }
        let next = acc * p.pow(*k);
        collect_witnesses(child, &next, out);
    }
}

/// `ludwick_solve` keeps solutions and trace consistent by deriving the
/// solution list from the trace itself.
pub fn ludwick_witnesses(trace: &LudwickTrace) -> Vec<Natural> {
    let mut out = Vec::new();
    collect_witnesses(&trace.root, &Natural::one(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Battery classifier: cheap outlaw certificates first (Weiner, the
/// qp-form, Holdener–Stanton), then the bounded recursive search.
pub fn classify_fraction(a: &Natural, b: &Natural, cfg: &LudwickConfig) -> Result<IndexStatus> {
    if a.gcd(b) != Natural::one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    if a <= b || b.is_zero() {
        return Err(Error::Domain("fraction must exceed 1".into()));
    }
    if weiner_outlaw(a, b)? {
        return Ok(IndexStatus::Outlaw {
            criterion: OutlawCriterion::Weiner,
        });
    }
    // qp form: b = q*p for primes 2 < q < p with p > q^2 - q - 1 and
    // a = sigma(qp) + q - 1
    if let Some((q, p)) = semiprime_parts(b) {
        if q > 2 {
            let sig_qp = sigma(&factor_complete(b)?);
            let expected = &sig_qp + Natural::from(q) - Natural::one();
            if *a == expected && qp_outlaw(q, p)? {
                return Ok(IndexStatus::Outlaw {
                    criterion: OutlawCriterion::QpForm,
                });
            }
        }
    }
    // Holdener-Stanton form: a = sigma(b) + t for some t >= 1
    let sig_b = sigma(&factor_complete(b)?);
    if *a > sig_b {
        let t = a - &sig_b;
        if stanton_holdener_outlaw(&factor_complete(b)?, &t)? {
            return Ok(IndexStatus::Outlaw {
                criterion: OutlawCriterion::StantonHoldener,
            });
        }
    }
    let (solutions, trace) = ludwick_solve(a, b, cfg)?;
    match solutions.first() {
        Some(n) => Ok(IndexStatus::Index { witness: n.clone() }),
        None => Ok(IndexStatus::Unknown {
            nodes_spent: trace.nodes_spent,
        }),
    }
}

/// b = q·p with q < p both prime, if it has that shape.
fn semiprime_parts(b: &Natural) -> Option<(u64, u64)> {
    let f = factor_complete(b).ok()?;
    let parts = f.factors();
    if parts.len() == 2 && parts[0].1 == 1 && parts[1].1 == 1 {
        Some((parts[0].0.to_u64()?, parts[1].0.to_u64()?))
    } else {
        None
    }
}

// Exact harmonic partial sum, used by the unboundedness property test.
pub fn harmonic(n: u64) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=n {
        acc += Rational::new(BigInt::one(), BigInt::from(k));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_fraction;

    fn f(n: u64) -> Factorization {
        factor_complete(&Natural::from(n)).unwrap()
    }

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn index_worked_examples() {
        assert_eq!(abundancy_index(&f(36)), ratio_u64(91, 36));
        assert_eq!(abundancy_index(&f(2145)), ratio_u64(1344, 715));
        assert_eq!(abundancy_index(&f(1)), ratio_u64(1, 1));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&f(36)), AbundancyClass::Abundant);
        assert_eq!(classify(&f(1024)), AbundancyClass::Deficient);
        assert_eq!(classify(&f(6)), AbundancyClass::Perfect);
    }

    #[test]
    fn weiner_examples() {
        assert!(weiner_outlaw(&nat(7), &nat(6)).unwrap());
        assert!(!weiner_outlaw(&nat(5), &nat(3)).unwrap());
        assert!(!weiner_outlaw(&nat(2), &nat(1)).unwrap());
        assert!(weiner_outlaw(&nat(4), &nat(6)).is_err());
    }

    #[test]
    fn greening_examples() {
        assert!(matches!(
            greening_solitary(&nat(3)).unwrap(),
            SolitaryStatus::Solitary { .. }
        ));
        assert_eq!(greening_solitary(&nat(10)).unwrap(), SolitaryStatus::Unknown);
        for pk in [49u64, 121, 128, 3125] {
            assert!(matches!(
                greening_solitary(&nat(pk)).unwrap(),
                SolitaryStatus::Solitary { .. }
            ));
        }
    }

    #[test]
    fn friendly_pairs() {
        let pairs = friendly_search(30).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].0, pairs[0].1), (6, 28));
        assert_eq!(pairs[0].2, ratio_u64(2, 1));

        let pairs = friendly_search(200).unwrap();
        assert!(pairs
            .iter()
            .any(|(a, b, i)| *a == 30 && *b == 140 && *i == ratio_u64(12, 5)));

        assert!(friendly_search(5).unwrap().is_empty());
    }

    #[test]
    fn perfect_partner_via_solitary_status() {
        match solitary_status(6, 100).unwrap() {
            SolitaryStatus::Friendly { partner } => assert_eq!(partner, nat(28)),
            other => panic!("expected friendly, got {other:?}"),
        }
    }

    #[test]
    fn opn_target_examples() {
        assert_eq!(opn_equivalent_target(5, 1).unwrap(), ratio_u64(5, 3));
        assert_eq!(opn_equivalent_target(13, 1).unwrap(), ratio_u64(13, 7));
        assert_eq!(opn_equivalent_target(5, 5).unwrap(), ratio_u64(3125, 1953));
        assert!(opn_equivalent_target(7, 1).is_err());
        assert!(opn_equivalent_target(5, 2).is_err());
    }

    #[test]
    fn ludwick_finds_paper_solutions() {
        let (solutions, trace) =
            ludwick_solve(&nat(7), &nat(2), &LudwickConfig::default()).unwrap();
        assert!(solutions.contains(&nat(4320)), "solutions: {solutions:?}");
        assert!(solutions.contains(&nat(26208)), "solutions: {solutions:?}");
        assert_eq!(ludwick_witnesses(&trace), solutions);

        // the k = 1, k1 = 1 dead end: target 7/4 with {2, 3} excluded
        let dead_end = trace.descend(&[(2, 1), (3, 1)]).expect("dead end node");
        assert_eq!(dead_end.target, ratio_u64(7, 4));
        assert_eq!(
            dead_end.outcome,
            LudwickOutcome::Refuted(Refutation::ExcludedDivisor(2))
        );
    }

    #[test]
    fn ludwick_simple_targets() {
        let (solutions, _) = ludwick_solve(&nat(2), &nat(1), &LudwickConfig::default()).unwrap();
        assert!(solutions.contains(&nat(6)));
        let (solutions, _) = ludwick_solve(&nat(3), &nat(2), &LudwickConfig::default()).unwrap();
        assert!(solutions.contains(&nat(2)));
        assert!(ludwick_solve(&nat(4), &nat(2), &LudwickConfig::default()).is_err());
        assert!(ludwick_solve(&nat(1), &nat(2), &LudwickConfig::default()).is_err());
    }

    #[test]
    fn stanton_holdener_examples() {
        // N = 2p for p > 3: outlaw
        for p in [5u64, 7, 11, 13] {
            let n = f(2 * p);
            assert!(stanton_holdener_outlaw(&n, &Natural::one()).unwrap(), "p = {p}");
        }
        // N = 6: criterion silent (13/6 is in fact an index)
        assert!(!stanton_holdener_outlaw(&f(6), &Natural::one()).unwrap());
        // N = 12 = 2 * (even perfect 6): outlaw
        assert!(stanton_holdener_outlaw(&f(12), &Natural::one()).unwrap());
        // reducible fraction rejected: N = 5, t = 5 gives 11/5 ok; N = 5, t = 4 gives 10/5
        assert!(stanton_holdener_outlaw(&f(5), &nat(4)).is_err());
    }

    #[test]
    fn qp_examples() {
        assert!(qp_outlaw(5, 23).unwrap());
        assert!(!qp_outlaw(5, 19).unwrap());
        assert!(qp_outlaw(3, 7).unwrap());
        assert!(qp_outlaw(7, 5).is_err());
        assert!(qp_outlaw(2, 7).is_err());
    }

    #[test]
    fn classify_fraction_battery() {
        let cfg = LudwickConfig::default();
        match classify_fraction(&nat(91), &nat(36), &cfg).unwrap() {
            IndexStatus::Index { witness } => assert_eq!(witness, nat(36)),
            other => panic!("expected index, got {other:?}"),
        }
        assert_eq!(
            classify_fraction(&nat(7), &nat(6), &cfg).unwrap(),
            IndexStatus::Outlaw {
                criterion: OutlawCriterion::Weiner
            }
        );
        let small = LudwickConfig {
            node_budget: 2_000,
            ..LudwickConfig::default()
        };
        assert!(matches!(
            classify_fraction(&nat(5), &nat(3), &small).unwrap(),
            IndexStatus::Unknown { .. }
        ));
    }

    #[test]
    fn czarnecki_rewrite() {
        // I(1024) = 2047/1024; D = 1024 qualifies and derives the index 1
        let known = parse_fraction("2047/1024").unwrap();
        let d = f(1024);
        let derived = czarnecki_holdener_rewrite(&known, &d).unwrap();
        assert_eq!(derived, Some(ratio_u64(1, 1)));
        // D = 512 fails the strict hypothesis: I(2*512) = 2047/1024 exactly
        let d512 = f(512);
        assert_eq!(czarnecki_holdener_rewrite(&known, &d512).unwrap(), None);
        // non-divisor D rejected
        assert!(czarnecki_holdener_rewrite(&known, &f(3)).is_err());
    }
}
