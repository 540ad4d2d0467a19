//! Depth-first expansion of the proof trees.

use super::state::{eulerian_exponents, sigma_pp_u64, ChainExponent, ChainState};
use super::{ChainConfig, ContradictionCode, ProofNode, ProofTree, Terminal};
use crate::factor::{factor_u64, FactorBudget, FactorOutcome};
use crate::rational::two;
use crate::Result;
use num_traits::ToPrimitive;

/// Run the search: one tree per Eulerian power of the root prime, expanded
/// depth-first with a fixed branch order (exponents ascending, then the ∞
/// branch; candidate primes ascending). The result is deterministic for a
/// given config; the node budget is pre-split across roots so that thread
/// count or scheduling cannot change the output.
pub fn run_chain(config: &ChainConfig) -> Result<ProofTree> {
    run_chain_threaded(config, 1)
}

pub fn run_chain_threaded(config: &ChainConfig, threads: usize) -> Result<ProofTree> {
    config.validate()?;
    let root_exponents = eulerian_exponents(config.root_prime, config.b, false);
    let n_roots = root_exponents.len() as u64;
    let share = config.node_budget / n_roots;
    let extra = config.node_budget % n_roots;

    let jobs: Vec<(ChainExponent, u64)> = root_exponents
        .iter()
        .enumerate()
        .map(|(i, &exp)| (exp, share + if (i as u64) < extra { 1 } else { 0 }))
        .collect();

    let threads = threads.max(1);
    let subtrees: Vec<Vec<ProofNode>> = if threads == 1 {
        jobs.iter()
            .map(|&(exp, budget)| expand_root(config, exp, budget))
            .collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = jobs
                .iter()
                .map(|&(exp, budget)| scope.spawn(move || expand_root(config, exp, budget)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };

    // reassemble with global ids, subtrees in root order
    let mut nodes: Vec<ProofNode> = Vec::new();
    for subtree in subtrees {
        let offset = nodes.len();
        for node in subtree {
            nodes.push(ProofNode {
                id: node.id + offset,
                parent: node.parent.map(|p| p + offset),
                ..node
            });
        }
    }
    Ok(ProofTree {
        config: config.clone(),
        nodes,
    })
}

struct Expansion<'a> {
    config: &'a ChainConfig,
    nodes: Vec<ProofNode>,
    budget: u64,
}

fn expand_root(config: &ChainConfig, exp: ChainExponent, budget: u64) -> Vec<ProofNode> {
    let mut ex = Expansion {
        config,
        nodes: Vec::new(),
        budget,
    };
    let state = ChainState::new();
    ex.expand(&state, config.root_prime, exp, None);
    ex.nodes
}

impl Expansion<'_> {
    /// Create the node for component (p, exp) on top of `state`, then
    /// branch or terminate.
    fn expand(&mut self, state: &ChainState, p: u64, exp: ChainExponent, parent: Option<usize>) {
        let id = self.nodes.len();
        self.nodes.push(ProofNode {
            id,
            parent,
            prime: p,
            exponent: exp,
            sigma_factors: Vec::new(),
            terminal: None,
        });
        if self.budget == 0 {
            self.nodes[id].terminal = Some(Terminal::Budget);
            return;
        }
        self.budget -= 1;

        let mut next = state.clone();
        match exp {
            ChainExponent::Inf => next.apply_inf(p),
            ChainExponent::Finite(a) => {
                let sigma = sigma_pp_u64(p, a);
                let factors = match factor_sigma(sigma, self.config.factor_budget) {
                    Some(f) => f,
                    None => {
                        self.nodes[id].terminal =
                            Some(Terminal::Code(ContradictionCode::Unfactored));
                        return;
                    }
                };
                self.nodes[id].sigma_factors = factors.clone();
                next.apply_component(p, a, &factors);
            }
        }

        if let Some(code) = next.detect_contradiction(self.config) {
            self.nodes[id].terminal = Some(Terminal::Code(code));
            return;
        }
        self.branch(&next, id);
    }

    fn branch(&mut self, state: &ChainState, id: usize) {
        // smallest waiting consequent becomes the next initial prime
        if let Some(&q) = state.consequents.first() {
            let special_open = state.special_open() && q % 4 == 1;
            for exp in eulerian_exponents(q, self.config.b, special_open) {
                self.expand(state, q, exp, Some(id));
            }
            return;
        }

        let k = state.k();
        if k < self.config.t {
            // nothing left to factor: Lemma X supplies candidates for the
            // smallest remaining prime, unless even μ^∞ cannot reach 2
            match state.lemma_x_candidates(self.config) {
                None => {
                    // interval unbounded: a candidate set satisfying
                    // Lemma Y; deciding it needs a larger B
                    self.nodes[id].terminal = Some(Terminal::BLimited);
                }
                Some(candidates) if candidates.is_empty() => {
                    // unreachable in practice: detect_contradiction tags N
                    // before branch() runs; kept as a conservative fallback
                    self.nodes[id].terminal = Some(Terminal::Code(ContradictionCode::N));
                }
                Some(candidates) => {
                    for r in candidates {
                        let mut with_min = state.clone();
                        with_min.min_remaining = Some(r);
                        let special_open = with_min.special_open() && r % 4 == 1;
                        for exp in eulerian_exponents(r, self.config.b, special_open) {
                            self.expand(&with_min, r, exp, Some(id));
                        }
                    }
                }
            }
            return;
        }

        // k = t and no consequents left
        if state.mu_inf.is_empty() {
            // every exponent exact and neither A nor D fired: I(λ) = 2
            debug_assert_eq!(state.index_lambda(), two());
            self.nodes[id].terminal = Some(Terminal::Witness);
        } else {
            // Lemma Y is satisfied with unknown exponents in play; only a
            // larger B can move these primes into λ and decide the path
            self.nodes[id].terminal = Some(Terminal::BLimited);
        }
    }
}

/// Factor σ(p^a), returning None when the budget cannot finish the job.
fn factor_sigma(sigma: u64, budget: u64) -> Option<Vec<(u64, u32)>> {
    match factor_u64(sigma, FactorBudget::new(budget)).ok()? {
        FactorOutcome::Complete(f) => Some(
            f.factors()
                .iter()
                .map(|(p, e)| (p.to_u64().expect("sigma fits u64"), *e))
                .collect(),
        ),
        FactorOutcome::Partial(_) => None,
    }
}

/// Rebuild the path state leading *into* a node, then apply the node's own
/// component: the returned state is the one its terminal code was judged
/// against. Recorded σ factorizations are reused, so the replay matches the
/// run bit for bit.
pub fn replay_state(tree: &ProofTree, node_id: usize) -> ChainState {
    let mut state = ChainState::new();
    for id in tree.path_to(node_id) {
        let node = &tree.nodes[id];
        // a prime unknown to the state (and not the root) arrived through
        // Lemma X, which pinned it as the smallest remaining prime
        if state.k() > 0 && !state.contains_prime(node.prime) {
            state.min_remaining = Some(node.prime);
        }
        match node.exponent {
            ChainExponent::Inf => state.apply_inf(node.prime),
            ChainExponent::Finite(a) => {
                state.apply_component(node.prime, a, &node.sigma_factors)
            }
        }
    }
    state
}
