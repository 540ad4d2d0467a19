//! The factor/sigma-chain proof search.
//!
//! A run hypothesises an odd perfect number N with exactly `t` distinct
//! prime factors and grows trees of component assumptions rooted at the
//! even powers of the root prime (3, justified for t ≤ 11 by the published
//! bound that an OPN not divisible by 3 has at least 12 distinct primes).
//! Each assumed component p^a forces σ(p^a) | 2N, whose odd prime factors
//! become known divisors of N. A path dies when one of the tagged
//! contradictions fires; the run succeeds when every leaf is dead — unless
//! it has found a perfect number, which it would report as a witness.
//!
//! The known part of N is tracked as λ·μ·ν: λ holds components with exact
//! exponents, μ primes with unknown exponents (∞-initials plus consequents
//! not yet branched on), and ν the w = t − k primes not yet named.

mod engine;
mod render;
mod state;

pub use engine::{replay_state, run_chain};
pub use render::render_text;
pub use state::{
    eulerian_exponents, lemma_x_interval, lemma_y_values, ChainExponent, ChainState, LemmaYValues,
};

use crate::{Error, Result};
use serde_json::json;

/// Thresholds for the three large-prime contradictions; the published
/// floors say the largest three primes of any OPN exceed these.
pub const P1_THRESHOLD: u64 = 100_000_000;
pub const P2_THRESHOLD: u64 = 10_000;
pub const P3_THRESHOLD: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    /// Hypothesised number of distinct prime factors, 2 ..= 11.
    pub t: u32,
    /// Exponent ceiling: initial components p^a require p^{a+1} ≤ B.
    pub b: u64,
    /// Rho iterations allowed per σ factorization.
    pub factor_budget: u64,
    /// Total node allowance, split evenly across root subtrees so the
    /// output does not depend on scheduling.
    pub node_budget: u64,
    pub root_prime: u64,
}

impl ChainConfig {
    pub fn new(t: u32) -> Self {
        ChainConfig {
            t,
            b: 1_000_000,
            factor_budget: 2_000_000,
            node_budget: 100_000,
            root_prime: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=11).contains(&self.t) {
            return Err(Error::OutOfRange(format!(
                "t = {} outside 2..=11 (roots at 3 are justified only there)",
                self.t
            )));
        }
        if self.b < 9 {
            return Err(Error::OutOfRange("B must be at least 9".into()));
        }
        if self.root_prime != 3 {
            return Err(Error::Unsupported(
                "only root prime 3 is justified by the published bounds".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "t": self.t,
            "B": self.b,
            "factor_budget": self.factor_budget,
            "node_budget": self.node_budget,
            "root_prime": self.root_prime,
        })
    }
}

/// The tagged contradictions that terminate a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContradictionCode {
    /// An abundant divisor: I(λμ̄) > 2.
    A,
    /// Deficient: all t primes known and I(λμ^∞) < 2.
    D,
    /// Too many distinct primes: k > t.
    M1,
    /// One prime occurred as a consequent more often than its exact
    /// exponent allows (also covers the σ parity check on the factor 2).
    M2,
    /// The Lemma-X interval contains no new prime.
    N,
    /// No prime factor can exceed 10^8.
    P1,
    /// At most one prime factor can exceed 10^4.
    P2,
    /// At most two prime factors can exceed 100.
    P3,
    /// A consequent prime undercut the purportedly smallest remaining one.
    S,
    /// No prime left that could be the special prime.
    Pi,
    /// σ of a component would not factor within budget.
    Unfactored,
}

impl ContradictionCode {
    pub fn tag(&self) -> &'static str {
        match self {
            ContradictionCode::A => "A",
            ContradictionCode::D => "D",
            ContradictionCode::M1 => "M1",
            ContradictionCode::M2 => "M2",
            ContradictionCode::N => "N",
            ContradictionCode::P1 => "P1",
            ContradictionCode::P2 => "P2",
            ContradictionCode::P3 => "P3",
            ContradictionCode::S => "S",
            ContradictionCode::Pi => "Pi",
            ContradictionCode::Unfactored => "Unfactored",
        }
    }
}

/// How a node ends: a contradiction, an exact perfect-number witness, a
/// state that needs a larger B to decide, or node-budget exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    Code(ContradictionCode),
    Witness,
    BLimited,
    Budget,
}

impl Terminal {
    pub fn tag(&self) -> &'static str {
        match self {
            Terminal::Code(c) => c.tag(),
            Terminal::Witness => "Witness",
            Terminal::BLimited => "BLimited",
            Terminal::Budget => "Budget",
        }
    }
}

/// One node of a proof tree: the component assumed at this step, the
/// factorization of its σ value, and the terminal code if the path ends
/// here. Children are the nodes whose `parent` points back at this id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub prime: u64,
    pub exponent: ChainExponent,
    /// Factorization of σ(prime^exponent); empty for ∞ components.
    pub sigma_factors: Vec<(u64, u32)>,
    pub terminal: Option<Terminal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub config: ChainConfig,
    pub nodes: Vec<ProofNode>,
}

impl ProofTree {
    pub fn children(&self, id: usize) -> impl Iterator<Item = &ProofNode> {
        self.nodes.iter().filter(move |n| n.parent == Some(id))
    }

    pub fn roots(&self) -> impl Iterator<Item = &ProofNode> {
        self.nodes.iter().filter(|n| n.parent.is_none())
    }

    pub fn leaves(&self) -> impl Iterator<Item = &ProofNode> {
        self.nodes.iter().filter(|n| n.terminal.is_some())
    }

    /// Complete means every leaf died of a genuine contradiction or
    /// witness: nothing was cut short by budget or B.
    pub fn is_complete(&self) -> bool {
        self.nodes.iter().all(|n| {
            !matches!(n.terminal, Some(Terminal::Budget) | Some(Terminal::BLimited))
        })
    }

    pub fn witnesses(&self) -> Vec<&ProofNode> {
        self.nodes
            .iter()
            .filter(|n| n.terminal == Some(Terminal::Witness))
            .collect()
    }

    /// Path of node ids from a root down to `id`, inclusive.
    pub fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(parent) = self.nodes[cur].parent {
            path.push(parent);
            cur = parent;
        }
        path.reverse();
        path
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "config": self.config.to_json(),
            "nodes": self
                .nodes
                .iter()
                .map(|n| {
                    json!({
                        "id": n.id,
                        "parent": n.parent,
                        "prime": n.prime.to_string(),
                        "exponent": match n.exponent {
                            ChainExponent::Finite(a) => a.to_string(),
                            ChainExponent::Inf => "inf".to_string(),
                        },
                        "sigma_factors": n
                            .sigma_factors
                            .iter()
                            .map(|(p, e)| json!([p.to_string(), e]))
                            .collect::<Vec<_>>(),
                        "code": n.terminal.map(|t| t.tag()),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}
