//! Exact-arithmetic workbench for the constraints an odd perfect number
//! would have to satisfy.
//!
//! Everything here is integer or rational arithmetic; no floating point is
//! used anywhere. The crate is organised around:
//!
//! * [`arith`] — factorization and the classical multiplicative functions
//!   (σ, d, φ, ω, Ω), plus Euclid–Euler perfect-number machinery and a few
//!   validation identities.
//! * [`abundancy`] — the abundancy index σ(n)/n, index/outlaw classifiers,
//!   and the recursive solver for I(x) = a/b.
//! * [`congruence`] — residue-class sieves (Touchard, Roberts), a CRT solver
//!   for non-coprime moduli, and the Euler-form decomposition.
//! * [`bounds`] — the inequality calculus: product bounds, per-position
//!   prime-factor bounds, and size bounds.
//! * [`chain`] — the factor/sigma-chain proof search that terminates every
//!   branch of a hypothesised factorization with a tagged contradiction.
//! * [`components`] — the Euler-factor component calculus (ρ/μ ratios,
//!   X + Y bounds, the trichotomy, the 2/3 filter).

pub mod abundancy;
pub mod arith;
pub mod bounds;
pub mod chain;
pub mod components;
pub mod congruence;
mod error;
pub mod factor;
pub mod primality;
pub mod rational;

pub use error::{Error, Result};
pub use factor::{FactorBudget, FactorOutcome, Factorization, PartialFactorization};
pub use rational::Rational;

/// Arbitrary-precision nonnegative integer; the carrier for every integer
/// quantity in the crate.
pub type Natural = num_bigint::BigUint;
