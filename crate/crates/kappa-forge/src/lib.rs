//! Exact-arithmetic toolkit for the homogeneous differential polynomial
//! `F_k[p] = p * p'' - k * (p')^2` over arbitrary-precision rationals.
//!
//! The crate provides
//!
//! * [`polycore`] — dense univariate polynomials over `BigRational`:
//!   construction from roots, calculus, gcd, Yun square-free decomposition;
//! * [`rootcount`] — Sturm chains, exact real-root counting and isolation,
//!   bisection refinement of isolating intervals;
//! * [`diffpoly`] — `F_k[p]`, its derivative-shifted companion, the critical
//!   ladder `(k-1)/k`, trivial/non-trivial zero classification, the rational
//!   function `R = p p''/(p')^2` and its residues;
//! * [`theoremlab`] — mechanical verifiers that check concrete polynomials
//!   against the counting statements governing `F_k[p]`;
//! * [`conjectures`] — the exact counterexample family refuting the
//!   `k = (n-1)/n` analogue of the Hawaii conjecture, plus seeded randomized
//!   falsification searches;
//! * [`specfile`] / [`report`] — the CLI-facing polynomial file format and the
//!   deterministic key-value run report.
//!
//! Everything is exact: no floating point anywhere in the core.

pub mod conjectures;
pub mod diffpoly;
pub mod polycore;
pub mod report;
pub mod rootcount;
pub mod specfile;
pub mod theoremlab;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("interval endpoint {0} is a root; nudge the endpoint")]
    EndpointCollision(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
