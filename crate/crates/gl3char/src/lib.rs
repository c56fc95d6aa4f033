//! Exact character theory of GL(3,F_q).
//!
//! This crate builds, for small prime powers q, the full complex character
//! theory of the general linear group G = GL(3,F_q) in exact cyclotomic
//! arithmetic:
//!
//! * the field tower F_q, F_{q^2}, F_{q^3} with discrete logarithms and the
//!   torus embeddings into G ([`fields`]),
//! * multiplicative and additive characters and their operators ([`chars`]),
//! * the canonical conjugacy class list with exact class sizes ([`group`]),
//! * the eight families of irreducible characters as exact class functions,
//!   including resolution of degenerate parameters ([`chartable`]),
//! * induced class functions from maximal tori and from unipotent subgroups
//!   Z·N' by the Frobenius formula, both brute force and in closed form
//!   ([`induction`]),
//! * class-function algebra: tensor products, inner products, decomposition
//!   into irreducibles, and machine verification of a family of
//!   tensor-product identities ([`tensorlab`]),
//! * interpolating families of unipotent pattern subgroups and the
//!   cuspidal-times-principal decomposition into Gelfand-Graev terms
//!   ([`conjecture`]).
//!
//! All identity checks are exact equalities in Q(zeta_M); no floating point
//! is involved except as an independent cross-check backend.
//!
//! Entry point: [`Engine`], one per prime power q. See the `examples/`
//! directory for runnable tours of each capability, and the `gl3char`
//! binary for the command line interface.

pub mod chars;
pub mod chartable;
pub mod cli;
pub mod conjecture;
pub mod cyclo;
pub mod engine;
pub mod fields;
pub mod floatcheck;
pub mod group;
pub mod induction;
pub mod tensorlab;

pub use engine::Engine;

/// Crate version string, embedded in cache files and reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors surfaced by the public API.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("q = {q} outside supported range (limit {limit})")]
    UnsupportedQ { q: u32, limit: u32 },
    #[error("extension degree {0} not supported (need 1, 2 or 3)")]
    BadDegree(u32),
    #[error("zero element has no discrete logarithm / embedding")]
    ZeroElement,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("inexact division by {divisor}: canonical coefficient {coefficient} at position {position}")]
    InexactDivision {
        divisor: u64,
        coefficient: String,
        position: usize,
    },
    #[error("label is degenerate: {0}")]
    DegenerateLabel(String),
    #[error("degenerate shape not covered by the resolution rules: {0}")]
    UnresolvedDegenerate(String),
    #[error("class function defined for q = {left}, expected q = {right}")]
    QMismatch { left: u32, right: u32 },
    #[error("non-integer multiplicity for {0}")]
    NonIntegerMultiplicity(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
