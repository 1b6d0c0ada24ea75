// SPDX-License-Identifier: Apache-2.0

//! Exact-arithmetic checks for the Mordell curves `E_D': y^2 = x^3 + 16 D'`
//! where `D` is an odd fundamental discriminant with `D = 2 (mod 3)` and
//! `D' = -3 D` is its mirror.
//!
//! The crate covers:
//!
//! - [`discriminants`]: the family of `D` and the mirror map,
//! - [`classgroup`]: class groups of quadratic fields through binary
//!   quadratic forms, 3-ranks and the escalatory / non-escalatory split,
//! - [`curves`]: rational points on `E_D'` and `E_D: Y^2 = X^3 + 1296 D`
//!   together with the 3-isogenies between them,
//! - [`descent`]: the 3-descent image, 3-virtual units and the trace-zero
//!   cubics built from integral points,
//! - [`predict`]: Selmer-rank and parity predictions and per-discriminant
//!   verdicts,
//! - [`search`]: bounded integral and rational point searches,
//! - [`batch`] and [`cache`]: the report pipeline behind the `mdv` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod arith;
pub mod batch;
pub mod cache;
pub mod classgroup;
pub mod curves;
pub mod descent;
pub mod discriminants;
pub mod predict;
pub mod search;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Errors raised by the library.
///
/// `ScholzViolation`, `LadderViolation` and `Refutation` are never expected
/// to occur: they mean either an arithmetic bug or a counterexample to one
/// of the theorems being checked, and callers should treat them as fatal.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not in the discriminant family (odd, squarefree, = 5 mod 12)")]
    NotInFamily(BigInt),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(BigInt),
    #[error("|disc| = {disc} exceeds the configured bound {bound}")]
    BoundExceeded { disc: BigInt, bound: BigInt },
    #[error("forms have different discriminants ({0} vs {1})")]
    DiscriminantMismatch(BigInt, BigInt),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("Scholz inequality violated for D = {d}: r3({d}) = {r3_d}, r3({d_prime}) = {r3_d_prime}")]
    ScholzViolation {
        d: BigInt,
        d_prime: BigInt,
        r3_d: u32,
        r3_d_prime: u32,
    },
    #[error("divisibility ladder violated: {0}")]
    LadderViolation(String),
    #[error("refutation-grade event: {0}")]
    Refutation(String),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for the variants that signal a broken invariant rather than bad
    /// input.
    pub fn is_internal_assertion(&self) -> bool {
        matches!(
            self,
            Error::ScholzViolation { .. } | Error::LadderViolation(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
