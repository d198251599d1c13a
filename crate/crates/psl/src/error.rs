//! Error type shared across the crate.
//!
//! Exit-code mapping for the CLI lives in `main.rs`: usage errors exit 2,
//! check failures exit 1, capacity/data errors exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A sieve or window request exceeded the configured cap
    /// (`PSL_MAX_SIEVE` overrides the default of 2^40).
    #[error("capacity: requested {requested} exceeds configured maximum {max}")]
    Capacity { requested: u128, max: u128 },

    /// A running prime sum would exceed 2^127 - 1.
    #[error("accumulator overflow at index {index}: sums are capped at 2^127 - 1")]
    Overflow { index: u64 },

    /// Deterministic Miller-Rabin is only proven below 3.317e24.
    #[error("{value} is outside the proven deterministic primality range (< 3.317e24)")]
    OutOfProvenRange { value: u128 },

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The M_k equation has no sign change on the search bracket.
    #[error("no root for k={k}, q={q}: no sign change on [{lo}, {hi}]")]
    NoRoot { k: u64, q: u128, lo: f64, hi: f64 },

    #[error("checkpoint digest mismatch: recorded {recorded:#018x}, recomputed {computed:#018x}")]
    DigestMismatch { recorded: u64, computed: u64 },

    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
