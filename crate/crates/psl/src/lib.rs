//! psl — prime-sum laboratory.
//!
//! Let p_i be the i-th prime and S_n = p_1 + ... + p_2n the sum of the first
//! 2n primes. This crate generates the S_n family exactly, finds the primes
//! hiding among its terms, and evaluates the analytic quantities and
//! inequalities that describe how those primes are distributed:
//!
//! * [`primes`] — segmented sieve, π(x) lookup, deterministic Miller-Rabin
//!   up to 3.317e24;
//! * [`sums`] — exact streaming of S_n, the offset family 2d + S_n, and the
//!   shifted family Σ p_{i+k} (i = 1..2n+1);
//! * [`scanner`] — parallel, checkpointable scans recording every prime term
//!   as a (k, m, q) hit, with CSV/JSON persistence;
//! * [`analysis`] — companion sequences, ω densities, the M_k root of
//!   q = 2M⁵k²ln²k(ln k + lnln k + 2 ln M), per-hit diagnostics, the
//!   k_0/k_1/k_2 counting roots, li(x), and series partial sums;
//! * [`bounds`] — every named inequality as a gated pass/fail check with
//!   margins;
//! * [`report`] — table builders and verification suites behind the CLI.

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod primes;
pub mod report;
pub mod scanner;
pub mod sums;

pub use error::{Error, Result};
pub use primes::{PrimalityVerdict, PrimeTable};
pub use scanner::{Checkpoint, PiCheckpointRow, PrimeHit, ScanConfig, ScanOutcome};
pub use sums::Variant;
