//! Real-valued analytics over the prime-sum data: companion sequences,
//! ω-density functions, the M_k normalizing root, per-hit diagnostics,
//! the k_0/k_1/k_2 root equations, the logarithmic integral, and series
//! partial sums.
//!
//! Everything here is binary64; exact integers stay in `sums`/`scanner`.
//! "log" is the natural logarithm throughout.

mod companion;
mod li;
mod mk;
mod roots;
mod sequences;
mod series;

pub use companion::{companion_b, euler_phi, omega_34, omega_ad, CompanionPoint, SequenceKind};
pub use li::li;
pub use mk::{mk_refined, mk_upper, q_diagnostics, solve_mk, solve_mk_real, MkSolution, QDiagnostics};
pub use roots::{root_k0, root_k1, root_k2, solve_u_ln_u, table5_ratios, Table5Ratios};
pub use sequences::{
    monotonicity_scan, t_seq, tprime_seq, v_seq, vprime_seq, MonotonicityReport, Sequence,
};
pub use series::{series_partial, SeriesKind, SeriesLedger};

/// Floor that tolerates floating noise at integer boundaries: values within
/// 1e-9 of an integer round to it instead of falling to the next one down.
pub(crate) fn floor_guard(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r
    } else {
        x.floor()
    }
}
