//! The M_k normalizing root and per-hit diagnostics.
//!
//! Every prime q_k found in the sequence can be written as
//!
//!   q_k = 2 M_k^5 k² ln²k (ln k + ln ln k + 2 ln M_k)
//!
//! for a unique M_k > 0; `solve_mk` recovers it. The companion ratios bound
//! it from above: M_k^(u) = t_k and the refined M_k^(l) = t_⌊k ln k⌋ with
//! t_n = S_n / (2n² ln n).

use crate::analysis::floor_guard;
use crate::analysis::sequences::t_seq;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::scanner::PrimeHit;

/// Root of the q_k normal form, with solver diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct MkSolution {
    pub k: u64,
    pub q: u128,
    pub m_k: f64,
    /// |forward(m_k) - q| / q
    pub residual: f64,
    pub iterations: u32,
}

const BRACKET_LO: f64 = 0.1;
const BRACKET_HI: f64 = 10.0;

fn forward(k: u64, m: f64) -> f64 {
    let lk = (k as f64).ln();
    let llk = lk.ln();
    2.0 * m.powi(5) * (k as f64) * (k as f64) * lk * lk * (lk + llk + 2.0 * m.ln())
}

/// Solve for the unique positive root on [0.1, 10] with a real-valued target.
/// Bisection brackets the root, Newton polishes it to 1e-12 relative.
pub fn solve_mk_real(k: u64, q: f64) -> Result<(f64, u32)> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "m_k solver requires k >= 3 (ln ln k must be positive), got {k}"
        )));
    }
    if q.is_nan() || q < 1.0 {
        return Err(Error::InvalidArguments(format!("q must be >= 1, got {q}")));
    }
    let g = |m: f64| forward(k, m) - q;
    let (mut lo, mut hi) = (BRACKET_LO, BRACKET_HI);
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return Err(Error::NoRoot {
            k,
            q: q as u128,
            lo,
            hi,
        });
    }
    let mut iterations = 0u32;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    let mut m = 0.5 * (lo + hi);
    let lk = (k as f64).ln();
    let llk = lk.ln();
    let scale = 2.0 * (k as f64) * (k as f64) * lk * lk;
    for _ in 0..40 {
        let val = g(m);
        if val.abs() <= 1e-13 * q {
            break;
        }
        // d/dM [2M^5 K (A + 2 ln M)] = 2K M^4 (5(A + 2 ln M) + 2)
        let deriv = scale * m.powi(4) * (5.0 * (lk + llk + 2.0 * m.ln()) + 2.0);
        let next = m - val / deriv;
        iterations += 1;
        if !next.is_finite() || (next - m).abs() <= f64::EPSILON * m {
            m = if next.is_finite() { next } else { m };
            break;
        }
        m = next;
    }
    Ok((m, iterations))
}

/// Solve q_k = 2 M^5 k² ln²k (ln k + ln ln k + 2 ln M) for M.
pub fn solve_mk(k: u64, q: u128) -> Result<MkSolution> {
    let (m_k, iterations) = solve_mk_real(k, q as f64)?;
    let residual = (forward(k, m_k) - q as f64).abs() / q as f64;
    Ok(MkSolution {
        k,
        q,
        m_k,
        residual,
        iterations,
    })
}

/// Upper bound M_k^(u) = t_k = S_k / (2k² ln k), exact S_k.
pub fn mk_upper(table: &mut PrimeTable, k: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain(format!("mk_upper requires k >= 2, got {k}")));
    }
    t_seq(table, k)
}

/// Refined upper bound M_k^(l) = t_j with j = ⌊k ln k⌋, exact S_j.
pub fn mk_refined(table: &mut PrimeTable, k: u64) -> Result<f64> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "mk_refined requires k >= 3, got {k}"
        )));
    }
    let j = floor_guard(k as f64 * (k as f64).ln()) as u64;
    t_seq(table, j)
}

/// Normalized excesses and ratios of one prime hit.
///
/// With t = 2k²ln²k:
///   q            = (q - t·ln k)                / (t·lnln k)
///   q_prime      = (q - t·(ln k + lnln k))     / (t·lnln k)
///   q_double     = (q - 2p_k²·ln k)            / (t·lnln k)
///   q_triple     = (q - t·(ln k + lnln k))     / (t·lnlnln k), k >= 16 only
///   v            = q / (2m² ln m)
///   l            = q / (t·(ln k + lnln k))
///   ratio        = q / (t·ln k)
#[derive(Debug, Clone, Copy)]
pub struct QDiagnostics {
    pub q: f64,
    pub q_prime: f64,
    pub q_double_prime: f64,
    pub q_triple_prime: Option<f64>,
    pub v: f64,
    pub l: f64,
    pub ratio: f64,
}

/// Evaluate the diagnostic family at one hit. Requires k >= 3; the
/// triple-log variant needs k >= 16 (lnlnln k > 0) and is omitted below that.
pub fn q_diagnostics(table: &mut PrimeTable, hit: &PrimeHit) -> Result<QDiagnostics> {
    if hit.k < 3 {
        return Err(Error::Domain(format!(
            "q_diagnostics requires k >= 3, got {}",
            hit.k
        )));
    }
    let k = hit.k as f64;
    let qv = hit.q as f64;
    let m = hit.m as f64;
    let lk = k.ln();
    let llk = lk.ln();
    let t = 2.0 * k * k * lk * lk;
    let pk = table.nth_prime(hit.k)? as f64;

    let q = (qv - t * lk) / (t * llk);
    let q_prime = (qv - t * (lk + llk)) / (t * llk);
    let q_double_prime = (qv - 2.0 * pk * pk * lk) / (t * llk);
    let q_triple_prime = if hit.k >= 16 {
        Some((qv - t * (lk + llk)) / (t * llk.ln()))
    } else {
        None
    };
    let v = qv / (2.0 * m * m * m.ln());
    let l = qv / (t * (lk + llk));
    let ratio = qv / (t * lk);
    Ok(QDiagnostics {
        q,
        q_prime,
        q_double_prime,
        q_triple_prime,
        v,
        l,
        ratio,
    })
}
