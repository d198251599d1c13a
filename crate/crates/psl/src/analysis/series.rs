//! Partial sums of the three series tied to the hit data, each paired with
//! the asymptotic comparator it is expected to track:
//!
//!   Σ k ln²k / q_k        (diverges like ln ln n)
//!   Σ k ln^{2-ε}k / q_k   (converges; limit under 1/(ε ln^ε 2))
//!   Σ 1/π_i               (grows like ½ ln²n)

use crate::error::{Error, Result};
use crate::scanner::PrimeHit;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesKind {
    KLog2OverQ,
    KLog2EpsOverQ { eps: f64 },
    InvPi,
}

#[derive(Debug, Clone, Copy)]
pub struct SeriesLedger {
    pub kind: SeriesKind,
    pub upto: u64,
    pub partial_sum: f64,
    pub comparator: f64,
}

/// Partial sum of `kind` up to `upto` (a hit ordinal k for the q-series, a
/// sequence index i for the 1/π series). `hits` must come from a scan whose
/// range covers the request.
pub fn series_partial(kind: SeriesKind, upto: u64, hits: &[PrimeHit]) -> Result<SeriesLedger> {
    if upto < 2 {
        return Err(Error::InvalidArguments("upto must be >= 2".into()));
    }
    match kind {
        SeriesKind::KLog2OverQ => {
            if (hits.len() as u64) < upto {
                return Err(Error::InsufficientData(format!(
                    "need q_k up to k = {upto}, have {} hits",
                    hits.len()
                )));
            }
            let mut sum = 0.0;
            for h in &hits[1..upto as usize] {
                let k = h.k as f64;
                sum += k * k.ln().powi(2) / h.q as f64;
            }
            Ok(SeriesLedger {
                kind,
                upto,
                partial_sum: sum,
                comparator: (upto as f64).ln().ln() - 2f64.ln().ln(),
            })
        }
        SeriesKind::KLog2EpsOverQ { eps } => {
            if eps.is_nan() || eps <= 0.0 {
                return Err(Error::InvalidArguments(format!(
                    "eps must be positive, got {eps}"
                )));
            }
            if (hits.len() as u64) < upto {
                return Err(Error::InsufficientData(format!(
                    "need q_k up to k = {upto}, have {} hits",
                    hits.len()
                )));
            }
            let mut sum = 0.0;
            for h in &hits[1..upto as usize] {
                let k = h.k as f64;
                sum += k * k.ln().powf(2.0 - eps) / h.q as f64;
            }
            Ok(SeriesLedger {
                kind,
                upto,
                partial_sum: sum,
                comparator: 1.0 / (eps * 2f64.ln().powf(eps)),
            })
        }
        SeriesKind::InvPi => {
            // π_i is the number of hits with m <= i; require at least one hit
            // before or at the start so no term divides by zero.
            if hits.is_empty() || hits[0].m > upto {
                return Err(Error::InsufficientData(
                    "no hits at or below the requested range".into(),
                ));
            }
            let mut sum = 0.0;
            let mut count = 0u64;
            let mut next_hit = 0usize;
            for i in 1..=upto {
                while next_hit < hits.len() && hits[next_hit].m <= i {
                    count += 1;
                    next_hit += 1;
                }
                if count > 0 {
                    sum += 1.0 / count as f64;
                }
            }
            Ok(SeriesLedger {
                kind,
                upto,
                partial_sum: sum,
                comparator: 0.5 * (upto as f64).ln().powi(2),
            })
        }
    }
}
