//! The normalized sum sequences t, v, t', v' and their monotonicity scans.
//!
//!   t_n  = S_n / (2n² ln n)        claimed decreasing for n >= 1100
//!   v_n  = S_n / (2n²)             increasing for n >= 2
//!   t'_n = 2 S'_n / (n² ln(n/2))   claimed decreasing for n >= 2199
//!   v'_n = 2 S'_n / n²             increasing for n >= 4

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sums::{s, s_prime, SumStream, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    V,
    T,
    TPrime,
    VPrime,
}

/// t_n = S_n / (2n² ln n), n >= 2.
pub fn t_seq(table: &mut PrimeTable, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("t_n requires n >= 2, got {n}")));
    }
    let sn = s(table, n)? as f64;
    Ok(sn / (2.0 * (n as f64).powi(2) * (n as f64).ln()))
}

/// v_n = S_n / (2n²), n >= 1.
pub fn v_seq(table: &mut PrimeTable, n: u64) -> Result<f64> {
    let sn = s(table, n)? as f64;
    Ok(sn / (2.0 * (n as f64).powi(2)))
}

/// t'_n = 2 S'_n / (n² ln(n/2)), n >= 3 so the log is positive.
pub fn tprime_seq(table: &mut PrimeTable, n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "t'_n requires n >= 3 (ln(n/2) must be positive), got {n}"
        )));
    }
    let sp = s_prime(table, n)? as f64;
    Ok(2.0 * sp / ((n as f64).powi(2) * (n as f64 / 2.0).ln()))
}

/// v'_n = 2 S'_n / n², n >= 1.
pub fn vprime_seq(table: &mut PrimeTable, n: u64) -> Result<f64> {
    let sp = s_prime(table, n)? as f64;
    Ok(2.0 * sp / (n as f64).powi(2))
}

/// Indices where the claimed monotonicity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub sequence_start: u64,
    pub exception_indices: Vec<u64>,
    pub max_exception: Option<u64>,
}

/// Scan for monotonicity exceptions up to `n_max`.
///
/// For the increasing sequences (v from 2, v' from 4) an exception is an
/// index n with x_{n+1} <= x_n. For the decreasing-trend sequences (t from 2,
/// t' from 3) an exception is an index m with x_{m+1} > x_m.
pub fn monotonicity_scan(
    table: &mut PrimeTable,
    sequence: Sequence,
    n_max: u64,
) -> Result<MonotonicityReport> {
    if n_max < 10 {
        return Err(Error::InvalidArguments(format!(
            "monotonicity scan needs n_max >= 10, got {n_max}"
        )));
    }
    let (start, plain, increasing): (u64, bool, bool) = match sequence {
        Sequence::V => (2, true, true),
        Sequence::T => (2, true, false),
        Sequence::VPrime => (4, false, true),
        Sequence::TPrime => (3, false, false),
    };

    let variant = Variant::Plain;
    let value = |n: u64, sum: u128| -> f64 {
        let nf = n as f64;
        let sf = sum as f64;
        match sequence {
            Sequence::V => sf / (2.0 * nf * nf),
            Sequence::T => sf / (2.0 * nf * nf * nf.ln()),
            Sequence::VPrime => 2.0 * sf / (nf * nf),
            Sequence::TPrime => 2.0 * sf / (nf * nf * (nf / 2.0).ln()),
        }
    };

    let mut exceptions = Vec::new();
    let mut prev: Option<f64> = None;

    if plain {
        let stream = SumStream::new(table, variant, n_max)?;
        for item in stream {
            let (n, sum) = item?;
            if n < start {
                continue;
            }
            let cur = value(n, sum);
            if let Some(p) = prev {
                let bad = if increasing { cur <= p } else { cur > p };
                if bad {
                    exceptions.push(n - 1);
                }
            }
            prev = Some(cur);
        }
    } else {
        // walk S'_n directly
        table.ensure_count(n_max)?;
        let primes = table.primes();
        let mut acc = 0u128;
        for n in 1..=n_max {
            acc += primes[(n - 1) as usize] as u128;
            if n < start {
                continue;
            }
            let cur = value(n, acc);
            if let Some(p) = prev {
                let bad = if increasing { cur <= p } else { cur > p };
                if bad {
                    exceptions.push(n - 1);
                }
            }
            prev = Some(cur);
        }
    }

    Ok(MonotonicityReport {
        sequence_start: start,
        max_exception: exceptions.last().copied(),
        exception_indices: exceptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(3_000_000).unwrap()
    }

    #[test]
    fn point_values() {
        let mut t = table();
        assert!((v_seq(&mut t, 1).unwrap() - 2.5).abs() < 1e-12);
        assert!((t_seq(&mut t, 2).unwrap() - 17.0 / (8.0 * 2f64.ln())).abs() < 1e-12);
        assert!((tprime_seq(&mut t, 3).unwrap() - 5.480674).abs() < 1e-6);
        assert!((vprime_seq(&mut t, 4).unwrap() - 2.125).abs() < 1e-12);
        // t at the index of the 141st prime hit (S_978 = 15518669)
        assert!((t_seq(&mut t, 978).unwrap() - 1.178177).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        let mut t = table();
        assert!(t_seq(&mut t, 1).is_err());
        assert!(tprime_seq(&mut t, 2).is_err());
        assert!(monotonicity_scan(&mut t, Sequence::V, 5).is_err());
    }

    #[test]
    fn v_has_no_exceptions_to_1e4() {
        let mut t = table();
        let rep = monotonicity_scan(&mut t, Sequence::V, 10_000).unwrap();
        assert!(rep.exception_indices.is_empty());
        assert_eq!(rep.max_exception, None);
    }

    #[test]
    fn vprime_has_no_exceptions_to_1e4() {
        let mut t = table();
        let rep = monotonicity_scan(&mut t, Sequence::VPrime, 10_000).unwrap();
        assert!(rep.exception_indices.is_empty());
    }

    #[test]
    fn t_exceptions_prefix() {
        let mut t = table();
        let rep = monotonicity_scan(&mut t, Sequence::T, 400).unwrap();
        // measured exception indices below 400
        assert_eq!(
            rep.exception_indices,
            vec![50, 51, 111, 112, 113, 149, 189, 190, 191, 192, 223, 224, 231, 232, 240, 241,
                 327, 328, 354, 355, 356]
        );
    }

    #[test]
    fn tprime_max_exception_to_1e4() {
        let mut t = table();
        let rep = monotonicity_scan(&mut t, Sequence::TPrime, 10_000).unwrap();
        assert_eq!(rep.max_exception, Some(2198));
    }
}
