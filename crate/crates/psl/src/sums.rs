//! Exact streaming of the prime-sum sequences.
//!
//! Three families share one cursor:
//!
//! * plain:      S_n      = p_1 + ... + p_2n
//! * offset d:   S_n^(d)  = 2d + S_n
//! * shifted k:  S_n^(k)  = p_{1+k} + ... + p_{2n+1+k}   (odd term count)
//!
//! S'_n denotes the sum of the first n primes, so S_n = S'_{2n}. All values
//! are exact 128-bit integers, capped at 2^127 - 1 so downstream modular
//! arithmetic never overflows.

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Largest accumulator value the crate will produce.
pub const MAX_ACCUMULATOR: u128 = (1 << 127) - 1;

/// Which prime-sum sequence a cursor walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plain,
    /// 2d + S_n for a fixed d >= 0.
    Offset(u64),
    /// Sum of the 2n+1 primes following p_k, for a fixed shift k >= 1.
    Shifted(u64),
}

impl Variant {
    /// Index of the highest prime needed to evaluate term `n_max`.
    pub fn primes_needed(&self, n_max: u64) -> u64 {
        match self {
            Variant::Plain | Variant::Offset(_) => 2 * n_max,
            Variant::Shifted(k) => 2 * n_max + 1 + k,
        }
    }

    /// Parse the CLI / checkpoint spelling: `plain`, `offset:<d>`, `shifted:<k>`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "plain" {
            return Ok(Variant::Plain);
        }
        if let Some(d) = s.strip_prefix("offset:") {
            let d = d.parse().map_err(|_| bad_variant(s))?;
            return Ok(Variant::Offset(d));
        }
        if let Some(k) = s.strip_prefix("shifted:") {
            let k: u64 = k.parse().map_err(|_| bad_variant(s))?;
            if k == 0 {
                return Err(Error::InvalidArguments(
                    "shifted variant requires k >= 1 (use plain for k = 0)".into(),
                ));
            }
            return Ok(Variant::Shifted(k));
        }
        Err(bad_variant(s))
    }
}

fn bad_variant(s: &str) -> Error {
    Error::InvalidArguments(format!(
        "unknown variant {s:?}; expected plain, offset:<d>, or shifted:<k>"
    ))
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Plain => write!(f, "plain"),
            Variant::Offset(d) => write!(f, "offset:{d}"),
            Variant::Shifted(k) => write!(f, "shifted:{k}"),
        }
    }
}

/// Snapshot of a sum cursor after producing term `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumState {
    pub variant: Variant,
    pub index: u64,
    pub accumulator: u128,
    /// The two primes most recently folded in.
    pub last_primes: (u64, u64),
}

/// Iterator producing `(n, value)` for n = 1..=n_max with O(1) work per step
/// beyond prime generation.
pub struct SumStream<'a> {
    primes: &'a [u64],
    variant: Variant,
    n: u64,
    n_max: u64,
    acc: u128,
    last: (u64, u64),
}

impl<'a> SumStream<'a> {
    /// Build a stream over `variant` up to `n_max`, growing `table` as needed.
    pub fn new(table: &'a mut PrimeTable, variant: Variant, n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArguments("n_max must be >= 1".into()));
        }
        table.ensure_count(variant.primes_needed(n_max))?;
        Ok(SumStream {
            primes: table.primes(),
            variant,
            n: 0,
            n_max,
            acc: 0,
            last: (0, 0),
        })
    }

    pub fn state(&self) -> SumState {
        SumState {
            variant: self.variant,
            index: self.n,
            accumulator: self.acc,
            last_primes: self.last,
        }
    }

    fn add(&mut self, prime_index_zero_based: u64) -> Result<u64> {
        let p = self.primes[prime_index_zero_based as usize];
        self.acc = self
            .acc
            .checked_add(p as u128)
            .filter(|&v| v <= MAX_ACCUMULATOR)
            .ok_or(Error::Overflow { index: self.n + 1 })?;
        Ok(p)
    }
}

impl Iterator for SumStream<'_> {
    type Item = Result<(u64, u128)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.n >= self.n_max {
            return None;
        }
        let n = self.n + 1;
        let result = (|| -> Result<u128> {
            match self.variant {
                Variant::Plain => {
                    if n == 1 {
                        let a = self.add(0)?;
                        let b = self.add(1)?;
                        self.last = (a, b);
                    } else {
                        let a = self.add(2 * n - 2)?;
                        let b = self.add(2 * n - 1)?;
                        self.last = (a, b);
                    }
                    Ok(self.acc)
                }
                Variant::Offset(d) => {
                    if n == 1 {
                        let a = self.add(0)?;
                        let b = self.add(1)?;
                        self.last = (a, b);
                    } else {
                        let a = self.add(2 * n - 2)?;
                        let b = self.add(2 * n - 1)?;
                        self.last = (a, b);
                    }
                    let v = self
                        .acc
                        .checked_add(2 * d as u128)
                        .filter(|&v| v <= MAX_ACCUMULATOR)
                        .ok_or(Error::Overflow { index: n })?;
                    Ok(v)
                }
                Variant::Shifted(k) => {
                    if n == 1 {
                        let a = self.add(k)?;
                        let _ = self.add(k + 1)?;
                        let b = self.add(k + 2)?;
                        self.last = (a, b);
                    } else {
                        let a = self.add(2 * n - 1 + k)?;
                        let b = self.add(2 * n + k)?;
                        self.last = (a, b);
                    }
                    Ok(self.acc)
                }
            }
        })();
        self.n = n;
        Some(result.map(|v| (n, v)))
    }
}

/// S'_n: exact sum of the first n primes.
pub fn s_prime(table: &mut PrimeTable, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArguments("s_prime requires n >= 1".into()));
    }
    table.ensure_count(n)?;
    let mut acc = 0u128;
    for &p in &table.primes()[..n as usize] {
        acc = acc
            .checked_add(p as u128)
            .filter(|&v| v <= MAX_ACCUMULATOR)
            .ok_or(Error::Overflow { index: n })?;
    }
    Ok(acc)
}

/// S_n = S'_2n: exact sum of the first 2n primes.
pub fn s(table: &mut PrimeTable, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArguments("s requires n >= 1".into()));
    }
    s_prime(table, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(1_000_000).unwrap()
    }

    #[test]
    fn s_prime_values() {
        let mut t = table();
        assert_eq!(s_prime(&mut t, 2).unwrap(), 5);
        assert_eq!(s_prime(&mut t, 14).unwrap(), 281);
        assert_eq!(s_prime(&mut t, 9).unwrap(), 100);
        // S'_200 equals S_100 by definition
        assert_eq!(s_prime(&mut t, 200).unwrap(), s(&mut t, 100).unwrap());
    }

    #[test]
    fn s_values() {
        let mut t = table();
        assert_eq!(s(&mut t, 1).unwrap(), 5);
        assert_eq!(s(&mut t, 2).unwrap(), 17);
        assert_eq!(s(&mut t, 7).unwrap(), 281);
        assert_eq!(s(&mut t, 100).unwrap(), 111_587);
    }

    #[test]
    fn stream_plain_first_terms() {
        let mut t = table();
        let got: Vec<_> = SumStream::new(&mut t, Variant::Plain, 3)
            .unwrap()
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(got, vec![(1, 5), (2, 17), (3, 41)]);
    }

    #[test]
    fn stream_offset_first_terms() {
        let mut t = table();
        let got: Vec<_> = SumStream::new(&mut t, Variant::Offset(1), 2)
            .unwrap()
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(got, vec![(1, 7), (2, 19)]);
    }

    #[test]
    fn stream_shifted_first_term() {
        let mut t = table();
        let got: Vec<_> = SumStream::new(&mut t, Variant::Shifted(1), 1)
            .unwrap()
            .map(|r| r.unwrap())
            .collect();
        // 3 + 5 + 7
        assert_eq!(got, vec![(1, 15)]);
    }

    #[test]
    fn stream_matches_point_queries() {
        let mut t = table();
        let streamed: Vec<_> = SumStream::new(&mut t, Variant::Plain, 50)
            .unwrap()
            .map(|r| r.unwrap().1)
            .collect();
        for (i, &v) in streamed.iter().enumerate() {
            assert_eq!(v, s(&mut t, i as u64 + 1).unwrap());
        }
    }

    #[test]
    fn shifted_matches_direct_sum() {
        let mut t = table();
        let k = 3u64;
        let streamed: Vec<_> = SumStream::new(&mut t, Variant::Shifted(k), 20)
            .unwrap()
            .map(|r| r.unwrap().1)
            .collect();
        for (i, &v) in streamed.iter().enumerate() {
            let n = i as u64 + 1;
            let direct: u128 = t.primes()[k as usize..(2 * n + 1 + k) as usize]
                .iter()
                .map(|&p| p as u128)
                .sum();
            assert_eq!(v, direct, "n={n}");
        }
    }

    #[test]
    fn telescoping_and_parity() {
        let mut t = table();
        let vals: Vec<u128> = SumStream::new(&mut t, Variant::Plain, 500)
            .unwrap()
            .map(|r| r.unwrap().1)
            .collect();
        for n in 1..vals.len() {
            let p1 = t.primes()[2 * n] as u128;
            let p2 = t.primes()[2 * n + 1] as u128;
            assert_eq!(vals[n] - vals[n - 1], p1 + p2);
        }
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(v % 2, 1, "S_{} should be odd", i + 1);
        }
        // S'_n with odd n >= 3 is even
        for n in (3..100u64).step_by(2) {
            assert_eq!(s_prime(&mut t, n).unwrap() % 2, 0);
        }
    }

    #[test]
    fn variant_parse_roundtrip() {
        for s in ["plain", "offset:3", "shifted:12"] {
            assert_eq!(Variant::parse(s).unwrap().to_string(), s);
        }
        assert!(Variant::parse("shifted:0").is_err());
        assert!(Variant::parse("bogus").is_err());
        assert!(Variant::parse("offset:x").is_err());
    }

    #[test]
    fn state_reports_last_primes() {
        let mut t = table();
        let mut st = SumStream::new(&mut t, Variant::Plain, 3).unwrap();
        st.next();
        assert_eq!(st.state().last_primes, (2, 3));
        st.next();
        assert_eq!(st.state().last_primes, (5, 7));
        assert_eq!(st.state().accumulator, 17);
        assert_eq!(st.state().index, 2);
    }
}
