//! Prime generation and deterministic primality testing.
//!
//! A [`PrimeTable`] holds every prime up to a limit, produced by a segmented
//! sieve of Eratosthenes whose working memory is bounded by the segment size
//! rather than the limit. Primality of integers beyond the table is decided
//! by a Miller-Rabin test with a fixed base set that is deterministic for all
//! inputs below 3.317e24; larger inputs are rejected rather than answered
//! probabilistically.

use crate::error::{Error, Result};

/// Default cap on sieve limits. Override with the `PSL_MAX_SIEVE` env var.
pub const DEFAULT_MAX_SIEVE: u64 = 1 << 40;

/// Default cap on the reach of windowed prime counting.
pub const DEFAULT_WINDOW_REACH: u64 = 1 << 50;

/// Default number of elements per sieve segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 18;

/// Largest value for which the fixed Miller-Rabin base set below is a proven
/// deterministic primality test (Sorenson & Webster's bound for the first
/// thirteen prime bases), about 3.317e24.
pub const MR_PROVEN_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Fixed witness set: the first thirteen primes.
pub const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// How a primality verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Sieve,
    DeterministicMillerRabin,
}

/// Primality answer together with the deciding method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimalityVerdict {
    pub value: u128,
    pub is_prime: bool,
    pub method: Method,
}

/// The configured sieve cap ([`DEFAULT_MAX_SIEVE`] unless `PSL_MAX_SIEVE` is set).
pub fn max_sieve_limit() -> u64 {
    std::env::var("PSL_MAX_SIEVE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_SIEVE)
}

/// Ordered primes up to an inclusive limit.
///
/// Immutable once built; methods taking `&mut self` only replace the table
/// with a larger one (resieving), never mutate shared state in place, so a
/// fully provisioned table can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    segment_size: usize,
}

impl PrimeTable {
    /// Sieve all primes up to `limit` (inclusive).
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_segment_size(limit, DEFAULT_SEGMENT_SIZE)
    }

    /// Sieve with an explicit segment size. Output is identical for every
    /// segment size; only the memory/locality trade-off changes.
    pub fn with_segment_size(limit: u64, segment_size: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArguments(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        let max = max_sieve_limit();
        if limit > max {
            return Err(Error::Capacity {
                requested: limit as u128,
                max: max as u128,
            });
        }
        let segment_size = segment_size.max(64);
        let primes = segmented_sieve(limit, segment_size);
        Ok(PrimeTable {
            limit,
            primes,
            segment_size,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of primes in the table.
    pub fn count(&self) -> u64 {
        self.primes.len() as u64
    }

    /// π(x): number of primes ≤ x. `x` must not exceed the sieved limit.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::InvalidArguments(format!(
                "pi({x}) beyond sieved limit {}; extend the table first",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// The n-th prime (p_1 = 2), resieving with a doubled limit when the
    /// table is too short.
    pub fn nth_prime(&mut self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidArguments("nth_prime requires n >= 1".into()));
        }
        self.ensure_count(n)?;
        Ok(self.primes[(n - 1) as usize])
    }

    /// Grow the table until it holds at least `n` primes.
    pub fn ensure_count(&mut self, n: u64) -> Result<()> {
        while (self.primes.len() as u64) < n {
            let target = estimate_nth_prime(n).max(self.limit.saturating_mul(2));
            self.ensure_limit(target)?;
        }
        Ok(())
    }

    /// Grow the table to cover `limit` if it does not already.
    pub fn ensure_limit(&mut self, limit: u64) -> Result<()> {
        if limit <= self.limit {
            return Ok(());
        }
        let bigger = Self::with_segment_size(limit, self.segment_size)?;
        *self = bigger;
        Ok(())
    }

    /// Decide primality: sieve lookup for values within the table, fixed-base
    /// Miller-Rabin above it, and an error at or beyond the proven bound.
    pub fn is_prime(&self, value: u128) -> Result<PrimalityVerdict> {
        if value <= self.limit as u128 {
            let is_prime = self
                .primes
                .binary_search(&(value as u64))
                .is_ok();
            return Ok(PrimalityVerdict {
                value,
                is_prime,
                method: Method::Sieve,
            });
        }
        let is_prime = is_prime_u128(value)?;
        Ok(PrimalityVerdict {
            value,
            is_prime,
            method: Method::DeterministicMillerRabin,
        })
    }
}

/// Overestimate of p_n, used to pick sieve limits (Rosser-style bound with
/// slack; exactness is not needed because `ensure_count` loops).
fn estimate_nth_prime(n: u64) -> u64 {
    if n < 6 {
        return 16;
    }
    let nf = n as f64;
    let ln = nf.ln();
    (nf * (ln + ln.ln() + 1.0)) as u64
}

/// Simple monolithic sieve, used for base primes up to √limit.
fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Segmented sieve of Eratosthenes over odd candidates. Memory use is
/// O(√limit + segment_size) regardless of the limit.
fn segmented_sieve(limit: u64, segment_size: usize) -> Vec<u64> {
    let sqrt = (limit as f64).sqrt() as u64 + 2;
    let base = simple_sieve(sqrt.min(limit));
    let mut primes = Vec::with_capacity(prime_count_estimate(limit));
    if limit >= 2 {
        primes.push(2);
    }

    // Sieve odd numbers in [3, limit] one segment at a time. Both segment
    // ends stay odd so the low + 2i indexing never drifts parity.
    let top = if limit.is_multiple_of(2) { limit - 1 } else { limit };
    let mut mark = vec![false; segment_size];
    let mut low = 3u64;
    while low <= top {
        let high = low
            .saturating_add(2 * (segment_size as u64 - 1))
            .min(top);
        // mark[i] corresponds to the odd number low + 2i
        let span = ((high - low) / 2 + 1) as usize;
        mark[..span].fill(false);
        for &p in base.iter().skip(1) {
            // odd base primes only
            if p * p > high {
                break;
            }
            let mut start = p * p;
            if start < low {
                let k = low.div_ceil(p);
                start = k * p;
                if start % 2 == 0 {
                    start += p;
                }
            }
            let mut j = start;
            while j <= high {
                mark[((j - low) / 2) as usize] = true;
                j += 2 * p;
            }
        }
        for (i, &m) in mark[..span].iter().enumerate() {
            if !m {
                let cand = low + 2 * i as u64;
                if cand <= limit {
                    primes.push(cand);
                }
            }
        }
        low = high + 2;
    }
    primes
}

fn prime_count_estimate(limit: u64) -> usize {
    if limit < 17 {
        return 8;
    }
    let x = limit as f64;
    (1.2 * x / x.ln()) as usize
}

/// Count primes p with lo < p < hi by sieving only the window [lo+1, hi-1].
/// Needs base primes up to √hi, which are taken from (and may grow) `table`.
pub fn prime_count_between(table: &mut PrimeTable, lo: u64, hi: u64) -> Result<u64> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidArguments(format!(
            "prime_count_between requires 2 <= lo <= hi, got ({lo}, {hi})"
        )));
    }
    if hi > DEFAULT_WINDOW_REACH {
        return Err(Error::Capacity {
            requested: hi as u128,
            max: DEFAULT_WINDOW_REACH as u128,
        });
    }
    let sqrt = (hi as f64).sqrt() as u64 + 2;
    if sqrt > max_sieve_limit() {
        return Err(Error::Capacity {
            requested: sqrt as u128,
            max: max_sieve_limit() as u128,
        });
    }
    table.ensure_limit(sqrt)?;
    if hi - lo <= 1 {
        return Ok(0);
    }
    let (from, to) = (lo + 1, hi - 1);

    let mut count = 0u64;
    let seg = table.segment_size as u64;
    let mut low = from;
    while low <= to {
        let high = low.saturating_add(seg - 1).min(to);
        let span = (high - low + 1) as usize;
        let mut mark = vec![false; span];
        for &p in table.primes() {
            if p * p > high {
                break;
            }
            let start = (low.div_ceil(p) * p).max(p * p);
            let mut j = start;
            while j <= high {
                mark[(j - low) as usize] = true;
                j += p;
            }
        }
        // Base primes reach sqrt(hi) and marking starts at max(p*p, low),
        // so every unmarked value in the window is prime (the window starts
        // at lo+1 >= 3, so 0 and 1 never appear).
        count += mark.iter().filter(|&&m| !m).count() as u64;
        low = match high.checked_add(1) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Deterministic Miller-Rabin
// ---------------------------------------------------------------------------

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// a + b (mod m) without overflow; valid for m <= 2^127 - 1.
#[inline]
fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

/// a * b (mod m) by shift-and-add; the 256-bit intermediate is avoided by
/// reducing after every doubling. Requires m <= 2^127 - 1.
fn mul_mod_u128(mut a: u128, mut b: u128, m: u128) -> u128 {
    a %= m;
    b %= m;
    if a == 0 || b == 0 {
        return 0;
    }
    if let (Ok(a64), Ok(b64), Ok(m64)) = (
        u64::try_from(a),
        u64::try_from(b),
        u64::try_from(m),
    ) {
        return mul_mod_u64(a64, b64, m64) as u128;
    }
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod_u128(acc, a, m);
        }
        a = add_mod_u128(a, a, m);
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// One strong-probable-prime round for odd n = d * 2^s + 1.
fn strong_round_u64(n: u64, d: u64, s: u32, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_round_u128(n: u128, d: u128, s: u32, base: u64) -> bool {
    let a = base as u128 % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod_u128(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u128(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for any u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    MR_BASES.iter().all(|&b| strong_round_u64(n, d, s, b))
}

/// Deterministic Miller-Rabin for values below [`MR_PROVEN_BOUND`]; larger
/// inputs return [`Error::OutOfProvenRange`] instead of an unproven verdict.
pub fn is_prime_u128(n: u128) -> Result<bool> {
    if n >= MR_PROVEN_BOUND {
        return Err(Error::OutOfProvenRange { value: n });
    }
    if let Ok(n64) = u64::try_from(n) {
        return Ok(is_prime_u64(n64));
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p as u128) {
            return Ok(false);
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    Ok(MR_BASES.iter().all(|&b| strong_round_u128(n, d, s, b)))
}
