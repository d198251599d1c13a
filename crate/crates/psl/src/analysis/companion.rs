//! Companion sequences b_n and c_n for several increasing integer sequences,
//! plus the ω density functions they track.
//!
//! For a sequence (a_k) whose restricted prime count at a_n is π_r:
//!   b_n = (ln a_n / a_n) · π_r
//!   c_n = a_n / ((ln n)(ln a_n))

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::scanner::{scan, ScanConfig};
use crate::sums::s;

/// Which sequence the companion values are computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// a_k = k
    Naturals,
    /// a_k = p_k
    Primes,
    /// a_k = a + (k-1)d with gcd(a, d) = 1
    Arithmetic { a: u64, d: u64 },
    /// a_k = S_k
    PrimeSums,
}

#[derive(Debug, Clone, Copy)]
pub struct CompanionPoint {
    pub n: u64,
    pub a_n: u128,
    pub pi_restricted: u64,
    pub b_n: f64,
    pub c_n: f64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Companion point of `kind` at index n >= 2. The restricted prime count is
/// exact: sieve lookups for the first three kinds, a full sequence scan for
/// prime sums.
pub fn companion_b(table: &mut PrimeTable, kind: SequenceKind, n: u64) -> Result<CompanionPoint> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "companion values need n >= 2, got {n}"
        )));
    }
    let (a_n, pi_restricted): (u128, u64) = match kind {
        SequenceKind::Naturals => {
            table.ensure_limit(n)?;
            (n as u128, table.pi(n)?)
        }
        SequenceKind::Primes => {
            let p = table.nth_prime(n)?;
            (p as u128, n)
        }
        SequenceKind::Arithmetic { a, d } => {
            if d < 1 || gcd(a % d.max(1), d) != 1 {
                return Err(Error::InvalidArguments(format!(
                    "arithmetic progression needs gcd(a, d) = 1, got a={a}, d={d}"
                )));
            }
            let last = a + (n - 1) * d;
            table.ensure_limit(last)?;
            let mut count = 0u64;
            for i in 0..n {
                let v = a + i * d;
                if v >= 2 && table.primes().binary_search(&v).is_ok() {
                    count += 1;
                }
            }
            (last as u128, count)
        }
        SequenceKind::PrimeSums => {
            let cfg = ScanConfig::default();
            let out = scan(table, &cfg, n, &[n])?;
            (s(table, n)?, out.pi_rows[0].pi_n)
        }
    };
    let af = a_n as f64;
    let b_n = af.ln() / af * pi_restricted as f64;
    let c_n = af / ((n as f64).ln() * af.ln());
    Ok(CompanionPoint {
        n,
        a_n,
        pi_restricted,
        b_n,
        c_n,
    })
}

/// Euler's totient via trial division against the prime table.
pub fn euler_phi(table: &mut PrimeTable, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArguments("phi(0) is undefined".into()));
    }
    if d == 1 {
        return Ok(1);
    }
    let sqrt = (d as f64).sqrt() as u64 + 1;
    table.ensure_limit(sqrt.max(2))?;
    let mut rest = d;
    let mut phi = 1u64;
    for &p in table.primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut pk = 1u64;
            while rest.is_multiple_of(p) {
                rest /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
    }
    if rest > 1 {
        phi *= rest - 1;
    }
    Ok(phi)
}

/// Density function for primes in the progression a mod d:
/// ω_{a,d}(x) = d·x / (φ(d)·ln x), defined for x > 1 and gcd(a, d) = 1.
pub fn omega_ad(table: &mut PrimeTable, a: u64, d: u64, x: f64) -> Result<f64> {
    if d < 1 || gcd(a % d.max(1), d) != 1 {
        return Err(Error::InvalidArguments(format!(
            "omega_ad needs gcd(a, d) = 1, got a={a}, d={d}"
        )));
    }
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("omega_ad needs x > 1, got {x}")));
    }
    let phi = euler_phi(table, d)? as f64;
    Ok(d as f64 * x / (phi * x.ln()))
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Expected count of prime exponents-of-two terms:
/// ω^(3,4)(x) = e^γ/(2 ln 2) · (ln x + ln ln x + (ln ln x)²/2), for x > e.
pub fn omega_34(x: f64) -> Result<f64> {
    if x.is_nan() || x <= std::f64::consts::E {
        return Err(Error::Domain(format!(
            "omega_34 needs x > e so ln ln x is positive, got {x}"
        )));
    }
    let c = EULER_GAMMA.exp() / (2.0 * 2f64.ln());
    let lx = x.ln();
    let llx = lx.ln();
    Ok(c * (lx + llx + llx * llx / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(2_000_000).unwrap()
    }

    #[test]
    fn naturals_at_1e6() {
        let mut t = table();
        let p = companion_b(&mut t, SequenceKind::Naturals, 1_000_000).unwrap();
        assert_eq!(p.pi_restricted, 78_498);
        assert!((p.b_n - 1.084490).abs() < 1e-5);
    }

    #[test]
    fn primes_b_tends_to_one_from_above() {
        // pi(p_n) = n exceeds p_n/ln p_n, so b_n = n ln p_n / p_n sits above 1
        // for every n >= 4 and drifts down toward 1.
        let mut t = table();
        for n in [2u64, 3] {
            let p = companion_b(&mut t, SequenceKind::Primes, n).unwrap();
            assert!(p.b_n < 1.0, "b_{n} = {}", p.b_n);
        }
        for n in [10u64, 100, 1000, 10_000, 100_000] {
            let p = companion_b(&mut t, SequenceKind::Primes, n).unwrap();
            assert!(p.b_n > 1.0, "b_{n} = {}", p.b_n);
            assert_eq!(p.pi_restricted, n);
        }
        let far = companion_b(&mut t, SequenceKind::Primes, 100_000).unwrap();
        let near = companion_b(&mut t, SequenceKind::Primes, 1000).unwrap();
        assert!(far.b_n < near.b_n);
        assert!((far.b_n - 1.0).abs() < 0.09);
    }

    #[test]
    fn arithmetic_1_mod_4() {
        let mut t = table();
        let p = companion_b(
            &mut t,
            SequenceKind::Arithmetic { a: 1, d: 4 },
            100_000,
        )
        .unwrap();
        assert_eq!(p.pi_restricted, 16_900);
        assert!((p.b_n - 0.545).abs() < 0.01);
        // limit is 1/φ(4) = 0.5; within 10%
        assert!((p.b_n - 0.5).abs() / 0.5 < 0.10);
    }

    #[test]
    fn arithmetic_rejects_common_factor() {
        let mut t = table();
        assert!(companion_b(&mut t, SequenceKind::Arithmetic { a: 2, d: 4 }, 10).is_err());
    }

    #[test]
    fn prime_sums_companion() {
        let mut t = table();
        let p = companion_b(&mut t, SequenceKind::PrimeSums, 100).unwrap();
        assert_eq!(p.pi_restricted, 23);
        assert_eq!(p.a_n, 111_587);
    }

    #[test]
    fn phi_values() {
        let mut t = table();
        assert_eq!(euler_phi(&mut t, 1).unwrap(), 1);
        assert_eq!(euler_phi(&mut t, 4).unwrap(), 2);
        assert_eq!(euler_phi(&mut t, 10).unwrap(), 4);
        assert_eq!(euler_phi(&mut t, 97).unwrap(), 96);
        assert_eq!(euler_phi(&mut t, 360).unwrap(), 96);
        assert!(euler_phi(&mut t, 0).is_err());
    }

    #[test]
    fn omega_ad_values() {
        let mut t = table();
        // d=4, φ=2: 4e/2 = 2e at x = e
        let v = omega_ad(&mut t, 1, 4, std::f64::consts::E).unwrap();
        assert!((v - 2.0 * std::f64::consts::E).abs() < 1e-12);
        let v = omega_ad(&mut t, 1, 1, 100.0).unwrap();
        assert!((v - 100.0 / 100f64.ln()).abs() < 1e-12);
        let v = omega_ad(&mut t, 3, 4, 10_000.0).unwrap();
        assert!((v - 2171.472410).abs() < 1e-5);
        // sieve cross-check: 2117 primes among the first 1e4 terms of 3+4k
        assert!((v - 2117.0).abs() / 2117.0 < 0.10);
        assert!(omega_ad(&mut t, 1, 4, 1.0).is_err());
        assert!(omega_ad(&mut t, 2, 4, 10.0).is_err());
    }

    #[test]
    fn omega_34_values() {
        // at x = e^e: ln ln x = 1
        let x = std::f64::consts::E.exp();
        let c = EULER_GAMMA.exp() / (2.0 * 2f64.ln());
        let v = omega_34(x).unwrap();
        assert!((v - c * (std::f64::consts::E + 1.5)).abs() < 1e-9);
        let v6 = omega_34(1e6).unwrap();
        assert!((v6 - 25.553).abs() < 1e-3);
        assert!(omega_34(1e3).unwrap() < v6);
        assert!(omega_34(std::f64::consts::E).is_err());
    }
}
