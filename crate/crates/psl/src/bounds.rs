//! Named inequality checkers over the prime sums, each reporting the margin
//! by which it holds.
//!
//! Orientation convention: every claim is arranged as `lhs < rhs` (or <=),
//! so `margin = rhs - lhs` is positive exactly when the claim holds. Checks
//! whose two sides are integers are compared in exact integer arithmetic.
//! Mixed integer/real comparisons are done in binary64 and must clear a
//! 4-ulp band to count; anything inside the band is flagged inconclusive
//! rather than certified. Rules queried below their stated range gate come
//! back as not-applicable, never as a fabricated verdict.

use crate::analysis::{floor_guard, root_k0, root_k1, root_k2, solve_mk};
use crate::error::{Error, Result};
use crate::primes::{prime_count_between, PrimeTable};
use crate::scanner::{PiCheckpointRow, PrimeHit};
use crate::sums::{s, s_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Fails,
    NotApplicable,
    /// The float margin is within 4 ulps of zero; needs manual review.
    Inconclusive,
}

#[derive(Debug, Clone, Copy)]
pub struct BoundCheck {
    pub name: &'static str,
    pub n_or_k: u64,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; positive means the claim holds.
    pub margin: f64,
    pub holds: bool,
    pub status: CheckStatus,
}

impl BoundCheck {
    fn exact_int(name: &'static str, n: u64, lhs: i128, rhs: i128, strict: bool) -> Self {
        let holds = if strict { lhs < rhs } else { lhs <= rhs };
        BoundCheck {
            name,
            n_or_k: n,
            lhs: lhs as f64,
            rhs: rhs as f64,
            margin: (rhs - lhs) as f64,
            holds,
            status: if holds {
                CheckStatus::Holds
            } else {
                CheckStatus::Fails
            },
        }
    }

    fn real(name: &'static str, n: u64, lhs: f64, rhs: f64, strict: bool) -> Self {
        let margin = rhs - lhs;
        let tol = 4.0 * f64::EPSILON * lhs.abs().max(rhs.abs());
        let (holds, status) = if margin.abs() <= tol {
            (margin >= 0.0, CheckStatus::Inconclusive)
        } else if strict {
            (margin > 0.0, check_status(margin > 0.0))
        } else {
            (margin >= 0.0, check_status(margin >= 0.0))
        };
        BoundCheck {
            name,
            n_or_k: n,
            lhs,
            rhs,
            margin,
            holds,
            status,
        }
    }

    fn not_applicable(name: &'static str, n: u64) -> Self {
        BoundCheck {
            name,
            n_or_k: n,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            holds: true,
            status: CheckStatus::NotApplicable,
        }
    }

    /// Informational value report (the empirical band of a free-constant
    /// claim); always counted as holding.
    fn info(name: &'static str, n: u64, value: f64) -> Self {
        BoundCheck {
            name,
            n_or_k: n,
            lhs: value,
            rhs: value,
            margin: value,
            holds: true,
            status: CheckStatus::Holds,
        }
    }
}

fn check_status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Holds
    } else {
        CheckStatus::Fails
    }
}

// ---------------------------------------------------------------------------
// Core comparisons on precomputed values (shared by point checks and scans)
// ---------------------------------------------------------------------------

/// 2 S'_n < n p_n for n >= 9, exact.
fn mandl_core(n: u64, sp_n: u128, p_n: u64) -> BoundCheck {
    BoundCheck::exact_int(
        "mandl",
        n,
        2 * sp_n as i128,
        n as i128 * p_n as i128,
        true,
    )
}

/// n p_{n/2} <= S'_n for n >= 2, exact.
fn robin_core(n: u64, sp_n: u128, p_half: u64) -> BoundCheck {
    BoundCheck::exact_int(
        "robin",
        n,
        n as i128 * p_half as i128,
        sp_n as i128,
        false,
    )
}

/// (n/2) p_n - S'_n > 0.01659 n² for n >= 10, exact after scaling by 1e5·2.
fn hassani_core(n: u64, sp_n: u128, p_n: u64) -> BoundCheck {
    let lhs = 3318 * (n as i128) * (n as i128);
    let rhs = 100_000 * (n as i128 * p_n as i128 - 2 * sp_n as i128);
    let mut c = BoundCheck::exact_int("hassani", n, lhs, rhs, true);
    // report in the unscaled units the rule is stated in
    c.lhs = lhs as f64 / 200_000.0;
    c.rhs = rhs as f64 / 200_000.0;
    c.margin = c.rhs - c.lhs;
    c
}

/// 1 <= S_n/(2n² ln n) < 1 + (ln 2 + ln ln 2n)/ln n for n >= 3.
fn prop312_core(n: u64, s_n: u128) -> BoundCheck {
    let nf = n as f64;
    let ratio = s_n as f64 / (2.0 * nf * nf * nf.ln());
    let upper = 1.0 + (2f64.ln() + (2.0 * nf).ln().ln()) / nf.ln();
    let lower_side = BoundCheck::real("prop-3.12", n, 1.0, ratio, false);
    let upper_side = BoundCheck::real("prop-3.12", n, ratio, upper, true);
    let (tight, other) = if lower_side.margin <= upper_side.margin {
        (lower_side, upper_side)
    } else {
        (upper_side, lower_side)
    };
    let holds = lower_side.holds && upper_side.holds;
    BoundCheck {
        holds,
        status: if tight.status == CheckStatus::Inconclusive
            || other.status == CheckStatus::Inconclusive
        {
            CheckStatus::Inconclusive
        } else {
            check_status(holds)
        },
        ..tight
    }
}

/// S_n > 2 + 2n²(ln n + ln 2 - 1/2) for n >= 3.
fn sun_core(n: u64, s_n: u128) -> BoundCheck {
    let nf = n as f64;
    let bound = 2.0 + 2.0 * nf * nf * (nf.ln() + 2f64.ln() - 0.5);
    BoundCheck::real("sun-lower", n, bound, s_n as f64, true)
}

/// Lower form for n >= 3, upper form for n >= 344192.
fn prop315_core(n: u64, s_n: u128) -> Vec<BoundCheck> {
    let nf = n as f64;
    let ln = nf.ln();
    let lln = ln.ln();
    let ratio = s_n as f64 / (2.0 * nf * nf * ln);
    let lower = 1.0 + (lln - 1.0) / ln + (lln - 2.2) / (ln * ln);
    let mut out = vec![BoundCheck::real("prop-3.15-lower", n, lower, ratio, false)];
    if n >= 344_192 {
        let l2n = (2.0 * nf).ln();
        let ll2n = l2n.ln();
        let upper = 1.0 + (ll2n + 2f64.ln() - 1.0) / ln + (ll2n - 2.0) / (ln * l2n);
        out.push(BoundCheck::real("prop-3.15-upper", n, ratio, upper, false));
    } else {
        out.push(BoundCheck::not_applicable("prop-3.15-upper", n));
    }
    out
}

/// The four p_n bound forms, each gated to its stated range.
fn dusart_pn_core(n: u64, p_n: u64) -> Vec<BoundCheck> {
    let nf = n as f64;
    let ln = nf.ln();
    let lln = ln.ln();
    let p = p_n as f64;
    let mut out = Vec::with_capacity(4);
    if n >= 2 {
        out.push(BoundCheck::real(
            "dusart-lower",
            n,
            nf * (ln + lln - 1.0),
            p,
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("dusart-lower", n));
    }
    if n >= 6 {
        out.push(BoundCheck::real("dusart-upper", n, p, nf * (ln + lln), true));
    } else {
        out.push(BoundCheck::not_applicable("dusart-upper", n));
    }
    if n >= 3 {
        out.push(BoundCheck::real(
            "dusart-refined-lower",
            n,
            nf * (ln + lln - 1.0 + (lln - 2.2) / ln),
            p,
            false,
        ));
    } else {
        out.push(BoundCheck::not_applicable("dusart-refined-lower", n));
    }
    if n >= 688_383 {
        out.push(BoundCheck::real(
            "dusart-refined-upper",
            n,
            p,
            nf * (ln + lln - 1.0 + (lln - 2.0) / ln),
            false,
        ));
    } else {
        out.push(BoundCheck::not_applicable("dusart-refined-upper", n));
    }
    out
}

// ---------------------------------------------------------------------------
// Point checks
// ---------------------------------------------------------------------------

pub fn check_mandl(table: &mut PrimeTable, n: u64) -> Result<BoundCheck> {
    if n < 9 {
        return Err(Error::Domain(format!("mandl holds from n = 9, got {n}")));
    }
    let sp = s_prime(table, n)?;
    let p = table.nth_prime(n)?;
    Ok(mandl_core(n, sp, p))
}

pub fn check_robin(table: &mut PrimeTable, n: u64) -> Result<BoundCheck> {
    if n < 2 {
        return Err(Error::Domain(format!("robin holds from n = 2, got {n}")));
    }
    let sp = s_prime(table, n)?;
    let p_half = table.nth_prime(n / 2)?;
    Ok(robin_core(n, sp, p_half))
}

pub fn check_hassani(table: &mut PrimeTable, n: u64) -> Result<BoundCheck> {
    if n < 10 {
        return Err(Error::Domain(format!("hassani holds from n = 10, got {n}")));
    }
    let sp = s_prime(table, n)?;
    let p = table.nth_prime(n)?;
    Ok(hassani_core(n, sp, p))
}

pub fn check_prop312(table: &mut PrimeTable, n: u64) -> Result<BoundCheck> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "the sandwich bound needs n >= 3, got {n}"
        )));
    }
    let s_n = s(table, n)?;
    Ok(prop312_core(n, s_n))
}

pub fn check_sun_lower(table: &mut PrimeTable, n: u64) -> Result<BoundCheck> {
    if n < 3 {
        return Err(Error::Domain(format!("sun lower needs n >= 3, got {n}")));
    }
    let s_n = s(table, n)?;
    Ok(sun_core(n, s_n))
}

pub fn check_prop315(table: &mut PrimeTable, n: u64) -> Result<Vec<BoundCheck>> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "the refined sandwich needs n >= 3, got {n}"
        )));
    }
    let s_n = s(table, n)?;
    Ok(prop315_core(n, s_n))
}

pub fn check_dusart_pn(table: &mut PrimeTable, n: u64) -> Result<Vec<BoundCheck>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "the p_n bounds need n >= 2 (ln ln n), got {n}"
        )));
    }
    let p = table.nth_prime(n)?;
    Ok(dusart_pn_core(n, p))
}

/// Result of the prime-bearing-interval check, with the measured interval
/// length against its asymptotic form 0.2 n / ln n.
#[derive(Debug, Clone, Copy)]
pub struct IntervalCheck {
    pub check: BoundCheck,
    pub primes_inside: u64,
    pub length: f64,
    pub l_n: f64,
}

/// The interval [n(ln n + lnln n - 1 + (lnln n - 2.2)/ln n),
///                n(ln n + lnln n - 1 + (lnln n - 2.0)/ln n)]
/// contains at least one prime, for n >= 688383.
pub fn check_dusart_interval(table: &mut PrimeTable, n: u64) -> Result<IntervalCheck> {
    if n < 688_383 {
        return Err(Error::Domain(format!(
            "the interval statement starts at n = 688383, got {n}"
        )));
    }
    let nf = n as f64;
    let ln = nf.ln();
    let lln = ln.ln();
    let a = nf * (ln + lln - 1.0 + (lln - 2.2) / ln);
    let b = nf * (ln + lln - 1.0 + (lln - 2.0) / ln);
    let lo = a.ceil() as u64;
    let hi = b.floor() as u64;
    let count = if lo > hi {
        0
    } else {
        prime_count_between(table, lo - 1, hi + 1)?
    };
    let check = BoundCheck::exact_int("dusart-interval", n, 1, count as i128, false);
    Ok(IntervalCheck {
        check,
        primes_inside: count,
        length: b - a,
        l_n: 0.2 * nf / ln,
    })
}

// ---------------------------------------------------------------------------
// Per-hit and per-π-row conjecture batteries
// ---------------------------------------------------------------------------

/// All per-hit rules, range-gated on the hit ordinal k.
pub fn check_hit_conjectures(table: &mut PrimeTable, hit: &PrimeHit) -> Result<Vec<BoundCheck>> {
    let k = hit.k;
    let kf = k as f64;
    let m = hit.m;
    let mf = m as f64;
    let qf = hit.q as f64;
    let mut out = Vec::with_capacity(7);

    // floor(k ln k) + 1 <= m, every k
    let klogk = floor_guard(kf * kf.ln()) as i128;
    out.push(BoundCheck::exact_int(
        "conj-4.6-low",
        k,
        klogk + 1,
        m as i128,
        false,
    ));

    // m <= floor(1.4 k ln k), k >= 1e4
    if k >= 10_000 {
        let cap = floor_guard(1.4 * kf * kf.ln()) as i128;
        out.push(BoundCheck::exact_int("conj-4.6-high", k, m as i128, cap, false));
    } else {
        out.push(BoundCheck::not_applicable("conj-4.6-high", k));
    }

    // q > 2k² ln²k (ln k + ln ln k), k >= 2
    if k >= 2 {
        let lk = kf.ln();
        let bound = 2.0 * kf * kf * lk * lk * (lk + lk.ln());
        out.push(BoundCheck::real("cor-4.7", k, bound, qf, true));
    } else {
        out.push(BoundCheck::not_applicable("cor-4.7", k));
    }

    // q > 2 m² √m ln m / √(k ln k), k >= 252028
    if k >= 252_028 {
        let bound = 2.0 * mf * mf * mf.sqrt() * mf.ln() / (kf * kf.ln()).sqrt();
        out.push(BoundCheck::real("conj-4.9", k, bound, qf, true));
    } else {
        out.push(BoundCheck::not_applicable("conj-4.9", k));
    }

    // q > 2 k p_k ln²k, k >= 2 (threshold left open; see smallest_continuous_k)
    if k >= 2 {
        let pk = table.nth_prime(k)? as f64;
        let lk = kf.ln();
        out.push(BoundCheck::real(
            "conj-4.10",
            k,
            2.0 * kf * pk * lk * lk,
            qf,
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-4.10", k));
    }

    // M_k < q/(2m² ln m), k >= 4e6
    if k >= 4_000_000 {
        let mk = solve_mk(k, hit.q)?.m_k;
        out.push(BoundCheck::real(
            "conj-6.5",
            k,
            mk,
            qf / (2.0 * mf * mf * mf.ln()),
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-6.5", k));
    }

    // q inside the two-sided envelope, k >= 2
    if k >= 2 {
        let lk = kf.ln();
        let t = 2.0 * kf * kf * lk * lk;
        let lo = t * (lk + lk.ln());
        let b = 1.0 + (2.0 * (2.0 * kf).ln()).ln() / lk;
        let hi = t * b.powi(5) * (lk + lk.ln() + 2.0 * b.ln());
        let inside_lo = BoundCheck::real("cor-5.14", k, lo, qf, false);
        let inside_hi = BoundCheck::real("cor-5.14", k, qf, hi, false);
        let tight = if inside_lo.margin <= inside_hi.margin {
            inside_lo
        } else {
            inside_hi
        };
        let holds = inside_lo.holds && inside_hi.holds;
        out.push(BoundCheck {
            holds,
            status: check_status(holds),
            ..tight
        });
    } else {
        out.push(BoundCheck::not_applicable("cor-5.14", k));
    }

    Ok(out)
}

/// Smallest k such that `rule` holds at every scanned hit from k onward.
pub fn smallest_continuous_k(checks_by_hit: &[(u64, bool)]) -> Option<u64> {
    let mut last_fail = 0u64;
    for &(k, holds) in checks_by_hit {
        if !holds {
            last_fail = k;
        }
    }
    checks_by_hit
        .iter()
        .map(|&(k, _)| k)
        .find(|&k| k > last_fail)
}

/// All per-sample-point rules, range-gated on n.
pub fn check_pi_conjectures(table: &mut PrimeTable, row: &PiCheckpointRow) -> Result<Vec<BoundCheck>> {
    let n = row.n;
    let nf = n as f64;
    let pi_n = row.pi_n;
    let mut out = Vec::with_capacity(6);

    if n >= 10_000 {
        table.ensure_limit(n)?;
        let pi = table.pi(n)?;
        out.push(BoundCheck::exact_int(
            "conj-4.12-pi",
            n,
            pi_n as i128,
            pi as i128,
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-4.12-pi", n));
    }

    if n >= 100_000 {
        out.push(BoundCheck::real(
            "conj-4.12-nlogn",
            n,
            pi_n as f64,
            nf / nf.ln(),
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-4.12-nlogn", n));
    }

    if n >= 4_000_000 {
        let s_n = s(table, n)?;
        let k0 = root_k0(n, s_n)?;
        out.push(BoundCheck::exact_int(
            "conj-6.9",
            n,
            k0 as i128,
            pi_n as i128,
            false,
        ));
        let k1 = root_k1(n)?;
        out.push(BoundCheck::exact_int(
            "conj-6.10",
            n,
            k1 as i128,
            pi_n as i128,
            false,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-6.9", n));
        out.push(BoundCheck::not_applicable("conj-6.10", n));
    }

    if n >= 100_000 {
        let k1 = root_k1(n)?;
        let k2 = root_k2(n)?;
        let cap = ((k1 as f64) * (k2 as f64)).sqrt().floor() as i128;
        out.push(BoundCheck::exact_int(
            "conj-6.12",
            n,
            pi_n as i128,
            cap,
            true,
        ));
    } else {
        out.push(BoundCheck::not_applicable("conj-6.12", n));
    }

    // empirical envelope for the two-constant band: π_n ln n / n
    out.push(BoundCheck::info(
        "chebyshev-band",
        n,
        pi_n as f64 * nf.ln() / nf,
    ));

    Ok(out)
}

// ---------------------------------------------------------------------------
// Range scans
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Mandl,
    Robin,
    Hassani,
    Prop312,
    SunLower,
    DusartPn,
    Prop315,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Mandl => "mandl",
            Rule::Robin => "robin",
            Rule::Hassani => "hassani",
            Rule::Prop312 => "prop-3.12",
            Rule::SunLower => "sun-lower",
            Rule::DusartPn => "dusart-pn",
            Rule::Prop315 => "prop-3.15",
        }
    }

    /// First index at which the rule is stated.
    pub fn domain_start(&self) -> u64 {
        match self {
            Rule::Mandl => 9,
            Rule::Robin => 2,
            Rule::Hassani => 10,
            Rule::Prop312 => 3,
            Rule::SunLower => 3,
            Rule::DusartPn => 2,
            Rule::Prop315 => 3,
        }
    }

    pub fn parse(s: &str) -> Result<Rule> {
        Ok(match s {
            "mandl" => Rule::Mandl,
            "robin" => Rule::Robin,
            "hassani" => Rule::Hassani,
            "prop-3.12" | "eq-37" => Rule::Prop312,
            "sun-lower" | "sun" => Rule::SunLower,
            "dusart-pn" | "dusart" => Rule::DusartPn,
            "prop-3.15" => Rule::Prop315,
            other => {
                return Err(Error::InvalidArguments(format!(
                    "unknown rule {other:?}; known: mandl robin hassani prop-3.12 sun-lower dusart-pn prop-3.15"
                )))
            }
        })
    }
}

/// Exhaustive scan of one rule over [from, to].
#[derive(Debug, Clone)]
pub struct RuleScan {
    pub rule: Rule,
    pub from: u64,
    pub to: u64,
    pub checked: u64,
    pub violations: Vec<u64>,
    pub inconclusive: Vec<u64>,
    /// Smallest margin seen across the range (in the rule's reported units).
    pub min_margin: f64,
    pub min_margin_at: u64,
}

pub fn scan_rule(table: &mut PrimeTable, rule: Rule, from: u64, to: u64) -> Result<RuleScan> {
    let from = from.max(rule.domain_start());
    if to < from {
        return Err(Error::InvalidArguments(format!(
            "empty scan range [{from}, {to}] for {}",
            rule.name()
        )));
    }
    let needs_s_n = matches!(rule, Rule::Prop312 | Rule::SunLower | Rule::Prop315);
    table.ensure_count(if needs_s_n { 2 * to } else { to })?;

    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    let mut min_margin = f64::INFINITY;
    let mut min_margin_at = from;
    let mut checked = 0u64;

    let mut consider = |c: &BoundCheck| {
        match c.status {
            CheckStatus::Fails => violations.push(c.n_or_k),
            CheckStatus::Inconclusive => inconclusive.push(c.n_or_k),
            _ => {}
        }
        if c.status != CheckStatus::NotApplicable && c.margin < min_margin {
            min_margin = c.margin;
            min_margin_at = c.n_or_k;
        }
    };

    // running S'_n; S_n is read through the same prefix at stride two
    let mut sp_acc = 0u128;
    let mut s_acc = 0u128;
    let primes = table.primes().to_vec();
    for i in 0..from - 1 {
        sp_acc += primes[i as usize] as u128;
    }
    if needs_s_n {
        for i in 0..2 * (from - 1) {
            s_acc += primes[i as usize] as u128;
        }
    }

    for n in from..=to {
        sp_acc += primes[(n - 1) as usize] as u128;
        if needs_s_n {
            s_acc += primes[(2 * n - 2) as usize] as u128 + primes[(2 * n - 1) as usize] as u128;
        }
        checked += 1;
        match rule {
            Rule::Mandl => consider(&mandl_core(n, sp_acc, primes[(n - 1) as usize])),
            Rule::Robin => consider(&robin_core(n, sp_acc, primes[(n / 2 - 1) as usize])),
            Rule::Hassani => consider(&hassani_core(n, sp_acc, primes[(n - 1) as usize])),
            Rule::Prop312 => consider(&prop312_core(n, s_acc)),
            Rule::SunLower => consider(&sun_core(n, s_acc)),
            Rule::DusartPn => {
                for c in dusart_pn_core(n, primes[(n - 1) as usize]) {
                    consider(&c);
                }
            }
            Rule::Prop315 => {
                for c in prop315_core(n, s_acc) {
                    consider(&c);
                }
            }
        }
    }

    Ok(RuleScan {
        rule,
        from,
        to,
        checked,
        violations,
        inconclusive,
        min_margin,
        min_margin_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(1_000_000).unwrap()
    }

    #[test]
    fn mandl_small_values() {
        let mut t = table();
        let c = check_mandl(&mut t, 9).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs, 200.0); // 2 * 100
        assert_eq!(c.rhs, 207.0); // 9 * 23
        let c = check_mandl(&mut t, 10).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs, c.rhs), (258.0, 290.0));
        assert!(check_mandl(&mut t, 8).is_err());
    }

    #[test]
    fn robin_small_values() {
        let mut t = table();
        let c = check_robin(&mut t, 2).unwrap();
        assert!(c.holds); // 2*2 <= 5
        let c = check_robin(&mut t, 10).unwrap();
        assert_eq!((c.lhs, c.rhs), (110.0, 129.0));
        assert!(c.holds);
        assert!(check_robin(&mut t, 1).is_err());
    }

    #[test]
    fn hassani_small_values() {
        let mut t = table();
        let c = check_hassani(&mut t, 10).unwrap();
        assert!(c.holds);
        // (10/2) p_10 - S'_10 = 16 > 1.659
        assert!((c.rhs - 16.0).abs() < 1e-12);
        assert!((c.lhs - 1.659).abs() < 1e-12);
        assert!(check_hassani(&mut t, 9).is_err());
    }

    #[test]
    fn prop312_small_values() {
        let mut t = table();
        let c = check_prop312(&mut t, 3).unwrap();
        assert!(c.holds);
        assert!(check_prop312(&mut t, 2).is_err());
    }

    #[test]
    fn sun_small_values() {
        let mut t = table();
        let c = check_sun_lower(&mut t, 3).unwrap();
        assert!(c.holds);
        assert!((c.lhs - 25.251670).abs() < 1e-5);
        assert_eq!(c.rhs, 41.0);
    }

    #[test]
    fn dusart_pn_forms() {
        let mut t = table();
        let forms = check_dusart_pn(&mut t, 6).unwrap();
        // p_6 = 13 < 6(ln6 + lnln6) ~ 14.25
        let upper = forms.iter().find(|c| c.name == "dusart-upper").unwrap();
        assert!(upper.holds);
        assert!((upper.rhs - 14.25).abs() < 0.01);
        // n = 2: only the plain lower form applies
        let forms = check_dusart_pn(&mut t, 2).unwrap();
        assert_eq!(
            forms
                .iter()
                .filter(|c| c.status == CheckStatus::NotApplicable)
                .count(),
            3
        );
        let refined_upper = forms.iter().find(|c| c.name == "dusart-refined-upper").unwrap();
        assert_eq!(refined_upper.status, CheckStatus::NotApplicable);
    }

    #[test]
    fn dusart_interval_below_gate_errors() {
        let mut t = table();
        assert!(check_dusart_interval(&mut t, 100_000).is_err());
    }

    #[test]
    fn hit_conjectures_row_100() {
        let mut t = table();
        let hit = PrimeHit {
            k: 23,
            m: 99,
            q: 109_147,
        };
        let checks = check_hit_conjectures(&mut t, &hit).unwrap();
        let low = checks.iter().find(|c| c.name == "conj-4.6-low").unwrap();
        // floor(23 ln 23) + 1 = 73 <= 99
        assert_eq!(low.lhs, 73.0);
        assert!(low.holds);
        let high = checks.iter().find(|c| c.name == "conj-4.6-high").unwrap();
        assert_eq!(high.status, CheckStatus::NotApplicable);
        let c49 = checks.iter().find(|c| c.name == "conj-4.9").unwrap();
        assert_eq!(c49.status, CheckStatus::NotApplicable);
        let c47 = checks.iter().find(|c| c.name == "cor-4.7").unwrap();
        assert!(c47.holds);
        let c514 = checks.iter().find(|c| c.name == "cor-5.14").unwrap();
        assert!(c514.holds);
    }

    #[test]
    fn hit_conjectures_tiny_hit() {
        let mut t = table();
        let hit = PrimeHit { k: 5, m: 7, q: 281 };
        let checks = check_hit_conjectures(&mut t, &hit).unwrap();
        let c47 = checks.iter().find(|c| c.name == "cor-4.7").unwrap();
        // 281 > 270.08
        assert!(c47.holds);
        assert!((c47.lhs - 270.082).abs() < 1e-2);
        // 4.10 fails exactly at k = 5 in the scanned range
        let c410 = checks.iter().find(|c| c.name == "conj-4.10").unwrap();
        assert!(!c410.holds);
    }

    #[test]
    fn pi_conjectures_gating() {
        let mut t = table();
        let row = PiCheckpointRow {
            n: 1000,
            pi_n: 141,
            q_max: 15_518_669,
            m_of_q_max: 978,
        };
        let checks = check_pi_conjectures(&mut t, &row).unwrap();
        assert!(checks
            .iter()
            .filter(|c| c.name != "chebyshev-band")
            .all(|c| c.status == CheckStatus::NotApplicable));

        let row = PiCheckpointRow {
            n: 100_000,
            pi_n: 8350,
            q_max: 264_074_170_741,
            m_of_q_max: 99_990,
        };
        let checks = check_pi_conjectures(&mut t, &row).unwrap();
        let a = checks.iter().find(|c| c.name == "conj-4.12-pi").unwrap();
        assert!(a.holds); // 8350 < 9592
        assert_eq!(a.rhs, 9592.0);
        let b = checks.iter().find(|c| c.name == "conj-4.12-nlogn").unwrap();
        assert!(b.holds);
        let c = checks.iter().find(|c| c.name == "conj-6.12").unwrap();
        assert!(c.holds); // 8350 < floor(sqrt(6928 * 10770)) = 8637
        assert_eq!(c.rhs, 8637.0);
        let band = checks.iter().find(|c| c.name == "chebyshev-band").unwrap();
        assert!((band.lhs - 8350.0 * (100_000f64).ln() / 100_000.0).abs() < 1e-12);
    }

    #[test]
    fn smallest_continuous_k_logic() {
        let data = vec![(2u64, true), (3, true), (5, false), (6, true), (8, true)];
        assert_eq!(smallest_continuous_k(&data), Some(6));
        let all_good = vec![(2u64, true), (3, true)];
        assert_eq!(smallest_continuous_k(&all_good), Some(2));
        let all_bad = vec![(2u64, false)];
        assert_eq!(smallest_continuous_k(&all_bad), None);
    }

    #[test]
    fn rule_scans_are_clean_to_2000() {
        let mut t = table();
        for rule in [
            Rule::Mandl,
            Rule::Robin,
            Rule::Hassani,
            Rule::Prop312,
            Rule::SunLower,
            Rule::DusartPn,
            Rule::Prop315,
        ] {
            let scan = scan_rule(&mut t, rule, 1, 2000).unwrap();
            assert!(
                scan.violations.is_empty(),
                "{} violated at {:?}",
                rule.name(),
                &scan.violations[..scan.violations.len().min(5)]
            );
            assert!(scan.min_margin > 0.0);
        }
    }

    #[test]
    fn rule_parse_accepts_aliases() {
        assert_eq!(Rule::parse("eq-37").unwrap(), Rule::Prop312);
        assert_eq!(Rule::parse("sun").unwrap(), Rule::SunLower);
        assert!(Rule::parse("nope").is_err());
    }
}
