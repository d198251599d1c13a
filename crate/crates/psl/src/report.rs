//! Table builders, output formatting, and the named verification suites
//! driven by the CLI.
//!
//! Every emitted cell is recomputed from exact integer data plus binary64
//! analytics; nothing is copied from a reference. Real cells print 6
//! significant digits, exact integers print in full, and the approximate
//! q column prints 3 significant digits in scientific form (the JSON format
//! carries the exact integer alongside).

use crate::analysis::{
    li, mk_refined, mk_upper, monotonicity_scan, q_diagnostics, series_partial, solve_mk,
    root_k0, root_k1, root_k2, table5_ratios, Sequence, SeriesKind,
};
use crate::bounds::{
    check_dusart_interval, check_hit_conjectures, check_pi_conjectures, scan_rule,
    smallest_continuous_k, CheckStatus, Rule,
};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::scanner::{scan, PiCheckpointRow, PrimeHit, ScanConfig};
use crate::sums::{s, Variant};

/// Built-in sample points (the published tables' own n values, capped at
/// desk scale). Larger points work when the data supply covers them.
pub fn default_points(table_no: u8) -> Result<Vec<u64>> {
    let raw: serde_json::Value =
        serde_json::from_str(include_str!("../data/sample_points.json")).map_err(|e| {
            Error::Parse {
                what: "sample_points.json",
                detail: e.to_string(),
            }
        })?;
    let key = format!("table{table_no}");
    raw.get(&key)
        .and_then(|v| v.as_array())
        .map(|a| a.iter().filter_map(|x| x.as_u64()).collect())
        .ok_or_else(|| Error::Parse {
            what: "sample_points.json",
            detail: format!("missing {key}"),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Markdown,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArguments(format!(
                "unknown format {other:?}; expected csv, markdown, or json"
            ))),
        }
    }
}

/// One table cell; rendering picks the precision per kind.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(u128),
    SignedInt(i64),
    Real(f64),
    /// Exact integer displayed as 3-significant-digit scientific notation.
    Approx(u128),
    Text(String),
}

/// Format with a fixed number of significant digits, plain decimal.
pub fn fmt_sig(x: f64, sig: i32) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig - 1 - exp).max(0);
    format!("{:.*}", decimals as usize, x)
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::SignedInt(v) => v.to_string(),
            Cell::Real(x) => fmt_sig(*x, 6),
            Cell::Approx(v) => format!("{:.2e}", *v as f64),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::String(v.to_string()),
            Cell::SignedInt(v) => serde_json::json!(v),
            Cell::Real(x) => serde_json::json!(x),
            Cell::Approx(v) => serde_json::Value::String(v.to_string()),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableDoc {
    pub title: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl TableDoc {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut out = String::new();
                out.push_str(&self.headers.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::render).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            OutputFormat::Markdown => {
                let mut out = String::new();
                out.push_str(&format!("### {}\n\n", self.title));
                out.push_str(&format!("| {} |\n", self.headers.join(" | ")));
                out.push_str(&format!(
                    "|{}\n",
                    self.headers.iter().map(|_| " --- |").collect::<String>()
                ));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::render).collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
                out
            }
            OutputFormat::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, serde_json::Value> = self
                            .headers
                            .iter()
                            .zip(row.iter())
                            .map(|(h, c)| (h.to_string(), c.to_json()))
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                serde_json::to_string_pretty(&serde_json::json!({
                    "title": self.title,
                    "rows": rows,
                }))
                .expect("json rendering")
            }
        }
    }
}

/// The hit with the largest index not exceeding n, plus π_n.
fn hit_at(hits: &[PrimeHit], n: u64) -> Result<(u64, PrimeHit)> {
    let idx = hits.partition_point(|h| h.m <= n);
    if idx == 0 {
        return Err(Error::InsufficientData(format!("no hits at or below {n}")));
    }
    Ok((idx as u64, hits[idx - 1]))
}

/// Validate the hit data against the requested points. When the scan extent
/// is known it is enforced; without it the points are taken on trust (a hits
/// file does not record how far its scan ran, only where its hits are).
fn check_coverage(hits: &[PrimeHit], points: &[u64], scanned_to: Option<u64>) -> Result<()> {
    if hits.is_empty() {
        return Err(Error::InsufficientData("empty hits data".into()));
    }
    if let Some(extent) = scanned_to {
        if let Some(&bad) = points.iter().find(|&&p| p > extent) {
            return Err(Error::InsufficientData(format!(
                "point {bad} beyond scanned range {extent}"
            )));
        }
    }
    Ok(())
}

/// Distribution summary: n, π_n, q (approx), n-m, M_k, refined and plain
/// upper bounds, (k ln k)/m, and S_m √(k ln k)/(2 m^{5/2} ln m).
pub fn table1(
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    check_coverage(hits, points, scanned_to)?;
    let mut rows = Vec::new();
    for &n in points {
        let (k, hit) = hit_at(hits, n)?;
        let sol = solve_mk(k, hit.q)?;
        let refined = mk_refined(table, k)?;
        let upper = mk_upper(table, k)?;
        let kf = k as f64;
        let mf = hit.m as f64;
        let klogk = kf * kf.ln();
        let last = hit.q as f64 * klogk.sqrt() / (2.0 * mf * mf * mf.sqrt() * mf.ln());
        rows.push(vec![
            Cell::Int(n as u128),
            Cell::Int(k as u128),
            Cell::Approx(hit.q),
            Cell::Int((n - hit.m) as u128),
            Cell::Real(sol.m_k),
            Cell::Real(refined),
            Cell::Real(upper),
            Cell::Real(klogk / mf),
            Cell::Real(last),
        ]);
    }
    Ok(TableDoc {
        title: "Distribution of primes in the sequence".into(),
        headers: vec![
            "n",
            "pi_n",
            "q_approx",
            "n_minus_m",
            "m_k",
            "m_k_refined",
            "m_k_upper",
            "k_log_k_over_m",
            "s_m_ratio",
        ],
        rows,
    })
}

/// π_n against n/ln n and against π(n).
pub fn table2(
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    check_coverage(hits, points, scanned_to)?;
    let mut rows = Vec::new();
    for &n in points {
        let (k, _) = hit_at(hits, n)?;
        table.ensure_limit(n)?;
        let pi = table.pi(n)?;
        let nf = n as f64;
        rows.push(vec![
            Cell::Int(n as u128),
            Cell::Real(k as f64 / (nf / nf.ln())),
            Cell::Real(k as f64 / pi as f64),
        ]);
    }
    Ok(TableDoc {
        title: "Restricted prime counts against n/ln n and pi(n)".into(),
        headers: vec!["n", "pi_n_over_n_log_n", "pi_n_over_pi"],
        rows,
    })
}

/// Exact largest primes with their normalized ratios and excesses.
pub fn table3(
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    check_coverage(hits, points, scanned_to)?;
    let mut rows = Vec::new();
    for &n in points {
        let (k, hit) = hit_at(hits, n)?;
        let d = q_diagnostics(table, &hit)?;
        rows.push(vec![
            Cell::Int(n as u128),
            Cell::Int(k as u128),
            Cell::Int(hit.q),
            Cell::Real(d.ratio),
            Cell::Real(d.v),
            Cell::Real(d.q),
            Cell::Real(d.q_prime),
            Cell::Real(d.q_double_prime),
        ]);
    }
    Ok(TableDoc {
        title: "Largest primes among the sums and their normalized ratios".into(),
        headers: vec![
            "n",
            "pi_n",
            "q",
            "q_over_2k2log3k",
            "q_over_2m2logm",
            "Q",
            "Q_prime",
            "Q_double_prime",
        ],
        rows,
    })
}

/// k against the root k_0 of the index equation.
pub fn table4(
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    check_coverage(hits, points, scanned_to)?;
    let mut rows = Vec::new();
    for &n in points {
        let (k, _) = hit_at(hits, n)?;
        let s_n = s(table, n)?;
        let k0 = root_k0(n, s_n)?;
        rows.push(vec![
            Cell::Int(n as u128),
            Cell::Int(k as u128),
            Cell::SignedInt(k as i64 - k0 as i64),
        ]);
    }
    Ok(TableDoc {
        title: "Counting-root comparison k - k_0".into(),
        headers: vec!["n", "pi_n", "k_minus_k0"],
        rows,
    })
}

/// The three counting roots and their ratios δ_j, η, ξ.
pub fn table5(
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    check_coverage(hits, points, scanned_to)?;
    let mut rows = Vec::new();
    for &n in points {
        let (k, _) = hit_at(hits, n)?;
        let s_n = s(table, n)?;
        let k0 = root_k0(n, s_n)?;
        let k1 = root_k1(n)?;
        let k2 = root_k2(n)?;
        let r = table5_ratios(k, k0, k1, k2)?;
        rows.push(vec![
            Cell::Int(n as u128),
            Cell::Int(k0 as u128),
            Cell::Real(r.delta0),
            Cell::Int(k1 as u128),
            Cell::Real(r.delta1),
            Cell::Int(k2 as u128),
            Cell::Real(r.delta2),
            Cell::Real(r.eta),
            Cell::Real(r.xi),
        ]);
    }
    Ok(TableDoc {
        title: "Counting roots k_0, k_1, k_2 and their ratios".into(),
        headers: vec![
            "n", "k0", "delta0", "k1", "delta1", "k2", "delta2", "eta", "xi",
        ],
        rows,
    })
}

pub fn build_table(
    which: u8,
    table: &mut PrimeTable,
    hits: &[PrimeHit],
    points: &[u64],
    scanned_to: Option<u64>,
) -> Result<TableDoc> {
    match which {
        1 => table1(table, hits, points, scanned_to),
        2 => table2(table, hits, points, scanned_to),
        3 => table3(table, hits, points, scanned_to),
        4 => table4(table, hits, points, scanned_to),
        5 => table5(table, hits, points, scanned_to),
        other => Err(Error::InvalidArguments(format!(
            "table number must be 1..=5, got {other}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub lines: Vec<String>,
    pub passed: bool,
    pub not_applicable: usize,
}

pub const SUITES: &[&str] = &[
    "prop-5.1",
    "remark-5.2",
    "conj-5.3",
    "remark-5.4",
    "conj-3.3",
    "conj-3.18",
    "conj-4.6",
    "conj-4.9",
    "conj-4.10",
    "conj-4.12",
    "conj-5.7",
    "conj-5.13",
    "conj-6.5",
    "conj-6.9",
    "conj-6.10",
    "conj-6.12",
    "conj-7.1",
    "cor-4.7",
    "cor-5.14",
    "cor-5.16",
    "cor-5.17",
    "cor-7.2",
    "remark-6.3",
    "mandl",
    "robin",
    "hassani",
    "prop-3.12",
    "prop-3.15",
    "sun-lower",
    "dusart-pn",
    "dusart-interval",
];

/// Use supplied hits when present (the caller vouches that they cover
/// n_max), otherwise scan fresh.
fn scan_hits_for_suite(
    table: &mut PrimeTable,
    n_max: u64,
    threads: usize,
    hits: Option<&[PrimeHit]>,
) -> Result<(Vec<PrimeHit>, Vec<PiCheckpointRow>)> {
    if let Some(h) = hits.filter(|h| !h.is_empty()) {
        return Ok((h.to_vec(), vec![]));
    }
    let cfg = ScanConfig {
        threads,
        ..ScanConfig::default()
    };
    let out = scan(table, &cfg, n_max, &[n_max])?;
    Ok((out.hits, out.pi_rows))
}

fn pi_row_at(table: &mut PrimeTable, n: u64, threads: usize, hits: &[PrimeHit]) -> Result<PiCheckpointRow> {
    if hits.last().map(|h| h.m).unwrap_or(0) >= n {
        let idx = hits.partition_point(|h| h.m <= n);
        let last = &hits[idx - 1];
        return Ok(PiCheckpointRow {
            n,
            pi_n: idx as u64,
            q_max: last.q,
            m_of_q_max: last.m,
        });
    }
    let cfg = ScanConfig {
        threads,
        ..ScanConfig::default()
    };
    let out = scan(table, &cfg, n, &[n])?;
    Ok(out.pi_rows[0])
}

/// Run one named suite. `hits` may supply a previously scanned hit list; any
/// suite that needs more data scans for itself.
pub fn run_suite(
    table: &mut PrimeTable,
    name: &str,
    n_max: u64,
    threads: usize,
    hits: Option<&[PrimeHit]>,
) -> Result<SuiteOutcome> {
    let mut lines = Vec::new();
    let mut passed = true;
    let mut not_applicable = 0usize;

    let check_line = |c: &crate::bounds::BoundCheck, lines: &mut Vec<String>, passed: &mut bool, na: &mut usize| {
        match c.status {
            CheckStatus::NotApplicable => {
                *na += 1;
                lines.push(format!("  {}@{}: not applicable", c.name, c.n_or_k));
            }
            CheckStatus::Inconclusive => {
                lines.push(format!(
                    "  {}@{}: INCONCLUSIVE margin {:.3e}",
                    c.name, c.n_or_k, c.margin
                ));
            }
            CheckStatus::Holds => lines.push(format!(
                "  {}@{}: holds (margin {:.6e})",
                c.name, c.n_or_k, c.margin
            )),
            CheckStatus::Fails => {
                *passed = false;
                lines.push(format!(
                    "  {}@{}: FAILS (lhs {} rhs {})",
                    c.name, c.n_or_k, c.lhs, c.rhs
                ));
            }
        }
    };

    match name {
        "prop-5.1" => {
            let rep = monotonicity_scan(table, Sequence::V, n_max)?;
            passed = rep.exception_indices.is_empty();
            lines.push(format!(
                "v_n increasing on [2, {n_max}]: {} exceptions",
                rep.exception_indices.len()
            ));
        }
        "remark-5.2" => {
            let rep = monotonicity_scan(table, Sequence::VPrime, n_max)?;
            passed = rep.exception_indices.is_empty();
            lines.push(format!(
                "v'_n increasing on [4, {n_max}]: {} exceptions",
                rep.exception_indices.len()
            ));
        }
        "conj-5.3" => {
            let rep = monotonicity_scan(table, Sequence::T, n_max)?;
            let max = rep.max_exception.unwrap_or(0);
            passed = max < 1100;
            lines.push(format!(
                "t_n exceptions on [2, {n_max}]: count {}, max {}; decreasing from 1100: {}",
                rep.exception_indices.len(),
                max,
                passed
            ));
        }
        "remark-5.4" => {
            let rep = monotonicity_scan(table, Sequence::TPrime, n_max)?;
            let max = rep.max_exception.unwrap_or(0);
            passed = max < 2199;
            lines.push(format!(
                "t'_n exceptions on [3, {n_max}]: count {}, max {}; decreasing from 2199: {}",
                rep.exception_indices.len(),
                max,
                passed
            ));
        }
        "conj-3.3" => {
            let row = pi_row_at(table, n_max, threads, hits.unwrap_or(&[]))?;
            let nf = n_max as f64;
            lines.push(format!(
                "pi_{n_max} = {}; pi/(n/ln n) = {:.6}; li(n) = {:.1}",
                row.pi_n,
                row.pi_n as f64 * nf.ln() / nf,
                li(nf)?
            ));
        }
        "conj-3.18" => {
            for k in 1..=12u64 {
                let cfg = ScanConfig {
                    variant: Variant::Shifted(k),
                    threads,
                    ..ScanConfig::default()
                };
                let out = scan(table, &cfg, n_max, &[n_max])?;
                lines.push(format!(
                    "shifted k={k}: {} primes among first {n_max} terms",
                    out.pi_rows[0].pi_n
                ));
            }
        }
        "conj-4.6" | "cor-4.7" | "conj-4.9" | "conj-6.5" | "cor-5.14" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let wanted: &[&str] = match name {
                "conj-4.6" => &["conj-4.6-low", "conj-4.6-high"],
                "cor-4.7" => &["cor-4.7"],
                "conj-4.9" => &["conj-4.9"],
                "conj-6.5" => &["conj-6.5"],
                _ => &["cor-5.14"],
            };
            let mut failures = 0u64;
            let mut applicable = 0u64;
            for h in &all_hits {
                for c in check_hit_conjectures(table, h)? {
                    if !wanted.contains(&c.name) {
                        continue;
                    }
                    match c.status {
                        CheckStatus::NotApplicable => not_applicable += 1,
                        CheckStatus::Fails => {
                            failures += 1;
                            if failures <= 10 {
                                lines.push(format!(
                                    "  {}@k={}: FAILS (lhs {} rhs {})",
                                    c.name, c.n_or_k, c.lhs, c.rhs
                                ));
                            }
                        }
                        _ => applicable += 1,
                    }
                }
            }
            passed = failures == 0;
            lines.push(format!(
                "{name}: {applicable} hold, {failures} fail, {not_applicable} below range gate over {} hits",
                all_hits.len()
            ));
        }
        "conj-4.10" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let mut flags = Vec::with_capacity(all_hits.len());
            for h in &all_hits {
                let checks = check_hit_conjectures(table, h)?;
                let c = checks
                    .iter()
                    .find(|c| c.name == "conj-4.10")
                    .expect("conj-4.10 present");
                if c.status != CheckStatus::NotApplicable {
                    flags.push((h.k, c.holds));
                }
            }
            let threshold = smallest_continuous_k(&flags);
            passed = threshold.is_some();
            lines.push(format!(
                "q_k > 2 k p_k ln^2 k holds continuously from k = {:?} (scanned {} hits)",
                threshold,
                flags.len()
            ));
        }
        "conj-5.7" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let mut failures = 0u64;
            for h in &all_hits {
                if h.k < 3 {
                    continue;
                }
                let mk = solve_mk(h.k, h.q)?.m_k;
                let up = mk_upper(table, h.k)?;
                if mk > up {
                    failures += 1;
                    if failures <= 10 {
                        lines.push(format!("  M_k <= t_k FAILS at k={}: {mk} > {up}", h.k));
                    }
                }
            }
            passed = failures == 0;
            lines.push(format!("M_k <= t_k: {failures} failures over the scan"));
        }
        "conj-5.13" => {
            // M_k <= t_⌊k ln k⌋ is only claimed from k = 5e7; below that it
            // is reported informationally (it is known to flip sides).
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let mut below_gate = 0u64;
            let mut flips = 0u64;
            for h in &all_hits {
                if h.k < 3 {
                    continue;
                }
                if h.k < 50_000_000 {
                    below_gate += 1;
                    let mk = solve_mk(h.k, h.q)?.m_k;
                    if mk > mk_refined(table, h.k)? {
                        flips += 1;
                    }
                    continue;
                }
                let mk = solve_mk(h.k, h.q)?.m_k;
                let refined = mk_refined(table, h.k)?;
                if mk > refined {
                    passed = false;
                    lines.push(format!(
                        "  M_k <= t_(k ln k) FAILS at k={}: {mk} > {refined}",
                        h.k
                    ));
                }
            }
            not_applicable += below_gate as usize;
            lines.push(format!(
                "refined bound gate k >= 5e7: {below_gate} hits below gate \
                 ({flips} of them already sit above the bound, as expected)"
            ));
        }
        "remark-6.3" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let row = pi_row_at(table, n_max, threads, &all_hits)?;
            let hit = PrimeHit {
                k: row.pi_n,
                m: row.m_of_q_max,
                q: row.q_max,
            };
            let d = q_diagnostics(table, &hit)?;
            match d.q_triple_prime {
                Some(v) => lines.push(format!(
                    "Q''' at n={n_max} (k={}): {:.5}",
                    row.pi_n, v
                )),
                None => {
                    not_applicable += 1;
                    lines.push(format!(
                        "Q''' undefined at k={} (needs k >= 16)",
                        row.pi_n
                    ));
                }
            }
        }
        "conj-4.12" | "conj-6.9" | "conj-6.10" | "conj-6.12" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let row = pi_row_at(table, n_max, threads, &all_hits)?;
            let wanted: &[&str] = match name {
                "conj-4.12" => &["conj-4.12-pi", "conj-4.12-nlogn"],
                "conj-6.9" => &["conj-6.9"],
                "conj-6.10" => &["conj-6.10"],
                _ => &["conj-6.12"],
            };
            for c in check_pi_conjectures(table, &row)? {
                if wanted.contains(&c.name) {
                    check_line(&c, &mut lines, &mut passed, &mut not_applicable);
                }
            }
            if name == "conj-4.12" && n_max < 10_000 {
                table.ensure_limit(n_max)?;
                lines.push(format!(
                    "  informational: pi_{n_max} = {} vs pi({n_max}) = {}",
                    row.pi_n,
                    table.pi(n_max)?
                ));
            }
        }
        "conj-7.1" => {
            let row = pi_row_at(table, n_max, threads, hits.unwrap_or(&[]))?;
            let linx = li(n_max as f64)?;
            let r = row.pi_n as f64 - linx;
            let nf = n_max as f64;
            let delta = nf.ln().powf(0.6) * nf.ln().ln().powf(-0.2);
            lines.push(format!(
                "pi_{n_max} = {}; li = {:.3}; R = {:.3}; ln(n/|R|)/delta(n) = {:.4}",
                row.pi_n,
                linx,
                r,
                (nf / r.abs().max(1e-9)).ln() / delta
            ));
        }
        "cor-7.2" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let ledger = series_partial(SeriesKind::InvPi, n_max, &all_hits)?;
            lines.push(format!(
                "sum 1/pi_i to {n_max} = {:.6}; (1/2) ln^2 n = {:.6}; gap = {:.6}",
                ledger.partial_sum,
                ledger.comparator,
                ledger.partial_sum - ledger.comparator
            ));
        }
        "cor-5.16" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let upto = all_hits.len() as u64;
            let ledger = series_partial(SeriesKind::KLog2OverQ, upto, &all_hits)?;
            lines.push(format!(
                "sum k ln^2 k / q_k over k <= {upto} = {:.6}; ln ln n - ln ln 2 = {:.6}",
                ledger.partial_sum, ledger.comparator
            ));
        }
        "cor-5.17" => {
            let (all_hits, _) = scan_hits_for_suite(table, n_max, threads, hits)?;
            let upto = all_hits.len() as u64;
            let eps = 0.5;
            let ledger = series_partial(SeriesKind::KLog2EpsOverQ { eps }, upto, &all_hits)?;
            passed = ledger.partial_sum.is_finite();
            lines.push(format!(
                "sum k ln^(2-eps) k / q_k (eps = {eps}) over k <= {upto} = {:.6}; limit bound {:.6}",
                ledger.partial_sum, ledger.comparator
            ));
        }
        "mandl" | "robin" | "hassani" | "prop-3.12" | "sun-lower" | "prop-3.15" | "dusart-pn" => {
            let rule = Rule::parse(name)?;
            let scan = scan_rule(table, rule, rule.domain_start(), n_max)?;
            passed = scan.violations.is_empty();
            lines.push(format!(
                "{} on [{}, {}]: {} checked, {} violations, {} inconclusive, min margin {:.3e} at {}",
                name,
                scan.from,
                scan.to,
                scan.checked,
                scan.violations.len(),
                scan.inconclusive.len(),
                scan.min_margin,
                scan.min_margin_at
            ));
        }
        "dusart-interval" => {
            let mut points = vec![688_383u64];
            if n_max > 688_383 {
                points.push(n_max);
            }
            for n in points {
                let res = check_dusart_interval(table, n)?;
                passed &= res.check.holds;
                lines.push(format!(
                    "interval at n={n}: {} primes inside, length {:.2} (0.2 n/ln n = {:.2}): {}",
                    res.primes_inside,
                    res.length,
                    res.l_n,
                    if res.check.holds { "holds" } else { "FAILS" }
                ));
            }
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }

    Ok(SuiteOutcome {
        name: name.to_string(),
        lines,
        passed,
        not_applicable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_hits(n: u64) -> (PrimeTable, Vec<PrimeHit>) {
        let mut t = PrimeTable::new(1_000_000).unwrap();
        let out = scan(&mut t, &ScanConfig::default(), n, &[]).unwrap();
        (t, out.hits)
    }

    #[test]
    fn fmt_sig_examples() {
        assert_eq!(fmt_sig(1.1789345, 6), "1.17893");
        assert_eq!(fmt_sig(0.7373659, 6), "0.737366");
        assert_eq!(fmt_sig(107934.0, 6), "107934");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(-2.5, 2), "-2.5");
    }

    #[test]
    fn default_points_parse() {
        let p1 = default_points(1).unwrap();
        assert!(p1.contains(&100) && p1.contains(&1_000_000));
        assert!(default_points(9).is_err());
    }

    #[test]
    fn table1_row_1000() {
        let (mut t, hits) = scan_hits(1000);
        let doc = table1(&mut t, &hits, &[1000], Some(1000)).unwrap();
        let csv = doc.render(OutputFormat::Csv);
        let row = csv.lines().nth(1).unwrap();
        assert_eq!(
            row,
            "1000,141,1.55e7,22,1.18281,1.18140,1.20277,0.713472,0.995174"
        );
    }

    #[test]
    fn table2_row_100() {
        let (mut t, hits) = scan_hits(100);
        let doc = table2(&mut t, &hits, &[100], Some(100)).unwrap();
        let csv = doc.render(OutputFormat::Csv);
        assert_eq!(csv.lines().nth(1).unwrap(), "100,1.05919,0.920000");
    }

    #[test]
    fn table5_row_100() {
        let (mut t, hits) = scan_hits(100);
        let doc = table5(&mut t, &hits, &[100], Some(100)).unwrap();
        let csv = doc.render(OutputFormat::Csv);
        let row = csv.lines().nth(1).unwrap();
        assert!(row.starts_with("100,22,0.0434783,15,0.347826,29,-0.260870,1.05482,1.10277"));
    }

    #[test]
    fn coverage_guard() {
        let (mut t, hits) = scan_hits(100);
        assert!(table1(&mut t, &hits, &[1000], Some(100)).is_err());
        // points inside the scan but past the last hit are fine
        assert!(table1(&mut t, &hits, &[100], Some(100)).is_ok());
        assert!(table1(&mut t, &hits, &[100], None).is_ok());
        assert!(table1(&mut t, &[], &[100], None).is_err());
    }

    #[test]
    fn json_rendering_carries_exact_q() {
        let (mut t, hits) = scan_hits(100);
        let doc = table3(&mut t, &hits, &[100], Some(100)).unwrap();
        let json = doc.render(OutputFormat::Json);
        assert!(json.contains("\"q\": \"109147\""));
    }

    #[test]
    fn markdown_rendering_shape() {
        let (mut t, hits) = scan_hits(100);
        let doc = table4(&mut t, &hits, &[100], Some(100)).unwrap();
        let md = doc.render(OutputFormat::Markdown);
        assert!(md.contains("| n | pi_n | k_minus_k0 |"));
        assert!(md.contains("| 100 | 23 | 1 |"));
    }

    #[test]
    fn unknown_suite_errors() {
        let mut t = PrimeTable::new(1000).unwrap();
        assert!(matches!(
            run_suite(&mut t, "conj-9.9", 100, 0, None),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn suite_prop_51_passes() {
        let mut t = PrimeTable::new(1_000_000).unwrap();
        let out = run_suite(&mut t, "prop-5.1", 2000, 0, None).unwrap();
        assert!(out.passed);
    }

    #[test]
    fn suite_gate_boundaries_report_not_applicable() {
        let mut t = PrimeTable::new(1_000_000).unwrap();
        let out = run_suite(&mut t, "conj-5.13", 200, 0, None).unwrap();
        assert!(out.passed);
        assert!(out.not_applicable > 0);
        let out = run_suite(&mut t, "remark-6.3", 1000, 0, None).unwrap();
        assert!(out.passed);
        assert!(out.lines.iter().any(|l| l.contains("Q''' at n=1000")));
    }

    #[test]
    fn suite_conj_412_below_gate_is_informational() {
        let mut t = PrimeTable::new(1_000_000).unwrap();
        let out = run_suite(&mut t, "conj-4.12", 1000, 0, None).unwrap();
        assert!(out.passed);
        assert_eq!(out.not_applicable, 2);
        assert!(out
            .lines
            .iter()
            .any(|l| l.contains("pi_1000 = 141 vs pi(1000) = 168")));
    }
}
