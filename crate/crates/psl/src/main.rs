//! psl command line: scan the prime-sum sequences, emit the summary tables,
//! and run verification suites.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 capacity or data error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use psl::analysis::{li, series_partial, solve_mk, SeriesKind};
use psl::bounds::{scan_rule, Rule};
use psl::error::Error;
use psl::primes::PrimeTable;
use psl::report::{build_table, default_points, run_suite, OutputFormat, SUITES};
use psl::scanner::{
    digest_hits, read_checkpoint_path, read_hits_csv_path, resume, scan, write_checkpoint_path,
    write_hits_csv_path, Checkpoint, PrimeHit, ScanConfig, ScanOutcome,
};
use psl::sums::Variant;
use psl::Result;

#[derive(Parser)]
#[command(
    name = "psl",
    about = "Prime-sum laboratory: primes among sums of consecutive primes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a prime-sum sequence and record every prime term.
    Scan(ScanArgs),
    /// Emit one of the five summary tables from a hits file.
    Table(TableArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Solve the M_k normal form for one (k, q) pair.
    SolveMk(SolveMkArgs),
    /// Partial sums of the hit-derived series.
    Series(SeriesArgs),
    /// Logarithmic integral li(x) from 2.
    Li(LiArgs),
    /// Exhaustive inequality scans over a range.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Scan the sequence up to this index.
    #[arg(long = "max-n")]
    max_n: u64,
    /// Sequence family: plain, offset:<d>, or shifted:<k>.
    #[arg(long, default_value = "plain")]
    variant: String,
    /// Worker threads (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write hits CSV here.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Checkpoint JSON path (written every cadence indices).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Resume from the checkpoint (requires --checkpoint and --emit with
    /// the hits written by the interrupted run).
    #[arg(long, default_value_t = false)]
    resume: bool,
    /// Indices between checkpoint writes (minimum 1000).
    #[arg(long, default_value_t = 100_000)]
    cadence: u64,
    /// Comma-separated indices at which to report pi_n (defaults to the
    /// built-in sample points that fit under --max-n).
    #[arg(long = "pi-points")]
    pi_points: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    /// Table number, 1 through 5.
    which: u8,
    /// Hits CSV produced by `psl scan`.
    #[arg(long)]
    hits: PathBuf,
    /// Comma-separated sample points (defaults to the built-in points).
    #[arg(long)]
    points: Option<String>,
    /// Index the hits scan ran to (defaults to the last hit's index).
    #[arg(long = "scanned-to")]
    scanned_to: Option<u64>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the table here instead of standard output.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; `--suite list` prints the registry.
    #[arg(long)]
    suite: String,
    #[arg(long = "max-n", default_value_t = 100_000)]
    max_n: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Optional hits CSV to reuse instead of rescanning.
    #[arg(long)]
    hits: Option<PathBuf>,
}

#[derive(Args)]
struct SolveMkArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    q: u128,
}

#[derive(Args)]
struct SeriesArgs {
    /// k-log2-over-q, k-log2eps-over-q, or inv-pi.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    upto: u64,
    #[arg(long)]
    hits: PathBuf,
    /// Exponent reduction for the convergent family.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
}

#[derive(Args)]
struct LiArgs {
    #[arg(long)]
    x: f64,
}

#[derive(Args)]
struct BoundsArgs {
    /// Rule name or `all`.
    #[arg(long, default_value = "all")]
    rule: String,
    #[arg(long = "max-n")]
    max_n: u64,
    /// Start of the range (defaults to each rule's own domain start).
    #[arg(long, default_value_t = 1)]
    from: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidArguments(_) | Error::UnknownSuite(_) | Error::Domain(_) => 2,
        _ => 3,
    }
}

fn parse_points(list: &Option<String>, fallback: Vec<u64>, cap: Option<u64>) -> Result<Vec<u64>> {
    let mut pts = match list {
        Some(s) => {
            let mut v = Vec::new();
            for part in s.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                v.push(part.parse::<u64>().map_err(|_| {
                    Error::InvalidArguments(format!("bad point {part:?} in list"))
                })?);
            }
            v
        }
        None => fallback,
    };
    if let Some(cap) = cap {
        pts.retain(|&p| p <= cap);
    }
    pts.sort_unstable();
    pts.dedup();
    if pts.is_empty() {
        return Err(Error::InvalidArguments("no sample points in range".into()));
    }
    Ok(pts)
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::SolveMk(args) => {
            let sol = solve_mk(args.k, args.q)?;
            println!(
                "M_{} = {:.6} (residual {:.3e}, {} iterations)",
                sol.k, sol.m_k, sol.residual, sol.iterations
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Series(args) => cmd_series(args),
        Command::Li(args) => {
            println!("{:.9}", li(args.x)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(args) => cmd_bounds(args),
    }
}

/// Initial sieve size for a scan: enough primes for the variant at n_max,
/// by the usual p_n overestimate.
fn table_for_scan(variant: Variant, n_max: u64) -> Result<PrimeTable> {
    let count = variant.primes_needed(n_max).max(100);
    let cf = count as f64;
    let limit = (cf * (cf.ln() + cf.ln().ln().max(0.0) + 1.0)) as u64;
    PrimeTable::new(limit.max(1000))
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode> {
    if args.cadence < 1000 {
        return Err(Error::InvalidArguments(
            "checkpoint cadence must be at least 1000".into(),
        ));
    }
    let variant = Variant::parse(&args.variant)?;
    let cfg = ScanConfig {
        variant,
        threads: args.threads,
        ..ScanConfig::default()
    };
    let mut table = table_for_scan(variant, args.max_n)?;
    let fallback: Vec<u64> = default_points(1)?
        .into_iter()
        .chain(std::iter::once(args.max_n))
        .collect();
    let points = parse_points(&args.pi_points, fallback, Some(args.max_n))?;

    // Resume path: reload hits + checkpoint, then continue.
    let (mut hits, mut cp): (Vec<PrimeHit>, Option<Checkpoint>) = if args.resume {
        let cp_path = args.checkpoint.as_ref().ok_or_else(|| {
            Error::InvalidArguments("--resume requires --checkpoint".into())
        })?;
        let emit = args.emit.as_ref().ok_or_else(|| {
            Error::InvalidArguments("--resume requires --emit with the prior hits".into())
        })?;
        let cp = read_checkpoint_path(cp_path)?;
        let hits = read_hits_csv_path(emit)?;
        (hits, Some(cp))
    } else {
        (Vec::new(), None)
    };

    // Chunked scan: one pass per cadence window so the checkpoint and hits
    // file stay consistent on interruption.
    let mut next_start = cp.map(|c| c.n_last + 1).unwrap_or(1);
    if next_start > args.max_n {
        return Err(Error::InvalidArguments(format!(
            "checkpoint already at {}, nothing to scan below {}",
            next_start - 1,
            args.max_n
        )));
    }
    let mut outcome: Option<ScanOutcome> = None;
    while next_start <= args.max_n {
        let chunk_end = next_start
            .saturating_add(args.cadence - 1)
            .min(args.max_n);
        let window_points: Vec<u64> = points
            .iter()
            .copied()
            .filter(|&p| p <= chunk_end)
            .collect();
        let out = match cp {
            None => scan(&mut table, &cfg, chunk_end, &window_points)?,
            Some(ref c) => resume(&mut table, &cfg, &hits, c, chunk_end, &window_points)?,
        };
        hits = out.hits.clone();
        cp = Some(out.checkpoint);
        if let Some(path) = &args.emit {
            write_hits_csv_path(path, &hits)?;
        }
        if let Some(path) = &args.checkpoint {
            write_checkpoint_path(path, &out.checkpoint)?;
        }
        outcome = Some(out);
        next_start = chunk_end + 1;
    }

    let out = outcome.expect("scan ran at least one chunk");
    for row in &out.pi_rows {
        println!(
            "n={} pi_n={} q_max={} m={} n-m={}",
            row.n,
            row.pi_n,
            row.q_max,
            row.m_of_q_max,
            row.n - row.m_of_q_max
        );
    }
    println!(
        "scanned {} to n={}: {} hits, digest {:#018x}",
        variant,
        args.max_n,
        out.hits.len(),
        digest_hits(&out.hits)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode> {
    let format = OutputFormat::parse(&args.format)?;
    if !(1..=5).contains(&args.which) {
        return Err(Error::InvalidArguments(format!(
            "table number must be 1..=5, got {}",
            args.which
        )));
    }
    let hits = read_hits_csv_path(&args.hits)?;
    // Explicit points are trusted (and checked against --scanned-to when
    // given); the built-in defaults are trimmed to the data actually present.
    let cap = match (&args.points, args.scanned_to) {
        (Some(_), _) => None,
        (None, Some(extent)) => Some(extent),
        (None, None) => hits.last().map(|h| h.m),
    };
    let points = parse_points(&args.points, default_points(args.which)?, cap)?;
    let mut table = PrimeTable::new(1_000_000)?;
    let doc = build_table(args.which, &mut table, &hits, &points, args.scanned_to)?;
    let rendered = doc.render(format);
    match &args.emit {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.suite == "list" {
        for s in SUITES {
            println!("{s}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let hits = match &args.hits {
        Some(p) => Some(read_hits_csv_path(p)?),
        None => None,
    };
    let mut table = PrimeTable::new(1_000_000)?;
    let out = run_suite(
        &mut table,
        &args.suite,
        args.max_n,
        args.threads,
        hits.as_deref(),
    )?;
    println!("suite {} (n <= {}):", out.name, args.max_n);
    for line in &out.lines {
        println!("{line}");
    }
    if out.not_applicable > 0 {
        println!("not applicable below range gates: {}", out.not_applicable);
    }
    println!("result: {}", if out.passed { "PASS" } else { "FAIL" });
    Ok(if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_series(args: SeriesArgs) -> Result<ExitCode> {
    let kind = match args.kind.as_str() {
        "k-log2-over-q" => SeriesKind::KLog2OverQ,
        "k-log2eps-over-q" => SeriesKind::KLog2EpsOverQ { eps: args.eps },
        "inv-pi" => SeriesKind::InvPi,
        other => {
            return Err(Error::InvalidArguments(format!(
                "unknown series kind {other:?}"
            )))
        }
    };
    let hits = read_hits_csv_path(&args.hits)?;
    let ledger = series_partial(kind, args.upto, &hits)?;
    println!(
        "partial sum to {} = {:.6}; comparator = {:.6}",
        ledger.upto, ledger.partial_sum, ledger.comparator
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode> {
    let rules: Vec<Rule> = if args.rule == "all" {
        vec![
            Rule::Mandl,
            Rule::Robin,
            Rule::Hassani,
            Rule::Prop312,
            Rule::SunLower,
            Rule::DusartPn,
            Rule::Prop315,
        ]
    } else {
        vec![Rule::parse(&args.rule)?]
    };
    let mut table = PrimeTable::new(1_000_000)?;
    let mut all_clean = true;
    for rule in rules {
        let scan = scan_rule(&mut table, rule, args.from, args.max_n)?;
        all_clean &= scan.violations.is_empty();
        println!(
            "{} on [{}, {}]: {} checked, {} violations, {} inconclusive, min margin {:.3e} at n={}",
            rule.name(),
            scan.from,
            scan.to,
            scan.checked,
            scan.violations.len(),
            scan.inconclusive.len(),
            scan.min_margin,
            scan.min_margin_at
        );
        if !scan.violations.is_empty() {
            let head: Vec<u64> = scan.violations.iter().take(10).copied().collect();
            println!("  first violations: {head:?}");
        }
    }
    Ok(if all_clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
