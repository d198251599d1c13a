//! C ABI over the prime-sum laboratory.
//!
//! Conventions:
//! * Every fallible call returns a [`PslStatus`]; outputs go through pointers.
//! * The prime table is an opaque handle; it is NOT thread-safe — callers
//!   must serialize access to one handle (internally scans still use their
//!   own worker pool).
//! * 128-bit integers cross the boundary as decimal strings, matching the
//!   checkpoint JSON convention, so no caller ever truncates at 64 bits.
//! * On any non-OK status, `psl_last_error` returns a UTF-8 message for the
//!   calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::path::Path;

use psl::analysis::{li, solve_mk};
use psl::error::Error;
use psl::primes::{is_prime_u128, PrimeTable};
use psl::scanner::{scan, write_checkpoint_path, write_hits_csv_path, ScanConfig};
use psl::sums::{SumStream, Variant};

/// Status of every fallible call in this ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PslStatus {
    Ok = 0,
    Capacity = 1,
    Overflow = 2,
    OutOfProvenRange = 3,
    InvalidArgument = 4,
    Domain = 5,
    NoRoot = 6,
    DigestMismatch = 7,
    CorruptCheckpoint = 8,
    InsufficientData = 9,
    Io = 10,
    Parse = 11,
    UnknownSuite = 12,
    NullPointer = 13,
    BufferTooSmall = 14,
    InvalidUtf8 = 15,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: PslStatus, msg: impl Into<String>) -> PslStatus {
    set_error(msg);
    status
}

fn status_of(err: &Error) -> PslStatus {
    match err {
        Error::Capacity { .. } => PslStatus::Capacity,
        Error::Overflow { .. } => PslStatus::Overflow,
        Error::OutOfProvenRange { .. } => PslStatus::OutOfProvenRange,
        Error::InvalidArguments(_) => PslStatus::InvalidArgument,
        Error::Domain(_) => PslStatus::Domain,
        Error::NoRoot { .. } => PslStatus::NoRoot,
        Error::DigestMismatch { .. } => PslStatus::DigestMismatch,
        Error::CorruptCheckpoint(_) => PslStatus::CorruptCheckpoint,
        Error::InsufficientData(_) => PslStatus::InsufficientData,
        Error::UnknownSuite(_) => PslStatus::UnknownSuite,
        Error::Io(_) => PslStatus::Io,
        Error::Parse { .. } => PslStatus::Parse,
    }
}

fn from_err(err: Error) -> PslStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Opaque prime table handle.
pub struct PslPrimeTable {
    inner: PrimeTable,
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, PslStatus> {
    if ptr.is_null() {
        return Err(fail(PslStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(PslStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn write_out<T>(ptr: *mut T, value: T) -> PslStatus {
    if ptr.is_null() {
        return fail(PslStatus::NullPointer, "null output pointer");
    }
    unsafe { *ptr = value };
    PslStatus::Ok
}

/// Copy `s` (plus NUL) into `buf`; requires `buf_len > s.len()`.
fn write_str(s: &str, buf: *mut c_char, buf_len: usize) -> PslStatus {
    if buf.is_null() {
        return fail(PslStatus::NullPointer, "null buffer");
    }
    if buf_len <= s.len() {
        return fail(
            PslStatus::BufferTooSmall,
            format!("need {} bytes, buffer holds {buf_len}", s.len() + 1),
        );
    }
    unsafe {
        std::ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
        *buf.add(s.len()) = 0;
    }
    PslStatus::Ok
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to fit). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to `buf_len` writable bytes, or be null (query length).
#[no_mangle]
pub unsafe extern "C" fn psl_last_error(buf: *mut c_char, buf_len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && buf_len > 0 {
            let n = msg.len().min(buf_len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Sieve all primes up to `limit` (inclusive) and hand back an owned table.
/// Free it with `psl_prime_table_free`.
///
/// # Safety
/// `out` must be a valid pointer to a table-handle slot.
#[no_mangle]
pub unsafe extern "C" fn psl_prime_table_new(
    limit: u64,
    out: *mut *mut PslPrimeTable,
) -> PslStatus {
    if out.is_null() {
        return fail(PslStatus::NullPointer, "null output pointer");
    }
    match PrimeTable::new(limit) {
        Ok(inner) => {
            let handle = Box::new(PslPrimeTable { inner });
            *out = Box::into_raw(handle);
            PslStatus::Ok
        }
        Err(e) => from_err(e),
    }
}

/// Release a table created by `psl_prime_table_new`. Null is a no-op.
///
/// # Safety
/// `table` must be a pointer previously returned by `psl_prime_table_new`
/// and not freed since.
#[no_mangle]
pub unsafe extern "C" fn psl_prime_table_free(table: *mut PslPrimeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// π(x): number of primes ≤ x. Grows the table when x exceeds its limit.
///
/// # Safety
/// `table` must be a live handle; `out` a valid u64 slot.
#[no_mangle]
pub unsafe extern "C" fn psl_prime_table_pi(
    table: *mut PslPrimeTable,
    x: u64,
    out: *mut u64,
) -> PslStatus {
    let Some(t) = table.as_mut() else {
        return fail(PslStatus::NullPointer, "null table handle");
    };
    if let Err(e) = t.inner.ensure_limit(x.max(2)) {
        return from_err(e);
    }
    match t.inner.pi(x) {
        Ok(v) => write_out(out, v),
        Err(e) => from_err(e),
    }
}

/// The n-th prime (p_1 = 2), extending the table as needed.
///
/// # Safety
/// `table` must be a live handle; `out` a valid u64 slot.
#[no_mangle]
pub unsafe extern "C" fn psl_prime_table_nth(
    table: *mut PslPrimeTable,
    n: u64,
    out: *mut u64,
) -> PslStatus {
    let Some(t) = table.as_mut() else {
        return fail(PslStatus::NullPointer, "null table handle");
    };
    match t.inner.nth_prime(n) {
        Ok(v) => write_out(out, v),
        Err(e) => from_err(e),
    }
}

/// Deterministic primality for a decimal value below 3.317e24.
/// Writes 1 (prime) or 0 (composite) to `out`.
///
/// # Safety
/// `value_decimal` must be a NUL-terminated string; `out` a valid i32 slot.
#[no_mangle]
pub unsafe extern "C" fn psl_is_prime(
    value_decimal: *const c_char,
    out: *mut i32,
) -> PslStatus {
    let s = match cstr(value_decimal) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let value: u128 = match s.trim().parse() {
        Ok(v) => v,
        Err(_) => {
            return fail(
                PslStatus::Parse,
                format!("{s:?} is not a decimal unsigned integer"),
            )
        }
    };
    match is_prime_u128(value) {
        Ok(b) => write_out(out, b as i32),
        Err(e) => from_err(e),
    }
}

fn nth_term(t: &mut PrimeTable, variant: &str, n: u64) -> Result<u128, Error> {
    let variant = Variant::parse(variant)?;
    let stream = SumStream::new(t, variant, n)?;
    match stream.last() {
        Some(r) => r.map(|(_, v)| v),
        None => Err(Error::InvalidArguments("n must be >= 1".into())),
    }
}

/// The n-th term of a sum sequence (`plain`, `offset:<d>`, `shifted:<k>`)
/// as a decimal string.
///
/// # Safety
/// `table` must be a live handle; `variant` a NUL-terminated string; `buf`
/// must point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn psl_sum_term(
    table: *mut PslPrimeTable,
    variant: *const c_char,
    n: u64,
    buf: *mut c_char,
    buf_len: usize,
) -> PslStatus {
    let Some(t) = table.as_mut() else {
        return fail(PslStatus::NullPointer, "null table handle");
    };
    let variant = match cstr(variant) {
        Ok(v) => v,
        Err(status) => return status,
    };
    match nth_term(&mut t.inner, variant, n) {
        Ok(v) => write_str(&v.to_string(), buf, buf_len),
        Err(e) => from_err(e),
    }
}

/// Count the primes among the first `n_max` terms of a sum sequence.
/// `threads = 0` uses the default worker pool.
///
/// # Safety
/// `table` must be a live handle; `variant` a NUL-terminated string; `out`
/// a valid u64 slot.
#[no_mangle]
pub unsafe extern "C" fn psl_scan_count(
    table: *mut PslPrimeTable,
    variant: *const c_char,
    n_max: u64,
    threads: usize,
    out: *mut u64,
) -> PslStatus {
    let Some(t) = table.as_mut() else {
        return fail(PslStatus::NullPointer, "null table handle");
    };
    let variant = match cstr(variant).and_then(|s| Variant::parse(s).map_err(from_err)) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let cfg = ScanConfig {
        variant,
        threads,
        ..ScanConfig::default()
    };
    match scan(&mut t.inner, &cfg, n_max, &[n_max]) {
        Ok(outcome) => write_out(out, outcome.pi_rows[0].pi_n),
        Err(e) => from_err(e),
    }
}

/// Scan a sum sequence and write the hits CSV (`m,k,q`) to `hits_path`;
/// optionally write the final checkpoint JSON to `checkpoint_path` (pass
/// null to skip). Returns the number of hits through `out_hits`.
///
/// # Safety
/// `table` must be a live handle; paths are NUL-terminated strings
/// (`checkpoint_path` may be null); `out_hits` may be null.
#[no_mangle]
pub unsafe extern "C" fn psl_scan_to_csv(
    table: *mut PslPrimeTable,
    variant: *const c_char,
    n_max: u64,
    threads: usize,
    hits_path: *const c_char,
    checkpoint_path: *const c_char,
    out_hits: *mut u64,
) -> PslStatus {
    let Some(t) = table.as_mut() else {
        return fail(PslStatus::NullPointer, "null table handle");
    };
    let variant = match cstr(variant).and_then(|s| Variant::parse(s).map_err(from_err)) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let hits_path = match cstr(hits_path) {
        Ok(p) => p,
        Err(status) => return status,
    };
    let cfg = ScanConfig {
        variant,
        threads,
        ..ScanConfig::default()
    };
    let outcome = match scan(&mut t.inner, &cfg, n_max, &[]) {
        Ok(o) => o,
        Err(e) => return from_err(e),
    };
    if let Err(e) = write_hits_csv_path(Path::new(hits_path), &outcome.hits) {
        return from_err(e);
    }
    if !checkpoint_path.is_null() {
        let cp_path = match cstr(checkpoint_path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        if let Err(e) = write_checkpoint_path(Path::new(cp_path), &outcome.checkpoint) {
            return from_err(e);
        }
    }
    if !out_hits.is_null() {
        *out_hits = outcome.hits.len() as u64;
    }
    PslStatus::Ok
}

/// Solve q = 2 M^5 k² ln²k (ln k + ln ln k + 2 ln M) for M, with q decimal.
///
/// # Safety
/// `q_decimal` must be a NUL-terminated string; output pointers may be null
/// if the corresponding value is not wanted (at least one should not be).
#[no_mangle]
pub unsafe extern "C" fn psl_solve_mk(
    k: u64,
    q_decimal: *const c_char,
    out_m_k: *mut f64,
    out_residual: *mut f64,
) -> PslStatus {
    let s = match cstr(q_decimal) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let q: u128 = match s.trim().parse() {
        Ok(v) => v,
        Err(_) => {
            return fail(
                PslStatus::Parse,
                format!("{s:?} is not a decimal unsigned integer"),
            )
        }
    };
    match solve_mk(k, q) {
        Ok(sol) => {
            if !out_m_k.is_null() {
                *out_m_k = sol.m_k;
            }
            if !out_residual.is_null() {
                *out_residual = sol.residual;
            }
            PslStatus::Ok
        }
        Err(e) => from_err(e),
    }
}

/// Logarithmic integral ∫_2^x dt/ln t.
///
/// # Safety
/// `out` must be a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn psl_li(x: f64, out: *mut f64) -> PslStatus {
    match li(x) {
        Ok(v) => write_out(out, v),
        Err(e) => from_err(e),
    }
}
