//! Logarithmic integral li(x) = ∫_2^x dt/ln t by adaptive Simpson quadrature.
//! The lower limit is fixed at 2; li(2) = 0.

use crate::error::{Error, Result};

fn integrand(t: f64) -> f64 {
    1.0 / t.ln()
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(a: f64, fa: f64, b: f64, fb: f64, fm: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = integrand(lm);
    let frm = integrand(rm);
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive(a, fa, m, fm, flm, left, 0.5 * eps, depth - 1)
        + adaptive(m, fm, b, fb, frm, right, 0.5 * eps, depth - 1)
}

/// li(x) = ∫_2^x dt/ln t to absolute tolerance 1e-9 · max(1, x/ln x).
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(format!("li(x) requires x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let eps = 1e-9 * (x / x.ln()).max(1.0);
    let (a, b) = (2.0, x);
    let fa = integrand(a);
    let fb = integrand(b);
    let fm = integrand(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    Ok(adaptive(a, fa, b, fb, fm, whole, eps, 48))
}
