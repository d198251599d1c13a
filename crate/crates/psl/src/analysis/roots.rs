//! Integer roots of the three counting equations
//!
//!   k_0: √(x ln x) = 2n²√n ln n / S_n
//!   k_1: (1 + (ln 2 + ln ln 2n)/ln n) √(y ln y) = √n
//!   k_2: x ln x = n
//!
//! Each reduces to u ln u = C with C > 0, which has a unique root u > 1
//! solved by Newton and floored with an integer re-check.

use crate::analysis::floor_guard;
use crate::error::{Error, Result};

/// Root of u ln u = c for c > 0, to 1e-12 relative accuracy.
pub fn solve_u_ln_u(c: f64) -> Result<f64> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "u ln u = c needs a positive constant, got {c}"
        )));
    }
    // u ln u is increasing and convex for u > 1/e; start above the root's
    // scale and let Newton descend.
    let mut u = if c > std::f64::consts::E {
        (c / c.ln()).max(2.0)
    } else {
        2.0
    };
    for _ in 0..200 {
        let f = u * u.ln() - c;
        if f.abs() <= 1e-12 * c.max(1.0) {
            break;
        }
        let step = f / (u.ln() + 1.0);
        let mut next = u - step;
        if next < 1.0 {
            next = 0.5 * (u + 1.0);
        }
        u = next;
    }
    Ok(u)
}

/// Floor the root of u ln u = c, re-checked in integer space so that
/// k ln k <= c < (k+1) ln(k+1) holds exactly for the returned k.
fn floor_root_u_ln_u(c: f64) -> Result<u64> {
    let root = solve_u_ln_u(c)?;
    let mut k = floor_guard(root).max(1.0) as u64;
    while ((k + 1) as f64) * ((k + 1) as f64).ln() <= c {
        k += 1;
    }
    while k > 1 && (k as f64) * (k as f64).ln() > c {
        k -= 1;
    }
    Ok(k)
}

/// k_0(n): floor of the root of √(x ln x) = 2n²√n ln n / S_n.
pub fn root_k0(n: u64, s_n: u128) -> Result<u64> {
    if n < 10 {
        return Err(Error::Domain(format!("root_k0 requires n >= 10, got {n}")));
    }
    if s_n == 0 {
        return Err(Error::InvalidArguments("S_n must be positive".into()));
    }
    let nf = n as f64;
    let rhs = 2.0 * nf * nf * nf.sqrt() * nf.ln() / (s_n as f64);
    floor_root_u_ln_u(rhs * rhs)
}

/// k_1(n): floor of the root of (1 + (ln 2 + ln ln 2n)/ln n) √(y ln y) = √n.
pub fn root_k1(n: u64) -> Result<u64> {
    if n < 10 {
        return Err(Error::Domain(format!("root_k1 requires n >= 10, got {n}")));
    }
    let nf = n as f64;
    let a = 1.0 + (2f64.ln() + (2.0 * nf).ln().ln()) / nf.ln();
    floor_root_u_ln_u(nf / (a * a))
}

/// k_2(n): floor of the root of x ln x = n.
pub fn root_k2(n: u64) -> Result<u64> {
    if n < 10 {
        return Err(Error::Domain(format!("root_k2 requires n >= 10, got {n}")));
    }
    floor_root_u_ln_u(n as f64)
}

/// The derived ratios of one sample row: δ_j = (k - k_j)/k,
/// η = k_0/√(k_1 k_2), ξ = k/√(k_1 k_2).
#[derive(Debug, Clone, Copy)]
pub struct Table5Ratios {
    pub delta0: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub eta: f64,
    pub xi: f64,
}

pub fn table5_ratios(k: u64, k0: u64, k1: u64, k2: u64) -> Result<Table5Ratios> {
    if k == 0 || k1 == 0 || k2 == 0 {
        return Err(Error::InvalidArguments(
            "table5 ratios need positive k, k1, k2".into(),
        ));
    }
    let kf = k as f64;
    let geo = ((k1 as f64) * (k2 as f64)).sqrt();
    Ok(Table5Ratios {
        delta0: (kf - k0 as f64) / kf,
        delta1: (kf - k1 as f64) / kf,
        delta2: (kf - k2 as f64) / kf,
        eta: k0 as f64 / geo,
        xi: kf / geo,
    })
}
