//! Critical exponents of the cover sums `Σ_{a≥N} (a + shift)^{−2s}`.

use crate::dimension::zeta::hurwitz_zeta;
use crate::error::{domain, Result};

/// The root `s > 1/2` of `Σ_{a≥N} (a + shift)^{−2s} = 1`.
///
/// With `shift = 1` and `shift = 0` the roots bracket the dimension of the
/// set of points whose digits are all at least `N`.
pub fn crude_critical_exponent(n: u64, shift: u64, tol: f64) -> Result<f64> {
    if shift > 1 {
        return domain(format!("shift must be 0 or 1, got {shift}"));
    }
    if n + shift < 2 {
        return domain(format!("Σ_(a≥{n}) (a+{shift})^(−2s) = 1 has no root"));
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let q = (n + shift) as f64;
    let excess = |s: f64| hurwitz_zeta(2.0 * s, q).map(|z| z - 1.0);
    let mut lo = 0.5;
    let mut hi = 1.0;
    while excess(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `[root with shift 1, root with shift 0]`.
pub fn crude_bracket(n: u64, tol: f64) -> Result<(f64, f64)> {
    Ok((crude_critical_exponent(n, 1, tol)?, crude_critical_exponent(n, 0, tol)?))
}
