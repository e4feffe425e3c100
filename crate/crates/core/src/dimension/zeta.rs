//! Hurwitz zeta function by Euler–Maclaurin summation.

use crate::error::{domain, Result};

/// `B_{2j} / (2j)!` for `j = 1..=10`.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// `ζ(s, q) = Σ_{k≥0} (k + q)^{−s}` for `s > 1`, `q > 0`.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) || !(q > 0.0) || !s.is_finite() || !q.is_finite() {
        return domain(format!("ζ({s}, {q}) is outside s > 1, q > 0"));
    }
    let cutoff = 16.0 + s;
    let mut sum = 0.0;
    let mut a = q;
    while a < cutoff {
        sum += a.powf(-s);
        a += 1.0;
    }
    let power = a.powf(-s);
    sum += a * power / (s - 1.0) + 0.5 * power;
    // Rising factorial s(s+1)…(s+2j−2) times a^{−s−2j+1}.
    let mut term = s * power / a;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let delta = c * term;
        sum += delta;
        if delta.abs() <= 1e-17 * sum.abs() {
            break;
        }
        let m = 2.0 * j as f64 + 1.0;
        term *= (s + m) * (s + m + 1.0) / (a * a);
    }
    Ok(sum)
}

/// Riemann zeta on `s > 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        assert!((riemann_zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((riemann_zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn shift_recurrence_and_direct_sum() {
        for &s in &[1.1, 1.7, 3.0, 12.5, 40.0] {
            for &q in &[0.3, 1.0, 2.5, 1000.0] {
                let lhs = hurwitz_zeta(s, q).unwrap();
                let rhs = q.powf(-s) + hurwitz_zeta(s, q + 1.0).unwrap();
                assert!((lhs - rhs).abs() <= 1e-13 * lhs, "s={s} q={q}");
            }
        }
        let direct: f64 = (0..2_000_000).map(|k| (k as f64 + 3.0).powi(-5)).sum();
        assert!((hurwitz_zeta(5.0, 3.0).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn rejects_divergent_arguments() {
        assert!(hurwitz_zeta(1.0, 1.0).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }
}
