//! Product measures on continued-fraction cylinders and empirical local
//! exponents of their balls.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Result};

/// Path weight below which a ball computation stops descending.
const MASS_FLOOR: f64 = 1e-24;
/// Digits drawn per sampled point.
pub const SAMPLE_DEPTH: usize = 40;

/// The measure that gives each digit `a ∈ [lo, hi]` weight `w(a)` at every
/// level independently, so a cylinder `[a_1, …, a_k]` has mass
/// `w(a_1)⋯w(a_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderMeasure {
    lo: u64,
    weights: Vec<f64>,
    /// `above[k] = Σ_{j>k} weights[j]`.
    above: Vec<f64>,
    normalizer: f64,
}

impl CylinderMeasure {
    /// Weights for the digits `lo, lo+1, …`, normalized to sum to 1.
    pub fn from_weights(lo: u64, weights: Vec<f64>) -> Result<Self> {
        if lo < 1 {
            return domain("digits start at 1");
        }
        if weights.is_empty() {
            return domain("no digit weights given");
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return domain("digit weights must be finite and non-negative");
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return domain(format!("digit weights cannot be normalized (total {total})"));
        }
        let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut above = vec![0.0; weights.len()];
        for k in (0..weights.len() - 1).rev() {
            above[k] = above[k + 1] + weights[k + 1];
        }
        Ok(CylinderMeasure { lo, weights, above, normalizer: total })
    }

    /// Weights proportional to `1/(a + 1)` on `[lo, hi]`.
    pub fn reciprocal(lo: u64, hi: u64) -> Result<Self> {
        if hi < lo {
            return domain(format!("empty digit range {lo}..={hi}"));
        }
        Self::from_weights(lo, (lo..=hi).map(|a| 1.0 / (a as f64 + 1.0)).collect())
    }

    /// The measure carried by the Good set: digits from `⌊τ⌋` to the first
    /// `m` with `Σ_{i=⌊τ⌋}^{m} 1/(i+1) > e^{κ/2}`, weighted by `1/(S(a+1))`
    /// where `S` is that sum.
    pub fn good(tau: f64, kappa: f64) -> Result<Self> {
        if !(tau >= 1.0) || !tau.is_finite() {
            return domain(format!("τ must be at least 1, got {tau}"));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return domain(format!("κ must be positive, got {kappa}"));
        }
        let lo = tau.floor() as u64;
        let target = (0.5 * kappa).exp();
        let mut sum = 0.0;
        let mut hi = lo;
        loop {
            sum += 1.0 / (hi as f64 + 1.0);
            if sum > target {
                break;
            }
            hi += 1;
        }
        Self::reciprocal(lo, hi)
    }

    pub fn single(a: u64) -> Result<Self> {
        Self::from_weights(a, vec![1.0])
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.weights.len() as u64 - 1
    }

    /// Sum of the weights before normalization.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn weight(&self, a: u64) -> f64 {
        if a < self.lo || a > self.hi() {
            0.0
        } else {
            self.weights[(a - self.lo) as usize]
        }
    }

    /// `Σ_{b > a} w(b)`.
    pub fn mass_above(&self, a: u64) -> f64 {
        if a < self.lo {
            1.0
        } else if a > self.hi() {
            0.0
        } else {
            self.above[(a - self.lo) as usize]
        }
    }

    /// Mass of the cylinder with the given leading digits.
    pub fn cylinder(&self, digits: &[u64]) -> f64 {
        digits.iter().map(|&a| self.weight(a)).product()
    }

    fn digit_of(y: f64) -> u64 {
        let t = 1.0 / y;
        if t >= u64::MAX as f64 {
            u64::MAX
        } else {
            t.floor() as u64
        }
    }

    fn cdf_scaled(&self, y: f64, scale: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y >= 1.0 {
            return 1.0;
        }
        if scale < MASS_FLOOR {
            return y;
        }
        let m = Self::digit_of(y);
        let w = self.weight(m);
        let inner = if w > 0.0 { 1.0 - self.cdf_scaled(1.0 / y - m as f64, scale * w) } else { 0.0 };
        self.mass_above(m) + w * inner
    }

    /// `ν([0, y])`.
    pub fn cdf(&self, y: f64) -> f64 {
        self.cdf_scaled(y, 1.0)
    }

    fn interval_scaled(&self, u: f64, v: f64, scale: f64) -> f64 {
        if v <= u {
            return 0.0;
        }
        if u <= 0.0 {
            return self.cdf_scaled(v, scale);
        }
        if v >= 1.0 {
            return 1.0 - self.cdf_scaled(u, scale);
        }
        if scale < MASS_FLOOR {
            return v - u;
        }
        let (a_v, a_u) = (Self::digit_of(v), Self::digit_of(u));
        if a_u == a_v {
            let w = self.weight(a_v);
            return if w > 0.0 {
                w * self.interval_scaled(1.0 / v - a_v as f64, 1.0 / u - a_u as f64, scale * w)
            } else {
                0.0
            };
        }
        let (w_v, w_u) = (self.weight(a_v), self.weight(a_u));
        let right =
            if w_v > 0.0 { w_v * (1.0 - self.cdf_scaled(1.0 / v - a_v as f64, scale * w_v)) } else { 0.0 };
        let left = if w_u > 0.0 { w_u * self.cdf_scaled(1.0 / u - a_u as f64, scale * w_u) } else { 0.0 };
        let middle = (self.mass_above(a_v) - self.mass_above(a_u - 1)).max(0.0);
        right + middle + left
    }

    /// `ν([u, v])`, computed by descending the cylinder tree.
    pub fn interval(&self, u: f64, v: f64) -> f64 {
        self.interval_scaled(u.max(0.0), v.min(1.0), 1.0).clamp(0.0, 1.0)
    }

    /// `ν(B(ξ, r))`.
    pub fn ball(&self, xi: f64, r: f64) -> f64 {
        self.interval(xi - r, xi + r)
    }

    /// Digits of a `ν`-random point.
    pub fn sample_digits(&self, rng: &mut ChaCha8Rng, depth: usize) -> Vec<u64> {
        let index = WeightedIndex::new(&self.weights).expect("weights are normalized");
        (0..depth).map(|_| self.lo + index.sample(rng) as u64).collect()
    }
}

fn digits_value(digits: &[u64]) -> f64 {
    digits.iter().rev().fold(0.0, |x, &a| 1.0 / (a as f64 + x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrostmanRow {
    pub sample: usize,
    pub xi: f64,
    pub r: f64,
    pub measure: f64,
    /// `log ν(B(ξ, r)) / log r`.
    pub log_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrostmanReport {
    pub rows: Vec<FrostmanRow>,
    /// Least-squares slope of `log ν(B(ξ, r))` against `log r` over all rows.
    pub fitted_exponent: f64,
    /// Smallest `log ν(B(ξ, r)) / log r` observed.
    pub min_ratio: f64,
}

/// Radii `10^{−2}, 10^{−3}, …` with `count` entries.
pub fn default_radii(count: usize) -> Vec<f64> {
    (0..count).map(|k| 10f64.powi(-2 - k as i32)).collect()
}

/// Samples `samples` points from `measure`, sample `i` drawing from its own
/// ChaCha8 stream `i` under `seed`, and measures the balls of the given
/// radii around each.
pub fn frostman_sampler(
    measure: &CylinderMeasure,
    samples: usize,
    radii: &[f64],
    seed: u64,
) -> Result<FrostmanReport> {
    if samples == 0 {
        return domain("at least one sample is needed");
    }
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return domain("radii must lie in (0, 1)");
    }
    let rows: Vec<FrostmanRow> = (0..samples)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let xi = digits_value(&measure.sample_digits(&mut rng, SAMPLE_DEPTH));
            radii.iter().map(move |&r| {
                let m = measure.ball(xi, r);
                FrostmanRow { sample: i, xi, r, measure: m, log_ratio: m.ln() / r.ln() }
            })
        })
        .collect();
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for row in &rows {
        let (x, y) = (row.r.ln(), row.measure.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let n = rows.len() as f64;
    let var = sxx - sx * sx / n;
    let fitted_exponent = if var > 0.0 { (sxy - sx * sy / n) / var } else { 0.0 };
    let min_ratio = rows.iter().map(|r| r.log_ratio).fold(f64::INFINITY, f64::min);
    Ok(FrostmanReport { rows, fitted_exponent, min_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn good_range_and_normalizer() {
        let m = CylinderMeasure::good(10.0, 1.0).unwrap();
        assert_eq!(m.lo(), 10);
        let s: f64 = (10..=m.hi()).map(|i| 1.0 / (i as f64 + 1.0)).sum();
        assert!(s > 0.5f64.exp());
        assert!(s - 1.0 / (m.hi() as f64 + 1.0) <= 0.5f64.exp());
        assert!((m.normalizer() - s).abs() < 1e-12);
        let total: f64 = (m.lo()..=m.hi()).map(|a| m.weight(a)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cylinder_intervals_have_cylinder_mass() {
        let m = CylinderMeasure::reciprocal(2, 6).unwrap();
        for digits in [vec![2u64], vec![3, 5], vec![6, 2, 4]] {
            // Endpoints of the cylinder [a_1, …, a_k] are [a_1, …, a_k] and
            // [a_1, …, a_k + 1].
            let mut up = digits.clone();
            *up.last_mut().unwrap() += 1;
            let (x, y) = (digits_value(&digits), digits_value(&up));
            let measured = m.interval(x.min(y), x.max(y));
            assert!((measured - m.cylinder(&digits)).abs() < 1e-12, "{digits:?}");
        }
    }

    #[test]
    fn interval_additivity() {
        let m = CylinderMeasure::reciprocal(1, 9).unwrap();
        let cuts = [0.0, 0.013, 0.1, 0.2718, 0.5, 0.61803, 0.9, 1.0];
        let total: f64 = cuts.windows(2).map(|w| m.interval(w[0], w[1])).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((m.cdf(0.37) + m.interval(0.37, 1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass_has_exponent_zero() {
        let report = frostman_sampler(&CylinderMeasure::single(2).unwrap(), 8, &default_radii(6), 1).unwrap();
        assert!(report.fitted_exponent.abs() < 1e-12);
        assert!(report.min_ratio.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CylinderMeasure::from_weights(1, vec![0.0, 0.0]).is_err());
        assert!(CylinderMeasure::from_weights(1, vec![]).is_err());
        assert!(CylinderMeasure::from_weights(1, vec![1.0, -1.0]).is_err());
        let m = CylinderMeasure::good(10.0, 1.0).unwrap();
        assert!(frostman_sampler(&m, 0, &[0.1], 0).is_err());
        assert!(frostman_sampler(&m, 4, &[1.5], 0).is_err());
    }
}
