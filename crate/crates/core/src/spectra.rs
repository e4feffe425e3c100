//! Local dimensions of a `δ`-conformal measure along cusp excursions and
//! the resulting multifractal spectra.

use crate::cusp::ExcursionTrace;
use crate::error::{domain, Error, Result};

/// Slack allowed when checking that a computed `β` or `θ` lies in range.
const RANGE_SLACK: f64 = 1e-12;

/// Exponent of convergence `δ ∈ (1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupExponent(f64);

impl GroupExponent {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.5 && delta <= 1.0) {
            return domain(format!("δ = {delta} is outside (1/2, 1]"));
        }
        Ok(GroupExponent(delta))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `δ = 1`: the interval `[2δ − 1, δ]` is a single point.
    pub fn is_degenerate(self) -> bool {
        self.0 == 1.0
    }

    /// `δ`, provided it is below 1.
    pub fn spectral(self) -> Result<f64> {
        if self.is_degenerate() {
            return Err(Error::Domain(
                "δ = 1 is degenerate: [2δ−1, δ] collapses to a point and f_p is 0/0".into(),
            ));
        }
        Ok(self.0)
    }

    fn checked(delta: f64) -> Result<f64> {
        Self::new(delta)?.spectral()
    }
}

/// A point `ξ_t` at time `t` along a ray, with its penetration `Δ` into the
/// standard horoball containing it (0 outside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureProbe {
    t: f64,
    depth: f64,
    inside: bool,
}

impl MeasureProbe {
    pub fn new(t: f64, depth: f64, inside: bool) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return domain(format!("time {t} must be positive"));
        }
        if !(depth >= 0.0) || !depth.is_finite() {
            return domain(format!("penetration {depth} must be non-negative"));
        }
        if !inside && depth != 0.0 {
            return domain("a probe outside the horoballs has penetration 0");
        }
        Ok(MeasureProbe { t, depth, inside })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn inside(&self) -> bool {
        self.inside
    }

    /// `k(ξ_t)`: 1 inside a standard horoball, `δ` outside.
    pub fn k(&self, delta: GroupExponent) -> f64 {
        if self.inside {
            1.0
        } else {
            delta.value()
        }
    }
}

/// `−tδ − (δ − k)Δ`, the logarithm of the measure of the shadow ball at
/// `ξ_t` up to an additive constant.
pub fn global_measure_log(probe: &MeasureProbe, delta: GroupExponent) -> f64 {
    let d = delta.value();
    -probe.t * d - (d - probe.k(delta)) * probe.depth
}

/// `β_n = δ − (1 − δ) d_n/t_n` over the entered excursions of a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDimensions {
    pub beta: Vec<f64>,
    /// `max_{j ≥ k} β_j`.
    pub tail_sup: Vec<f64>,
    /// `min_{j ≥ k} β_j`.
    pub tail_inf: Vec<f64>,
}

impl LocalDimensions {
    /// Finite-horizon limsup: supremum over the second half.
    pub fn limsup_estimate(&self) -> f64 {
        self.tail_sup[self.tail_sup.len() / 2]
    }

    pub fn liminf_estimate(&self) -> f64 {
        self.tail_inf[self.tail_inf.len() / 2]
    }
}

pub fn local_dim_sequence(trace: &ExcursionTrace, delta: GroupExponent) -> Result<LocalDimensions> {
    let d = delta.spectral()?;
    let beta: Vec<f64> = trace.entered().map(|e| d - (1.0 - d) * e.depth / e.time()).collect();
    if beta.len() < 2 {
        return Err(Error::Insufficient("at least two excursions are needed".into()));
    }
    let mut tail_sup = beta.clone();
    let mut tail_inf = beta.clone();
    for i in (0..beta.len() - 1).rev() {
        tail_sup[i] = tail_sup[i].max(tail_sup[i + 1]);
        tail_inf[i] = tail_inf[i].min(tail_inf[i + 1]);
    }
    Ok(LocalDimensions { beta, tail_sup, tail_inf })
}

fn beta_range(d: f64) -> (f64, f64) {
    (2.0 * d - 1.0, d)
}

fn check_beta(beta: f64, d: f64) -> Result<f64> {
    let (lo, hi) = beta_range(d);
    if !(beta >= lo - RANGE_SLACK && beta <= hi + RANGE_SLACK) {
        return domain(format!("β = {beta} is outside [{lo}, {hi}]"));
    }
    Ok(beta.clamp(lo, hi))
}

/// `β = δ − (1 − δ)θ`.
pub fn theta_to_beta(theta: f64, delta: f64) -> Result<f64> {
    let d = GroupExponent::checked(delta)?;
    if !(0.0..=1.0).contains(&theta) {
        return domain(format!("θ = {theta} is outside [0, 1]"));
    }
    Ok(d - (1.0 - d) * theta)
}

/// `θ = (δ − β)/(1 − δ)`.
pub fn beta_to_theta(beta: f64, delta: f64) -> Result<f64> {
    let d = GroupExponent::checked(delta)?;
    let beta = check_beta(beta, d)?;
    Ok(((d - beta) / (1.0 - d)).clamp(0.0, 1.0))
}

/// `f_p(β) = (β − (2δ − 1))/(1 − δ)`, exactly 0 and 1 at the ends of
/// `[2δ − 1, δ]`.
pub fn fp(beta: f64, delta: f64) -> Result<f64> {
    let d = GroupExponent::checked(delta)?;
    let beta = check_beta(beta, d)?;
    let (lo, hi) = beta_range(d);
    Ok((beta - lo) / (hi - lo))
}

/// `f_p(β)/2`.
pub fn strict_spectrum(beta: f64, delta: f64) -> Result<f64> {
    Ok(0.5 * fp(beta, delta)?)
}

/// 0 up to `2δ − 1`, then `δ f_p(β)` up to `δ`, then `δ`.
pub fn stratmann_spectrum(beta: f64, delta: f64) -> Result<f64> {
    let d = GroupExponent::checked(delta)?;
    if !(beta > 0.0) {
        return domain(format!("β = {beta} must be positive"));
    }
    let (lo, hi) = beta_range(d);
    Ok(if beta <= lo {
        0.0
    } else if beta <= hi {
        d * fp(beta, delta)?
    } else {
        d
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub beta: f64,
    pub strict: f64,
    pub stratmann: f64,
}

/// Both spectra on `grid` equally spaced points of `[2δ − 1, δ]`.
pub fn spectrum_table(delta: f64, grid: usize) -> Result<Vec<SpectrumRow>> {
    let d = GroupExponent::checked(delta)?;
    if grid < 2 {
        return domain("the grid needs at least two points");
    }
    let (lo, hi) = beta_range(d);
    (0..grid)
        .map(|k| {
            let beta = if k == grid - 1 { hi } else { lo + (hi - lo) * k as f64 / (grid - 1) as f64 };
            Ok(SpectrumRow {
                beta,
                strict: strict_spectrum(beta, delta)?,
                stratmann: stratmann_spectrum(beta, delta)?,
            })
        })
        .collect()
}
