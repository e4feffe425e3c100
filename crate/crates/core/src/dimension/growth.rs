//! Digit growth sequences `s_n`, kept as `log s_n`, and the exponents
//! `ω = limsup log s_n / (2 log(s_1⋯s_{n−1}))` and
//! `ρ = liminf log(s_1⋯s_n) / log((s_1⋯s_n)² s_{n+1}) = 1/(2(1+ω))`.

use std::fmt;

use crate::cusp::ExcursionTrace;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// `log s_n = αⁿ log b`.
    LogGeometric {
        alpha: f64,
        base: f64,
    },
    /// `s_n = cⁿ`.
    Geometric {
        ratio: f64,
    },
    /// `s_n = (n + 1)^p`.
    Polynomial {
        power: f64,
    },
    /// `s_n = n + 1`, except at `n = 2^k` where
    /// `log s_n = 2ω log(s_1⋯s_{n−1})`.
    Lacunary {
        omega: f64,
    },
    Explicit,
}

impl Generator {
    /// Limit of `ω̂_n` along the sequence, when known in closed form.
    pub fn omega(&self) -> Option<f64> {
        match *self {
            Generator::LogGeometric { alpha, .. } => Some(0.5 * (alpha - 1.0)),
            Generator::Geometric { .. } | Generator::Polynomial { .. } => Some(0.0),
            Generator::Lacunary { omega } => Some(omega),
            Generator::Explicit => None,
        }
    }

    pub fn rho(&self) -> Option<f64> {
        self.omega().map(rho_from_omega)
    }

    pub fn theta(&self) -> Option<f64> {
        self.omega().map(theta_from_omega)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::LogGeometric { alpha, base } => write!(f, "loggeo:{alpha}:{base}"),
            Generator::Geometric { ratio } => write!(f, "geo:{ratio}"),
            Generator::Polynomial { power } => write!(f, "poly:{power}"),
            Generator::Lacunary { omega } => write!(f, "lacunary:{omega}"),
            Generator::Explicit => write!(f, "list"),
        }
    }
}

/// `ρ = 1/(2(1+ω))`.
pub fn rho_from_omega(omega: f64) -> f64 {
    0.5 / (1.0 + omega)
}

/// `θ = ω/(1+ω)`: the value of `limsup d_n/t_n` when the depths follow a
/// sequence with growth exponent `ω`.
pub fn theta_from_omega(omega: f64) -> f64 {
    omega / (1.0 + omega)
}

/// `ω = θ/(1−θ)`.
pub fn omega_from_theta(theta: f64) -> f64 {
    theta / (1.0 - theta)
}

/// `(1 − θ)/2`, the dimension of the strict `θ`-Jarník set.
pub fn jarnik_dimension(theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return domain(format!("θ = {theta} is outside [0, 1]"));
    }
    Ok(0.5 * (1.0 - theta))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSequence {
    log_s: Vec<f64>,
    generator: Generator,
}

impl GrowthSequence {
    pub fn log_geometric(alpha: f64, base: f64, len: usize) -> Result<Self> {
        if !(alpha > 1.0) || !(base > 1.0) {
            return domain(format!("log-geometric growth needs α > 1 and b > 1, got α={alpha}, b={base}"));
        }
        let lb = base.ln();
        let log_s: Vec<f64> = (1..=len as i32).map(|n| alpha.powi(n) * lb).collect();
        if log_s.iter().any(|v| !v.is_finite()) {
            return domain(format!("log s_n overflows before n = {len}"));
        }
        Self::checked(log_s, Generator::LogGeometric { alpha, base })
    }

    pub fn geometric(ratio: f64, len: usize) -> Result<Self> {
        if !(ratio > 1.0) {
            return domain(format!("geometric growth needs c > 1, got {ratio}"));
        }
        let lc = ratio.ln();
        Self::checked((1..=len).map(|n| n as f64 * lc).collect(), Generator::Geometric { ratio })
    }

    pub fn polynomial(power: f64, len: usize) -> Result<Self> {
        if !(power > 0.0) {
            return domain(format!("polynomial growth needs p > 0, got {power}"));
        }
        let log_s = (1..=len).map(|n| power * ((n + 1) as f64).ln()).collect();
        Self::checked(log_s, Generator::Polynomial { power })
    }

    pub fn lacunary(omega: f64, len: usize) -> Result<Self> {
        if !(omega >= 0.0) || !omega.is_finite() {
            return domain(format!("ω must be finite and non-negative, got {omega}"));
        }
        let mut log_s = Vec::with_capacity(len);
        let mut sum = 0.0;
        for n in 1..=len {
            let baseline = ((n + 1) as f64).ln();
            let v = if n >= 2 && n.is_power_of_two() { baseline.max(2.0 * omega * sum) } else { baseline };
            sum += v;
            log_s.push(v);
        }
        Self::checked(log_s, Generator::Lacunary { omega })
    }

    /// A finite list of values `s_n ≥ 1`.
    pub fn explicit(values: &[f64]) -> Result<Self> {
        Self::from_logs(values.iter().map(|v| v.ln()).collect())
    }

    pub fn from_logs(log_s: Vec<f64>) -> Result<Self> {
        Self::checked(log_s, Generator::Explicit)
    }

    /// Admissibility at finite length: `s_1 > 1`, all `s_n ≥ 1`, and the
    /// smallest term of the second half exceeds the smallest of the first.
    fn checked(log_s: Vec<f64>, generator: Generator) -> Result<Self> {
        if log_s.len() < 2 {
            return domain("a growth sequence needs at least two terms");
        }
        if log_s.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return domain("terms must be finite and at least 1");
        }
        if log_s[0] <= 0.0 {
            return domain("the first term must exceed 1");
        }
        let half = log_s.len() / 2;
        let early = log_s[..half].iter().cloned().fold(f64::INFINITY, f64::min);
        let late = log_s[half..].iter().cloned().fold(f64::INFINITY, f64::min);
        if !(late > early) {
            return domain("the sequence does not grow: its tail does not exceed its head");
        }
        Ok(GrowthSequence { log_s, generator })
    }

    pub fn log_terms(&self) -> &[f64] {
        &self.log_s
    }

    pub fn len(&self) -> usize {
        self.log_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_s.is_empty()
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    /// An idealized excursion trace with depths `d_n = log s_n`.
    pub fn synthetic_trace(&self, gap: f64) -> Result<ExcursionTrace> {
        ExcursionTrace::synthesize(&self.log_s, gap)
    }
}

/// Finite-`n` estimates of `ω` and `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaRho {
    /// `ω̂_n = log s_n / (2 log(s_1⋯s_{n−1}))` for `n = 1..=n_max`; `NaN` at `n = 1`.
    pub omega_hat: Vec<f64>,
    /// `ρ̂_n = log(s_1⋯s_n) / log((s_1⋯s_n)² s_{n+1})`.
    pub rho_hat: Vec<f64>,
    /// `ρ̂_n` with `s_1⋯s_n` inflated by `Kⁿ` in the denominator.
    pub rho_inflated: Vec<f64>,
    pub inflation: f64,
    pub omega: Option<f64>,
    pub rho: Option<f64>,
}

impl OmegaRho {
    pub fn rho_at(&self, n: usize) -> f64 {
        self.rho_hat[n - 1]
    }

    /// Supremum of `ω̂_n` over `n ≥ n_max/2`.
    pub fn omega_tail_sup(&self) -> f64 {
        let k = self.omega_hat.len();
        self.omega_hat[(k / 2).max(1)..].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Infimum of `ρ̂_n` over `n ≥ n_max/2`.
    pub fn rho_tail_inf(&self) -> f64 {
        let k = self.rho_hat.len();
        self.rho_hat[k / 2..].iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn rho_inflated_tail_inf(&self) -> f64 {
        let k = self.rho_inflated.len();
        self.rho_inflated[k / 2..].iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Estimates of `ω` and `ρ` up to `n_max`, the latter also with the
/// products `s_1⋯s_n` inflated by `Kⁿ`. Needs `n_max + 1` terms.
pub fn seq_omega_rho(seq: &GrowthSequence, n_max: usize, inflation: f64) -> Result<OmegaRho> {
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    if seq.len() < n_max + 1 {
        return domain(format!("{} terms needed, {} given", n_max + 1, seq.len()));
    }
    if !(inflation > 0.0) {
        return domain("K must be positive");
    }
    let log_k = inflation.ln();
    let l = &seq.log_s;
    let mut omega_hat = Vec::with_capacity(n_max);
    let mut rho_hat = Vec::with_capacity(n_max);
    let mut rho_inflated = Vec::with_capacity(n_max);
    let mut prefix = 0.0;
    for n in 1..=n_max {
        omega_hat.push(if prefix > 0.0 { l[n - 1] / (2.0 * prefix) } else { f64::NAN });
        prefix += l[n - 1];
        let denom = 2.0 * prefix + l[n];
        rho_hat.push(prefix / denom);
        rho_inflated.push(prefix / (denom + 2.0 * n as f64 * log_k));
    }
    Ok(OmegaRho {
        omega_hat,
        rho_hat,
        rho_inflated,
        inflation,
        omega: seq.generator.omega(),
        rho: seq.generator.rho(),
    })
}
