//! Dimension of restricted-digit sets from the leading eigenvalue of the
//! Gauss-map transfer operator
//! `(L_s f)(x) = Σ_{a∈A} (a + x)^{−2s} f(1/(a + x))` on `[0, 1]`.
//!
//! Two discretizations are provided: polynomial collocation on
//! Chebyshev–Lobatto nodes, which converges spectrally, and Ulam's
//! piecewise-constant scheme, which is slow but shares no code with the
//! first and serves as a cross-check.

use rayon::prelude::*;

use crate::dimension::alphabet::{DigitAlphabet, DEFAULT_TRUNCATION_SPAN};
use crate::dimension::crude::crude_bracket;
use crate::dimension::zeta::hurwitz_zeta;
use crate::error::{domain, Error, Result};

/// Relative change of the eigenvalue at which power iteration stops.
pub const POWER_TOL: f64 = 1e-12;
pub const MAX_POWER_ITERATIONS: usize = 20_000;
/// Taylor order of the analytic tail of an unbounded alphabet.
const TAIL_ORDER: usize = 14;
/// Left end of the search interval for unbounded alphabets, above 1/2.
const HALF_OFFSET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionEstimate {
    pub dim: f64,
    /// `λ(dim) − 1`.
    pub residual: f64,
    /// Crude cover-sum bracket, for unbounded alphabets `{N..}` with `N ≥ 2`.
    pub bracket: Option<(f64, f64)>,
}

fn leading_eigenvalue(n: usize, apply: impl Fn(&[f64], &mut [f64])) -> Result<f64> {
    let mut v = vec![1.0 / n as f64; n];
    let mut w = vec![0.0; n];
    let mut lambda = f64::NAN;
    for _ in 0..MAX_POWER_ITERATIONS {
        apply(&v, &mut w);
        let total: f64 = w.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::Numeric(format!(
                "power iteration lost positivity (mass {total:e}, last eigenvalue {lambda:e})"
            )));
        }
        let change = (total - lambda).abs();
        lambda = total;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / total;
        }
        if change <= POWER_TOL * lambda {
            return Ok(lambda);
        }
    }
    Err(Error::Numeric(format!(
        "power iteration did not settle in {MAX_POWER_ITERATIONS} steps (eigenvalue {lambda:e})"
    )))
}

/// Root of `λ(s) = 1` on `[lo, hi]`, assuming `λ` decreases.
fn bisect_pressure(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    eigenvalue: impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if eigenvalue(mid)? > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    Ok((s, eigenvalue(s)? - 1.0))
}

/// Chebyshev–Lobatto nodes on `[0, 1]` and their barycentric weights.
fn lobatto(n: usize) -> (Vec<f64>, Vec<f64>) {
    let m = (n - 1) as f64;
    let nodes = (0..n).map(|j| 0.5 * (1.0 - (std::f64::consts::PI * j as f64 / m).cos())).collect();
    let weights = (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                0.5 * sign
            } else {
                sign
            }
        })
        .collect();
    (nodes, weights)
}

fn lagrange_row(y: f64, nodes: &[f64], weights: &[f64], out: &mut [f64]) {
    if let Some(k) = nodes.iter().position(|&x| x == y) {
        out.fill(0.0);
        out[k] = 1.0;
        return;
    }
    let mut denom = 0.0;
    for ((o, &x), &w) in out.iter_mut().zip(nodes).zip(weights) {
        *o = w / (y - x);
        denom += *o;
    }
    out.iter_mut().for_each(|o| *o /= denom);
}

/// Collocation discretization of `L_s` for one alphabet.
pub struct Collocation {
    nodes: Vec<f64>,
    digits: Vec<f64>,
    /// `ℓ_j(1/(a + x_i))`, indexed `[digit][i][j]`.
    basis: Vec<f64>,
    /// Taylor coefficients of `ℓ_j` at 0, indexed `[k][j]`.
    taylor: Option<Vec<f64>>,
    tail_start: f64,
}

impl Collocation {
    pub fn new(alphabet: &DigitAlphabet, nodes: usize) -> Result<Self> {
        if nodes < 8 {
            return domain(format!("at least 8 collocation nodes are needed, got {nodes}"));
        }
        let (x, w) = lobatto(nodes);
        let digits: Vec<f64> = alphabet.direct_digits().map(|a| a as f64).collect();
        let mut basis = vec![0.0; digits.len() * nodes * nodes];
        for (d, &a) in digits.iter().enumerate() {
            for i in 0..nodes {
                let row = &mut basis[(d * nodes + i) * nodes..(d * nodes + i + 1) * nodes];
                lagrange_row(1.0 / (a + x[i]), &x, &w, row);
            }
        }
        let taylor = (!alphabet.is_finite() && alphabet.tail_correction()).then(|| {
            let mut diff = vec![0.0; nodes * nodes];
            for i in 0..nodes {
                let mut diag = 0.0;
                for j in 0..nodes {
                    if i != j {
                        let e = (w[j] / w[i]) / (x[i] - x[j]);
                        diff[i * nodes + j] = e;
                        diag -= e;
                    }
                }
                diff[i * nodes + i] = diag;
            }
            let mut coeffs = vec![0.0; TAIL_ORDER * nodes];
            let mut row = vec![0.0; nodes];
            row[0] = 1.0;
            let mut factorial = 1.0;
            for k in 0..TAIL_ORDER {
                if k > 0 {
                    factorial *= k as f64;
                    let next: Vec<f64> =
                        (0..nodes).map(|j| (0..nodes).map(|m| row[m] * diff[m * nodes + j]).sum()).collect();
                    row = next;
                }
                for j in 0..nodes {
                    coeffs[k * nodes + j] = row[j] / factorial;
                }
            }
            coeffs
        });
        Ok(Collocation { nodes: x, digits, basis, taylor, tail_start: alphabet.truncation() as f64 + 1.0 })
    }

    /// The collocation matrix of `L_s`, row-major.
    pub fn matrix(&self, s: f64) -> Result<Vec<f64>> {
        let n = self.nodes.len();
        let mut m = vec![0.0; n * n];
        for (d, &a) in self.digits.iter().enumerate() {
            for i in 0..n {
                let scale = (a + self.nodes[i]).powf(-2.0 * s);
                let src = &self.basis[(d * n + i) * n..(d * n + i + 1) * n];
                for (dst, b) in m[i * n..(i + 1) * n].iter_mut().zip(src) {
                    *dst += scale * b;
                }
            }
        }
        if let Some(taylor) = &self.taylor {
            for i in 0..n {
                for k in 0..TAIL_ORDER {
                    let z = hurwitz_zeta(2.0 * s + k as f64, self.tail_start + self.nodes[i])?;
                    for j in 0..n {
                        m[i * n + j] += z * taylor[k * n + j];
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn eigenvalue(&self, s: f64) -> Result<f64> {
        let n = self.nodes.len();
        let m = self.matrix(s)?;
        leading_eigenvalue(n, |v, w| {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = m[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum();
            }
        })
    }
}

fn search_interval(alphabet: &DigitAlphabet) -> (f64, f64) {
    if alphabet.is_finite() {
        (0.0, 1.0)
    } else {
        (0.5 + HALF_OFFSET, 1.0)
    }
}

/// Dimension of the set of points whose digits all lie in `alphabet`, by
/// collocation with `nodes` points and bisection to `tol`.
pub fn transfer_dimension(alphabet: &DigitAlphabet, nodes: usize, tol: f64) -> Result<DimensionEstimate> {
    let op = Collocation::new(alphabet, nodes)?;
    let (lo, hi) = search_interval(alphabet);
    let (dim, residual) = bisect_pressure(lo, hi, tol, |s| op.eigenvalue(s))?;
    let bracket = match (alphabet.is_finite(), alphabet.lower()) {
        (false, n) if n >= 2 => Some(crude_bracket(n, tol)?),
        _ => None,
    };
    Ok(DimensionEstimate { dim, residual, bracket })
}

/// Ulam discretization of `L_s` on `bins` equal cells.
pub struct Ulam {
    bins: usize,
    /// `(i, j, a, y_lo, y_hi)`: the part of cell `i` sent into cell `j` by
    /// the branch `y ↦ 1/(a + y)`.
    pieces: Vec<(usize, usize, f64, f64, f64)>,
}

impl Ulam {
    pub fn new(alphabet: &DigitAlphabet, bins: usize) -> Result<Self> {
        if bins < 64 {
            return domain(format!("at least 64 bins are needed, got {bins}"));
        }
        if !alphabet.is_finite() {
            return domain("the Ulam scheme takes bounded alphabets only");
        }
        let h = 1.0 / bins as f64;
        let mut pieces = Vec::new();
        for a in alphabet.direct_digits() {
            let a = a as f64;
            for i in 0..bins {
                let (y0, y1) = (i as f64 * h, (i + 1) as f64 * h);
                let lo_img = 1.0 / (a + y1);
                let hi_img = 1.0 / (a + y0);
                let j0 = ((lo_img / h).floor() as usize).min(bins - 1);
                let j1 = ((hi_img / h).floor() as usize).min(bins - 1);
                for j in j0..=j1 {
                    let pre_lo = 1.0 / ((j + 1) as f64 * h) - a;
                    let pre_hi = if j == 0 { f64::INFINITY } else { 1.0 / (j as f64 * h) - a };
                    let lo = y0.max(pre_lo);
                    let hi = y1.min(pre_hi);
                    if hi > lo {
                        pieces.push((i, j, a, lo, hi));
                    }
                }
            }
        }
        Ok(Ulam { bins, pieces })
    }

    pub fn eigenvalue(&self, s: f64) -> Result<f64> {
        let e = 1.0 - 2.0 * s;
        let inv_h = self.bins as f64;
        let values: Vec<f64> = self
            .pieces
            .iter()
            .map(|&(_, _, a, lo, hi)| {
                let (la, lb) = ((a + lo).ln(), (a + hi).ln());
                let integral = if e == 0.0 { lb - la } else { (e * la).exp() * (e * (lb - la)).exp_m1() / e };
                integral * inv_h
            })
            .collect();
        leading_eigenvalue(self.bins, |v, w| {
            w.fill(0.0);
            for (&(i, j, ..), p) in self.pieces.iter().zip(&values) {
                w[i] += p * v[j];
            }
        })
    }
}

/// Dimension by the Ulam scheme; used to cross-check [`transfer_dimension`].
pub fn ulam_dimension(alphabet: &DigitAlphabet, bins: usize, tol: f64) -> Result<DimensionEstimate> {
    let op = Ulam::new(alphabet, bins)?;
    let (dim, residual) = bisect_pressure(0.0, 1.0, tol, |s| op.eigenvalue(s))?;
    Ok(DimensionEstimate { dim, residual, bracket: None })
}

/// One row of a sweep over lower digit bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub kappa: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub estimate: f64,
    pub residual: f64,
}

/// Dimension of `{ξ : a_n(ξ) ≥ N for all n}` for each `N`, with its crude
/// bracket. The rows do not depend on `κ`: the gap condition only
/// contributes factors `e^{(n+1)κ}` whose `n`-th roots tend to 1.
pub fn good_dimension_sweep(ns: &[u64], kappa: f64, nodes: usize, tol: f64) -> Result<Vec<SweepRow>> {
    good_dimension_sweep_with_span(ns, kappa, nodes, tol, DEFAULT_TRUNCATION_SPAN)
}

/// [`good_dimension_sweep`] with the digits `N..=N + span` summed directly.
pub fn good_dimension_sweep_with_span(
    ns: &[u64],
    kappa: f64,
    nodes: usize,
    tol: f64,
    span: u64,
) -> Result<Vec<SweepRow>> {
    if ns.is_empty() {
        return domain("no lower digit bounds given");
    }
    if !(kappa > 0.0) {
        return domain("κ must be positive");
    }
    if let Some(n) = ns.iter().find(|&&n| n < 2) {
        return domain(format!("lower digit bound {n} has no crude bracket"));
    }
    ns.par_iter()
        .map(|&n| {
            let alphabet = DigitAlphabet::at_least(n)?.with_truncation(n + span, true)?;
            let est = transfer_dimension(&alphabet, nodes, tol)?;
            let (bracket_lo, bracket_hi) = est.bracket.expect("bracket exists for N ≥ 2");
            Ok(SweepRow { n, kappa, bracket_lo, bracket_hi, estimate: est.dim, residual: est.residual })
        })
        .collect()
}
