//! Excursions of the geodesic ray from `i` towards `ξ ∈ (0, 1)` into the
//! Ford circles.
//!
//! The ray is part of the geodesic with endpoints `−1/ξ` and `ξ`. The only
//! Ford circles it can enter are those at the convergents `p_n/q_n` of `ξ`,
//! and the excursion at `p_n/q_n` is governed by the digit `a_{n+1}`.
//!
//! All lengths are computed in the frame `z ↦ (z + 1/ξ)/(ξ − z)`, which
//! straightens the geodesic onto the imaginary axis with `i ↦ i/ξ`. There a
//! point at height `y` lies at distance `log(yξ)` from the base point. The
//! Ford circle at `p_n/q_n` becomes a circle of diameter
//! `(ξ + 1/ξ) q_n² (x_{n+1} + q_{n−1}/q_n)²`, where `x_{n+1}` is the complete
//! quotient. Working with `log q_n` and the ratios `q_{n−1}/q_n` keeps every
//! quantity finite however large the denominators grow.

use crate::cusp::cf::{convergents, ContinuedFraction, Convergent};
use crate::error::{domain, Error, Result};

/// Extra digits consumed past the horizon when evaluating complete quotients.
const TAIL_DIGITS: usize = 64;

/// One excursion record.
#[derive(Debug, Clone, PartialEq)]
pub struct Excursion {
    /// Convergent index `n ≥ 1`.
    pub index: usize,
    /// The convergent `p_n/q_n`; absent for synthesized traces.
    pub convergent: Option<Convergent>,
    /// The digit `a_{n+1}`; absent for synthesized traces.
    pub digit: Option<u64>,
    /// Formal depth; the excursion depth `d_n` when positive.
    pub depth: f64,
    /// Distance from `i` to the entry point, `NaN` if the ball is skipped.
    pub entry: f64,
    /// Distance from `i` to the exit point, `NaN` if the ball is skipped.
    pub exit: f64,
    /// Distance travelled between this excursion's exit and the next entry.
    pub gap: Option<f64>,
}

impl Excursion {
    pub fn entered(&self) -> bool {
        self.depth > 0.0 && self.entry.is_finite()
    }

    /// `t_n = d(i, z_n) + d_n`.
    pub fn time(&self) -> f64 {
        self.entry + self.depth
    }
}

/// The sequence of excursions of one ray up to a horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionTrace {
    records: Vec<Excursion>,
}

impl ExcursionTrace {
    pub fn records(&self) -> &[Excursion] {
        &self.records
    }

    pub fn horizon(&self) -> usize {
        self.records.len()
    }

    /// Excursions into balls the ray actually enters, in order along the ray.
    pub fn entered(&self) -> impl Iterator<Item = &Excursion> {
        self.records.iter().filter(|e| e.entered())
    }

    pub fn max_gap(&self) -> Option<f64> {
        self.records.iter().filter_map(|e| e.gap).reduce(f64::max)
    }

    /// An idealized trace with prescribed depths and a constant gap.
    ///
    /// The chord through an excursion of depth `d` is taken to be `2d`, so
    /// that `d(i, z_n) = n·gap + 2(d_1 + … + d_{n−1})`.
    pub fn synthesize(depths: &[f64], gap: f64) -> Result<Self> {
        if !(gap >= 0.0) {
            return domain("gap must be non-negative");
        }
        if depths.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
            return domain("synthesized depths must be positive and finite");
        }
        let mut records = Vec::with_capacity(depths.len());
        let mut pos = 0.0;
        for (k, &d) in depths.iter().enumerate() {
            let entry = pos + gap;
            let exit = entry + 2.0 * d;
            records.push(Excursion {
                index: k + 1,
                convergent: None,
                digit: None,
                depth: d,
                entry,
                exit,
                gap: (k + 1 < depths.len()).then_some(gap),
            });
            pos = exit;
        }
        Ok(ExcursionTrace { records })
    }
}

/// Complete quotient `x_k = [a_k; a_{k+1}, …]`, truncated after
/// [`TAIL_DIGITS`] further digits.
fn complete_quotient(cf: &ContinuedFraction, k: usize, last: usize) -> f64 {
    let stop = last.min(k + TAIL_DIGITS);
    let mut t = cf.digit(stop).expect("digit available") as f64;
    for j in (k..stop).rev() {
        t = cf.digit(j).expect("digit available") as f64 + 1.0 / t;
    }
    t
}

/// The excursions of the ray from `i` to `ξ` into the Ford circles at the
/// convergents `p_1/q_1, …, p_N/q_N`.
///
/// Needs `N + 2` trustworthy digits. Balls the ray does not enter are kept
/// as records with non-positive formal depth.
pub fn excursion_trace(xi: &ContinuedFraction, horizon: usize) -> Result<ExcursionTrace> {
    if horizon == 0 {
        return domain("horizon must be at least 1");
    }
    if xi.integer_part() != 0 {
        return domain("the endpoint must lie in (0, 1)");
    }
    let needed = horizon + 2;
    let usable = xi.reliable_len().unwrap_or(usize::MAX);
    if usable < needed {
        return domain(format!("{needed} reliable digits needed, {usable} available"));
    }
    let last = xi.len().unwrap_or(usize::MAX).min(needed + TAIL_DIGITS).min(usable);
    let x = complete_quotient(xi, 1, last).recip();
    let shape = x + x.recip();
    let conv = convergents(xi, horizon)?;

    let mut records = Vec::with_capacity(horizon);
    // p_n/q_n, q_{n−1}/q_n, p_{n−1}/q_n and log q_n, advanced together.
    let mut ratio = 0.0;
    let mut value = 0.0;
    let mut cross = 1.0;
    let mut log_q = 0.0;
    for n in 1..=horizon {
        let a = xi.digit(n).unwrap() as f64;
        let value_next = (a * value + cross) / (a + ratio);
        ratio = 1.0 / (a + ratio);
        cross = value * ratio;
        value = value_next;
        log_q -= ratio.ln();

        let quotient = complete_quotient(xi, n + 1, last);
        let spread = quotient + ratio;
        let depth = (shape * spread / (2.0 * (value + x.recip()))).ln();
        let (entry, exit) = if depth > 0.0 {
            let half_log_diam = (0.5 * shape).ln() + 2.0 * (log_q + spread.ln());
            let r = (-depth).exp();
            let lift = (1.0 + ((1.0 - r) * (1.0 + r)).sqrt()).ln();
            let base = x.ln() + half_log_diam;
            (base - 2.0 * depth - lift, base + lift)
        } else {
            (f64::NAN, f64::NAN)
        };
        records.push(Excursion {
            index: n,
            convergent: Some(conv[n - 1].clone()),
            digit: xi.digit(n + 1),
            depth,
            entry,
            exit,
            gap: None,
        });
    }
    let entered: Vec<usize> = (0..records.len()).filter(|&i| records[i].entered()).collect();
    for w in entered.windows(2) {
        // Ford circles are disjoint or tangent; negative values are rounding.
        records[w[0]].gap = Some((records[w[1]].entry - records[w[0]].exit).max(0.0));
    }
    Ok(ExcursionTrace { records })
}

/// Largest gap observed across a sample of traces: the empirical bound on
/// the distance travelled between consecutive excursions.
pub fn gap_bound_estimate(traces: &[ExcursionTrace]) -> Result<f64> {
    if traces.is_empty() {
        return domain("empty sample");
    }
    Ok(traces.iter().filter_map(ExcursionTrace::max_gap).fold(0.0, f64::max))
}

/// Finite-horizon membership in the `(τ, κ)`-Good set.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodVerdict {
    /// Per record: depth exceeds `log τ` and the following gap is below `κ`.
    pub flags: Vec<bool>,
    pub verdict: bool,
}

pub fn good_membership(trace: &ExcursionTrace, tau: f64, kappa: f64) -> Result<GoodVerdict> {
    if trace.records.is_empty() {
        return domain("empty trace");
    }
    if !(tau > 0.0) {
        return domain("τ must be positive");
    }
    let threshold = tau.ln();
    let flags: Vec<bool> =
        trace.records.iter().map(|e| e.depth > threshold && e.gap.is_none_or(|g| g < kappa)).collect();
    let verdict = flags.iter().all(|&f| f);
    Ok(GoodVerdict { flags, verdict })
}

/// The two ratio sequences compared in the equivalence
/// `limsup d_n/t_n = θ ⇔ limsup d_n/(2(d_1 + … + d_{n−1})) = θ/(1 − θ)`,
/// over the entered excursions.
#[derive(Debug, Clone, PartialEq)]
pub struct JarnikRatios {
    /// `d_n / t_n` for every entered excursion.
    pub depth_over_time: Vec<f64>,
    /// `d_n / (2 Σ_{i<n} d_i)` for the second excursion onwards.
    pub depth_over_sum: Vec<f64>,
    /// Running suprema over tails, `max_{j ≥ k}` of the sequences above.
    pub tail_sup_time: Vec<f64>,
    pub tail_sup_sum: Vec<f64>,
}

impl JarnikRatios {
    /// Finite-horizon limsup estimate: supremum over the second half.
    pub fn theta_estimate(&self) -> f64 {
        self.tail_sup_time[self.tail_sup_time.len() / 2]
    }

    pub fn ratio_estimate(&self) -> f64 {
        self.tail_sup_sum[self.tail_sup_sum.len() / 2]
    }
}

fn tail_suprema(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i] = out[i].max(out[i + 1]);
    }
    out
}

pub fn jarnik_ratios(trace: &ExcursionTrace) -> Result<JarnikRatios> {
    let entered: Vec<&Excursion> = trace.entered().collect();
    if entered.len() < 2 {
        return Err(Error::Insufficient("at least two excursions are needed".into()));
    }
    let depth_over_time: Vec<f64> = entered.iter().map(|e| e.depth / e.time()).collect();
    let mut sum = 0.0;
    let mut depth_over_sum = Vec::with_capacity(entered.len() - 1);
    for e in &entered {
        if sum > 0.0 {
            depth_over_sum.push(e.depth / (2.0 * sum));
        }
        sum += e.depth;
    }
    Ok(JarnikRatios {
        tail_sup_time: tail_suprema(&depth_over_time),
        tail_sup_sum: tail_suprema(&depth_over_sum),
        depth_over_time,
        depth_over_sum,
    })
}

/// `θ ↦ θ/(1 − θ)`.
pub fn theta_to_ratio(theta: f64) -> f64 {
    theta / (1.0 - theta)
}

/// `ω ↦ ω/(1 + ω)`, the inverse of [`theta_to_ratio`].
pub fn ratio_to_theta(ratio: f64) -> f64 {
    ratio / (1.0 + ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusp::ford::ford_circle;
    use crate::hyperbolic::{entry_exit_points, hyp_distance, penetration_depth, Geodesic, HPoint};
    use num_traits::ToPrimitive;

    fn periodic(prefix: &[u64], period: &[u64]) -> ContinuedFraction {
        ContinuedFraction::periodic(prefix.to_vec(), period.to_vec()).unwrap()
    }

    /// Direct evaluation with Euclidean coordinates; fine while q stays small.
    fn geometric_oracle(cf: &ContinuedFraction, n: usize) -> (f64, Option<(f64, f64)>) {
        let x = cf.value(200);
        let g = Geodesic::between(-1.0 / x, x).unwrap();
        let c = &convergents(cf, n).unwrap()[n - 1];
        let h = ford_circle(c.p.to_i64().unwrap(), c.q.to_i64().unwrap()).unwrap();
        let pen = penetration_depth(&h, &g).unwrap();
        let times = entry_exit_points(&h, &g)
            .ok()
            .map(|(p, q)| (hyp_distance(HPoint::I, p), hyp_distance(HPoint::I, q)));
        (pen.formal(), times)
    }

    #[test]
    fn agrees_with_euclidean_geometry() {
        for cf in [periodic(&[], &[2]), periodic(&[3, 1], &[1, 7, 2]), periodic(&[1, 1, 100], &[1])] {
            let trace = excursion_trace(&cf, 8).unwrap();
            for n in 1..=8 {
                let rec = &trace.records()[n - 1];
                let (depth, times) = geometric_oracle(&cf, n);
                assert!((rec.depth - depth).abs() < 1e-9, "depth at {n}: {} vs {depth}", rec.depth);
                if let Some((entry, exit)) = times {
                    assert!((rec.entry - entry).abs() < 1e-7, "entry at {n}");
                    assert!((rec.exit - exit).abs() < 1e-7, "exit at {n}");
                }
            }
        }
    }

    #[test]
    fn bounded_type_depths_are_flat() {
        let trace = excursion_trace(&periodic(&[], &[2]), 40).unwrap();
        for e in trace.records() {
            assert!(e.entered());
            assert!((e.depth - 2f64.ln()).abs() < 0.5, "depth {}", e.depth);
            assert!(e.depth < 2.0);
        }
    }

    #[test]
    fn single_spike_at_large_digit() {
        let cf = periodic(&[1, 1, 100], &[1]);
        let trace = excursion_trace(&cf, 10).unwrap();
        let (argmax, spike) =
            trace.records().iter().enumerate().max_by(|a, b| a.1.depth.total_cmp(&b.1.depth)).unwrap();
        // a_3 = 100 drives the excursion at the second convergent.
        assert_eq!(argmax, 1);
        assert_eq!(spike.digit, Some(100));
        assert!((spike.depth - 100f64.ln()).abs() < 1.0);
        for e in trace.records() {
            let a = e.digit.unwrap() as f64;
            assert!((e.depth - a.ln()).abs() < 2.5);
        }
    }

    #[test]
    fn entry_times_increase_and_gaps_nonnegative() {
        let cf = periodic(&[4, 1, 1, 9, 2], &[3, 1, 5]);
        let trace = excursion_trace(&cf, 60).unwrap();
        let mut last = f64::NEG_INFINITY;
        for e in trace.entered() {
            assert!(e.entry > last);
            assert!(e.exit > e.entry);
            last = e.entry;
        }
        assert!(trace.records().iter().filter_map(|e| e.gap).all(|g| g >= 0.0));
    }

    #[test]
    fn insufficient_digits() {
        let cf = ContinuedFraction::finite(vec![2; 5]).unwrap();
        assert!(matches!(excursion_trace(&cf, 4), Err(Error::Domain(_))));
        assert!(excursion_trace(&cf, 3).is_ok());
        let whole = ContinuedFraction::with_parts(1, vec![], vec![2]).unwrap();
        assert!(excursion_trace(&whole, 3).is_err());
    }

    #[test]
    fn good_membership_cases() {
        let trace = excursion_trace(&periodic(&[], &[10]), 20).unwrap();
        let kstar = gap_bound_estimate(std::slice::from_ref(&trace)).unwrap();
        assert!(good_membership(&trace, 5.0, kstar + 1e-9).unwrap().verdict);
        assert!(!good_membership(&trace, 1e3, kstar + 1.0).unwrap().verdict);
        assert!(!good_membership(&trace, 5.0, 0.0).unwrap().verdict);
    }

    #[test]
    fn synthesized_time_model() {
        let t = ExcursionTrace::synthesize(&[1.0, 2.0, 3.0], 0.5).unwrap();
        let e: Vec<f64> = t.records().iter().map(|e| e.entry).collect();
        assert_eq!(e, vec![0.5, 3.0, 7.5]);
        assert!(ExcursionTrace::synthesize(&[1.0, -1.0], 0.5).is_err());
    }

    #[test]
    fn jarnik_ratios_need_two_excursions() {
        let t = ExcursionTrace::synthesize(&[1.0], 0.5).unwrap();
        assert!(jarnik_ratios(&t).is_err());
    }

    #[test]
    fn theta_ratio_roundtrip() {
        for k in 0..100 {
            let theta = k as f64 / 100.0;
            assert!((ratio_to_theta(theta_to_ratio(theta)) - theta).abs() < 1e-15);
        }
    }
}
