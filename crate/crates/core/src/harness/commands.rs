use super::config::RunConfig;
use super::spec::{parse_generator, parse_n_list, parse_number, parse_weights};
use super::svg::{Chart, Series};
use super::table::{Cell, ResultTable};
use super::{usage, CliError};
use crate::cusp::{convergents, excursion_trace, gap_bound_estimate, good_membership, jarnik_ratios};
use crate::dimension::{default_radii, frostman_sampler, good_dimension_sweep_with_span, seq_omega_rho};
use crate::spectra::{spectrum_table, stratmann_spectrum, GroupExponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Cf,
    Excursions,
    DimFn,
    DimSeq,
    Spectrum,
    Frostman,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cf => "cf",
            Command::Excursions => "excursions",
            Command::DimFn => "dim-fn",
            Command::DimSeq => "dim-seq",
            Command::Spectrum => "spectrum",
            Command::Frostman => "frostman",
        }
    }
}

/// The rendered results of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub csv: String,
    pub svg: Option<String>,
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Output, CliError> {
    let (table, chart) = match cmd {
        Command::Cf => (cf(cfg)?, None),
        Command::Excursions => (excursions(cfg)?, None),
        Command::DimFn => dim_fn(cfg)?,
        Command::DimSeq => dim_seq(cfg)?,
        Command::Spectrum => spectrum(cfg)?,
        Command::Frostman => (frostman(cfg)?, None),
    };
    let svg = match (cfg.svg, chart) {
        (true, Some(chart)) => Some(chart.render()),
        (true, None) => return usage(format!("{} has no figure", cmd.name())),
        (false, _) => None,
    };
    Ok(Output { csv: table.render(&cfg.hash(), cfg.seed()?), svg })
}

fn number_spec(cfg: &RunConfig) -> Result<&str, CliError> {
    match cfg.get("x") {
        "" => usage("no number given"),
        x => Ok(x),
    }
}

fn cf(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let x = parse_number(number_spec(cfg)?)?;
    let mut n = cfg.horizon()?;
    if let Some(len) = x.len() {
        n = n.min(len);
    }
    if let Some(reliable) = x.reliable_len() {
        n = n.min(reliable);
    }
    let conv = convergents(&x, n)?;
    let mut t = ResultTable::new("cf", &["n", "a_n", "p_n", "q_n"]);
    for (k, c) in conv.iter().enumerate() {
        t.push(vec![
            (k + 1).into(),
            x.digit(k + 1).unwrap().into(),
            c.p.to_string().into(),
            c.q.to_string().into(),
        ]);
    }
    t.note("integer_part", x.integer_part());
    t.note("expansion", x.to_string());
    Ok(t)
}

fn excursions(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let x = parse_number(number_spec(cfg)?)?;
    let horizon = cfg.horizon()?;
    let available = x.len().unwrap_or(usize::MAX).min(x.reliable_len().unwrap_or(usize::MAX));
    if available < horizon + 2 {
        return Err(CliError::Insufficient(format!(
            "horizon {horizon} needs {} digits, {available} available",
            horizon + 2
        )));
    }
    let (tau, kappa) = (cfg.float("tau")?, cfg.float("kappa")?);
    let trace = excursion_trace(&x, horizon)?;
    let good = good_membership(&trace, tau, kappa)?;
    let mut t =
        ResultTable::new("excursions", &["n", "a_next", "d_n", "t_n", "gap_n", "d_over_t", "good_flag"]);
    for (e, flag) in trace.records().iter().zip(&good.flags) {
        let (time, ratio) = if e.entered() { (e.time(), e.depth / e.time()) } else { (f64::NAN, f64::NAN) };
        t.push(vec![
            e.index.into(),
            e.digit.map_or(Cell::Empty, Cell::from),
            e.depth.into(),
            time.into(),
            e.gap.into(),
            ratio.into(),
            (*flag).into(),
        ]);
    }
    t.note("tau", tau);
    t.note("kappa", kappa);
    t.note("kappa_star", gap_bound_estimate(std::slice::from_ref(&trace))?);
    t.note("skipped", trace.records().iter().filter(|e| !e.entered()).count());
    t.note("good_verdict", good.verdict);
    match jarnik_ratios(&trace) {
        Ok(j) => {
            t.note("theta_estimate", j.theta_estimate());
            t.note("ratio_estimate", j.ratio_estimate());
        }
        Err(_) => {
            t.note("theta_estimate", Cell::Empty);
            t.note("ratio_estimate", Cell::Empty);
        }
    }
    Ok(t)
}

fn dim_fn(cfg: &RunConfig) -> Result<(ResultTable, Option<Chart>), CliError> {
    let ns = parse_n_list(cfg.get("n_list"))?;
    let kappa = cfg.float("kappa")?;
    let rows = good_dimension_sweep_with_span(&ns, kappa, cfg.nodes()?, cfg.tol()?, cfg.uint("truncation")?)?;
    let mut t = ResultTable::new("dim-fn", &["N", "bracket_lo", "bracket_hi", "dim_estimate", "residual"]);
    for r in &rows {
        t.push(vec![
            r.n.into(),
            r.bracket_lo.into(),
            r.bracket_hi.into(),
            r.estimate.into(),
            r.residual.into(),
        ]);
    }
    let log_n: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let top = rows.iter().map(|r| r.bracket_hi).fold(0.5, f64::max);
    let (x_lo, x_hi) =
        (log_n.iter().cloned().fold(f64::INFINITY, f64::min), log_n.iter().cloned().fold(0.0, f64::max));
    let pad = 0.05 * (x_hi - x_lo).max(1.0);
    let line = |f: fn(&crate::dimension::SweepRow) -> f64| {
        rows.iter().zip(&log_n).map(|(r, &x)| (x, f(r))).collect()
    };
    let chart = Chart {
        title: "Dimension of digits bounded below by N".into(),
        x_label: "log N".into(),
        y_label: "dimension".into(),
        x_range: (x_lo - pad, x_hi + pad),
        y_range: (0.45, top + 0.05),
        series: vec![
            Series { label: "estimate".into(), points: line(|r| r.estimate), dashed: false, color: "black" },
            Series {
                label: "bracket (upper)".into(),
                points: line(|r| r.bracket_hi),
                dashed: true,
                color: "steelblue",
            },
            Series {
                label: "bracket (lower)".into(),
                points: line(|r| r.bracket_lo),
                dashed: true,
                color: "firebrick",
            },
        ],
        guides: vec![0.5],
        x_ticks: rows.iter().zip(&log_n).map(|(r, &x)| (x, format!("N={}", r.n))).collect(),
        y_ticks: vec![(0.5, "1/2".into()), (top, format!("{top:.3}"))],
    };
    Ok((t, Some(chart)))
}

fn dim_seq(cfg: &RunConfig) -> Result<(ResultTable, Option<Chart>), CliError> {
    let horizon = cfg.horizon()?;
    let seq = parse_generator(cfg.get("generator"), horizon + 1)?;
    let n_max = horizon.min(seq.len() - 1);
    let est = seq_omega_rho(&seq, n_max, cfg.float("inflation")?)?;
    let mut t =
        ResultTable::new("dim-seq", &["n", "omega_hat", "rho_hat", "rho_inflated", "closed_form_rho"]);
    for n in 1..=n_max {
        t.push(vec![
            n.into(),
            est.omega_hat[n - 1].into(),
            est.rho_hat[n - 1].into(),
            est.rho_inflated[n - 1].into(),
            est.rho.into(),
        ]);
    }
    t.note("generator", seq.generator().to_string());
    t.note("inflation", est.inflation);
    t.note("omega_tail_sup", est.omega_tail_sup());
    t.note("rho_tail_inf", est.rho_tail_inf());
    t.note("rho_inflated_tail_inf", est.rho_inflated_tail_inf());
    t.note("closed_form_omega", est.omega);
    let mut guides = vec![0.5];
    guides.extend(est.rho);
    let chart = Chart {
        title: "Finite-n critical exponent".into(),
        x_label: "n".into(),
        y_label: "rho".into(),
        x_range: (0.0, n_max as f64 + 1.0),
        y_range: (0.0, 0.55),
        series: vec![
            Series {
                label: "rho_hat".into(),
                points: est.rho_hat.iter().enumerate().map(|(k, &r)| ((k + 1) as f64, r)).collect(),
                dashed: false,
                color: "black",
            },
            Series {
                label: "rho_hat, inflated".into(),
                points: est.rho_inflated.iter().enumerate().map(|(k, &r)| ((k + 1) as f64, r)).collect(),
                dashed: true,
                color: "steelblue",
            },
        ],
        guides,
        x_ticks: vec![(1.0, "1".into()), (n_max as f64, n_max.to_string())],
        y_ticks: vec![(0.0, "0".into()), (0.5, "1/2".into())],
    };
    Ok((t, Some(chart)))
}

fn spectrum(cfg: &RunConfig) -> Result<(ResultTable, Option<Chart>), CliError> {
    let delta = cfg.float("delta")?;
    let d = GroupExponent::new(delta)?.spectral()?;
    let rows = spectrum_table(delta, cfg.uint("grid")? as usize)?;
    let mut t = ResultTable::new("spectrum", &["beta", "strict", "stratmann"]);
    for r in &rows {
        t.push(vec![r.beta.into(), r.strict.into(), r.stratmann.into()]);
    }
    t.note("delta", delta);
    let (lo, hi) = (2.0 * d - 1.0, d);
    let margin = 0.25 * (hi - lo);
    let left = (lo - margin).max(1e-9);
    let mut dashed = vec![(left, stratmann_spectrum(left, delta)?)];
    dashed.extend(rows.iter().map(|r| (r.beta, r.stratmann)));
    dashed.push((hi + margin, stratmann_spectrum(hi + margin, delta)?));
    let chart = Chart {
        title: format!("Spectra for delta = {delta}"),
        x_label: "beta".into(),
        y_label: "dimension".into(),
        x_range: (left, hi + margin),
        y_range: (0.0, 1.0),
        series: vec![
            Series { label: "comparison spectrum".into(), points: dashed, dashed: true, color: "black" },
            Series {
                label: "strict spectrum".into(),
                points: rows.iter().map(|r| (r.beta, r.strict)).collect(),
                dashed: false,
                color: "black",
            },
        ],
        guides: vec![],
        x_ticks: vec![(lo, format!("{lo:.4}")), (hi, format!("{hi:.4}"))],
        y_ticks: vec![(0.0, "0".into()), (0.5, "1/2".into()), (d, format!("{d:.4}"))],
    };
    Ok((t, Some(chart)))
}

fn frostman(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let measure = parse_weights(cfg.get("weights"))?;
    let report = frostman_sampler(
        &measure,
        cfg.uint("samples")? as usize,
        &default_radii(cfg.uint("radii")? as usize),
        cfg.seed()?,
    )?;
    let mut t = ResultTable::new("frostman", &["sample", "xi", "r", "measure", "log_ratio"]);
    for r in &report.rows {
        t.push(vec![r.sample.into(), r.xi.into(), r.r.into(), r.measure.into(), r.log_ratio.into()]);
    }
    t.note("digits", format!("{}..{}", measure.lo(), measure.hi()));
    t.note("normalizer", measure.normalizer());
    t.note("fitted_exponent", report.fitted_exponent);
    t.note("min_ratio", report.min_ratio);
    Ok(t)
}
