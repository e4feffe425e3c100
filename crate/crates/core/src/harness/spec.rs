//! Text forms of numbers, growth sequences and digit weights.

use num_bigint::BigInt;

use super::{usage, CliError};
use crate::cusp::{cf_expand, ContinuedFraction};
use crate::dimension::{CylinderMeasure, GrowthSequence};

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse::<T>().map_err(|_| CliError::Usage(format!("{what}: cannot parse {s:?}")))
}

fn digit_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| num::<u64>(t, "digit")).collect()
}

/// A number given as
///
/// * `p/q`, an exact rational;
/// * `sqrt:D`, `sqrt:D+r`, `sqrt:D-r/s`, … for `(√D ± r)/s`;
/// * a digit list such as `3,3`, `(2)`, `1,1,(100,1)` or `2; 1,(2)`, with
///   the repeating block in parentheses and an optional integer part
///   before `;`;
/// * a decimal in `(0, 1)`, expanded in floating point.
pub fn parse_number(spec: &str) -> Result<ContinuedFraction, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return usage("empty number");
    }
    if let Some(rest) = spec.strip_prefix("sqrt:") {
        let (head, s) = match rest.split_once('/') {
            Some((h, s)) => (h, num::<i64>(s, "denominator")?),
            None => (rest, 1),
        };
        let split = head.char_indices().skip(1).find(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i);
        let (d, r) = match split {
            Some(i) => (num::<i64>(&head[..i], "radicand")?, num::<i64>(&head[i..], "offset")?),
            None => (num::<i64>(head, "radicand")?, 0),
        };
        return Ok(ContinuedFraction::from_quadratic(d, r, s)?);
    }
    if spec.contains(['(', ',', ';']) {
        let (a0, body) = match spec.split_once(';') {
            Some((a0, body)) => (num::<i64>(a0, "integer part")?, body),
            None => (0, spec),
        };
        let (prefix, period) = match body.split_once('(') {
            Some((prefix, tail)) => {
                let Some(block) = tail.trim().strip_suffix(')') else {
                    return usage(format!("unbalanced parentheses in {spec:?}"));
                };
                (digit_list(prefix)?, digit_list(block)?)
            }
            None => (digit_list(body)?, Vec::new()),
        };
        if body.contains('(') && period.is_empty() {
            return usage("empty repeating block");
        }
        return Ok(ContinuedFraction::with_parts(a0, prefix, period)?);
    }
    if let Some((p, q)) = spec.split_once('/') {
        let p = num::<BigInt>(p, "numerator")?;
        let q = num::<BigInt>(q, "denominator")?;
        if q == BigInt::from(0) {
            return usage(format!("{spec}: zero denominator"));
        }
        return Ok(ContinuedFraction::from_rational(&p, &q)?);
    }
    if spec.contains(['.', 'e', 'E']) {
        let x = num::<f64>(spec, "decimal")?;
        return Ok(cf_expand(x, 64)?);
    }
    let n = num::<BigInt>(spec, "integer")?;
    Ok(ContinuedFraction::from_rational(&n, &BigInt::from(1))?)
}

/// `loggeo:α[:b]`, `geo:c`, `poly:p`, `lacunary:ω` or `list:s_1,s_2,…`.
pub fn parse_generator(spec: &str, len: usize) -> Result<GrowthSequence, CliError> {
    let (kind, args) = spec.trim().split_once(':').unwrap_or((spec.trim(), ""));
    let args: Vec<&str> = args.split(':').collect();
    let seq = match (kind, args.as_slice()) {
        ("loggeo", [alpha]) => GrowthSequence::log_geometric(num(alpha, "α")?, 2.0, len),
        ("loggeo", [alpha, base]) => GrowthSequence::log_geometric(num(alpha, "α")?, num(base, "base")?, len),
        ("geo", [c]) => GrowthSequence::geometric(num(c, "ratio")?, len),
        ("poly", [p]) => GrowthSequence::polynomial(num(p, "power")?, len),
        ("lacunary", [w]) => GrowthSequence::lacunary(num(w, "ω")?, len),
        ("list", [values]) => {
            let v: Vec<f64> = values.split(',').map(|t| num::<f64>(t, "term")).collect::<Result<_, _>>()?;
            GrowthSequence::explicit(&v)
        }
        _ => return usage(format!("unknown generator {spec:?}")),
    };
    Ok(seq?)
}

/// `good:τ:κ`, `reciprocal:lo:hi`, `single:a` or `list:lo:w_lo,w_lo+1,…`.
pub fn parse_weights(spec: &str) -> Result<CylinderMeasure, CliError> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let m = match parts.as_slice() {
        ["good", tau, kappa] => CylinderMeasure::good(num(tau, "τ")?, num(kappa, "κ")?),
        ["reciprocal", lo, hi] => {
            CylinderMeasure::reciprocal(num(lo, "lower digit")?, num(hi, "upper digit")?)
        }
        ["single", a] => CylinderMeasure::single(num(a, "digit")?),
        ["list", lo, w] => {
            let w: Vec<f64> = w.split(',').map(|t| num::<f64>(t, "weight")).collect::<Result<_, _>>()?;
            CylinderMeasure::from_weights(num(lo, "lower digit")?, w)
        }
        _ => return usage(format!("unknown weights {spec:?}")),
    };
    Ok(m?)
}

/// Comma-separated lower digit bounds.
pub fn parse_n_list(spec: &str) -> Result<Vec<u64>, CliError> {
    let v = digit_list(spec)?;
    if v.is_empty() {
        return usage("empty list of N");
    }
    Ok(v)
}
