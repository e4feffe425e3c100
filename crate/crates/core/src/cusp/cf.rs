use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// A regular continued fraction `a₀ + [a₁, a₂, …]` whose digits are either a
/// finite list or a finite prefix followed by a repeating block.
///
/// Expansions computed from floating point inputs carry a reliability
/// horizon: digits past it are not trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    integer_part: i64,
    prefix: Vec<u64>,
    period: Vec<u64>,
    reliable: Option<usize>,
}

impl ContinuedFraction {
    /// A terminating expansion `[a₁, …, a_k]` of a number in `(0, 1]`.
    pub fn finite(digits: Vec<u64>) -> Result<Self> {
        Self::with_parts(0, digits, Vec::new())
    }

    /// An eventually periodic expansion `[prefix, period, period, …]`.
    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return domain("periodic block must not be empty");
        }
        Self::with_parts(0, prefix, period)
    }

    pub fn with_parts(integer_part: i64, prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if prefix.iter().chain(period.iter()).any(|&a| a == 0) {
            return domain("continued fraction digits must be at least 1");
        }
        Ok(ContinuedFraction { integer_part, prefix, period, reliable: None })
    }

    /// Exact expansion of `p/q` by the Euclidean algorithm.
    pub fn from_rational(p: &BigInt, q: &BigInt) -> Result<Self> {
        if q.is_zero() {
            return domain("denominator is zero");
        }
        let (mut num, mut den) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
        let a0 = num.div_floor(&den);
        let integer_part =
            a0.to_i64().ok_or_else(|| Error::Domain("integer part does not fit in 64 bits".into()))?;
        num -= &a0 * &den;
        let mut digits = Vec::new();
        while !num.is_zero() {
            let (a, r) = den.div_rem(&num);
            digits.push(a.to_u64().ok_or_else(|| Error::Domain("digit does not fit in 64 bits".into()))?);
            den = num;
            num = r;
        }
        Self::with_parts(integer_part, digits, Vec::new())
    }

    /// Exact periodic expansion of the quadratic surd `(√d + r)/s`.
    pub fn from_quadratic(d: i64, r: i64, s: i64) -> Result<Self> {
        if s == 0 {
            return domain("denominator is zero");
        }
        if d < 0 {
            return domain("radicand must be non-negative");
        }
        let mut dd = BigInt::from(d);
        let root = dd.sqrt();
        if &root * &root == dd {
            return Self::from_rational(&(root + r), &BigInt::from(s));
        }
        let mut p = BigInt::from(r);
        let mut q = BigInt::from(s);
        // Arrange q | (d − p²) so that every later state stays integral.
        if !((&dd - &p * &p) % &q).is_zero() {
            let qa = q.abs();
            p *= &qa;
            dd *= &q * &q;
            q *= &qa;
        }
        let sqrt_floor = dd.sqrt();
        let mut digits: Vec<u64> = Vec::new();
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut integer_part = None;
        loop {
            if let Some(a0) = integer_part {
                if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                    let period = digits.split_off(start);
                    return Self::with_parts(a0, digits, period);
                }
                seen.insert((p.clone(), q.clone()), digits.len());
            }
            let top = if q.is_positive() { &p + &sqrt_floor } else { &p + &sqrt_floor + 1 };
            let a = top.div_floor(&q);
            if integer_part.is_none() {
                integer_part = Some(
                    a.to_i64().ok_or_else(|| Error::Domain("integer part does not fit in 64 bits".into()))?,
                );
            } else {
                digits.push(a.to_u64().ok_or_else(|| Error::Domain("digit does not fit in 64 bits".into()))?);
            }
            p = &a * &q - &p;
            q = (&dd - &p * &p) / &q;
        }
    }

    pub fn integer_part(&self) -> i64 {
        self.integer_part
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of digits after the integer part, `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        if self.is_terminating() {
            Some(self.prefix.len())
        } else {
            None
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Number of digits that may be used: the length for exact encodings,
    /// capped by the reliability horizon for floating expansions.
    pub fn reliable_len(&self) -> Option<usize> {
        match (self.len(), self.reliable) {
            (Some(n), Some(r)) => Some(n.min(r)),
            (Some(n), None) => Some(n),
            (None, r) => r,
        }
    }

    /// The digit `a_k`, `k ≥ 1`.
    pub fn digit(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        let i = k - 1;
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// The first `n` digits (fewer if the expansion terminates).
    pub fn digits(&self, n: usize) -> Vec<u64> {
        (1..=n).map_while(|k| self.digit(k)).collect()
    }

    /// Floating point value, using at most `depth` digits.
    pub fn value(&self, depth: usize) -> f64 {
        let ds = self.digits(depth);
        let mut t = 0.0;
        for &a in ds.iter().rev() {
            t = 1.0 / (a as f64 + t);
        }
        self.integer_part as f64 + t
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; ", self.integer_part)?;
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        f.write_str(&join(&self.prefix))?;
        if !self.period.is_empty() {
            if !self.prefix.is_empty() {
                f.write_str(",")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        Ok(())
    }
}

/// Gauss-map digit extraction for a floating point `x ∈ (0, 1)`.
///
/// A running bound on the absolute error of the iterates is kept; the first
/// digit whose floor is not determined by that bound ends the reliable
/// prefix. Digits past the horizon are still returned, flagged through
/// [`ContinuedFraction::reliable_len`].
pub fn cf_expand(x: f64, n: usize) -> Result<ContinuedFraction> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("{x} is not in (0, 1)"));
    }
    if n == 0 {
        return domain("depth must be at least 1");
    }
    let mut digits = Vec::with_capacity(n);
    let mut reliable = None;
    let mut t = x;
    let mut err = x * f64::EPSILON;
    while digits.len() < n && t > 0.0 {
        let y = 1.0 / t;
        let a = y.floor();
        if reliable.is_none() {
            let lo = 1.0 / (t + err);
            let hi = if t > err { 1.0 / (t - err) } else { f64::INFINITY };
            if lo.floor() != hi.floor() || a >= 2f64.powi(53) {
                reliable = Some(digits.len());
            }
        }
        if a >= u64::MAX as f64 {
            break;
        }
        digits.push(a as u64);
        err = err / (t * t) + y * f64::EPSILON;
        t = y - a;
    }
    let mut cf = ContinuedFraction::finite(digits)?;
    cf.reliable = reliable;
    Ok(cf)
}

/// Exact expansion of a rational `p/q ∈ (0, 1)`.
pub fn cf_expand_rational(p: &BigInt, q: &BigInt) -> Result<ContinuedFraction> {
    if q.is_zero() {
        return domain("denominator is zero");
    }
    let positive = p.is_positive() == q.is_positive() && !p.is_zero();
    if !positive || p.abs() >= q.abs() {
        return domain(format!("{p}/{q} is not in (0, 1)"));
    }
    ContinuedFraction::from_rational(p, q)
}

/// A convergent `p_n/q_n` with `q_n ≥ 1` and `gcd(p_n, q_n) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn to_f64(&self) -> f64 {
        // Scale both parts down together so huge convergents stay finite.
        let bits = self.q.bits().max(self.p.bits());
        let shift = bits.saturating_sub(1000);
        let p = (&self.p >> shift).to_f64().unwrap_or(f64::NAN);
        let q = (&self.q >> shift).to_f64().unwrap_or(f64::NAN);
        p / q
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The convergents `p_1/q_1, …, p_n/q_n`, including the integer part.
pub fn convergents(cf: &ContinuedFraction, n: usize) -> Result<Vec<Convergent>> {
    if let Some(len) = cf.len() {
        if n > len {
            return Err(Error::Insufficient(format!("{n} convergents requested, {len} digits available")));
        }
    }
    let a0 = BigInt::from(cf.integer_part);
    let (mut p_prev, mut p) = (BigInt::one(), a0);
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let a = BigInt::from(cf.digit(k).expect("length checked"));
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Convergent { p: p.clone(), q: q.clone() });
    }
    Ok(out)
}
