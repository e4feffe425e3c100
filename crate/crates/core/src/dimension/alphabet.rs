use std::fmt;

use crate::error::{domain, Result};

/// Number of digits summed directly past the lower bound of an unbounded
/// alphabet before the analytic tail takes over.
pub const DEFAULT_TRUNCATION_SPAN: u64 = 200;

/// A digit range `{N, …, M}` with `M` possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitAlphabet {
    lower: u64,
    upper: Option<u64>,
    truncation: u64,
    tail_correction: bool,
}

impl DigitAlphabet {
    pub fn finite(lower: u64, upper: u64) -> Result<Self> {
        if lower < 1 || upper < lower {
            return domain(format!("invalid digit range {lower}..={upper}"));
        }
        Ok(DigitAlphabet { lower, upper: Some(upper), truncation: upper, tail_correction: false })
    }

    /// `{N, N+1, …}`, summed directly up to `N + 200` with an analytic tail.
    pub fn at_least(lower: u64) -> Result<Self> {
        if lower < 1 {
            return domain("digits start at 1");
        }
        Ok(DigitAlphabet {
            lower,
            upper: None,
            truncation: lower + DEFAULT_TRUNCATION_SPAN,
            tail_correction: true,
        })
    }

    /// Changes the last directly summed digit of an unbounded alphabet.
    pub fn with_truncation(mut self, truncation: u64, tail_correction: bool) -> Result<Self> {
        if self.upper.is_some() {
            return domain("only unbounded alphabets are truncated");
        }
        if truncation < self.lower {
            return domain(format!("truncation {truncation} below lower digit {}", self.lower));
        }
        self.truncation = truncation;
        self.tail_correction = tail_correction;
        Ok(self)
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> Option<u64> {
        self.upper
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_some()
    }

    /// Last digit summed term by term.
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn tail_correction(&self) -> bool {
        self.tail_correction
    }

    /// Digits summed term by term.
    pub fn direct_digits(&self) -> std::ops::RangeInclusive<u64> {
        self.lower..=self.truncation
    }

    pub fn contains(&self, a: u64) -> bool {
        a >= self.lower && self.upper.is_none_or(|m| a <= m)
    }
}

impl fmt::Display for DigitAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(m) => write!(f, "{{{}..{}}}", self.lower, m),
            None => write!(f, "{{{}..}}", self.lower),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert!(DigitAlphabet::finite(0, 3).is_err());
        assert!(DigitAlphabet::finite(4, 3).is_err());
        let a = DigitAlphabet::at_least(5).unwrap();
        assert_eq!(a.direct_digits(), 5..=205);
        assert!(a.contains(10_000) && !a.contains(4));
        assert!(a.with_truncation(4, true).is_err());
        assert_eq!(a.to_string(), "{5..}");
        assert_eq!(DigitAlphabet::finite(1, 2).unwrap().to_string(), "{1..2}");
    }
}
