//! Negative ("Hirzebruch-Jung") continued fractions
//! `[a0, ..., am] = a0 - 1/(a1 - 1/(... - 1/am))` with every `ai >= 2`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContinuedFractionError {
    #[error("negative continued fractions are defined only for x > 1, got {0}")]
    OutOfRange(Rational),

    #[error("continued fraction terms must all be >= 2, got {0:?}")]
    InvalidTerms(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn from_terms(terms: Vec<i64>) -> Result<Self, ContinuedFractionError> {
        if terms.is_empty() || terms.iter().any(|&a| a < 2) {
            return Err(ContinuedFractionError::InvalidTerms(terms));
        }
        Ok(ContinuedFraction { terms })
    }

    /// The unique expansion of `x > 1` with all terms `>= 2`; `a0 = ceil(x)`.
    pub fn expand(x: Rational) -> Result<Self, ContinuedFractionError> {
        if x <= Rational::one() {
            return Err(ContinuedFractionError::OutOfRange(x));
        }
        let mut terms = Vec::new();
        let mut rest = x;
        loop {
            let a = rest.ceil();
            terms.push(a.to_integer());
            let gap = a - rest;
            if gap.is_zero() {
                break;
            }
            rest = gap.recip();
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact evaluation from the innermost term outwards.
    pub fn evaluate(&self) -> Rational {
        let mut it = self.terms.iter().rev();
        let mut acc = Rational::from_integer(*it.next().expect("nonempty"));
        for &a in it {
            acc = Rational::from_integer(a) - acc.recip();
        }
        acc
    }

    /// Number of distinct stabilization choices, `prod (ai - 1)`.
    pub fn choice_count(&self) -> u64 {
        self.terms.iter().map(|&a| (a - 1) as u64).product()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Parses `"p/q"` or an integer into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if q == 0 {
        return None;
    }
    let g = p.gcd(&q);
    let (p, q) = if q < 0 { (-p / g, -q / g) } else { (p / g, q / g) };
    Some(Rational::new_raw(p, q))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn integer_case() {
        assert_eq!(ContinuedFraction::expand(q(2, 1)).unwrap().terms(), &[2]);
    }

    #[test]
    fn integer_surgery_family() {
        assert_eq!(ContinuedFraction::expand(q(7, 3)).unwrap().terms(), &[3, 2, 2]);
    }

    #[test]
    fn seventeen_fifths() {
        // frozen from a brute-force search in tests/expansion.rs
        assert_eq!(ContinuedFraction::expand(q(17, 5)).unwrap().terms(), &[4, 2, 3]);
    }

    #[test]
    fn rejects_out_of_range() {
        for x in [q(1, 1), q(1, 2), q(-3, 1), q(0, 1)] {
            assert_eq!(
                ContinuedFraction::expand(x),
                Err(ContinuedFractionError::OutOfRange(x))
            );
        }
    }

    #[test]
    fn invalid_terms() {
        assert!(ContinuedFraction::from_terms(vec![]).is_err());
        assert!(ContinuedFraction::from_terms(vec![3, 1]).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3"), Some(q(3, 1)));
        assert_eq!(parse_rational("-4/6"), Some(q(-2, 3)));
        assert_eq!(parse_rational("4/-6"), Some(q(-2, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&q(-1, 2)), "-1/2");
        assert_eq!(format_rational(&q(4, 2)), "2");
    }
}
