//! Boundary slopes of convex tori and the integral 2x2 gluing maps that act
//! on them.

use std::fmt;

use num_traits::{Signed, Zero};
use crate::continued_fraction::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Rational),
    /// `1/0`, remembering which end of the real line it was approached from.
    Infinite { negative: bool },
}

impl Slope {
    /// The slope `p/q`, with `q = 0` giving an infinite slope signed by `p`.
    pub fn from_fraction(p: i64, q: i64) -> Slope {
        if q == 0 {
            Slope::Infinite { negative: p < 0 }
        } else {
            Slope::Finite(Rational::new(p, q))
        }
    }

    pub fn integer(n: i64) -> Slope {
        Slope::Finite(Rational::from_integer(n))
    }

    /// Effect of `h` meridional twists: `s -> s / (1 + s h)`.
    pub fn twist(self, h: i64) -> Slope {
        match self {
            Slope::Finite(s) => {
                let den = Rational::from_integer(1) + s * h;
                if den.is_zero() {
                    Slope::Infinite {
                        negative: s.is_positive() != (h > 0),
                    }
                } else {
                    Slope::Finite(s / den)
                }
            }
            Slope::Infinite { negative } if h == 0 => Slope::Infinite { negative },
            Slope::Infinite { .. } => Slope::Finite(Rational::new(1, h)),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => f.write_str(&format_rational(s)),
            Slope::Infinite { negative: true } => f.write_str("-inf"),
            Slope::Infinite { negative: false } => f.write_str("inf"),
        }
    }
}

/// Brings slope `n >= 1` into the range `[-inf, -1)` by twisting.
///
/// On reciprocals a twist is translation by `h`, so the unique `h` landing
/// `1/n + h` in `(-1, 0]` is `floor(-1/n) = -1`. This gives `-n/(n-1)`, and
/// `-inf` for `n = 1`.
pub fn normalize_slope(n: i64) -> Slope {
    assert!(n >= 1, "slope normalization needs n >= 1");
    let recip = Rational::new(1, n);
    let h = (-recip).floor().to_integer();
    Slope::integer(n).twist(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let [[a, b], [c, d]] = self.0;
        match self.det() {
            1 => Some(Mat2([[d, -b], [-c, a]])),
            -1 => Some(Mat2([[-d, b], [c, -a]])),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = self.0;
        let b = other.0;
        let mut out = [[0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.0;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }
}

/// The gluing map for integral surgery with coefficient `n`.
pub fn surgery_gluing(n: i64) -> Mat2 {
    Mat2([[n, -1], [1, 0]])
}

/// The curve glued to the meridian `(0, 1)` under [`surgery_gluing`].
pub fn pullback_of_meridian(n: i64) -> (i64, i64) {
    surgery_gluing(n)
        .inverse()
        .expect("gluing map is unimodular")
        .apply((0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_slopes() {
        assert_eq!(normalize_slope(2), Slope::integer(-2));
        assert_eq!(normalize_slope(3), Slope::Finite(Rational::new(-3, 2)));
        assert_eq!(normalize_slope(1), Slope::Infinite { negative: true });
        assert_eq!(normalize_slope(1).to_string(), "-inf");
    }

    #[test]
    fn pullback() {
        for n in 1..=10 {
            assert_eq!(pullback_of_meridian(n), (1, n));
        }
    }

    #[test]
    fn change_of_coordinates_identity() {
        for n in 1..=10 {
            let lhs = Mat2([[n + 1, -1], [1, 0]])
                .inverse()
                .unwrap()
                .mul(&Mat2([[0, 1], [1, 1]]));
            assert_eq!(lhs, Mat2([[1, 1], [n + 1, n]]));
        }
    }

    #[test]
    fn twisting_infinity() {
        assert_eq!(
            Slope::Infinite { negative: false }.twist(-2),
            Slope::Finite(Rational::new(-1, 2))
        );
    }
}
