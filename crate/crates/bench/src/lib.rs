//! Inputs shared by the benchmarks.

use contact_surgery::open_book::Letter;
use contact_surgery::{LegendrianKnot, MonodromyWord, Rational, SurfaceModel};

/// Negative coefficient whose expansion has `len` terms, all equal to `a`.
pub fn chain_coefficient(a: i64, len: usize) -> Rational {
    let cf = contact_surgery::ContinuedFraction::from_terms(vec![a; len]).expect("terms >= 2");
    Rational::from_integer(1) - cf.evaluate()
}

pub fn unknot() -> LegendrianKnot {
    LegendrianKnot::new(-1, 0)
}

/// Symmetric tridiagonal matrix with `-3` on the diagonal and `1` beside it.
pub fn tridiagonal(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => -3,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// A word of `len` letters cycling through the curves of `s`.
pub fn cycling_word(s: &SurfaceModel, len: usize) -> MonodromyWord {
    let names: Vec<&String> = s.curves().keys().collect();
    MonodromyWord::new(
        (0..len)
            .map(|i| {
                let c = names[i % names.len()];
                if i % 3 == 2 {
                    Letter::neg(c)
                } else {
                    Letter::pos(c)
                }
            })
            .collect(),
    )
}
