//! Exact linear algebra over the rationals for small symmetric integer
//! matrices. No floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `m x = b` exactly; `None` when `m` is singular.
pub fn solve(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a = to_rational(m);
    for (row, &rhs) in a.iter_mut().zip(b) {
        row.push(BigRational::from_integer(rhs.into()));
    }
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let factor = a[i][k].clone();
                for j in k..=n {
                    let d = &factor * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric matrix by congruence diagonalization.
///
/// Pivots on a nonzero diagonal entry when one exists. Otherwise a nonzero
/// off-diagonal `a_ij` is moved onto the diagonal by adding row/column `j` to
/// row/column `i`, making `a_ii = 2 a_ij`. An all-zero remainder contributes
/// only zeros.
pub fn inertia(m: &[Vec<i64>]) -> Inertia {
    let mut a = to_rational(m);
    let mut out = Inertia::default();
    let mut live: Vec<usize> = (0..a.len()).collect();
    while !live.is_empty() {
        let pivot = match live.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => live[p],
            None => {
                let pair = live.iter().find_map(|&i| {
                    live.iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else {
                    out.zero += live.len();
                    break;
                };
                let n = a.len();
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        live.retain(|&i| i != pivot);
        for &i in &live {
            if a[i][pivot].is_zero() {
                continue;
            }
            let factor = &a[i][pivot] / &d;
            for &j in &live {
                let v = &factor * &a[pivot][j];
                a[i][j] -= v;
            }
        }
        for &i in &live {
            a[i][pivot] = BigRational::zero();
            a[pivot][i] = BigRational::zero();
        }
    }
    out
}

pub fn signature(m: &[Vec<i64>]) -> i64 {
    inertia(m).signature()
}

pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}
