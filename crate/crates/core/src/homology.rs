//! Homological invariants of contact (+/-1)-surgery diagrams: linking
//! matrix, H_1 order, signature, c_1 evaluations and the d3 invariant, plus
//! the Spin^c bookkeeping used by the nonvanishing argument.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::expansion::{ContactCoefficient, ContactSurgeryPresentation};
use crate::legendrian::LegendrianKnot;
use crate::linalg::{self, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("linking matrix is singular: the surgered manifold is not a rational homology sphere")]
    NotRationalHomologySphere,

    #[error("knot type data is missing `{0}`")]
    IncompleteData(&'static str),

    #[error("{0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    pub entries: IntMatrix,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Component `i + 1` is a pushoff of component `i`, so it links `i` in
/// `tb(i)` and links every earlier component exactly as `i` does. The
/// diagonal carries the smooth coefficients `tb + (+/-1)`.
pub fn linking_matrix(p: &ContactSurgeryPresentation) -> LinkingMatrix {
    let comps = p.components();
    let n = comps.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = comps[i].smooth_framing();
        if i == 0 {
            continue;
        }
        m[i][i - 1] = comps[i - 1].tb();
        m[i - 1][i] = comps[i - 1].tb();
        for j in 0..i - 1 {
            m[i][j] = m[i - 1][j];
            m[j][i] = m[i - 1][j];
        }
    }
    LinkingMatrix { entries: m }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub determinant: BigInt,
    /// `None` when H_1 is infinite.
    pub order_h1: Option<BigInt>,
    pub signature: i64,
    /// Euler characteristic of the 4-manifold built on the diagram.
    pub euler: i64,
}

pub fn homology(m: &LinkingMatrix) -> HomologySummary {
    let determinant = linalg::determinant(&m.entries);
    let order_h1 = (!determinant.is_zero()).then(|| determinant.abs());
    HomologySummary {
        determinant,
        order_h1,
        signature: linalg::signature(&m.entries),
        euler: 1 + m.size() as i64,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinCEvaluation {
    pub rot_vector: Vec<i64>,
    /// Solution of `M x = rot_vector`.
    pub x: Vec<BigRational>,
    pub c_squared: BigRational,
}

pub fn spinc_evaluation(p: &ContactSurgeryPresentation) -> Result<SpinCEvaluation, HomologyError> {
    let m = linking_matrix(p);
    let rot_vector: Vec<i64> = p.components().iter().map(|c| c.rot()).collect();
    let x = linalg::solve(&m.entries, &rot_vector).ok_or(HomologyError::NotRationalHomologySphere)?;
    let c_squared = x
        .iter()
        .zip(&rot_vector)
        .fold(BigRational::zero(), |acc, (xi, &r)| {
            acc + xi * BigRational::from_integer(r.into())
        });
    Ok(SpinCEvaluation {
        rot_vector,
        x,
        c_squared,
    })
}

/// Exact d3 value; always has denominator dividing 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct D3Value(pub BigRational);

impl fmt::Display for D3Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// `d3 = (c^2 - 3 sigma - 2 chi) / 4 + q`, normalized so the empty diagram
/// (the standard S^3) gives `-1/2`.
pub fn d3(p: &ContactSurgeryPresentation) -> Result<D3Value, HomologyError> {
    let m = linking_matrix(p);
    let spinc = spinc_evaluation(p)?;
    let sigma = linalg::signature(&m.entries);
    let chi = 1 + p.len() as i64;
    let q = p
        .components()
        .iter()
        .filter(|c| c.coefficient == ContactCoefficient::PlusOne)
        .count() as i64;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let value = (spinc.c_squared - int(3 * sigma) - int(2 * chi)) / int(4) + int(q);
    Ok(D3Value(value))
}

/// `<c_1(s), [Sigma u D]>` for the surface capped in the surgery cobordism.
pub fn cap_evaluation(rot: i64, n: i64) -> i64 {
    rot + n - 1
}

/// Evaluations `<c_1, b>` for `b` in the basis `(beta, x_1, ..., x_{n-1})`
/// as they arise from the blown-up diagram.
pub fn standard_evaluations(n: usize, rot: i64) -> Vec<i64> {
    let mut v = vec![rot];
    v.extend(std::iter::repeat_n(rot - 1, n.saturating_sub(1)));
    v
}

/// Intersection pairing on the basis `(beta, x_1, ..., x_{n-1})`: `beta`
/// meets `x_1` once and `x_i` meets `x_{i+1}` once.
pub fn basis_change_pairing(n: usize) -> IntMatrix {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n.saturating_sub(1) {
        m[i][i + 1] = 1;
        m[i + 1][i] = 1;
    }
    m
}

/// Coordinates of `e_1 = beta - x_1`, `e_{i+1} = e_i + x_i - x_{i+1}` in the
/// basis `(beta, x_1, ..., x_{n-1})`.
pub fn exceptional_classes(n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 1..n {
        let v = match out.last() {
            None => {
                let mut v = vec![0; n];
                v[0] = 1;
                v[1] = -1;
                v
            }
            Some(prev) => {
                let mut v = prev.clone();
                v[i - 1] += 1;
                v[i] -= 1;
                v
            }
        };
        out.push(v);
    }
    out
}

fn evaluate(c1: &[i64], v: &[i64]) -> i64 {
    c1.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Checks `<c_1, e_i> = 1` for every `i` and
/// `<c_1, beta + e_1 + ... + e_{n-1}> = rot + n - 1` under the given
/// evaluations on `(beta, x_1, ..., x_{n-1})`.
pub fn basis_change_check_with(n: usize, rot: i64, c1: &[i64]) -> bool {
    if n < 2 || c1.len() != n {
        return false;
    }
    let es = exceptional_classes(n);
    let mut total = vec![0i64; n];
    total[0] = 1;
    for e in &es {
        for (t, x) in total.iter_mut().zip(e) {
            *t += x;
        }
    }
    es.iter().all(|e| evaluate(c1, e) == 1) && evaluate(c1, &total) == cap_evaluation(rot, n as i64)
}

pub fn basis_change_check(n: usize, rot: i64) -> bool {
    basis_change_check_with(n, rot, &standard_evaluations(n, rot))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjunctionResult {
    pub residue: i64,
    pub min_abs: i64,
    pub vanishes: bool,
}

/// The class of `<c_1(t), h> - 2g` modulo `4g`, with the smallest absolute
/// value of a representative. The relevant group vanishes by adjunction
/// when every representative has `|v| >= 2g`.
pub fn adjunction_congruence(g: i64, cap_value: i64) -> Result<AdjunctionResult, HomologyError> {
    if g < 1 {
        return Err(HomologyError::InvalidArgument(format!(
            "adjunction congruence needs genus >= 1, got {g}"
        )));
    }
    let m = 4 * g;
    let residue = (cap_value + 2 * g).rem_euclid(m);
    let min_abs = residue.min(m - residue);
    Ok(AdjunctionResult {
        residue,
        min_abs,
        vanishes: min_abs >= 2 * g,
    })
}

/// Sufficient condition for the transverse invariant to survive at framing
/// `tb + n`: `tb + n = 2g`, `sl = 2g - 1`, and the transverse pushoff is a
/// binding (asserted by the caller).
pub fn nonvanishing_criterion(
    knot: &LegendrianKnot,
    n: i64,
    binding: bool,
) -> Result<bool, HomologyError> {
    let g = knot
        .knot
        .as_deref()
        .and_then(|k| k.genus)
        .ok_or(HomologyError::IncompleteData("genus"))? as i64;
    if g < 1 {
        return Ok(false);
    }
    let sl = knot.transverse_pushoff().sl;
    Ok(binding && knot.tb + n == 2 * g && sl == 2 * g - 1)
}
