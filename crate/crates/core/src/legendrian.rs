//! Classical-invariant calculus for oriented Legendrian and transverse knots.
//!
//! Knots are records of classical invariants only. Negative stabilization
//! lowers both `tb` and `rot` by one, so the self-linking number
//! `sl = tb - rot` of the transverse pushoff is unchanged by it.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::KnotType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KnotError {
    #[error("Legendrian knot with tb {tb}, rot {rot} is not realizable: {reason}")]
    NotRealizable { tb: i64, rot: i64, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StabSign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
}

impl StabSign {
    pub fn symbol(self) -> char {
        match self {
            StabSign::Negative => '-',
            StabSign::Positive => '+',
        }
    }
}

/// A framing of a null-homologous knot, as an offset from the Seifert framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Framing(pub i64);

impl Framing {
    pub const SEIFERT: Framing = Framing(0);

    pub fn offset(self) -> i64 {
        self.0
    }
}

impl Add<i64> for Framing {
    type Output = Framing;
    fn add(self, k: i64) -> Framing {
        Framing(self.0 + k)
    }
}

impl Sub<i64> for Framing {
    type Output = Framing;
    fn sub(self, k: i64) -> Framing {
        Framing(self.0 - k)
    }
}

impl Sub for Framing {
    type Output = i64;
    fn sub(self, other: Framing) -> i64 {
        self.0 - other.0
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "f_S"),
            k if k > 0 => write!(f, "f_S + {k}"),
            k => write!(f, "f_S - {}", -k),
        }
    }
}

/// Findings of the Bennequin-type bounds. Lints at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundLint {
    TbAboveMax { tb: i64, max_tb: i64 },
    SlAboveMax { sl: i64, max_sl: i64 },
    Bennequin { tb: i64, rot: i64, bound: i64 },
    Parity { tb: i64, rot: i64 },
}

impl fmt::Display for BoundLint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundLint::TbAboveMax { tb, max_tb } => write!(f, "tb {tb} exceeds the catalog maximum {max_tb}"),
            BoundLint::SlAboveMax { sl, max_sl } => write!(f, "sl {sl} exceeds the catalog maximum {max_sl}"),
            BoundLint::Bennequin { tb, rot, bound } => {
                write!(f, "tb + |rot| = {} exceeds 2g - 1 = {bound}", tb + rot.abs())
            }
            BoundLint::Parity { tb, rot } => write!(f, "tb {tb} and rot {rot} have equal parity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendrianKnot {
    pub tb: i64,
    pub rot: i64,
    pub knot: Option<Arc<KnotType>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransverseKnot {
    pub sl: i64,
    pub knot: Option<Arc<KnotType>>,
}

impl LegendrianKnot {
    /// A knot with no knot-type data attached.
    pub fn new(tb: i64, rot: i64) -> Self {
        LegendrianKnot { tb, rot, knot: None }
    }

    pub fn with_type(tb: i64, rot: i64, knot: Arc<KnotType>) -> Self {
        LegendrianKnot {
            tb,
            rot,
            knot: Some(knot),
        }
    }

    pub fn unknot() -> Self {
        Self::with_type(-1, 0, Arc::new(KnotType::unknot()))
    }

    pub fn stabilize(&self, sign: StabSign) -> Self {
        let drot = match sign {
            StabSign::Negative => -1,
            StabSign::Positive => 1,
        };
        LegendrianKnot {
            tb: self.tb - 1,
            rot: self.rot + drot,
            knot: self.knot.clone(),
        }
    }

    pub fn stabilize_times(&self, sign: StabSign, times: usize) -> Self {
        (0..times).fold(self.clone(), |k, _| k.stabilize(sign))
    }

    pub fn reverse_orientation(&self) -> Self {
        LegendrianKnot {
            tb: self.tb,
            rot: -self.rot,
            knot: self.knot.clone(),
        }
    }

    pub fn transverse_pushoff(&self) -> TransverseKnot {
        TransverseKnot {
            sl: self.tb - self.rot,
            knot: self.knot.clone(),
        }
    }

    /// The contact framing as a framing of the knot type.
    pub fn contact_framing(&self) -> Framing {
        Framing(self.tb)
    }

    pub fn lints(&self) -> Vec<BoundLint> {
        let mut out = Vec::new();
        if (self.tb + self.rot).rem_euclid(2) == 0 {
            out.push(BoundLint::Parity {
                tb: self.tb,
                rot: self.rot,
            });
        }
        let Some(k) = self.knot.as_deref() else {
            return out;
        };
        if let Some(max_tb) = k.max_tb {
            if self.tb > max_tb {
                out.push(BoundLint::TbAboveMax { tb: self.tb, max_tb });
            }
        }
        if let Some(max_sl) = k.max_sl {
            let sl = self.tb - self.rot;
            if sl > max_sl {
                out.push(BoundLint::SlAboveMax { sl, max_sl });
            }
        }
        if let Some(g) = k.genus {
            let bound = 2 * g as i64 - 1;
            if self.tb + self.rot.abs() > bound {
                out.push(BoundLint::Bennequin {
                    tb: self.tb,
                    rot: self.rot,
                    bound,
                });
            }
        }
        out
    }
}

impl fmt::Display for LegendrianKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(tb {}, rot {})", self.tb, self.rot)
    }
}

impl TransverseKnot {
    pub fn new(sl: i64) -> Self {
        TransverseKnot { sl, knot: None }
    }

    pub fn with_type(sl: i64, knot: Arc<KnotType>) -> Self {
        TransverseKnot {
            sl,
            knot: Some(knot),
        }
    }

    pub fn lints(&self) -> Vec<BoundLint> {
        let mut out = Vec::new();
        if self.sl.rem_euclid(2) == 0 {
            out.push(BoundLint::Parity { tb: self.sl, rot: 0 });
        }
        if let Some(max_sl) = self.knot.as_deref().and_then(|k| k.max_sl) {
            if self.sl > max_sl {
                out.push(BoundLint::SlAboveMax {
                    sl: self.sl,
                    max_sl,
                });
            }
        }
        out
    }

    /// A Legendrian approximation with the requested `tb`; its rotation
    /// number is forced by `sl = tb - rot`.
    pub fn legendrian_approximation(&self, tb_cap: i64) -> Result<LegendrianKnot, KnotError> {
        let rot = tb_cap - self.sl;
        let candidate = LegendrianKnot {
            tb: tb_cap,
            rot,
            knot: self.knot.clone(),
        };
        let fail = |reason: String| KnotError::NotRealizable {
            tb: tb_cap,
            rot,
            reason,
        };
        for lint in candidate.lints() {
            match lint {
                BoundLint::TbAboveMax { max_tb, .. } => {
                    return Err(fail(format!("tb exceeds max tb {max_tb}")))
                }
                BoundLint::Bennequin { bound, .. } => {
                    return Err(fail(format!("tb + |rot| exceeds 2g - 1 = {bound}")))
                }
                BoundLint::SlAboveMax { max_sl, .. } => {
                    return Err(fail(format!("sl exceeds max sl {max_sl}")))
                }
                BoundLint::Parity { .. } => {}
            }
        }
        Ok(candidate)
    }
}
