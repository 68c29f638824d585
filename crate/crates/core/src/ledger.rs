//! Per-framing bookkeeping for the transverse contact invariant.
//!
//! The invariant at framing `f` maps to the invariant at every `g <= f`, so
//! a nonzero component forces nonzero components above it and a vanishing
//! component forces vanishing below it. The ledger only ever stores the two
//! resulting thresholds, which makes the closure trivially idempotent and
//! independent of the order facts arrive in.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{CatalogError, KnotType};
use crate::continued_fraction::Rational;
use crate::legendrian::{Framing, LegendrianKnot, TransverseKnot};
use crate::open_book::{vanishing_by_binding, BindingVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Zero,
    NonZero,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Zero => "zero",
            Status::NonZero => "nonzero",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error(
        "contradiction at {framing}: zero by `{zero_rule}` (up to {zero_bound}), nonzero by `{nonzero_rule}` (from {nonzero_from})"
    )]
    Contradiction {
        framing: Framing,
        zero_bound: Bound,
        zero_rule: String,
        nonzero_from: Framing,
        nonzero_rule: String,
    },

    #[error("status of a fact must be zero or nonzero")]
    UnknownFact,

    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Upper end of the vanishing range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Bound {
    Finite(Framing),
    PlusInfinity,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PlusInfinity => f.write_str("+inf"),
        }
    }
}

impl Bound {
    fn covers(self, f: Framing) -> bool {
        match self {
            Bound::Finite(b) => f <= b,
            Bound::PlusInfinity => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Fact {
    /// Vanishes at every framing `<= bound`.
    Zero { bound: Bound, rule: String },
    /// Nonzero at every framing `>= from`.
    NonZero { from: Framing, rule: String },
}

impl Fact {
    pub fn rule(&self) -> &str {
        match self {
            Fact::Zero { rule, .. } | Fact::NonZero { rule, .. } => rule,
        }
    }
}

pub mod rules {
    pub const FRAMING_BELOW_TB: &str = "framing-below-tb";
    pub const POSITIVE_STABILIZATION: &str = "positive-stabilization";
    pub const OVERTWISTED_COMPLEMENT: &str = "overtwisted-complement";
    pub const BINDING_VANISHING: &str = "binding-vanishing";
    pub const BINDING_MAX_SL: &str = "binding-max-sl";
    pub const SLICE_GENUS_TB: &str = "slice-genus-tb";
    pub const STEIN_UNKNOT: &str = "stein-unknot";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubjectKnot {
    Legendrian(LegendrianKnot),
    Transverse(TransverseKnot),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    StandardS3,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subject {
    pub knot: SubjectKnot,
    pub ambient: Ambient,
    /// The Legendrian subject is a positive stabilization.
    pub positive_stabilization: bool,
    /// Overtwisted complement or positive Giroux torsion in the complement.
    pub complement_overtwisted: bool,
    /// The (transverse pushoff of the) knot is a binding of an open book for
    /// the ambient contact structure.
    pub binding: bool,
    /// Contact invariant of the ambient contact structure.
    pub ambient_invariant: Status,
    pub b1: Option<u32>,
}

impl Subject {
    pub fn legendrian(knot: LegendrianKnot) -> Self {
        Subject {
            knot: SubjectKnot::Legendrian(knot),
            ambient: Ambient::StandardS3,
            positive_stabilization: false,
            complement_overtwisted: false,
            binding: false,
            ambient_invariant: Status::NonZero,
            b1: Some(0),
        }
    }

    pub fn transverse(knot: TransverseKnot) -> Self {
        Subject {
            knot: SubjectKnot::Transverse(knot),
            ..Subject::legendrian(LegendrianKnot::new(0, 0))
        }
    }

    pub fn binding(mut self) -> Self {
        self.binding = true;
        self
    }

    fn knot_type(&self) -> Option<&KnotType> {
        match &self.knot {
            SubjectKnot::Legendrian(k) => k.knot.as_deref(),
            SubjectKnot::Transverse(t) => t.knot.as_deref(),
        }
    }

    fn sl(&self) -> i64 {
        match &self.knot {
            SubjectKnot::Legendrian(k) => k.transverse_pushoff().sl,
            SubjectKnot::Transverse(t) => t.sl,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerState {
    pub subject: Option<Subject>,
    facts: BTreeSet<Fact>,
    zero: Option<(Bound, String)>,
    nonzero: Option<(Framing, String)>,
}

impl LedgerState {
    pub fn new(subject: Option<Subject>) -> Self {
        LedgerState {
            subject,
            facts: BTreeSet::new(),
            zero: None,
            nonzero: None,
        }
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    /// Largest framing known to vanish, with the rule establishing it. Ties
    /// go to the lexicographically smallest rule id.
    pub fn zero_bound(&self) -> Option<(Bound, &str)> {
        self.zero.as_ref().map(|(b, r)| (*b, r.as_str()))
    }

    /// Smallest framing known to be nonzero.
    pub fn nonzero_from(&self) -> Option<(Framing, &str)> {
        self.nonzero.as_ref().map(|(f, r)| (*f, r.as_str()))
    }

    pub fn assert_fact(&self, fact: Fact) -> Result<LedgerState, LedgerError> {
        let mut next = self.clone();
        next.facts.insert(fact);
        next.close()?;
        Ok(next)
    }

    pub fn assert_status(&self, f: Framing, status: Status, rule: &str) -> Result<LedgerState, LedgerError> {
        let rule = rule.to_string();
        match status {
            Status::Zero => self.assert_fact(Fact::Zero {
                bound: Bound::Finite(f),
                rule,
            }),
            Status::NonZero => self.assert_fact(Fact::NonZero { from: f, rule }),
            Status::Unknown => Err(LedgerError::UnknownFact),
        }
    }

    pub fn assert_zero_everywhere(&self, rule: &str) -> Result<LedgerState, LedgerError> {
        self.assert_fact(Fact::Zero {
            bound: Bound::PlusInfinity,
            rule: rule.to_string(),
        })
    }

    fn close(&mut self) -> Result<(), LedgerError> {
        let mut zero: Option<(Bound, String)> = None;
        let mut nonzero: Option<(Framing, String)> = None;
        for fact in &self.facts {
            match fact {
                Fact::Zero { bound, rule } => {
                    let better = match &zero {
                        None => true,
                        Some((b, r)) => bound > b || (bound == b && rule < r),
                    };
                    if better {
                        zero = Some((*bound, rule.clone()));
                    }
                }
                Fact::NonZero { from, rule } => {
                    let better = match &nonzero {
                        None => true,
                        Some((f, r)) => from < f || (from == f && rule < r),
                    };
                    if better {
                        nonzero = Some((*from, rule.clone()));
                    }
                }
            }
        }
        if let (Some((b, zr)), Some((f, nr))) = (&zero, &nonzero) {
            if b.covers(*f) {
                return Err(LedgerError::Contradiction {
                    framing: *f,
                    zero_bound: *b,
                    zero_rule: zr.clone(),
                    nonzero_from: *f,
                    nonzero_rule: nr.clone(),
                });
            }
        }
        self.zero = zero;
        self.nonzero = nonzero;
        Ok(())
    }

    pub fn status(&self, f: Framing) -> Status {
        if self.zero.as_ref().is_some_and(|(b, _)| b.covers(f)) {
            Status::Zero
        } else if self.nonzero.as_ref().is_some_and(|(n, _)| f >= *n) {
            Status::NonZero
        } else {
            Status::Unknown
        }
    }

    pub fn provenance(&self, f: Framing) -> Option<&str> {
        match self.status(f) {
            Status::Zero => self.zero.as_ref().map(|(_, r)| r.as_str()),
            Status::NonZero => self.nonzero.as_ref().map(|(_, r)| r.as_str()),
            Status::Unknown => None,
        }
    }

    /// Applies every rule whose hypotheses the subject meets.
    pub fn apply_rules(&self) -> Result<LedgerState, LedgerError> {
        let Some(subject) = self.subject.clone() else {
            return Ok(self.clone());
        };
        let mut l = self.clone();
        let leg = match &subject.knot {
            SubjectKnot::Legendrian(k) => Some(k),
            SubjectKnot::Transverse(_) => None,
        };
        let ktype = subject.knot_type();
        let std_s3 = subject.ambient == Ambient::StandardS3;

        if let Some(k) = leg {
            l = l.assert_status(Framing(k.tb), Status::Zero, rules::FRAMING_BELOW_TB)?;
            if subject.positive_stabilization {
                l = l.assert_zero_everywhere(rules::POSITIVE_STABILIZATION)?;
            }
        }
        if subject.complement_overtwisted {
            l = l.assert_zero_everywhere(rules::OVERTWISTED_COMPLEMENT)?;
        }
        if subject.binding {
            if let Some(b1) = subject.b1 {
                if vanishing_by_binding(subject.ambient_invariant, b1) == BindingVerdict::ForcesZero {
                    l = l.assert_zero_everywhere(rules::BINDING_VANISHING)?;
                }
            }
        }
        if let Some(g) = ktype.and_then(|k| k.genus).map(i64::from) {
            if subject.binding && std_s3 && g >= 1 && subject.sl() == 2 * g - 1 {
                l = l.assert_status(Framing(2 * g), Status::NonZero, rules::BINDING_MAX_SL)?;
            }
        }
        if let (Some(k), true) = (leg, std_s3) {
            if let Some(gs) = ktype.and_then(|t| t.slice_genus).map(i64::from) {
                if k.tb == 2 * gs - 1 && k.tb > 0 {
                    l = l.assert_status(Framing(k.tb + 1), Status::NonZero, rules::SLICE_GENUS_TB)?;
                }
            }
            if ktype.is_some_and(KnotType::is_unknot) && k.tb == -1 {
                l = l.assert_status(Framing(k.tb + 1), Status::NonZero, rules::STEIN_UNKNOT)?;
            }
        }
        Ok(l)
    }

    /// Verdict on the whole compatible family of components.
    pub fn limit_verdict(&self) -> LimitVerdict {
        match (&self.zero, &self.nonzero) {
            (Some((Bound::PlusInfinity, _)), _) => LimitVerdict::Zero,
            (_, Some(_)) => LimitVerdict::NotAllZero,
            _ => LimitVerdict::Unknown,
        }
    }

    /// One row per framing in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<(Framing, Status, Option<&str>)> {
        (lo..=hi)
            .map(Framing)
            .map(|f| (f, self.status(f), self.provenance(f)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LimitVerdict {
    /// Every component vanishes.
    Zero,
    /// Some component is nonzero, so the limit element is nonzero.
    NotAllZero,
    Unknown,
}

impl fmt::Display for LimitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitVerdict::Zero => "zero",
            LimitVerdict::NotAllZero => "not all zero",
            LimitVerdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CobordismKind {
    /// 2-handle on a meridian with framing `f_S - 1`, from `Y_{f-1}` to `Y_f`.
    Wf,
    /// 2-handle on the knot with framing `tb + n`, from `Y` to `Y_{tb+n}`.
    Xkn,
    /// Capping off the new binding component of the surgered open book.
    Zcap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manifold {
    Ambient,
    Surgered(Framing),
}

/// A 3-manifold with an orientation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct End {
    pub manifold: Manifold,
    pub reversed: bool,
}

impl End {
    fn plus(manifold: Manifold) -> End {
        End {
            manifold,
            reversed: false,
        }
    }

    fn flip(self) -> End {
        End {
            reversed: !self.reversed,
            ..self
        }
    }
}

/// A cobordism recorded by its ends, the 2-handle building it, and whether
/// its orientation is reversed relative to the handle picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CobordismRecord {
    pub kind: CobordismKind,
    pub from: End,
    pub to: End,
    pub attaching: Option<Framing>,
    pub reversed: bool,
}

impl CobordismRecord {
    pub fn normal_circle(f: Framing) -> Self {
        CobordismRecord {
            kind: CobordismKind::Wf,
            from: End::plus(Manifold::Surgered(f - 1)),
            to: End::plus(Manifold::Surgered(f)),
            attaching: Some(Framing::SEIFERT - 1),
            reversed: false,
        }
    }

    pub fn knot_handle(tb: i64, n: i64) -> Self {
        CobordismRecord {
            kind: CobordismKind::Xkn,
            from: End::plus(Manifold::Ambient),
            to: End::plus(Manifold::Surgered(Framing(tb + n))),
            attaching: Some(Framing(tb + n)),
            reversed: false,
        }
    }

    /// Capping off goes from the surgered manifold back to `Y`; as a
    /// 4-manifold it is the knot 2-handle with reversed orientation.
    pub fn capping(tb: i64, n: i64) -> Self {
        CobordismRecord {
            kind: CobordismKind::Zcap,
            from: End::plus(Manifold::Surgered(Framing(tb + n))),
            to: End::plus(Manifold::Ambient),
            attaching: Some(Framing(tb + n)),
            reversed: true,
        }
    }

    /// The same 4-manifold read from the other end: `W: A -> B` becomes
    /// `-B -> -A`.
    pub fn upside_down(self) -> Self {
        CobordismRecord {
            from: self.to.flip(),
            to: self.from.flip(),
            ..self
        }
    }

    pub fn reverse_orientation(self) -> Self {
        CobordismRecord {
            from: self.from.flip(),
            to: self.to.flip(),
            reversed: !self.reversed,
            ..self
        }
    }

    /// Same ends, handle and orientation, ignoring the label.
    pub fn same_cobordism(&self, other: &Self) -> bool {
        (self.from, self.to, self.attaching, self.reversed)
            == (other.from, other.to, other.attaching, other.reversed)
    }
}

/// Checks that capping off, read upside down, is the knot 2-handle with
/// reversed orientation.
pub fn capping_identity_holds(z: &CobordismRecord, x: &CobordismRecord) -> bool {
    z.kind == CobordismKind::Zcap
        && x.kind == CobordismKind::Xkn
        && z.upside_down().same_cobordism(&x.reverse_orientation())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightRange {
    /// Every smooth surgery coefficient `r >= from` (Seifert framing) is tight.
    #[serde(serialize_with = "ser_rational")]
    pub from: Rational,
    pub provenance: String,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::continued_fraction::format_rational(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TightSurgeries {
    pub knot: String,
    pub ranges: Vec<TightRange>,
    pub max_sl_minus_max_tb: Option<i64>,
}

impl TightSurgeries {
    /// Least coefficient of the union of the ranges.
    pub fn anchor(&self) -> Option<Rational> {
        self.ranges.iter().map(|r| r.from).min()
    }

    pub fn contains(&self, r: Rational) -> bool {
        self.ranges.iter().any(|x| r >= x.from)
    }
}

pub const MAX_SL_ROUTE: &str = "max self-linking = 2g-1";
pub const MAX_TB_ROUTE: &str = "max tb = 2g_s-1 > 0";

/// Surgery coefficients on `K` in the standard S^3 known to carry tight
/// contact structures. Integral anchors extend to all rationals above them
/// by Legendrian surgery on stabilized pushoffs.
pub fn tight_surgeries(k: &KnotType) -> Result<TightSurgeries, LedgerError> {
    let g = i64::from(k.require_genus()?);
    let mut ranges = Vec::new();
    if g >= 1 {
        if k.max_sl == Some(2 * g - 1) {
            ranges.push(TightRange {
                from: Rational::from_integer(2 * g),
                provenance: MAX_SL_ROUTE.into(),
            });
        }
        if let (Some(tb), Some(gs)) = (k.max_tb, k.slice_genus) {
            if tb == 2 * i64::from(gs) - 1 && tb > 0 {
                ranges.push(TightRange {
                    from: Rational::from_integer(tb + 1),
                    provenance: MAX_TB_ROUTE.into(),
                });
            }
        }
    }
    let max_sl_minus_max_tb = match (k.max_sl, k.max_tb) {
        (Some(s), Some(t)) => Some(s - t),
        _ => None,
    };
    Ok(TightSurgeries {
        knot: k.name.clone(),
        ranges,
        max_sl_minus_max_tb,
    })
}
