//! Rational contact surgery expressed as contact (+/-1)-surgery presentations.
//!
//! A presentation is a linear chain: an optional contact (+1)-surgery on the
//! original knot, followed by Legendrian ((-1)-) surgeries on successive
//! stabilized pushoffs. Component `i + 1` is always a pushoff of component `i`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::continued_fraction::{format_rational, ContinuedFraction, Rational};
use crate::legendrian::{Framing, LegendrianKnot, StabSign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("contact surgery coefficient must be nonzero")]
    InvalidCoefficient,

    #[error("contact surgery coefficient {0} lies in (0, 1), which is not supported")]
    UnsupportedCoefficient(String),

    #[error("surgery multiple must be positive, got {0}")]
    NonPositiveMultiple(i64),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct PresentationError {
    pub path: String,
    pub message: String,
}

/// Nonzero contact surgery coefficient, relative to the contact framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurgeryCoefficient(Rational);

impl SurgeryCoefficient {
    pub fn new(value: Rational) -> Result<Self, ExpansionError> {
        if value.is_zero() {
            return Err(ExpansionError::InvalidCoefficient);
        }
        Ok(SurgeryCoefficient(value))
    }

    pub fn integer(n: i64) -> Result<Self, ExpansionError> {
        Self::new(Rational::from_integer(n))
    }

    pub fn value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for SurgeryCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Role {
    OriginalPlusOne,
    ChainLink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContactCoefficient {
    #[serde(rename = "+1")]
    PlusOne,
    #[serde(rename = "-1")]
    MinusOne,
}

impl ContactCoefficient {
    pub fn value(self) -> i64 {
        match self {
            ContactCoefficient::PlusOne => 1,
            ContactCoefficient::MinusOne => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub role: Role,
    pub knot: LegendrianKnot,
    pub coefficient: ContactCoefficient,
    /// Stabilizations applied, in order, to the pushoff this component came from.
    pub stab_signs: Vec<StabSign>,
}

impl Component {
    pub fn tb(&self) -> i64 {
        self.knot.tb
    }

    pub fn rot(&self) -> i64 {
        self.knot.rot
    }

    /// Smooth surgery coefficient relative to the Seifert framing.
    pub fn smooth_framing(&self) -> i64 {
        self.knot.tb + self.coefficient.value()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContactSurgeryPresentation {
    components: Vec<Component>,
}

impl ContactSurgeryPresentation {
    pub fn empty() -> Self {
        ContactSurgeryPresentation::default()
    }

    /// Validates chain structure: at most one `originalPlusOne`, placed first;
    /// `+1` only on it; each chain link consistent with stabilizing a pushoff
    /// of its predecessor.
    pub fn new(components: Vec<Component>) -> Result<Self, PresentationError> {
        let err = |i: usize, field: &str, message: String| PresentationError {
            path: format!("components[{i}].{field}"),
            message,
        };
        for (i, c) in components.iter().enumerate() {
            match c.role {
                Role::OriginalPlusOne if i != 0 => {
                    return Err(err(
                        i,
                        "role",
                        "originalPlusOne must be the first and only such component".into(),
                    ))
                }
                Role::OriginalPlusOne if c.coefficient != ContactCoefficient::PlusOne => {
                    return Err(err(i, "coeff", "originalPlusOne carries coefficient +1".into()))
                }
                Role::ChainLink if c.coefficient == ContactCoefficient::PlusOne => {
                    return Err(err(i, "coeff", "chain links carry coefficient -1".into()))
                }
                _ => {}
            }
            if c.role == Role::OriginalPlusOne && !c.stab_signs.is_empty() {
                return Err(err(i, "stab", "originalPlusOne is not stabilized".into()));
            }
            if i == 0 {
                continue;
            }
            let prev = &components[i - 1].knot;
            let drop = prev.tb - c.knot.tb;
            let drot = c.knot.rot - prev.rot;
            if c.stab_signs.is_empty() {
                if drop < 0 || drot.abs() > drop || (drop - drot) % 2 != 0 {
                    return Err(err(
                        i,
                        "tb",
                        format!(
                            "(tb {}, rot {}) is not a stabilized pushoff of (tb {}, rot {})",
                            c.knot.tb, c.knot.rot, prev.tb, prev.rot
                        ),
                    ));
                }
            } else {
                let expected = c
                    .stab_signs
                    .iter()
                    .fold(prev.clone(), |k, &s| k.stabilize(s));
                if (expected.tb, expected.rot) != (c.knot.tb, c.knot.rot) {
                    return Err(err(
                        i,
                        "stab",
                        format!(
                            "stabilizations give (tb {}, rot {}), component has (tb {}, rot {})",
                            expected.tb, expected.rot, c.knot.tb, c.knot.rot
                        ),
                    ));
                }
            }
        }
        Ok(ContactSurgeryPresentation { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn plus_one_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.coefficient == ContactCoefficient::PlusOne)
            .count()
    }

    /// True when every stabilization in the chain is negative (the xi^- choice).
    pub fn is_all_negative(&self) -> bool {
        self.components
            .iter()
            .flat_map(|c| c.stab_signs.iter())
            .all(|&s| s == StabSign::Negative)
    }

    pub fn tag(&self) -> StabSign {
        if self.is_all_negative() {
            StabSign::Negative
        } else {
            StabSign::Positive
        }
    }
}

impl fmt::Display for ContactSurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let stab: String = c.stab_signs.iter().map(|s| s.symbol()).collect();
            write!(
                f,
                "{}{} {}",
                if c.coefficient == ContactCoefficient::PlusOne { "+1" } else { "-1" },
                if stab.is_empty() { String::new() } else { format!("[{stab}]") },
                c.knot
            )?;
        }
        Ok(())
    }
}

/// For `k` stabilizations, the distinct sign choices up to reordering, listed
/// lexicographically with `-` before `+`: `j` negatives followed by `k - j`
/// positives, for `j = k, k-1, ..., 0`.
pub fn stabilization_choices(k: usize) -> Vec<Vec<StabSign>> {
    (0..=k)
        .map(|plus| {
            let mut v = vec![StabSign::Negative; k - plus];
            v.extend(std::iter::repeat_n(StabSign::Positive, plus));
            v
        })
        .collect()
}

fn chain_presentations(
    head: Vec<Component>,
    anchor: &LegendrianKnot,
    cf: &ContinuedFraction,
) -> Vec<ContactSurgeryPresentation> {
    // Depth-first over terms keeps lexicographic order of the sign choices.
    fn go(
        terms: &[i64],
        parent: &LegendrianKnot,
        acc: &mut Vec<Component>,
        out: &mut Vec<ContactSurgeryPresentation>,
    ) {
        let Some((&a, rest)) = terms.split_first() else {
            out.push(ContactSurgeryPresentation {
                components: acc.clone(),
            });
            return;
        };
        for signs in stabilization_choices((a - 2) as usize) {
            let knot = signs.iter().fold(parent.clone(), |k, &s| k.stabilize(s));
            acc.push(Component {
                role: Role::ChainLink,
                knot: knot.clone(),
                coefficient: ContactCoefficient::MinusOne,
                stab_signs: signs,
            });
            go(rest, &knot, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = head;
    go(cf.terms(), anchor, &mut acc, &mut out);
    out
}

/// All (+/-1)-presentations of contact `r`-surgery on `knot`, the all-negative
/// one first.
pub fn expand(
    knot: &LegendrianKnot,
    r: SurgeryCoefficient,
) -> Result<Vec<ContactSurgeryPresentation>, ExpansionError> {
    let r = r.value();
    let one = Rational::one();
    if r.is_positive() && r < one {
        return Err(ExpansionError::UnsupportedCoefficient(format_rational(&r)));
    }
    if r.is_negative() {
        let cf = ContinuedFraction::expand(one - r).expect("1 - r > 1 for r < 0");
        return Ok(chain_presentations(Vec::new(), knot, &cf));
    }
    let head = vec![Component {
        role: Role::OriginalPlusOne,
        knot: knot.clone(),
        coefficient: ContactCoefficient::PlusOne,
        stab_signs: Vec::new(),
    }];
    if r == one {
        return Ok(vec![ContactSurgeryPresentation { components: head }]);
    }
    // p/q > 1: (+1) on the knot, then p/(q - p) < 0 on a pushoff.
    let (p, q) = (*r.numer(), *r.denom());
    let reduced = Ratio::new(p, q - p);
    let cf = ContinuedFraction::expand(one - reduced).expect("1 - r' > 1");
    Ok(chain_presentations(head, knot, &cf))
}

/// Negative continued fraction used by `expand` for coefficient `r`, if any.
pub fn expansion_fraction(r: SurgeryCoefficient) -> Option<ContinuedFraction> {
    let r = r.value();
    let one = Rational::one();
    if r.is_negative() {
        ContinuedFraction::expand(one - r).ok()
    } else if r > one {
        let reduced = Ratio::new(*r.numer(), *r.denom() - *r.numer());
        ContinuedFraction::expand(one - reduced).ok()
    } else {
        None
    }
}

/// The presentation of xi^-_n(knot): contact (+1) on the knot and (-1) on
/// `n - 1` pushoffs of its negative stabilization.
pub fn xi_minus_presentation(
    knot: &LegendrianKnot,
    n: i64,
) -> Result<ContactSurgeryPresentation, ExpansionError> {
    if n < 1 {
        return Err(ExpansionError::NonPositiveMultiple(n));
    }
    let mut all = expand(knot, SurgeryCoefficient::integer(n)?)?;
    Ok(all.swap_remove(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedPresentation {
    pub framing: Framing,
    /// Knot actually surgered, after any extra negative stabilization.
    pub knot: LegendrianKnot,
    pub multiple: i64,
    pub presentation: ContactSurgeryPresentation,
    /// Set when `framing <= tb`; such structures are overtwisted.
    pub overtwisted: bool,
}

/// A presentation of the contact structure attached to a framed Legendrian
/// knot: xi^-_{f - tb(k')}(k') for a negative stabilization k' with tb(k') < f.
pub fn presentation_for_framing(knot: &LegendrianKnot, framing: Framing) -> FramedPresentation {
    let f = framing.offset();
    let (k, overtwisted) = if f > knot.tb {
        (knot.clone(), false)
    } else {
        let times = (knot.tb - f + 1) as usize;
        (knot.stabilize_times(StabSign::Negative, times), true)
    };
    let multiple = f - k.tb;
    let presentation = xi_minus_presentation(&k, multiple).expect("multiple >= 1");
    FramedPresentation {
        framing,
        knot: k,
        multiple,
        presentation,
        overtwisted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> LegendrianKnot {
        LegendrianKnot::new(-1, 0)
    }

    #[test]
    fn plus_one_is_single_component() {
        let all = expand(&unknot(), SurgeryCoefficient::integer(1).unwrap()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 1);
        assert_eq!(all[0].components()[0].role, Role::OriginalPlusOne);
    }

    #[test]
    fn integer_surgery_has_two_choices() {
        for n in 2..=8 {
            let all = expand(&unknot(), SurgeryCoefficient::integer(n).unwrap()).unwrap();
            assert_eq!(all.len(), 2, "n = {n}");
            let first = &all[0];
            assert!(first.is_all_negative());
            assert_eq!(first.len() as i64, n);
            for c in &first.components()[1..] {
                assert_eq!((c.tb(), c.rot()), (-2, -1));
                assert_eq!(c.coefficient, ContactCoefficient::MinusOne);
            }
            assert!(!all[1].is_all_negative());
        }
    }

    #[test]
    fn minus_two() {
        let all = expand(&unknot(), SurgeryCoefficient::integer(-2).unwrap()).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].len(), 1);
        assert_eq!(all[0].components()[0].stab_signs, vec![StabSign::Negative]);
        assert_eq!(all[1].components()[0].stab_signs, vec![StabSign::Positive]);
    }

    #[test]
    fn minus_one_is_legendrian_surgery() {
        let all = expand(&unknot(), SurgeryCoefficient::integer(-1).unwrap()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!((all[0].components()[0].tb(), all[0].components()[0].rot()), (-1, 0));
    }

    #[test]
    fn rejected_coefficients() {
        assert_eq!(
            SurgeryCoefficient::integer(0),
            Err(ExpansionError::InvalidCoefficient)
        );
        let half = SurgeryCoefficient::new(Rational::new(1, 2)).unwrap();
        assert!(matches!(
            expand(&unknot(), half),
            Err(ExpansionError::UnsupportedCoefficient(_))
        ));
    }

    #[test]
    fn xi_minus_unknot_two() {
        let p = xi_minus_presentation(&unknot(), 2).unwrap();
        let got: Vec<_> = p
            .components()
            .iter()
            .map(|c| (c.tb(), c.rot(), c.coefficient.value()))
            .collect();
        assert_eq!(got, vec![(-1, 0, 1), (-2, -1, -1)]);
    }

    #[test]
    fn framing_at_or_below_tb_is_overtwisted() {
        let fp = presentation_for_framing(&unknot(), Framing(-1));
        assert!(fp.overtwisted);
        assert_eq!(fp.knot.tb, -2);
        assert_eq!(fp.multiple, 1);
        let fp = presentation_for_framing(&unknot(), Framing(1));
        assert!(!fp.overtwisted);
        assert_eq!(fp.multiple, 2);
    }

    #[test]
    fn validation_rejects_two_plus_ones() {
        let c = Component {
            role: Role::OriginalPlusOne,
            knot: unknot(),
            coefficient: ContactCoefficient::PlusOne,
            stab_signs: vec![],
        };
        let e = ContactSurgeryPresentation::new(vec![c.clone(), c]).unwrap_err();
        assert_eq!(e.path, "components[1].role");
    }

    #[test]
    fn validation_rejects_non_pushoff() {
        let a = Component {
            role: Role::OriginalPlusOne,
            knot: unknot(),
            coefficient: ContactCoefficient::PlusOne,
            stab_signs: vec![],
        };
        let b = Component {
            role: Role::ChainLink,
            knot: LegendrianKnot::new(0, 1),
            coefficient: ContactCoefficient::MinusOne,
            stab_signs: vec![],
        };
        assert!(ContactSurgeryPresentation::new(vec![a, b]).is_err());
    }

    #[test]
    fn choices_are_lexicographic() {
        use StabSign::*;
        assert_eq!(
            stabilization_choices(2),
            vec![vec![Negative, Negative], vec![Negative, Positive], vec![Positive, Positive]]
        );
        assert_eq!(stabilization_choices(0), vec![Vec::<StabSign>::new()]);
    }
}
