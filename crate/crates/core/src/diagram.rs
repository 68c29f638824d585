//! JSON diagram files:
//! `{"components": [{"tb": -1, "rot": 0, "coeff": "+1", "role": "originalPlusOne"}, ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expansion::{Component, ContactCoefficient, ContactSurgeryPresentation, PresentationError, Role};
use crate::legendrian::{LegendrianKnot, StabSign};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("{path}: contact surgery coefficient must be nonzero")]
    InvalidCoefficient { path: String },

    #[error(transparent)]
    Presentation(#[from] PresentationError),

    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub tb: i64,
    pub rot: i64,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<Role>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stab: Vec<StabSign>,
}

fn coefficient(raw: &str, path: String) -> Result<ContactCoefficient, DiagramError> {
    match raw.trim() {
        "+1" | "1" => Ok(ContactCoefficient::PlusOne),
        "-1" => Ok(ContactCoefficient::MinusOne),
        other => match crate::continued_fraction::parse_rational(other) {
            Some(r) if r == crate::continued_fraction::Rational::from_integer(0) => {
                Err(DiagramError::InvalidCoefficient { path })
            }
            _ => Err(DiagramError::Field {
                path,
                message: format!(
                    "contact coefficient must be \"+1\" or \"-1\", got {other:?}; expand other coefficients first"
                ),
            }),
        },
    }
}

impl DiagramFile {
    pub fn from_presentation(p: &ContactSurgeryPresentation) -> Self {
        DiagramFile {
            components: p
                .components()
                .iter()
                .map(|c| ComponentRecord {
                    tb: c.tb(),
                    rot: c.rot(),
                    coeff: match c.coefficient {
                        ContactCoefficient::PlusOne => "+1".into(),
                        ContactCoefficient::MinusOne => "-1".into(),
                    },
                    role: Some(c.role),
                    stab: c.stab_signs.clone(),
                })
                .collect(),
        }
    }

    /// Missing roles are inferred: a leading `+1` is the original knot,
    /// everything else a chain link.
    pub fn into_presentation(self) -> Result<ContactSurgeryPresentation, DiagramError> {
        let mut comps = Vec::with_capacity(self.components.len());
        for (i, rec) in self.components.into_iter().enumerate() {
            let coeff = coefficient(&rec.coeff, format!("components[{i}].coeff"))?;
            let role = rec.role.unwrap_or(if i == 0 && coeff == ContactCoefficient::PlusOne {
                Role::OriginalPlusOne
            } else {
                Role::ChainLink
            });
            comps.push(Component {
                role,
                knot: LegendrianKnot::new(rec.tb, rec.rot),
                coefficient: coeff,
                stab_signs: rec.stab,
            });
        }
        Ok(ContactSurgeryPresentation::new(comps)?)
    }
}

/// Parses diagram JSON, reporting syntax errors by line and column and
/// shape errors by field path.
pub fn parse_diagram(text: &str) -> Result<ContactSurgeryPresentation, DiagramError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: DiagramFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let suffix = format!(" at line {line} column {column}");
            DiagramError::Syntax {
                line,
                column,
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        } else {
            DiagramError::Field {
                path,
                message: inner.to_string(),
            }
        }
    })?;
    file.into_presentation()
}

pub fn read_diagram(path: &std::path::Path) -> Result<ContactSurgeryPresentation, DiagramError> {
    let text = std::fs::read_to_string(path).map_err(|source| DiagramError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_diagram(&text)
}

pub fn to_json(p: &ContactSurgeryPresentation) -> String {
    serde_json::to_string_pretty(&DiagramFile::from_presentation(p)).expect("diagram serializes")
}
