//! Exact calculus for contact surgery on Legendrian and transverse knots.
//!
//! Rational contact surgeries are expanded into (+/-1)-surgery
//! presentations, whose linking matrices give `H_1`, the signature and the
//! d3 invariant. Open book monodromies are manipulated as Dehn-twist words
//! acting on homology, and a ledger tracks which framings carry a vanishing
//! or nonvanishing transverse invariant.
//!
//! ```
//! use contact_surgery::{d3, xi_minus_presentation, LegendrianKnot};
//!
//! let p = xi_minus_presentation(&LegendrianKnot::new(-1, 0), 2).unwrap();
//! assert_eq!(d3(&p).unwrap().to_string(), "-1/2");
//! ```

pub mod catalog;
pub mod continued_fraction;
pub mod diagram;
pub mod expansion;
pub mod homology;
pub mod ledger;
pub mod legendrian;
pub mod linalg;
pub mod models;
pub mod open_book;
pub mod selftest;
pub mod slope;

pub use catalog::{cable_of_trefoil, connected_power, connected_sum, Catalog, CatalogError, KnotFlag, KnotType};
pub use diagram::{parse_diagram, read_diagram, DiagramError, DiagramFile};
pub use continued_fraction::{ContinuedFraction, ContinuedFractionError, Rational};
pub use expansion::{
    expand, presentation_for_framing, xi_minus_presentation, Component, ContactCoefficient,
    ContactSurgeryPresentation, ExpansionError, Role, SurgeryCoefficient,
};
pub use homology::{d3, homology, linking_matrix, D3Value, HomologyError, LinkingMatrix};
pub use legendrian::{Framing, KnotError, LegendrianKnot, StabSign, TransverseKnot};
pub use slope::{normalize_slope, Slope};
pub use ledger::{tight_surgeries, LedgerError, LedgerState, LimitVerdict, Status, Subject, TightSurgeries};
pub use open_book::{homology_action, lantern_rewrite, LanternConfiguration, MonodromyWord, OpenBookError, SurfaceModel};
