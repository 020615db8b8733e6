//! Exact vertex census of subtree statistics in planar rooted trees.
//!
//! Four families (Motzkin, ordered, full binary, Schröder), two statistics
//! (vertices or leaves in the subtree rooted at a vertex). Finite-size counts
//! come from generating functions in exact rational arithmetic; limit
//! probabilities are exact elements of `Q(√d)`; a brute-force enumerator
//! cross-checks small sizes.

pub mod asymptotics;
pub mod error;
pub mod exact_math;
pub mod family;
pub mod gf_census;
pub mod oracle;
pub mod reference;

pub use error::{Error, Result};
pub use family::{FamilyDescriptor, FamilyId, SizeUnit, StatKind};
