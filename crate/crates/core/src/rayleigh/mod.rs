//! Test functions and variational upper bounds.

pub mod pencil;
pub mod trial;

pub use pencil::{minimax_upper_bounds, PencilBounds};
pub use trial::{build_multimode_family, rayleigh_quotient, ProfileKind, TrialCase, TrialFunction};
