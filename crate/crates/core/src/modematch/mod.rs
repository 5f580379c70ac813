//! Mode-matching eigensolver for the quarter-domain problems.
//!
//! The field is expanded in the cross-sectional bases of the channel over
//! the obstacle and of the semi-infinite strip. Value and flux continuity on
//! the aperture `{x = a, 1 - delta < y < 1}` reduce to a symmetric matrix
//! function of the spectral parameter whose singular points are the
//! eigenvalues.

pub mod bases;
pub mod field;
pub mod solver;
pub mod system;

pub use bases::{left_mode, overlap, overlap_matrix, right_mode, ModeBases};
pub use field::{field_evaluate, MatchedMode};
pub use solver::{eigenvalues_below_threshold, merged_spectrum, EigenvalueResult, SolveOptions, SpectrumEntry};
pub use system::{assemble, MatchingOperator, MatchingSystem};
