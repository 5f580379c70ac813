//! Finite-difference oracle: the 5-point Laplacian on the truncated
//! quarter domain, its lowest eigenvalues by shift-invert Lanczos, and
//! eigenvalue brackets from two truncation conditions and Richardson
//! extrapolation in the grid step.

pub mod band;
pub mod bracket;
pub mod grid;
pub mod lanczos;

pub use band::BandCholesky;
pub use bracket::{bracketed_eigenvalue, default_truncation, richardson, Bracket, BracketOptions, MIN_DELTA};
pub use grid::{assemble_grid, assemble_strip, expected_unknowns, GridSpec, SparseOperator, TruncBc};
pub use lanczos::{lowest_eigenpairs, lowest_eigenvalues, EigenPairs};
