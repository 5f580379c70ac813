//! Trapped modes of a 2-D acoustic strip waveguide with a thick symmetric
//! rectangular obstacle.
//!
//! The strip is `(-inf, inf) x (-1, 1)` with the obstacle
//! `(-a, a) x (-(1 - delta), 1 - delta)` removed. After the two symmetry
//! reductions the problem lives on the quarter domain
//! `(0, inf) x (0, 1) \ (0, a) x (0, 1 - delta)` with a Dirichlet line at
//! `y = 0` and either a Neumann ([`SymmetryVariant::NeumannAtCut`]) or a
//! Dirichlet ([`SymmetryVariant::DirichletAtCut`]) condition on the cut
//! `x = 0`. Eigenvalues below the threshold `pi^2 / 4` are trapped modes.
//!
//! Modules:
//!
//! - [`geometry`]: the `(a, delta)` pair, its subregions and the thresholds.
//! - [`asymptotics`]: closed-form leading-order predictions, counts and
//!   variant attribution.
//! - [`oned`]: one-dimensional machinery (the `mu tan(mu a) = c` solver,
//!   Robin eigenproblems, quadratic-form checkers).
//! - [`modematch`]: the mode-matching eigensolver.
//! - [`fdoracle`]: an independent finite-difference verifier.
//! - [`rayleigh`]: trial functions, Rayleigh quotients and min-max bounds.
//! - [`harness`]: sweeps, rate fits, verification reports, persistence.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod asymptotics;
pub mod error;
pub mod fdoracle;
pub mod geometry;
pub mod harness;
pub mod modematch;
pub mod oned;
pub mod rayleigh;

pub use asymptotics::{decay_rate, eigen_count, m_of_a, predict, AsymptoticPrediction, CountSplit, Regime};
pub use error::{Error, Result};
pub use geometry::{cutoff, is_integer_half_length, make_geometry, Geometry, Rect, SymmetryVariant, NU1};
