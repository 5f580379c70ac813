//! One-dimensional machinery: the bracketed solver for `mu tan(mu a) = c`,
//! constant-coefficient Robin eigenproblems on an interval, composite
//! Gauss-Legendre quadrature over sampled profiles, and checkers for the
//! quadratic-form inequalities behind the lower bounds.

pub mod lemmas;
pub mod quadrature;
pub mod robin;
pub mod roots;
pub mod sampled;

pub use lemmas::{
    a1_reference_profile, a1_threshold_constant, lemma_a1_lhs, lemma_left_lhs, lemma_multi_check, lemma_right_residual, lemma_right_sides,
    right_truncation, robin_remainder, MultiModeLemma, RightSides,
};
pub use robin::{robin_eigenvalues, robin_roots, LeftBc, RobinProblem};
pub use roots::{solve_mu_tan, RootList};
pub use sampled::{uniform_nodes, CubicSpline, DerivativeRule, SampledFunction, SplineEnd};
