//! Cross-sectional bases and their overlap integrals.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oned::quadrature;

/// `eta_k(y) = sqrt(2) sin((2k - 1) pi y / 2)` on `(0, 1)`, `k >= 1`.
pub fn right_mode(k: usize, y: f64) -> f64 {
    SQRT_2 * ((2 * k - 1) as f64 * PI * y / 2.0).sin()
}

/// Channel mode on `(1 - delta, 1)`: constant for `j = 0`, otherwise
/// `sqrt(2/delta) cos(pi j (1 - y) / delta)`.
pub fn left_mode(j: usize, y: f64, delta: f64) -> f64 {
    if j == 0 {
        delta.powf(-0.5)
    } else {
        (2.0 / delta).sqrt() * (PI * j as f64 * (1.0 - y) / delta).cos()
    }
}

/// `sin(x) / x` with the removable point filled in.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `int_{1-delta}^1 left_mode(j) right_mode(k) dy` in closed form.
///
/// With `t = 1 - y` the right mode becomes `sqrt(2) (-1)^(k+1) cos(q t)`,
/// `q = (2k-1) pi/2`, so the integral is a cosine-cosine product over
/// `(0, delta)`.
pub fn overlap(j: usize, k: usize, delta: f64) -> f64 {
    let p = PI * j as f64 / delta;
    let q = (2 * k - 1) as f64 * PI / 2.0;
    let norm = if j == 0 { delta.powf(-0.5) } else { (2.0 / delta).sqrt() };
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let integral = 0.5 * delta * (sinc((q - p) * delta) + sinc((q + p) * delta));
    norm * SQRT_2 * sign * integral
}

/// `n_left x n_right` overlap matrix, rows indexed by channel modes.
pub fn overlap_matrix(delta: f64, n_left: usize, n_right: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n_left, n_right, |j, k| overlap(j, k + 1, delta))
}

/// Truncated pair of bases for a channel width `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeBases {
    pub delta: f64,
    pub n_left: usize,
    pub n_right: usize,
}

/// Number of leading modes whose orthonormality is checked on construction.
const CHECKED_MODES: usize = 12;

impl ModeBases {
    pub fn new(delta: f64, n_left: usize, n_right: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
        }
        if n_left == 0 || n_right == 0 {
            return Err(Error::TooFewNodes { needed: 1, got: 0 });
        }
        let b = Self { delta, n_left, n_right };
        let err = b.orthonormality_error(CHECKED_MODES);
        // mapping y onto the channel costs about eps / delta in relative accuracy
        if err > 1e-12 + 64.0 * f64::EPSILON / delta {
            return Err(Error::NoConvergence { iterations: 0, residual: err });
        }
        Ok(b)
    }

    /// Largest deviation from the identity of the Gram matrices of the
    /// first `upto` modes of each basis, by Gauss-Legendre quadrature.
    pub fn orthonormality_error(&self, upto: usize) -> f64 {
        let nl = self.n_left.min(upto);
        let nr = self.n_right.min(upto);
        let delta = self.delta;
        let mut worst: f64 = 0.0;
        let panels_r = nr.max(2);
        for i in 1..=nr {
            for k in i..=nr {
                let v = quadrature::uniform(|y| right_mode(i, y) * right_mode(k, y), 0.0, 1.0, panels_r);
                worst = worst.max((v - if i == k { 1.0 } else { 0.0 }).abs());
            }
        }
        let panels_l = nl.max(2);
        for i in 0..nl {
            for j in i..nl {
                let v = quadrature::uniform(|y| left_mode(i, y, delta) * left_mode(j, y, delta), 1.0 - delta, 1.0, panels_l);
                worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    pub fn overlap_matrix(&self) -> DMatrix<f64> {
        overlap_matrix(self.delta, self.n_left, self.n_right)
    }
}
