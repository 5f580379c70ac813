//! Waveguide geometry, symmetry variants and thresholds.
//!
//! Lengths are in units of the strip half-width, so the strip is `(0, 1)`
//! after the axis reduction and all threshold formulas carry no scale.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First nonzero threshold, the bottom of the essential spectrum of the
/// half-problem.
pub const NU1: f64 = PI * PI / 4.0;

/// Default tolerance for deciding whether `a` is an integer.
pub const DEFAULT_INTEGER_TOL: f64 = 1e-9;

/// Cross-sectional cutoff `((2k - 1) pi / 2)^2` of the `k`-th transverse mode
/// of `(0, 1)` with Dirichlet at 0 and Neumann at 1.
pub fn cutoff(k: usize) -> f64 {
    assert!(k >= 1, "cutoff index starts at 1");
    let q = (2 * k - 1) as f64 * PI / 2.0;
    q * q
}

/// Axis-aligned rectangle; `x1` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x > self.x0 && x < self.x1 && y > self.y0 && y < self.y1
    }
}

/// Obstacle half-length `a` and channel width `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    a: f64,
    delta: f64,
}

impl Geometry {
    pub fn new(a: f64, delta: f64) -> Result<Self> {
        let ok = a.is_finite() && delta.is_finite() && a > 0.0 && delta > 0.0 && delta < 1.0;
        if !ok {
            return Err(Error::InvalidGeometry { a, delta });
        }
        Ok(Self { a, delta })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The channel above the obstacle, `(0, a) x (1 - delta, 1)`.
    pub fn left_region(&self) -> Rect {
        Rect { x0: 0.0, x1: self.a, y0: 1.0 - self.delta, y1: 1.0 }
    }

    /// The semi-infinite strip `(a, inf) x (0, 1)`.
    pub fn right_region(&self) -> Rect {
        Rect { x0: self.a, x1: f64::INFINITY, y0: 0.0, y1: 1.0 }
    }

    /// The aperture segment `{x = a, 1 - delta <= y <= 1}` as `(x, y_lo, y_hi)`.
    pub fn interface(&self) -> (f64, f64, f64) {
        (self.a, 1.0 - self.delta, 1.0)
    }

    /// Whether `(x, y)` lies in the closure of the quarter domain.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        if !(x >= 0.0 && (0.0..=1.0).contains(&y)) {
            return false;
        }
        x >= self.a || y >= 1.0 - self.delta
    }

    pub fn is_integer_half_length(&self, tol: f64) -> bool {
        is_integer_half_length(self.a, tol)
    }
}

/// Validated constructor.
pub fn make_geometry(a: f64, delta: f64) -> Result<Geometry> {
    Geometry::new(a, delta)
}

/// True iff `a` is within `tol` of a positive integer.
pub fn is_integer_half_length(a: f64, tol: f64) -> bool {
    if !a.is_finite() {
        return false;
    }
    let nearest = a.round().max(1.0);
    (a - nearest).abs() <= tol
}

/// Which of the two quarter-domain problems is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetryVariant {
    /// `L_N`: Neumann on the cut `x = 0`.
    NeumannAtCut,
    /// `L_D`: Dirichlet on the cut `x = 0`.
    DirichletAtCut,
}

impl SymmetryVariant {
    pub const ALL: [SymmetryVariant; 2] = [Self::NeumannAtCut, Self::DirichletAtCut];

    pub fn label(self) -> &'static str {
        match self {
            Self::NeumannAtCut => "N",
            Self::DirichletAtCut => "D",
        }
    }
}

impl fmt::Display for SymmetryVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SymmetryVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "N" | "n" | "LN" | "L_N" | "neumann" => Ok(Self::NeumannAtCut),
            "D" | "d" | "LD" | "L_D" | "dirichlet" => Ok(Self::DirichletAtCut),
            other => Err(Error::Parse(format!("unknown variant '{other}'"))),
        }
    }
}
