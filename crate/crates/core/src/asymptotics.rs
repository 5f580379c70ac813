//! Leading-order asymptotics of the top trapped eigenvalue as the channel
//! closes, eigenvalue counts and their attribution to `L_N` / `L_D`.
//!
//! For non-integer `a` the gap to the threshold closes like `M(a) delta^2`
//! with `M(a) = pi^2 tan^2(pi {a} / 2)`; for integer `a` it closes like
//! `M(a) delta^(2/3)` with `M(a) = (pi^2 / a)^(2/3)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_integer_half_length, Geometry, SymmetryVariant, DEFAULT_INTEGER_TOL, NU1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    FractionalA,
    IntegerA,
}

impl Regime {
    pub fn of(a: f64) -> Self {
        if is_integer_half_length(a, DEFAULT_INTEGER_TOL) {
            Regime::IntegerA
        } else {
            Regime::FractionalA
        }
    }

    /// Power of `delta` in the leading gap term.
    pub fn exponent(self) -> f64 {
        match self {
            Regime::FractionalA => 2.0,
            Regime::IntegerA => 2.0 / 3.0,
        }
    }

    /// Order of the remainder as stated for the expansion.
    pub fn remainder_order(self) -> f64 {
        match self {
            Regime::FractionalA => 3.0,
            Regime::IntegerA => 4.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPrediction {
    pub regime: Regime,
    /// The constant `M(a)`.
    pub m: f64,
    pub exponent: f64,
    /// `NU1 - m * delta^exponent`.
    pub lambda_leading: f64,
    pub remainder_order: f64,
}

/// The constant `M(a)` of the leading gap term.
pub fn m_of_a(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::InvalidArgument(format!("M(a) needs finite a > 0, got {a}")));
    }
    Ok(match Regime::of(a) {
        Regime::IntegerA => (PI * PI / a.round()).powf(2.0 / 3.0),
        Regime::FractionalA => {
            let t = (PI * fractional_part(a) / 2.0).tan();
            PI * PI * t * t
        }
    })
}

fn fractional_part(a: f64) -> f64 {
    a - a.floor()
}

pub fn predict(geometry: &Geometry) -> AsymptoticPrediction {
    let a = geometry.a();
    let regime = Regime::of(a);
    let m = m_of_a(a).expect("geometry guarantees a > 0");
    let exponent = regime.exponent();
    AsymptoticPrediction {
        regime,
        m,
        exponent,
        lambda_leading: NU1 - m * geometry.delta().powf(exponent),
        remainder_order: regime.remainder_order(),
    }
}

/// Longitudinal decay rate of the near-threshold mode in the open strip,
/// `sqrt(M) delta` or `sqrt(M) delta^(1/3)`.
pub fn decay_rate(geometry: &Geometry) -> f64 {
    let p = predict(geometry);
    p.m.sqrt() * geometry.delta().powf(p.exponent / 2.0)
}

/// Number of eigenvalues below the threshold and their split between the
/// two variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSplit {
    pub total: usize,
    pub from_n: usize,
    pub from_d: usize,
    pub top_is_n: bool,
}

impl CountSplit {
    pub fn from_variant(&self, variant: SymmetryVariant) -> usize {
        match variant {
            SymmetryVariant::NeumannAtCut => self.from_n,
            SymmetryVariant::DirichletAtCut => self.from_d,
        }
    }

    /// Variant owning the `index`-th eigenvalue (1-based, ascending):
    /// the lists alternate starting with `L_N`.
    pub fn variant_of(&self, index: usize) -> SymmetryVariant {
        assert!(index >= 1 && index <= self.total, "index {index} out of 1..={}", self.total);
        if index % 2 == 1 {
            SymmetryVariant::NeumannAtCut
        } else {
            SymmetryVariant::DirichletAtCut
        }
    }

    pub fn top_variant(&self) -> SymmetryVariant {
        if self.top_is_n {
            SymmetryVariant::NeumannAtCut
        } else {
            SymmetryVariant::DirichletAtCut
        }
    }
}

/// `n = ceil(a)` eigenvalues below the threshold, `ceil(n/2)` of them from
/// `L_N`.
pub fn eigen_count(a: f64) -> CountSplit {
    let total = if is_integer_half_length(a, DEFAULT_INTEGER_TOL) { a.round() as usize } else { a.ceil() as usize };
    CountSplit { total, from_n: total.div_ceil(2), from_d: total / 2, top_is_n: total % 2 == 1 }
}
