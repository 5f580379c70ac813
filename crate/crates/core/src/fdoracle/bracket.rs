//! Eigenvalue brackets from dual truncation and Richardson extrapolation.

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{assemble_grid, GridSpec, TruncBc};
use super::lanczos::lowest_eigenvalues;
use crate::asymptotics::decay_rate;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, SymmetryVariant, NU1};

/// Smallest channel width the oracle accepts.
pub const MIN_DELTA: f64 = 0.1;

/// Corner-dominated error exponent of the 5-point scheme on this domain.
const CORNER_EXPONENT: f64 = 4.0 / 3.0;

/// Truncation gap between the two conditions that flags a short domain.
const TRUNCATION_GAP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketOptions {
    /// Grid steps, each dividing the previous one.
    pub h_list: Vec<f64>,
    /// Truncation abscissa; `a + 12 / decay_rate` rounded up to the
    /// coarsest step when absent.
    pub x_end: Option<f64>,
    /// Lanczos residual tolerance relative to the operator scale `8/h^2`.
    pub rel_tol: f64,
}

impl Default for BracketOptions {
    fn default() -> Self {
        Self { h_list: vec![1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0], x_end: None, rel_tol: 1e-11 }
    }
}

/// Interval enclosing one eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    pub x_end: f64,
    pub h_list: Vec<f64>,
    /// Eigenvalue per grid step, Dirichlet truncation.
    pub dirichlet: Vec<f64>,
    /// Eigenvalue per grid step, Neumann truncation.
    pub neumann: Vec<f64>,
    /// Extrapolated value for (Dirichlet, Neumann) truncation.
    pub extrapolated: (f64, f64),
}

impl Bracket {
    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// `a + 12 / decay_rate`, rounded up to a multiple of `h` beyond `a`.
pub fn default_truncation(geometry: &Geometry, h: f64) -> f64 {
    let len = 12.0 / decay_rate(geometry);
    geometry.a() + (len / h).ceil() * h
}

/// Extrapolated value and half-width from values on decreasing steps.
///
/// Two steps: one-term extrapolation with the corner exponent 4/3, the
/// half-width being the distance to the finest value. Three or more: the
/// last three are fitted with `v + c1 h^{4/3} + c2 h^2`, the half-width
/// being the distance to the two-step estimate.
pub fn richardson(h: &[f64], v: &[f64]) -> Result<(f64, f64)> {
    if h.len() != v.len() || h.len() < 2 {
        return Err(Error::InsufficientData("Richardson extrapolation needs at least two steps".into()));
    }
    let n = h.len();
    let (hc, hf) = (h[n - 2], h[n - 1]);
    let r = (hc / hf).powf(CORNER_EXPONENT);
    let two = v[n - 1] + (v[n - 1] - v[n - 2]) / (r - 1.0);
    if n == 2 {
        return Ok((two, (two - v[n - 1]).abs()));
    }
    let m = Matrix3::from_fn(|i, j| {
        let hi = h[n - 3 + i];
        match j {
            0 => 1.0,
            1 => hi.powf(CORNER_EXPONENT),
            _ => hi * hi,
        }
    });
    let rhs = Vector3::new(v[n - 3], v[n - 2], v[n - 1]);
    let sol = m.lu().solve(&rhs).ok_or_else(|| Error::InvalidArgument("grid steps must be distinct".into()))?;
    Ok((sol[0], (sol[0] - two).abs()))
}

/// Bracket for the `index`-th (1-based) eigenvalue of `variant`.
pub fn bracketed_eigenvalue(geometry: &Geometry, variant: SymmetryVariant, index: usize, opts: &BracketOptions) -> Result<Bracket> {
    if geometry.delta() < MIN_DELTA - 1e-12 {
        return Err(Error::OutOfValidity(format!("finite-difference oracle needs delta >= {MIN_DELTA}, got {}", geometry.delta())));
    }
    if index == 0 {
        return Err(Error::InvalidArgument("eigenvalue index is 1-based".into()));
    }
    let mut h = opts.h_list.clone();
    if h.len() < 2 {
        return Err(Error::InsufficientData("bracket needs at least two grid steps".into()));
    }
    h.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let x_end = opts.x_end.unwrap_or_else(|| default_truncation(geometry, h[0]));
    let jobs: Vec<(TruncBc, f64)> = TruncBc::ALL.iter().flat_map(|&bc| h.iter().map(move |&s| (bc, s))).collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(|&(bc, step)| {
            let spec = GridSpec::new(step, x_end, bc)?;
            let op = assemble_grid(geometry, variant, &spec)?;
            let ev = lowest_eigenvalues(&op, index, opts.rel_tol * 8.0 / (step * step))?;
            Ok(ev[index - 1])
        })
        .collect::<Result<_>>()?;
    let (dirichlet, neumann) = values.split_at(h.len());
    let (ed, wd) = richardson(&h, dirichlet)?;
    let (en, wn) = richardson(&h, neumann)?;
    if (dirichlet[h.len() - 1] - neumann[h.len() - 1]).abs() > TRUNCATION_GAP {
        return Err(Error::OutOfValidity(format!(
            "truncation at X = {x_end} is too short: Dirichlet and Neumann values differ by {:e}",
            (dirichlet[h.len() - 1] - neumann[h.len() - 1]).abs()
        )));
    }
    if ed.max(en) >= NU1 {
        return Err(Error::OutOfValidity(format!("eigenvalue {index} is not below the threshold")));
    }
    let lo = (ed - wd).min(en - wn);
    let hi = (ed + wd).max(en + wn);
    Ok(Bracket {
        lo,
        hi,
        width: hi - lo,
        x_end,
        h_list: h,
        dirichlet: dirichlet.to_vec(),
        neumann: neumann.to_vec(),
        extrapolated: (ed, en),
    })
}
