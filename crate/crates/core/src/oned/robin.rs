//! `-f'' = mu^2 f` on `(0, a)` with `f'(a) = -sigma f(a)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::roots::{bisect, solve_mu_tan, RootList};
use crate::error::{Error, Result};

/// Condition at the left end `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeftBc {
    Neumann,
    Dirichlet,
}

impl fmt::Display for LeftBc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LeftBc::Neumann => "neumann",
            LeftBc::Dirichlet => "dirichlet",
        })
    }
}

impl FromStr for LeftBc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n" | "neumann" => Ok(LeftBc::Neumann),
            "d" | "dirichlet" => Ok(LeftBc::Dirichlet),
            _ => Err(Error::Parse(format!("unknown left boundary condition '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinProblem {
    a: f64,
    sigma: f64,
    left_bc: LeftBc,
}

impl RobinProblem {
    pub fn new(a: f64, sigma: f64, left_bc: LeftBc) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!("interval length must be positive, got {a}")));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("Robin coefficient must be nonnegative, got {sigma}")));
        }
        Ok(Self { a, sigma, left_bc })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn left_bc(&self) -> LeftBc {
        self.left_bc
    }

    /// Eigenfunction for frequency `mu` (`cos` or `sin` by left condition).
    pub fn eigenfunction(&self, mu: f64, x: f64) -> f64 {
        match self.left_bc {
            LeftBc::Neumann => (mu * x).cos(),
            LeftBc::Dirichlet => (mu * x).sin(),
        }
    }
}

/// Frequencies `mu_j` of the first `count` eigenpairs.
///
/// Neumann-left solves `mu tan(mu a) = sigma`. Dirichlet-left solves
/// `mu cot(mu a) = -sigma`, bisected in the pole-free form
/// `mu cos(mu a) + sigma sin(mu a) = 0` on `((j - 1/2) pi / a, j pi / a)`.
pub fn robin_roots(problem: &RobinProblem, count: usize, tol: f64) -> Result<RootList> {
    let RobinProblem { a, sigma, left_bc } = *problem;
    if count == 0 || !(tol > 0.0) {
        return Err(Error::InvalidArgument("count and tolerance must be positive".into()));
    }
    if sigma == 0.0 {
        let offset = match left_bc {
            LeftBc::Neumann => 0.0,
            LeftBc::Dirichlet => 0.5,
        };
        let roots: Vec<f64> = (0..count).map(|j| (j as f64 + offset) * PI / a).collect();
        let brackets = roots.iter().map(|&r| (r, r)).collect();
        return Ok(RootList { residuals: vec![0.0; count], roots, brackets });
    }
    match left_bc {
        LeftBc::Neumann => solve_mu_tan(a, sigma, count, tol),
        LeftBc::Dirichlet => {
            let h = |mu: f64| mu * (mu * a).cos() + sigma * (mu * a).sin();
            // residual in the cot form; sin(mu a) is bounded away from 0 inside the bracket
            let res = |mu: f64, hv: f64| (hv / (mu * a).sin()).abs();
            let floor = |mu: f64| {
                let s = (mu * a).sin();
                let slope = (mu * a).cos() / s - mu * a / (s * s);
                8.0 * f64::EPSILON * (sigma + mu * slope.abs())
            };
            let mut out = RootList { roots: Vec::new(), residuals: Vec::new(), brackets: Vec::new() };
            for j in 1..=count {
                let lo = (j as f64 - 0.5) * PI / a;
                let hi = j as f64 * PI / a;
                let eps = 1e-12 * (hi - lo);
                let (mu, r) = bisect(h, res, floor, lo + eps, hi - eps, tol)?;
                out.roots.push(mu);
                out.residuals.push(r);
                out.brackets.push((lo, hi));
            }
            Ok(out)
        }
    }
}

/// Eigenvalues `mu_j^2`, ascending.
pub fn robin_eigenvalues(problem: &RobinProblem, count: usize, tol: f64) -> Result<Vec<f64>> {
    Ok(robin_roots(problem, count, tol)?.roots.into_iter().map(|m| m * m).collect())
}
