//! Matching matrices at a trial spectral parameter.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::bases::ModeBases;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, SymmetryVariant, NU1};

/// Relative distance to a singular point of `d_0` below which assembly of
/// the full matrix is refused.
pub const POLE_GUARD: f64 = 1e-12;

/// Geometry, variant and truncation with the overlap matrix cached, ready
/// to be evaluated at many spectral parameters.
#[derive(Debug, Clone)]
pub struct MatchingOperator {
    geometry: Geometry,
    variant: SymmetryVariant,
    bases: ModeBases,
    overlap: Arc<DMatrix<f64>>,
}

/// Right-channel decay rates `beta_k`.
fn betas(lambda: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| (((2 * k - 1) as f64 * PI / 2.0).powi(2) - lambda).sqrt()).collect()
}

impl MatchingOperator {
    pub fn new(geometry: Geometry, variant: SymmetryVariant, n_left: usize, n_right: usize) -> Result<Self> {
        let bases = ModeBases::new(geometry.delta(), n_left, n_right)?;
        let overlap = Arc::new(bases.overlap_matrix());
        Ok(Self { geometry, variant, bases, overlap })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn variant(&self) -> SymmetryVariant {
        self.variant
    }

    pub fn bases(&self) -> ModeBases {
        self.bases
    }

    pub fn truncation(&self) -> (usize, usize) {
        (self.bases.n_left, self.bases.n_right)
    }

    pub fn overlap(&self) -> &DMatrix<f64> {
        &self.overlap
    }

    fn check_lambda(&self, lambda: f64) -> Result<()> {
        if !(lambda > 0.0 && lambda < NU1) {
            return Err(Error::InvalidArgument(format!("spectral parameter must lie in (0, pi^2/4), got {lambda}")));
        }
        Ok(())
    }

    /// Channel decay rates `gamma_j`, `j >= 1`.
    pub fn gammas(&self, lambda: f64) -> Vec<f64> {
        let delta = self.geometry.delta();
        (1..self.bases.n_left).map(|j| ((PI * j as f64 / delta).powi(2) - lambda).sqrt()).collect()
    }

    /// Inverse log-derivatives `1/d_j` of the channel profiles at `x = a`.
    pub fn inverse_log_derivatives(&self, lambda: f64) -> Vec<f64> {
        let a = self.geometry.a();
        let r = lambda.sqrt();
        let mut out = Vec::with_capacity(self.bases.n_left);
        out.push(match self.variant {
            SymmetryVariant::NeumannAtCut => -1.0 / (r * (r * a).tan()),
            SymmetryVariant::DirichletAtCut => (r * a).tan() / r,
        });
        for g in self.gammas(lambda) {
            out.push(match self.variant {
                SymmetryVariant::NeumannAtCut => 1.0 / (g * (g * a).tanh()),
                SymmetryVariant::DirichletAtCut => (g * a).tanh() / g,
            });
        }
        out
    }

    /// Values of `lambda` where `d_0` vanishes, in `(0, upto)`. Between two
    /// consecutive ones the reduced matrix is continuous and increasing.
    pub fn singular_points(&self, upto: f64) -> Vec<f64> {
        let a = self.geometry.a();
        let offset = match self.variant {
            SymmetryVariant::NeumannAtCut => 0.0,
            SymmetryVariant::DirichletAtCut => 0.5,
        };
        (0..).map(|m| ((m as f64 + offset) * PI / a).powi(2)).skip_while(|&l| l <= 0.0).take_while(|&l| l < upto).collect()
    }

    /// Reduced `n_left x n_left` matrix `C = D^{-1} + O B^{-1} O^T`. It is
    /// singular exactly where the full matching matrix is, increasing in
    /// `lambda`, and has at most one negative eigenvalue.
    pub fn reduced_matrix(&self, lambda: f64) -> Result<DMatrix<f64>> {
        self.check_lambda(lambda)?;
        let beta = betas(lambda, self.bases.n_right);
        let mut scaled = (*self.overlap).clone();
        for (k, b) in beta.iter().enumerate() {
            let s = b.sqrt().recip();
            scaled.column_mut(k).scale_mut(s);
        }
        let mut c = &scaled * scaled.transpose();
        for (j, v) in self.inverse_log_derivatives(lambda).into_iter().enumerate() {
            c[(j, j)] += v;
        }
        Ok(c)
    }

    /// Smallest eigenvalue of the reduced matrix.
    pub fn reduced_min_eigenvalue(&self, lambda: f64) -> Result<f64> {
        let c = self.reduced_matrix(lambda)?;
        Ok(c.symmetric_eigenvalues().min())
    }

    /// Whether the reduced matrix is positive definite, i.e. `lambda` lies
    /// above the root of its singular-point interval.
    pub fn reduced_is_positive(&self, lambda: f64) -> Result<bool> {
        Ok(self.reduced_matrix(lambda)?.cholesky().is_some())
    }

    pub fn assemble(&self, lambda: f64) -> Result<MatchingSystem> {
        self.check_lambda(lambda)?;
        let a = self.geometry.a();
        let r = lambda.sqrt();
        let near_pole = match self.variant {
            SymmetryVariant::NeumannAtCut => (r * a).cos().abs(),
            SymmetryVariant::DirichletAtCut => (r * a).sin().abs(),
        };
        if near_pole < POLE_GUARD {
            return Err(Error::PoleProximity { lambda });
        }
        let mut d = Vec::with_capacity(self.bases.n_left);
        d.push(match self.variant {
            SymmetryVariant::NeumannAtCut => -r * (r * a).tan(),
            SymmetryVariant::DirichletAtCut => r / (r * a).tan(),
        });
        for g in self.gammas(lambda) {
            d.push(match self.variant {
                SymmetryVariant::NeumannAtCut => g * (g * a).tanh(),
                SymmetryVariant::DirichletAtCut => g / (g * a).tanh(),
            });
        }
        Ok(MatchingSystem {
            geometry: self.geometry,
            variant: self.variant,
            lambda,
            beta: betas(lambda, self.bases.n_right),
            d,
            overlap: Arc::clone(&self.overlap),
        })
    }
}

/// Matching data at one spectral parameter.
#[derive(Debug, Clone)]
pub struct MatchingSystem {
    pub geometry: Geometry,
    pub variant: SymmetryVariant,
    pub lambda: f64,
    /// Right-channel decay rates.
    pub beta: Vec<f64>,
    /// Channel log-derivatives at `x = a`.
    pub d: Vec<f64>,
    pub overlap: Arc<DMatrix<f64>>,
}

impl MatchingSystem {
    /// Full symmetric matrix `A = diag(beta) + O^T diag(d) O`.
    pub fn a_matrix(&self) -> DMatrix<f64> {
        let o = &*self.overlap;
        let mut scaled = o.clone();
        for (j, dj) in self.d.iter().enumerate() {
            scaled.row_mut(j).scale_mut(*dj);
        }
        let mut a = o.transpose() * scaled;
        for (k, b) in self.beta.iter().enumerate() {
            a[(k, k)] += b;
        }
        a
    }

    /// `A b` without forming `A`.
    pub fn apply(&self, b: &DVector<f64>) -> DVector<f64> {
        let o = &*self.overlap;
        let mut ob = o * b;
        for (j, dj) in self.d.iter().enumerate() {
            ob[j] *= dj;
        }
        let mut out = o.transpose() * ob;
        for (k, beta) in self.beta.iter().enumerate() {
            out[k] += beta * b[k];
        }
        out
    }

    /// Scale used to normalise residuals of `A`.
    pub fn scale(&self) -> f64 {
        let bmax = self.beta.iter().cloned().fold(0.0, f64::max);
        let dmax = self.d.iter().map(|v| v.abs()).fold(0.0, f64::max);
        bmax + dmax
    }

    pub fn reduced_matrix(&self) -> DMatrix<f64> {
        let mut scaled = (*self.overlap).clone();
        for (k, b) in self.beta.iter().enumerate() {
            scaled.column_mut(k).scale_mut(b.sqrt().recip());
        }
        let mut c = &scaled * scaled.transpose();
        for (j, dj) in self.d.iter().enumerate() {
            c[(j, j)] += dj.recip();
        }
        c
    }
}

/// One-shot assembly.
pub fn assemble(geometry: &Geometry, variant: SymmetryVariant, lambda: f64, n_left: usize, n_right: usize) -> Result<MatchingSystem> {
    MatchingOperator::new(*geometry, variant, n_left, n_right)?.assemble(lambda)
}
