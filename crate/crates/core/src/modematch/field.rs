//! Matched eigenfunctions.

use nalgebra::DVector;

use super::bases::{left_mode, right_mode};
use super::system::MatchingOperator;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, SymmetryVariant};

/// Eigenfunction reconstructed from the null vector of the reduced matrix.
///
/// In the strip `u = sum_k b_k eta_k(y) exp(-beta_k (x - a))`; in the
/// channel `u = sum_j c_j X_j(x) hat_eta_j(y)` with `X_j(a) = 1`. The null
/// vector `w` holds the aperture flux coefficients, `c = D^{-1} w` and
/// `b = -B^{-1} O^T w`.
#[derive(Debug, Clone)]
pub struct MatchedMode {
    geometry: Geometry,
    variant: SymmetryVariant,
    lambda: f64,
    w: DVector<f64>,
    b: DVector<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
    residual: f64,
}

impl MatchedMode {
    pub fn from_operator(op: &MatchingOperator, lambda: f64) -> Result<Self> {
        let c = op.reduced_matrix(lambda)?;
        let eig = c.symmetric_eigen();
        let imin = eig.eigenvalues.imin();
        let mut w: DVector<f64> = eig.eigenvectors.column(imin).into_owned();
        let system = op.assemble(lambda)?;
        let o = op.overlap();
        let mut b = -(o.transpose() * &w);
        for (k, beta) in system.beta.iter().enumerate() {
            b[k] /= beta;
        }
        let norm = b.norm();
        let sign = if b[0] < 0.0 { -1.0 } else { 1.0 };
        b *= sign / norm;
        w *= sign / norm;
        let residual = system.apply(&b).norm() / system.scale();
        Ok(Self { geometry: op.geometry(), variant: op.variant(), lambda, w, b, gamma: op.gammas(lambda), beta: system.beta, residual })
    }

    pub fn new(geometry: &Geometry, variant: SymmetryVariant, lambda: f64, n_left: usize, n_right: usize) -> Result<Self> {
        Self::from_operator(&MatchingOperator::new(*geometry, variant, n_left, n_right)?, lambda)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn variant(&self) -> SymmetryVariant {
        self.variant
    }

    /// Strip coefficients `b_k`, unit norm with `b_1 >= 0`.
    pub fn right_coefficients(&self) -> &DVector<f64> {
        &self.b
    }

    /// Aperture flux coefficients.
    pub fn flux_coefficients(&self) -> &DVector<f64> {
        &self.w
    }

    /// `|A b| / scale` for the unit coefficient vector.
    pub fn matching_residual(&self) -> f64 {
        self.residual
    }

    /// `c_j X_j(x)` and its `x`-derivative, in overflow-free forms.
    fn channel_profile(&self, j: usize, x: f64) -> (f64, f64) {
        let a = self.geometry.a();
        let wj = self.w[j];
        if j == 0 {
            let r = self.lambda.sqrt();
            return match self.variant {
                SymmetryVariant::NeumannAtCut => {
                    let s = -r * (r * a).sin();
                    (wj * (r * x).cos() / s, -wj * r * (r * x).sin() / s)
                }
                SymmetryVariant::DirichletAtCut => {
                    let s = r * (r * a).cos();
                    (wj * (r * x).sin() / s, wj * r * (r * x).cos() / s)
                }
            };
        }
        let g = self.gamma[j - 1];
        let e1 = (g * (x - a)).exp();
        let e2 = (-g * (x + a)).exp();
        let e3 = (-2.0 * g * a).exp();
        match self.variant {
            // cosh(g x) / (g sinh(g a))
            SymmetryVariant::NeumannAtCut => (wj * (e1 + e2) / (g * (1.0 - e3)), wj * (e1 - e2) / (1.0 - e3)),
            // sinh(g x) / (g cosh(g a))
            SymmetryVariant::DirichletAtCut => (wj * (e1 - e2) / (g * (1.0 + e3)), wj * (e1 + e2) / (1.0 + e3)),
        }
    }

    fn left_value(&self, x: f64, y: f64) -> (f64, f64) {
        let delta = self.geometry.delta();
        let mut u = 0.0;
        let mut ux = 0.0;
        for j in 0..self.w.len() {
            let (p, dp) = self.channel_profile(j, x);
            let e = left_mode(j, y, delta);
            u += p * e;
            ux += dp * e;
        }
        (u, ux)
    }

    fn right_value(&self, x: f64, y: f64) -> (f64, f64) {
        let a = self.geometry.a();
        let mut u = 0.0;
        let mut ux = 0.0;
        for (k, (bk, beta)) in self.b.iter().zip(&self.beta).enumerate() {
            let e = right_mode(k + 1, y) * (-beta * (x - a)).exp();
            u += bk * e;
            ux -= beta * bk * e;
        }
        (u, ux)
    }

    /// Field value; the channel expansion is used for `x < a`, the strip
    /// expansion for `x >= a`.
    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.value_and_dx(x, y)?.0)
    }

    /// Field value and `du/dx`.
    pub fn value_and_dx(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        if !self.geometry.contains(x, y) {
            return Err(Error::OutsideDomain { x, y });
        }
        Ok(if x < self.geometry.a() { self.left_value(x, y) } else { self.right_value(x, y) })
    }

    /// Both one-sided limits at `x = a` for a point on the aperture.
    pub fn aperture_traces(&self, y: f64) -> Result<(f64, f64)> {
        let a = self.geometry.a();
        if !self.geometry.contains(a, y) || y < 1.0 - self.geometry.delta() {
            return Err(Error::OutsideDomain { x: a, y });
        }
        Ok((self.left_value(a, y).0, self.right_value(a, y).0))
    }

    /// L2 norm of `du/dx(a+, y)` over the obstacle face `0 < y < 1 - delta`.
    pub fn face_flux_l2(&self) -> f64 {
        let top = 1.0 - self.geometry.delta();
        let panels = (self.b.len() / 2).max(8);
        let a = self.geometry.a();
        crate::oned::quadrature::uniform(|y| self.right_value(a, y).1.powi(2), 0.0, top, panels).sqrt()
    }

    /// L2 norm of the field over the strip part `x > a` (closed form).
    pub fn right_norm(&self) -> f64 {
        self.b.iter().zip(&self.beta).map(|(b, beta)| b * b / (2.0 * beta)).sum::<f64>().sqrt()
    }

    /// Longitudinal decay rate of the dominant strip mode.
    pub fn decay_rate(&self) -> f64 {
        self.beta[0]
    }

    /// Samples `(x, y, u)` on a regular grid over `[0, x_max] x [0, 1]`,
    /// skipping points inside the obstacle.
    pub fn sample_grid(&self, x_max: f64, nx: usize, ny: usize) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        for i in 0..=nx {
            let x = x_max * i as f64 / nx as f64;
            for j in 0..=ny {
                let y = j as f64 / ny as f64;
                if let Ok(u) = self.value(x, y) {
                    out.push((x, y, u));
                }
            }
        }
        out
    }
}

/// Field of a matched mode at `(x, y)`.
pub fn field_evaluate(mode: &MatchedMode, x: f64, y: f64) -> Result<f64> {
    mode.value(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_geometry, NU1};
    use crate::modematch::solver::{eigenvalues_below_threshold, SolveOptions};

    fn mode(nl: usize, nr: usize) -> MatchedMode {
        let g = make_geometry(0.5, 0.1).unwrap();
        let opts = SolveOptions { n_left: Some(nl), n_right: nr, auto_refine: false, ..Default::default() };
        let r = eigenvalues_below_threshold(&g, SymmetryVariant::NeumannAtCut, &opts).unwrap();
        MatchedMode::new(&g, SymmetryVariant::NeumannAtCut, r.values[0], nl, nr).unwrap()
    }

    fn continuity(m: &MatchedMode) -> (f64, f64) {
        let umax = m.sample_grid(3.0, 60, 40).iter().map(|s| s.2.abs()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        let mut l2 = 0.0;
        for i in 0..50 {
            let y = 0.9 + 0.1 * (i as f64 + 0.5) / 50.0;
            let (l, r) = m.aperture_traces(y).unwrap();
            worst = worst.max((l - r).abs());
            l2 += (l - r).powi(2) * 0.1 / 50.0;
        }
        (worst / umax, l2.sqrt() / umax)
    }

    #[test]
    fn traces_agree_on_the_aperture() {
        let coarse = continuity(&mode(10, 100));
        let fine = continuity(&mode(40, 400));
        assert!(fine.0 < 2e-3, "{fine:?}");
        assert!(fine.1 < coarse.1 && fine.1 < 1e-4, "{coarse:?} {fine:?}");
    }

    #[test]
    fn face_flux_decreases_with_truncation() {
        let f: Vec<f64> = [(5, 50), (20, 200), (80, 800)].iter().map(|&(l, r)| mode(l, r).face_flux_l2()).collect();
        assert!(f[1] < f[0] && f[2] < f[1], "{f:?}");
    }

    #[test]
    fn dirichlet_line_and_domain() {
        let m = mode(10, 100);
        for x in [0.5, 0.8, 2.0, 7.0] {
            assert_eq!(m.value(x, 0.0).unwrap(), 0.0);
        }
        assert!(matches!(m.value(0.2, 0.5), Err(Error::OutsideDomain { .. })));
        assert!(m.value(-0.1, 0.95).is_err());
        assert!(m.matching_residual() < 1e-12);
        assert!(m.right_coefficients()[0] > 0.0);
    }

    #[test]
    fn field_decays_along_the_strip() {
        let m = mode(20, 200);
        let u1 = m.value(5.0, 0.5).unwrap();
        let u2 = m.value(6.0, 0.5).unwrap();
        let rate = (u1 / u2).ln();
        assert!((rate - m.decay_rate()).abs() < 1e-6);
        assert!((m.decay_rate() - (NU1 - m.lambda()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn neumann_cut_has_zero_normal_derivative() {
        let m = mode(10, 100);
        let (_, ux) = m.value_and_dx(0.0, 0.95).unwrap();
        assert!(ux.abs() < 1e-12);
    }

    #[test]
    fn dirichlet_cut_field_vanishes_at_the_cut() {
        let g = make_geometry(1.5, 0.1).unwrap();
        let r = eigenvalues_below_threshold(&g, SymmetryVariant::DirichletAtCut, &SolveOptions::default()).unwrap();
        let m = MatchedMode::new(&g, SymmetryVariant::DirichletAtCut, r.values[0], 10, 100).unwrap();
        assert!(m.value(0.0, 0.95).unwrap().abs() < 1e-12);
        assert!(m.value(0.7, 0.95).unwrap().abs() > 1e-3);
    }
}
