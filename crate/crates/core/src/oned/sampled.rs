//! Sampled one-dimensional profiles carried into the lemma checkers.

use std::fmt;
use std::sync::Arc;

use super::quadrature;
use crate::error::{Error, Result};

/// End condition for a cubic interpolating spline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplineEnd {
    /// Zero second derivative.
    Natural,
    /// Prescribed first derivative.
    Clamped(f64),
}

/// Cubic interpolating spline stored as node values plus second derivatives.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>, start: SplineEnd, end: SplineEnd) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::TooFewNodes { needed: 3, got: n.min(y.len()) });
        }
        // tridiagonal system for the second derivatives
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        match start {
            SplineEnd::Natural => diag[0] = 1.0,
            SplineEnd::Clamped(d) => {
                diag[0] = h[0] / 3.0;
                sup[0] = h[0] / 6.0;
                rhs[0] = (y[1] - y[0]) / h[0] - d;
            }
        }
        for i in 1..n - 1 {
            sub[i] = h[i - 1] / 6.0;
            diag[i] = (h[i - 1] + h[i]) / 3.0;
            sup[i] = h[i] / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1];
        }
        match end {
            SplineEnd::Natural => diag[n - 1] = 1.0,
            SplineEnd::Clamped(d) => {
                sub[n - 1] = h[n - 2] / 6.0;
                diag[n - 1] = h[n - 2] / 3.0;
                rhs[n - 1] = d - (y[n - 1] - y[n - 2]) / h[n - 2];
            }
        }
        // Thomas algorithm
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Ok(Self { x, y, m })
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i] + b * self.y[i + 1] + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        (self.y[i + 1] - self.y[i]) / h + ((1.0 - 3.0 * a * a) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * h / 6.0
    }
}

/// How derivatives of a [`SampledFunction`] are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeRule {
    Spline,
    Analytic,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Spline(CubicSpline),
    Analytic { f: RealFn, df: RealFn },
}

/// A profile on `[nodes[0], nodes[last]]`, either interpolated from samples
/// or given by closed-form value and derivative closures. The nodes double
/// as quadrature panel breakpoints.
#[derive(Clone)]
pub struct SampledFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
    repr: Repr,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field("nodes", &self.nodes.len())
            .field("domain", &(self.start(), self.end()))
            .field("rule", &self.rule())
            .finish()
    }
}

fn check_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.len() < 3 {
        return Err(Error::TooFewNodes { needed: 3, got: nodes.len() });
    }
    if nodes.windows(2).any(|w| !(w[1] > w[0])) || nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("nodes must be finite and strictly ascending".into()));
    }
    Ok(())
}

impl SampledFunction {
    /// Natural cubic spline through the samples.
    pub fn from_samples(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::from_samples_with_ends(nodes, values, SplineEnd::Natural, SplineEnd::Natural)
    }

    pub fn from_samples_with_ends(nodes: Vec<f64>, values: Vec<f64>, start: SplineEnd, end: SplineEnd) -> Result<Self> {
        check_nodes(&nodes)?;
        if values.len() != nodes.len() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("values must be finite, one per node".into()));
        }
        let spline = CubicSpline::new(nodes.clone(), values.clone(), start, end)?;
        Ok(Self { nodes, values, repr: Repr::Spline(spline) })
    }

    pub fn analytic<F, D>(nodes: Vec<f64>, f: F, df: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_nodes(&nodes)?;
        let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("profile is not finite at the nodes".into()));
        }
        Ok(Self { nodes, values, repr: Repr::Analytic { f: Arc::new(f), df: Arc::new(df) } })
    }

    /// Analytic profile on `n` equal panels of `[lo, hi]`.
    pub fn analytic_uniform<F, D>(lo: f64, hi: f64, panels: usize, f: F, df: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::analytic(uniform_nodes(lo, hi, panels), f, df)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn rule(&self) -> DerivativeRule {
        match self.repr {
            Repr::Spline(_) => DerivativeRule::Spline,
            Repr::Analytic { .. } => DerivativeRule::Analytic,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::Spline(s) => s.value(x),
            Repr::Analytic { f, .. } => f(x),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::Spline(s) => s.derivative(x),
            Repr::Analytic { df, .. } => df(x),
        }
    }

    /// `int g(x, f(x), f'(x)) dx` over the whole domain, one Gauss-Legendre
    /// panel per node interval.
    pub fn integrate<G: Fn(f64, f64, f64) -> f64>(&self, g: G) -> f64 {
        quadrature::composite(|x| g(x, self.value(x), self.derivative(x)), &self.nodes)
    }
}

pub fn uniform_nodes(lo: f64, hi: f64, panels: usize) -> Vec<f64> {
    (0..=panels).map(|i| lo + (hi - lo) * i as f64 / panels as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_cubic_with_clamped_ends() {
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
        let df = |x: f64| -2.0 + 1.5 * x * x;
        let x = uniform_nodes(0.0, 2.0, 7);
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let s = SampledFunction::from_samples_with_ends(x, y, SplineEnd::Clamped(df(0.0)), SplineEnd::Clamped(df(2.0))).unwrap();
        for i in 0..=40 {
            let t = i as f64 * 0.05;
            assert!((s.value(t) - f(t)).abs() < 1e-12);
            assert!((s.derivative(t) - df(t)).abs() < 1e-11);
        }
    }

    #[test]
    fn natural_spline_interpolates() {
        let x = vec![0.0, 0.3, 1.0, 1.4];
        let y = vec![1.0, -1.0, 2.0, 0.5];
        let s = SampledFunction::from_samples(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((s.value(*xi) - yi).abs() < 1e-14);
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(SampledFunction::from_samples(vec![0.0, 1.0], vec![0.0, 1.0]), Err(Error::TooFewNodes { .. })));
        assert!(SampledFunction::from_samples(vec![0.0, 1.0, 0.5], vec![0.0; 3]).is_err());
        assert!(SampledFunction::from_samples(vec![0.0, 0.5, 1.0], vec![0.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn integrate_analytic() {
        let f = SampledFunction::analytic_uniform(0.0, 1.0, 4, |x| x.exp(), |x| x.exp()).unwrap();
        let v = f.integrate(|_, v, d| v * d);
        assert!((v - 0.5 * (1f64.exp().powi(2) - 1.0)).abs() < 1e-13);
        assert_eq!(f.rule(), DerivativeRule::Analytic);
    }
}
