//! Convergence-rate extraction from sweep records.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::records::{Method, SweepRecord};
use crate::asymptotics::Regime;
use crate::error::{Error, Result};
use crate::geometry::SymmetryVariant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoTermFit {
    /// Coefficient of `delta^{2/3}`.
    pub m: f64,
    /// Coefficient of `delta^{4/3}`.
    pub c: f64,
    /// Relative residual norm of the fit.
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a: f64,
    pub variant: SymmetryVariant,
    pub method: Method,
    pub regime: Regime,
    pub deltas: Vec<f64>,
    pub gaps: Vec<f64>,
    /// `log(g_i / g_{i+1}) / log(delta_i / delta_{i+1})`.
    pub exponent_estimates: Vec<f64>,
    pub p_hat: f64,
    /// Exponent held fixed for `m_hat`.
    pub p_fixed: f64,
    /// Least squares in log space with the exponent fixed: the geometric
    /// mean of `g / delta^p`.
    pub m_hat: f64,
    /// Linear least squares `sum g delta^p / sum delta^{2p}`.
    pub m_hat_linear: f64,
    /// Free exponent and constant from a straight line in log space.
    /// Reported only.
    pub free_fit: (f64, f64),
    pub two_term: Option<TwoTermFit>,
    /// RMS of `log g - log(m_hat delta^p)`.
    pub residual_norm: f64,
}

/// Rate fit of the threshold gap. Uses the highest index at each delta;
/// failed records are skipped.
pub fn fit_rate(records: &[SweepRecord]) -> Result<FitResult> {
    let ok: Vec<&SweepRecord> = records.iter().filter(|r| r.is_ok()).collect();
    let first = *ok.first().ok_or_else(|| Error::InsufficientData("no successful records".into()))?;
    if ok.iter().any(|r| r.a != first.a || r.variant != first.variant || r.method != first.method) {
        return Err(Error::InvalidArgument("records mix geometries, variants or methods".into()));
    }
    let mut order: Vec<f64> = Vec::new();
    let mut top: BTreeMap<u64, &SweepRecord> = BTreeMap::new();
    for r in &ok {
        let key = r.delta.to_bits();
        match top.get(&key) {
            Some(prev) if prev.index >= r.index => {}
            _ => {
                if !top.contains_key(&key) {
                    order.push(r.delta);
                }
                top.insert(key, r);
            }
        }
    }
    if order.len() < 3 {
        return Err(Error::InsufficientData(format!("need at least 3 sweep points, got {}", order.len())));
    }
    if order.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument("delta must be strictly decreasing".into()));
    }
    let deltas = order.clone();
    let gaps: Vec<f64> = deltas.iter().map(|d| top[&d.to_bits()].gap()).collect();
    if let Some(g) = gaps.iter().find(|g| !(**g > 0.0)) {
        return Err(Error::InvalidArgument(format!("non-positive threshold gap {g}")));
    }
    let regime = Regime::of(first.a);
    let p = regime.exponent();
    let exponent_estimates: Vec<f64> =
        (0..deltas.len() - 1).map(|i| (gaps[i] / gaps[i + 1]).ln() / (deltas[i] / deltas[i + 1]).ln()).collect();
    let p_hat = exponent_estimates.iter().sum::<f64>() / exponent_estimates.len() as f64;

    let n = deltas.len() as f64;
    let logs: Vec<f64> = deltas.iter().zip(&gaps).map(|(d, g)| g.ln() - p * d.ln()).collect();
    let log_m = logs.iter().sum::<f64>() / n;
    let m_hat = log_m.exp();
    let residual_norm = (logs.iter().map(|l| (l - log_m).powi(2)).sum::<f64>() / n).sqrt();
    let num: f64 = deltas.iter().zip(&gaps).map(|(d, g)| g * d.powf(p)).sum();
    let den: f64 = deltas.iter().map(|d| d.powf(2.0 * p)).sum();
    let m_hat_linear = num / den;

    let lx: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ly: Vec<f64> = gaps.iter().map(|g| g.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let free_fit = (slope, (my - slope * mx).exp());

    let two_term = match regime {
        Regime::IntegerA => Some(two_term_fit(&deltas, &gaps)?),
        Regime::FractionalA => None,
    };
    Ok(FitResult {
        a: first.a,
        variant: first.variant,
        method: first.method,
        regime,
        deltas,
        gaps,
        exponent_estimates,
        p_hat,
        p_fixed: p,
        m_hat,
        m_hat_linear,
        free_fit,
        two_term,
        residual_norm,
    })
}

/// `g = m delta^{2/3} + c delta^{4/3}` in relative least squares (each row
/// divided by `g`).
pub fn two_term_fit(deltas: &[f64], gaps: &[f64]) -> Result<TwoTermFit> {
    if deltas.len() < 2 || deltas.len() != gaps.len() {
        return Err(Error::InsufficientData("two-term fit needs matching data of length >= 2".into()));
    }
    let k = deltas.len();
    let a = DMatrix::from_fn(k, 2, |i, j| deltas[i].powf(2.0 * (j + 1) as f64 / 3.0) / gaps[i]);
    let b = DVector::from_element(k, 1.0);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-14).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let r = &a * &x - &b;
    Ok(TwoTermFit { m: x[0], c: x[1], residual_norm: r.norm() / (k as f64).sqrt() })
}
