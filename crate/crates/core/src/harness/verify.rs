//! End-to-end verification of the asymptotic statements for one `a`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::config::Config;
use super::fit::{fit_rate, FitResult};
use super::records::{unix_time, Method, SweepRecord, CODE_VERSION};
use super::sweep::{sweep, trial_family, SweepOptions};
use crate::asymptotics::{eigen_count, m_of_a, predict, Regime};
use crate::fdoracle::bracketed_eigenvalue;
use crate::geometry::{Geometry, SymmetryVariant};
use crate::modematch::merged_spectrum;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub target: f64,
    pub tol: f64,
}

impl Check {
    /// Passes when `|value - target| <= tol`.
    pub fn band(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self { name: name.into(), pass: (value - target).abs() <= tol, value, target, tol }
    }

    /// Passes when `value >= target - tol`.
    pub fn at_least(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self { name: name.into(), pass: value >= target - tol, value, target, tol }
    }

    fn failed(name: impl Into<String>, target: f64) -> Self {
        Self { name: name.into(), pass: false, value: f64::NAN, target, tol: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub inputs: Value,
    pub predictions: Value,
    pub measurements: Value,
    pub checks: Vec<Check>,
    /// Run information excluded from comparisons.
    pub metadata: Value,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn checks_json(&self) -> String {
        serde_json::to_string(&self.checks).expect("checks serialize")
    }
}

fn record_view(r: &SweepRecord) -> Value {
    json!({
        "delta": r.delta,
        "variant": r.variant.label(),
        "method": r.method.label(),
        "index": r.index,
        "lambda": r.lambda,
        "residual": r.residual,
        "status": r.status,
    })
}

fn count_checks(a: f64, cfg: &Config, checks: &mut Vec<Check>, measurements: &mut serde_json::Map<String, Value>) {
    let split = eigen_count(a);
    let geometry = match Geometry::new(a, cfg.count_delta) {
        Ok(g) => g,
        Err(e) => {
            measurements.insert("count_error".into(), json!(e.to_string()));
            checks.push(Check::failed("count_total", split.total as f64));
            return;
        }
    };
    match merged_spectrum(&geometry, &cfg.solve_options()) {
        Ok((merged, [n, d])) => {
            let labels: Vec<&str> = merged.iter().map(|e| e.variant.label()).collect();
            let alternates = merged
                .iter()
                .enumerate()
                .all(|(i, e)| e.variant == if i % 2 == 0 { SymmetryVariant::NeumannAtCut } else { SymmetryVariant::DirichletAtCut });
            let top_ok = merged.last().map(|e| (e.variant == SymmetryVariant::NeumannAtCut) == (merged.len() % 2 == 1));
            measurements.insert(
                "count".into(),
                json!({"delta": cfg.count_delta, "merged": merged.iter().map(|e| e.lambda).collect::<Vec<_>>(), "labels": labels}),
            );
            checks.push(Check::band("count_total", merged.len() as f64, split.total as f64, 0.0));
            checks.push(Check::band("count_from_n", n.values.len() as f64, split.from_n as f64, 0.0));
            checks.push(Check::band("count_from_d", d.values.len() as f64, split.from_d as f64, 0.0));
            checks.push(Check::band("alternation", f64::from(u8::from(alternates)), 1.0, 0.0));
            checks.push(Check::band("top_parity", f64::from(u8::from(top_ok == Some(true))), 1.0, 0.0));
        }
        Err(e) => {
            measurements.insert("count_error".into(), json!(e.to_string()));
            checks.push(Check::failed("count_total", split.total as f64));
        }
    }
}

fn rate_checks(a: f64, fit: &FitResult, cfg: &Config, checks: &mut Vec<Check>) {
    let m = m_of_a(a).unwrap_or(f64::NAN);
    match fit.regime {
        Regime::FractionalA => {
            let mid = 0.5 * (cfg.slope_min + cfg.slope_max);
            let half = 0.5 * (cfg.slope_max - cfg.slope_min);
            checks.push(Check::band("exponent_mean", fit.p_hat, mid, half));
            checks.push(Check::band("m_hat", fit.m_hat, m, cfg.m_rel_tol * m));
        }
        Regime::IntegerA => {
            let mid = 0.5 * (cfg.integer_slope_min + cfg.integer_slope_max);
            let half = 0.5 * (cfg.integer_slope_max - cfg.integer_slope_min);
            for (i, p) in fit.exponent_estimates.iter().enumerate() {
                checks.push(Check::band(format!("exponent_slope_{}", i + 1), *p, mid, half));
            }
            let two = fit.two_term.as_ref().map_or(f64::NAN, |t| t.m);
            checks.push(Check::band("m_hat_two_term", two, m, cfg.integer_m_rel_tol * m));
        }
    }
}

/// Runs the count, rate, dominance and oracle checks for half-length `a`.
/// Failures become report content.
pub fn verify(a: f64, cfg: &Config) -> Report {
    let mut checks = Vec::new();
    let mut measurements = serde_json::Map::new();
    let split = eigen_count(a);
    let regime = Regime::of(a);
    let variant = split.top_variant();
    let deltas = match regime {
        Regime::FractionalA => cfg.fractional_deltas.clone(),
        Regime::IntegerA => cfg.integer_deltas.clone(),
    };
    let predictions = json!({
        "regime": regime,
        "m": m_of_a(a).ok(),
        "exponent": regime.exponent(),
        "remainder_order": regime.remainder_order(),
        "count": split,
        "top_variant": variant.label(),
        "leading": deltas.iter().filter_map(|&d| Geometry::new(a, d).ok().map(|g| predict(&g).lambda_leading)).collect::<Vec<_>>(),
    });

    count_checks(a, cfg, &mut checks, &mut measurements);

    let opts = SweepOptions { solve: cfg.solve_options(), bracket: cfg.bracket_options(), all: true };
    let solved = sweep(a, &deltas, variant, Method::Modematch, &opts);
    match &solved {
        Ok(recs) => {
            measurements.insert("modematch".into(), recs.iter().map(record_view).collect());
            match fit_rate(recs) {
                Ok(fit) => {
                    rate_checks(a, &fit, cfg, &mut checks);
                    measurements.insert("fit".into(), serde_json::to_value(&fit).unwrap_or(Value::Null));
                }
                Err(e) => {
                    measurements.insert("fit_error".into(), json!(e.to_string()));
                    checks.push(Check::failed("rate_fit", regime.exponent()));
                }
            }
        }
        Err(e) => {
            measurements.insert("sweep_error".into(), json!(e.to_string()));
            checks.push(Check::failed("rate_fit", regime.exponent()));
        }
    }

    // upper bounds from the trial family, index by index
    let family_ok = deltas.first().and_then(|&d| Geometry::new(a, d).ok()).map(|g| trial_family(&g, variant).is_ok());
    if family_ok == Some(true) {
        if let (Ok(solved), Ok(bounds)) = (&solved, sweep(a, &deltas, variant, Method::Rayleigh, &opts)) {
            measurements.insert("rayleigh".into(), bounds.iter().map(record_view).collect());
            let mut worst = f64::INFINITY;
            for b in bounds.iter().filter(|r| r.is_ok()) {
                if let Some(s) = solved.iter().find(|s| s.is_ok() && s.delta == b.delta && s.index == b.index) {
                    worst = worst.min(b.lambda - s.lambda);
                }
            }
            if worst.is_finite() {
                checks.push(Check::at_least("upper_bound_dominance", worst, 0.0, cfg.dominance_tol));
            } else {
                checks.push(Check::failed("upper_bound_dominance", 0.0));
            }
        }
    }

    if cfg.oracle {
        let top_index = split.from_variant(variant);
        let oracle = Geometry::new(a, cfg.oracle_delta).and_then(|g| {
            let b = bracketed_eigenvalue(&g, variant, top_index, &cfg.bracket_options())?;
            let s = sweep(a, &[cfg.oracle_delta], variant, Method::Modematch, &opts)?;
            Ok((b, s))
        });
        match oracle {
            Ok((b, s)) => {
                let mm = s.iter().find(|r| r.is_ok() && r.index == top_index).map_or(f64::NAN, |r| r.lambda);
                measurements.insert(
                    "oracle".into(),
                    json!({"delta": cfg.oracle_delta, "index": top_index, "lo": b.lo, "hi": b.hi, "modematch": mm}),
                );
                checks.push(Check::band("oracle_bracket", mm, b.center(), b.width / 2.0));
                checks.push(Check::band("oracle_width", b.width, 0.0, cfg.oracle_width));
            }
            Err(e) => {
                measurements.insert("oracle_error".into(), json!(e.to_string()));
            }
        }
    }

    Report {
        inputs: json!({"a": a, "config": cfg.to_pairs()}),
        predictions,
        measurements: Value::Object(measurements),
        checks,
        metadata: json!({"timestamp": unix_time(), "version": CODE_VERSION}),
    }
}
