//! Plain `key = value` configuration for verification runs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdoracle::BracketOptions;
use crate::modematch::SolveOptions;

/// Every key with its default and a one-line description.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("fractional_deltas", "0.2,0.1,0.05,0.025", "sweep for non-integer a"),
    ("integer_deltas", "0.02,0.01,0.005,0.0025", "sweep for integer a"),
    ("slope_min", "1.85", "lower end of the exponent band, non-integer a"),
    ("slope_max", "2.15", "upper end of the exponent band, non-integer a"),
    ("m_rel_tol", "0.10", "relative band for the fitted constant, non-integer a"),
    ("integer_slope_min", "0.60", "lower end of the band for every successive slope, integer a"),
    ("integer_slope_max", "0.74", "upper end of the band for every successive slope, integer a"),
    ("integer_m_rel_tol", "0.05", "relative band for the two-term constant, integer a"),
    ("count_delta", "0.1", "delta used for the count and alternation checks"),
    ("dominance_tol", "1e-8", "slack allowed when comparing upper bounds with solver values"),
    ("oracle", "true", "run the finite-difference bracket check"),
    ("oracle_delta", "0.2", "delta for the bracket check"),
    ("oracle_width", "2e-3", "largest accepted bracket width"),
    ("oracle_h_list", "0.05,0.025,0.0125", "grid steps for the bracket"),
    ("solver_tol", "1e-8", "mode-matching refinement tolerance"),
    ("n_right", "200", "minimum number of strip modes"),
    ("max_levels", "6", "mode-matching refinement levels"),
    ("scan_points", "256", "grid size for the mode-matching count scan"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub fractional_deltas: Vec<f64>,
    pub integer_deltas: Vec<f64>,
    pub slope_min: f64,
    pub slope_max: f64,
    pub m_rel_tol: f64,
    pub integer_slope_min: f64,
    pub integer_slope_max: f64,
    pub integer_m_rel_tol: f64,
    pub count_delta: f64,
    pub dominance_tol: f64,
    pub oracle: bool,
    pub oracle_delta: f64,
    pub oracle_width: f64,
    pub oracle_h_list: Vec<f64>,
    pub solver_tol: f64,
    pub n_right: usize,
    pub max_levels: usize,
    pub scan_points: usize,
}

impl Default for Config {
    fn default() -> Self {
        let mut c = Config {
            fractional_deltas: vec![],
            integer_deltas: vec![],
            slope_min: 0.0,
            slope_max: 0.0,
            m_rel_tol: 0.0,
            integer_slope_min: 0.0,
            integer_slope_max: 0.0,
            integer_m_rel_tol: 0.0,
            count_delta: 0.0,
            dominance_tol: 0.0,
            oracle: false,
            oracle_delta: 0.0,
            oracle_width: 0.0,
            oracle_h_list: vec![],
            solver_tol: 0.0,
            n_right: 0,
            max_levels: 0,
            scan_points: 0,
        };
        for (k, v, _) in KEYS {
            c.set(k, v).expect("built-in defaults parse");
        }
        c
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse().map_err(|_| Error::Parse(format!("{key}: expected a number, got '{v}'")))
}

fn count(key: &str, v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::Parse(format!("{key}: expected a non-negative integer, got '{v}'")))
}

fn list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| num(key, s.trim())).collect()
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "fractional_deltas" => self.fractional_deltas = list(key, v)?,
            "integer_deltas" => self.integer_deltas = list(key, v)?,
            "slope_min" => self.slope_min = num(key, v)?,
            "slope_max" => self.slope_max = num(key, v)?,
            "m_rel_tol" => self.m_rel_tol = num(key, v)?,
            "integer_slope_min" => self.integer_slope_min = num(key, v)?,
            "integer_slope_max" => self.integer_slope_max = num(key, v)?,
            "integer_m_rel_tol" => self.integer_m_rel_tol = num(key, v)?,
            "count_delta" => self.count_delta = num(key, v)?,
            "dominance_tol" => self.dominance_tol = num(key, v)?,
            "oracle" => self.oracle = v.parse().map_err(|_| Error::Parse(format!("oracle: expected true or false, got '{v}'")))?,
            "oracle_delta" => self.oracle_delta = num(key, v)?,
            "oracle_width" => self.oracle_width = num(key, v)?,
            "oracle_h_list" => self.oracle_h_list = list(key, v)?,
            "solver_tol" => self.solver_tol = num(key, v)?,
            "n_right" => self.n_right = count(key, v)?,
            "max_levels" => self.max_levels = count(key, v)?,
            "scan_points" => self.scan_points = count(key, v)?,
            _ => return Err(Error::Parse(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Defaults overridden by the lines of `text`. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            c.set(k.trim(), v)?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Current values as sorted `key -> value` strings.
    pub fn to_pairs(&self) -> BTreeMap<String, String> {
        let l = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        [
            ("fractional_deltas", l(&self.fractional_deltas)),
            ("integer_deltas", l(&self.integer_deltas)),
            ("slope_min", format!("{:?}", self.slope_min)),
            ("slope_max", format!("{:?}", self.slope_max)),
            ("m_rel_tol", format!("{:?}", self.m_rel_tol)),
            ("integer_slope_min", format!("{:?}", self.integer_slope_min)),
            ("integer_slope_max", format!("{:?}", self.integer_slope_max)),
            ("integer_m_rel_tol", format!("{:?}", self.integer_m_rel_tol)),
            ("count_delta", format!("{:?}", self.count_delta)),
            ("dominance_tol", format!("{:?}", self.dominance_tol)),
            ("oracle", self.oracle.to_string()),
            ("oracle_delta", format!("{:?}", self.oracle_delta)),
            ("oracle_width", format!("{:?}", self.oracle_width)),
            ("oracle_h_list", l(&self.oracle_h_list)),
            ("solver_tol", format!("{:?}", self.solver_tol)),
            ("n_right", self.n_right.to_string()),
            ("max_levels", self.max_levels.to_string()),
            ("scan_points", self.scan_points.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// Commented listing of every key at its current value.
    pub fn render(&self) -> String {
        let pairs = self.to_pairs();
        KEYS.iter().map(|(k, _, doc)| format!("# {doc}\n{k} = {}\n", pairs[*k])).collect()
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.solver_tol,
            n_right: self.n_right,
            max_levels: self.max_levels,
            scan_points: self.scan_points,
            ..SolveOptions::default()
        }
    }

    pub fn bracket_options(&self) -> BracketOptions {
        BracketOptions { h_list: self.oracle_h_list.clone(), ..BracketOptions::default() }
    }
}
