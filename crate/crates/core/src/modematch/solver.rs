//! Root finding below the threshold with truncation refinement.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::MatchedMode;
use super::system::MatchingOperator;
use crate::asymptotics::eigen_count;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, SymmetryVariant, NU1};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Points of the sign scan used to cross-check the analytic brackets.
    pub scan_points: usize,
    /// Convergence tolerance on the eigenvalues under truncation refinement.
    pub tol: f64,
    /// Fixed channel truncation; derived from `n_right` when absent.
    pub n_left: Option<usize>,
    pub n_right: usize,
    pub auto_refine: bool,
    /// Truncation levels tried at most (each doubles both truncations).
    pub max_levels: usize,
    pub lambda_min: f64,
    /// Distance below the threshold where the scan stops.
    pub margin: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { scan_points: 256, tol: 1e-8, n_left: None, n_right: 200, auto_refine: true, max_levels: 6, lambda_min: 1e-6, margin: 1e-12 }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if self.scan_points < 64 {
            return Err(Error::InvalidArgument(format!("scan_points must be at least 64, got {}", self.scan_points)));
        }
        if !(self.tol > 0.0) || self.n_right == 0 || self.max_levels == 0 {
            return Err(Error::InvalidArgument("tolerance, truncation and level count must be positive".into()));
        }
        if !(self.lambda_min > 0.0 && self.lambda_min < NU1) || !(self.margin > 0.0 && self.margin < NU1) {
            return Err(Error::InvalidArgument("scan window must lie inside (0, pi^2/4)".into()));
        }
        Ok(())
    }

    /// Base truncation `(n_left, n_right)`: channel modes tied to the strip
    /// modes by the ratio of widths.
    pub fn base_truncation(&self, delta: f64) -> (usize, usize) {
        let nl = self.n_left.unwrap_or_else(|| ((delta * self.n_right as f64 - 1e-9).ceil() as usize).max(2));
        let nr = self.n_right.max((nl as f64 / delta).round() as usize);
        (nl, nr)
    }
}

/// Eigenvalues of one variant below the threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueResult {
    pub variant: SymmetryVariant,
    /// Ascending, in `(0, pi^2/4)`.
    pub values: Vec<f64>,
    /// `|A b| / (scale |b|)` of the matching matrix at the finest level.
    pub residuals: Vec<f64>,
    /// `(n_left, n_right)` of the finest level.
    pub truncation: (usize, usize),
    /// True once successive extrapolated values moved less than `tol`.
    pub converged: Vec<bool>,
    /// Raw roots per truncation level, coarsest first.
    pub levels: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

impl EigenvalueResult {
    pub fn top(&self) -> Option<f64> {
        self.values.last().copied()
    }
}

/// Roots of one truncation level keyed by the index of the singular-point
/// interval that contains them.
fn level_roots(op: &MatchingOperator, opts: &SolveOptions) -> Result<BTreeMap<usize, f64>> {
    let top = NU1 - opts.margin;
    let sp = op.singular_points(top);
    let mut edges = vec![opts.lambda_min];
    edges.extend(sp.iter().copied().filter(|&l| l > opts.lambda_min));
    edges.push(top);
    let mut out = BTreeMap::new();
    for (idx, w) in edges.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        let eps = 1e-12 * (hi - lo);
        let left = if idx == 0 { lo } else { lo + eps };
        let right = if idx + 2 == edges.len() { hi } else { hi - eps };
        if !(right > left) {
            continue;
        }
        let pos_left = op.reduced_is_positive(left)?;
        let pos_right = op.reduced_is_positive(right)?;
        if pos_left || !pos_right {
            continue;
        }
        out.insert(idx, bisect_positive(op, left, right)?);
    }
    Ok(out)
}

/// Bisection on positive definiteness of the reduced matrix.
fn bisect_positive(op: &MatchingOperator, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        if op.reduced_is_positive(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign changes of the smallest reduced eigenvalue on a mixed uniform and
/// geometric grid, skipping singular points.
fn scan_count(op: &MatchingOperator, opts: &SolveOptions) -> Result<usize> {
    let top = NU1 - opts.margin;
    let n = opts.scan_points / 2;
    let span = top - opts.lambda_min;
    let mut grid: Vec<f64> = (0..n).map(|i| opts.lambda_min + span * i as f64 / n as f64).collect();
    let ratio = opts.margin / (NU1 - opts.lambda_min);
    grid.extend(
        (0..opts.scan_points - n).map(|i| NU1 - (NU1 - opts.lambda_min) * ratio.powf(i as f64 / (opts.scan_points - n - 1) as f64)),
    );
    grid.retain(|&l| l >= opts.lambda_min && l <= top);
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
    grid.dedup();
    let sp = op.singular_points(top);
    let mut count = 0;
    let mut prev: Option<(f64, f64)> = None;
    for &l in &grid {
        let v = op.reduced_min_eigenvalue(l)?;
        if let Some((pl, pv)) = prev {
            let crosses_pole = sp.iter().any(|&s| s > pl && s <= l);
            if !crosses_pole && pv < 0.0 && v >= 0.0 {
                count += 1;
            }
        }
        prev = Some((l, v));
    }
    Ok(count)
}

/// All eigenvalues of one variant below `pi^2/4`.
///
/// Each interval between consecutive zeros of `d_0` holds at most one root,
/// found by bisection on the definiteness of the reduced matrix. With
/// `auto_refine`, both truncations are doubled per level and the roots of
/// the last two levels are Richardson-extrapolated (error `~ N^-2`) until
/// the extrapolated values move less than `tol`.
pub fn eigenvalues_below_threshold(geometry: &Geometry, variant: SymmetryVariant, opts: &SolveOptions) -> Result<EigenvalueResult> {
    opts.validate()?;
    let (nl0, nr0) = opts.base_truncation(geometry.delta());
    let levels = if opts.auto_refine { opts.max_levels.max(2) } else { 1 };
    let mut warnings = Vec::new();
    let mut raw: Vec<BTreeMap<usize, f64>> = Vec::new();
    let mut extrap: Vec<BTreeMap<usize, f64>> = Vec::new();
    let mut last_op = None;
    let mut converged_at = None;
    for level in 0..levels {
        let scale = 1usize << level;
        let op = MatchingOperator::new(*geometry, variant, nl0 * scale, nr0 * scale)?;
        let roots = level_roots(&op, opts)?;
        if level == 0 {
            let scanned = scan_count(&op, opts)?;
            if scanned != roots.len() {
                warnings.push(format!("sign scan found {scanned} crossings, bracket search found {}", roots.len()));
            }
        }
        if let Some(prev) = raw.last() {
            let ext: BTreeMap<usize, f64> = roots.iter().filter_map(|(i, v)| prev.get(i).map(|p| (*i, v + (v - p) / 3.0))).collect();
            if let Some(pext) = extrap.last() {
                let same_keys = ext.keys().eq(roots.keys()) && pext.keys().eq(ext.keys());
                let moved = ext.iter().map(|(i, v)| (v - pext[i]).abs()).fold(0.0, f64::max);
                if same_keys && moved < opts.tol {
                    converged_at = Some(level);
                }
            }
            extrap.push(ext);
        }
        raw.push(roots);
        last_op = Some(op);
        if converged_at.is_some() {
            break;
        }
    }
    let op = last_op.expect("at least one level");
    let finest = raw.last().expect("at least one level");
    let best = extrap.last();
    let mut values = Vec::new();
    let mut converged = Vec::new();
    let mut residuals = Vec::new();
    for (i, v) in finest {
        let value = best.and_then(|e| e.get(i)).copied().unwrap_or(*v);
        values.push(value);
        converged.push(converged_at.is_some() && best.is_some_and(|e| e.contains_key(i)));
        residuals.push(MatchedMode::from_operator(&op, *v)?.matching_residual());
    }
    if opts.auto_refine && converged_at.is_none() {
        warnings.push(format!("truncation refinement did not reach tol {:e} in {levels} levels", opts.tol));
    }
    let expected = eigen_count(geometry.a()).from_variant(variant);
    if values.len() < expected {
        warnings.push(format!("found {} eigenvalues, asymptotic count predicts {expected}", values.len()));
    }
    if values.len() > expected + 1 {
        warnings.push(format!("found {} eigenvalues, more than predicted {expected} + 1", values.len()));
    }
    if values.iter().any(|&v| !(v > 0.0 && v < NU1)) {
        return Err(Error::NoConvergence { iterations: raw.len(), residual: f64::NAN });
    }
    Ok(EigenvalueResult {
        variant,
        values,
        residuals,
        truncation: op.truncation(),
        converged,
        levels: raw.iter().map(|m| m.values().copied().collect()).collect(),
        warnings,
    })
}

/// One entry of the combined spectrum of both variants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub variant: SymmetryVariant,
}

/// Eigenvalues of both variants, merged and sorted.
pub fn merged_spectrum(geometry: &Geometry, opts: &SolveOptions) -> Result<(Vec<SpectrumEntry>, [EigenvalueResult; 2])> {
    let (n, d) = rayon::join(
        || eigenvalues_below_threshold(geometry, SymmetryVariant::NeumannAtCut, opts),
        || eigenvalues_below_threshold(geometry, SymmetryVariant::DirichletAtCut, opts),
    );
    let (n, d) = (n?, d?);
    let mut all: Vec<SpectrumEntry> = n
        .values
        .iter()
        .map(|&lambda| SpectrumEntry { lambda, variant: n.variant })
        .chain(d.values.iter().map(|&lambda| SpectrumEntry { lambda, variant: d.variant }))
        .collect();
    all.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap());
    Ok((all, [n, d]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_geometry;

    #[test]
    fn half_unit_obstacle_has_one_neumann_eigenvalue() {
        let g = make_geometry(0.5, 0.1).unwrap();
        let r = eigenvalues_below_threshold(&g, SymmetryVariant::NeumannAtCut, &SolveOptions::default()).unwrap();
        assert_eq!(r.values.len(), 1);
        // leading-order law plus an O(delta^3) remainder
        let lead = NU1 - std::f64::consts::PI.powi(2) * 0.01;
        assert!((r.values[0] - lead).abs() < 20.0 * 1e-3);
        assert!((r.values[0] - 2.354415449).abs() < 1e-7, "{:?}", r);
        assert!(r.converged[0], "{:?}", r.warnings);
        assert!(r.residuals[0] < 1e-8, "{:?}", r);
        let d = eigenvalues_below_threshold(&g, SymmetryVariant::DirichletAtCut, &SolveOptions::default()).unwrap();
        assert!(d.values.is_empty());
    }

    #[test]
    fn counts_and_alternation_for_two_and_a_half() {
        let g = make_geometry(2.5, 0.1).unwrap();
        let (all, [n, d]) = merged_spectrum(&g, &SolveOptions::default()).unwrap();
        assert_eq!(n.values.len(), 2);
        assert_eq!(d.values.len(), 1);
        let pattern: Vec<_> = all.iter().map(|e| e.variant).collect();
        assert_eq!(pattern, vec![SymmetryVariant::NeumannAtCut, SymmetryVariant::DirichletAtCut, SymmetryVariant::NeumannAtCut]);
    }

    #[test]
    fn options_are_validated() {
        let g = make_geometry(0.5, 0.1).unwrap();
        let o = SolveOptions { scan_points: 10, ..Default::default() };
        assert!(eigenvalues_below_threshold(&g, SymmetryVariant::NeumannAtCut, &o).is_err());
    }

    #[test]
    fn base_truncation_ties_channel_to_strip() {
        let o = SolveOptions::default();
        assert_eq!(o.base_truncation(0.1), (20, 200));
        assert_eq!(o.base_truncation(0.0125), (3, 240));
        let o = SolveOptions { n_left: Some(5), ..Default::default() };
        assert_eq!(o.base_truncation(0.1), (5, 200));
    }
}
