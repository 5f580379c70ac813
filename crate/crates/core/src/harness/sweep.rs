//! Parameter sweeps over the channel width.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::records::{Method, SweepRecord};
use crate::asymptotics::eigen_count;
use crate::error::{Error, Result};
use crate::fdoracle::{bracketed_eigenvalue, BracketOptions};
use crate::geometry::{is_integer_half_length, Geometry, SymmetryVariant, DEFAULT_INTEGER_TOL};
use crate::modematch::{eigenvalues_below_threshold, SolveOptions};
use crate::rayleigh::{build_multimode_family, minimax_upper_bounds, ProfileKind, TrialFunction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct SweepOptions {
    pub solve: SolveOptions,
    pub bracket: BracketOptions,
    /// Record every eigenvalue found instead of only the top one.
    pub all: bool,
}

/// Trial family admissible for `variant`, or an error when none is built.
pub fn trial_family(geometry: &Geometry, variant: SymmetryVariant) -> Result<Vec<TrialFunction>> {
    let a = geometry.a();
    let family = if is_integer_half_length(a, DEFAULT_INTEGER_TOL) {
        vec![TrialFunction::integer_a1(geometry)?]
    } else {
        build_multimode_family(a, geometry.delta())?
    };
    let family_variant = match family[0].kind {
        ProfileKind::Cos => SymmetryVariant::NeumannAtCut,
        ProfileKind::Sin => SymmetryVariant::DirichletAtCut,
    };
    if family_variant != variant {
        return Err(Error::OutOfValidity(format!("no trial family for variant {variant} at a = {a}")));
    }
    Ok(family)
}

fn point(a: f64, delta: f64, variant: SymmetryVariant, method: Method, opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    let g = Geometry::new(a, delta)?;
    let pick = |n: usize| if opts.all { 0..n } else { n.saturating_sub(1)..n };
    match method {
        Method::Modematch => {
            let res = eigenvalues_below_threshold(&g, variant, &opts.solve)?;
            if res.values.is_empty() {
                return Err(Error::InsufficientData(format!("no eigenvalue of variant {variant} found")));
            }
            let meta = format!(
                "n_left={};n_right={};levels={};converged={};warnings={}",
                res.truncation.0,
                res.truncation.1,
                res.levels.len(),
                res.converged.iter().all(|&c| c),
                res.warnings.len()
            );
            Ok(pick(res.values.len())
                .map(|i| SweepRecord::ok(a, delta, variant, method, i + 1, res.values[i], res.residuals[i], meta.clone()))
                .collect())
        }
        Method::Fdoracle => {
            let n = eigen_count(a).from_variant(variant);
            if n == 0 {
                return Err(Error::InsufficientData(format!("variant {variant} has no eigenvalue at a = {a}")));
            }
            pick(n)
                .map(|i| {
                    let b = bracketed_eigenvalue(&g, variant, i + 1, &opts.bracket)?;
                    let h: Vec<String> = b.h_list.iter().map(|h| format!("{h}")).collect();
                    let meta = format!("x_end={};h={};lo={:.16e};hi={:.16e}", b.x_end, h.join(" "), b.lo, b.hi);
                    Ok(SweepRecord::ok(a, delta, variant, method, i + 1, b.center(), b.width / 2.0, meta))
                })
                .collect()
        }
        Method::Rayleigh => {
            let family = trial_family(&g, variant)?;
            let pb = minimax_upper_bounds(&family, &g)?;
            let meta = format!("case={:?};members={};dropped={}", family[0].case, family.len(), pb.dropped());
            Ok(pick(pb.bounds.len()).map(|i| SweepRecord::ok(a, delta, variant, method, i + 1, pb.bounds[i], 0.0, meta.clone())).collect())
        }
    }
}

/// Top (or all) eigenvalues of `variant` at each `delta`, evaluated in
/// parallel and returned in the order of `deltas`. Per-point failures are
/// kept as records with a non-ok status.
pub fn sweep(a: f64, deltas: &[f64], variant: SymmetryVariant, method: Method, opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    if deltas.is_empty() {
        return Err(Error::InsufficientData("empty delta list".into()));
    }
    if deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument("delta list must be strictly decreasing".into()));
    }
    for &d in deltas {
        Geometry::new(a, d)?;
    }
    let per_point: Vec<Vec<SweepRecord>> = deltas
        .par_iter()
        .map(|&d| point(a, d, variant, method, opts).unwrap_or_else(|e| vec![SweepRecord::failed(a, d, variant, method, &e)]))
        .collect();
    Ok(per_point.into_iter().flatten().collect())
}
