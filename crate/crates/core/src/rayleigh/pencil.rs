//! Min-max bounds over the span of a trial family.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::trial::TrialFunction;
use crate::error::{Error, Result};
use crate::geometry::Geometry;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilBounds {
    /// `int grad phi_i . grad phi_j`.
    pub energy: Vec<Vec<f64>>,
    /// `int phi_i phi_j`.
    pub mass: Vec<Vec<f64>>,
    /// Ascending generalized eigenvalues over the retained span.
    pub bounds: Vec<f64>,
    /// Indices of the family members kept by the pivoted factorisation.
    pub kept: Vec<usize>,
}

impl PencilBounds {
    pub fn dropped(&self) -> usize {
        self.mass.len() - self.kept.len()
    }
}

/// Diagonal pivoting order of a Cholesky factorisation of `s`, stopping
/// once the largest remaining pivot falls below `drop_tol`.
fn pivoted_cholesky_order(s: &DMatrix<f64>, drop_tol: f64) -> Vec<usize> {
    let m = s.nrows();
    let mut work = s.clone();
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut kept = Vec::new();
    while !remaining.is_empty() {
        let (pos, &p) =
            remaining.iter().enumerate().max_by(|x, y| work[(*x.1, *x.1)].partial_cmp(&work[(*y.1, *y.1)]).unwrap()).expect("nonempty");
        let piv = work[(p, p)];
        if !(piv > drop_tol) {
            break;
        }
        remaining.remove(pos);
        kept.push(p);
        // Schur update of the remaining block
        for &i in &remaining {
            for &j in &remaining {
                work[(i, j)] -= work[(i, p)] * work[(p, j)] / piv;
            }
        }
    }
    kept
}

/// Generalized eigenvalues of the energy/mass pencil of `family`. The
/// `i`-th bound is an upper bound for the `i`-th eigenvalue of the variant
/// the family is admissible for.
pub fn minimax_upper_bounds(family: &[TrialFunction], geometry: &Geometry) -> Result<PencilBounds> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("trial family is empty".into()));
    }
    let m = family.len();
    for f in family {
        if (f.a - geometry.a()).abs() > 1e-12 || (f.delta - geometry.delta()).abs() > 1e-12 {
            return Err(Error::InvalidArgument("trial function was built for a different geometry".into()));
        }
    }
    let mut a = DMatrix::zeros(m, m);
    let mut s = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let (e, w) = family[i].gram(&family[j]);
            a[(i, j)] = e;
            a[(j, i)] = e;
            s[(i, j)] = w;
            s[(j, i)] = w;
        }
    }
    let drop_tol = 1e-12 * s.trace() / m as f64;
    let mut kept = pivoted_cholesky_order(&s, drop_tol);
    kept.sort_unstable();
    if kept.is_empty() {
        return Err(Error::InvalidArgument("mass matrix is numerically zero".into()));
    }
    let r = kept.len();
    let ak = DMatrix::from_fn(r, r, |i, j| a[(kept[i], kept[j])]);
    let sk = DMatrix::from_fn(r, r, |i, j| s[(kept[i], kept[j])]);
    let chol = sk.cholesky().ok_or_else(|| Error::InvalidArgument("retained mass block is not positive definite".into()))?;
    let linv = chol.l().try_inverse().expect("triangular factor is invertible");
    let reduced = &linv * ak * linv.transpose();
    let reduced = 0.5 * (&reduced + reduced.transpose());
    let mut bounds: Vec<f64> = reduced.symmetric_eigenvalues().iter().copied().collect();
    bounds.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let rows = |mat: &DMatrix<f64>| (0..m).map(|i| mat.row(i).iter().copied().collect()).collect();
    Ok(PencilBounds { energy: rows(&a), mass: rows(&s), bounds, kept })
}
