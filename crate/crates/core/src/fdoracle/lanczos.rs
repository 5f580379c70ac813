//! Shift-invert Lanczos with full reorthogonalisation.

use nalgebra::{DMatrix, SymmetricEigen};

use super::band::BandCholesky;
use super::grid::SparseOperator;
use crate::error::{Error, Result};

/// Upper limit on the Krylov dimension.
const MAX_KRYLOV: usize = 400;

#[derive(Debug, Clone)]
pub struct EigenPairs {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unit eigenvectors in the mass-scaled variables.
    pub vectors: Vec<Vec<f64>>,
    /// `|A v - lambda v|` for each pair.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `k` smallest eigenpairs of a positive definite operator, iterating on
/// its inverse through a banded Cholesky factor. Stops when every requested
/// pair has `|A v - lambda v| <= tol`.
pub fn lowest_eigenpairs(op: &SparseOperator, k: usize, tol: f64) -> Result<EigenPairs> {
    let n = op.dimension();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("cannot extract {k} eigenvalues of a {n}-dimensional operator")));
    }
    let factor = BandCholesky::new(op, 0.0)?;
    let cap = n.min(MAX_KRYLOV);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut q: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (0.7 * i as f64 + 0.3).sin()).collect();
    let nq = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|v| *v /= nq);
    let mut best: Option<EigenPairs> = None;
    let mut scratch = vec![0.0; n];
    for j in 0..cap {
        let mut w = q.clone();
        factor.solve_in_place(&mut w);
        let a = dot(&q, &w);
        basis.push(q.clone());
        alpha.push(a);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                axpy(-c, v, &mut w);
            }
        }
        let b = dot(&w, &w).sqrt();
        let m = j + 1;
        let exhausted = b <= 1e-14 * a.abs().max(1e-300);
        if m >= k && (m % 5 == 0 || exhausted || m == cap) {
            let t = DMatrix::from_fn(m, m, |r, c| {
                if r == c {
                    alpha[r]
                } else if r + 1 == c {
                    beta[r]
                } else if c + 1 == r {
                    beta[c]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[y].partial_cmp(&eig.eigenvalues[x]).unwrap());
            let mut values = Vec::with_capacity(k);
            let mut vectors = Vec::with_capacity(k);
            let mut residuals = Vec::with_capacity(k);
            for &idx in order.iter().take(k) {
                let theta = eig.eigenvalues[idx];
                let s = eig.eigenvectors.column(idx);
                let mut y = vec![0.0; n];
                for (coef, v) in s.iter().zip(&basis) {
                    axpy(*coef, v, &mut y);
                }
                let ny = dot(&y, &y).sqrt();
                y.iter_mut().for_each(|v| *v /= ny);
                let lambda = 1.0 / theta;
                op.apply(&y, &mut scratch);
                axpy(-lambda, &y, &mut scratch);
                residuals.push(dot(&scratch, &scratch).sqrt());
                values.push(lambda);
                vectors.push(y);
            }
            let done = residuals.iter().all(|&r| r <= tol);
            let pairs = EigenPairs { values, vectors, residuals, iterations: m };
            if done {
                return Ok(pairs);
            }
            best = Some(pairs);
            if exhausted {
                break;
            }
        }
        if exhausted {
            break;
        }
        beta.push(b);
        q = w.iter().map(|v| v / b).collect();
    }
    let residual = best.map(|p| p.residuals.iter().cloned().fold(0.0, f64::max)).unwrap_or(f64::NAN);
    Err(Error::NoConvergence { iterations: basis.len(), residual })
}

pub fn lowest_eigenvalues(op: &SparseOperator, k: usize, tol: f64) -> Result<Vec<f64>> {
    Ok(lowest_eigenpairs(op, k, tol)?.values)
}
