//! Banded Cholesky factorisation.

use super::grid::SparseOperator;
use crate::error::{Error, Result};

/// Lower factor `L` with `A - shift I = L L^T`, stored row-wise in a band:
/// entry `(r, c)` with `r - c <= b` lives at `r * (b + 1) + (c + b - r)`.
#[derive(Debug, Clone)]
pub struct BandCholesky {
    n: usize,
    b: usize,
    data: Vec<f64>,
}

impl BandCholesky {
    pub fn new(op: &SparseOperator, shift: f64) -> Result<Self> {
        let n = op.dimension();
        let b = op.bandwidth();
        let w = b + 1;
        let mut data = vec![0.0; n * w];
        for r in 0..n {
            for p in op.row_ptr[r]..op.row_ptr[r + 1] {
                let c = op.cols[p];
                if c <= r {
                    data[r * w + (c + b - r)] = op.vals[p] - if c == r { shift } else { 0.0 };
                }
            }
        }
        for r in 0..n {
            let r0 = r.saturating_sub(b);
            for c in r0..=r {
                let c0 = c.saturating_sub(b).max(r0);
                let mut s = data[r * w + (c + b - r)];
                let (rr, cr) = (r * w + b - r, c * w + b - c);
                for k in c0..c {
                    s -= data[rr + k] * data[cr + k];
                }
                if c == r {
                    if !(s > 0.0) {
                        return Err(Error::InvalidArgument(format!("shifted operator is not positive definite (pivot {s:e} at row {r})")));
                    }
                    data[rr + r] = s.sqrt();
                } else {
                    data[rr + c] = s / data[cr + c];
                }
            }
        }
        Ok(Self { n, b, data })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Solve `(A - shift I) x = rhs` in place.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let (n, b, w) = (self.n, self.b, self.b + 1);
        for r in 0..n {
            let base = r * w + b - r;
            let mut s = x[r];
            for k in r.saturating_sub(b)..r {
                s -= self.data[base + k] * x[k];
            }
            x[r] = s / self.data[base + r];
        }
        for r in (0..n).rev() {
            x[r] /= self.data[r * w + b];
            let xr = x[r];
            let base = r * w + b - r;
            for k in r.saturating_sub(b)..r {
                x[k] -= self.data[base + k] * xr;
            }
        }
    }
}
