//! Grid specification and operator assembly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Geometry, SymmetryVariant};

/// Condition imposed on the artificial boundary `x = X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruncBc {
    DirichletAtX,
    NeumannAtX,
}

impl TruncBc {
    pub const ALL: [TruncBc; 2] = [TruncBc::DirichletAtX, TruncBc::NeumannAtX];
}

impl fmt::Display for TruncBc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruncBc::DirichletAtX => "dirichlet",
            TruncBc::NeumannAtX => "neumann",
        })
    }
}

impl FromStr for TruncBc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "dirichlet" => Ok(TruncBc::DirichletAtX),
            "n" | "neumann" => Ok(TruncBc::NeumannAtX),
            _ => Err(Error::Parse(format!("unknown truncation condition '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub h: f64,
    pub x_end: f64,
    pub trunc_bc: TruncBc,
}

const COMMENSURATE_TOL: f64 = 1e-12;

/// Number of steps of size `h` in `len`, if commensurate.
fn steps(len: f64, h: f64, what: &'static str) -> Result<usize> {
    let n = (len / h).round();
    if n < 1.0 || (n * h - len).abs() > COMMENSURATE_TOL * len.max(1.0) {
        return Err(Error::NonCommensurate { h, what, value: len });
    }
    Ok(n as usize)
}

impl GridSpec {
    pub fn new(h: f64, x_end: f64, trunc_bc: TruncBc) -> Result<Self> {
        if !(h > 0.0 && h.is_finite() && x_end.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {h}")));
        }
        steps(1.0, h, "strip width")?;
        steps(x_end, h, "truncation abscissa")?;
        Ok(Self { h, x_end, trunc_bc })
    }
}

/// Symmetric operator `M^{-1/2} K M^{-1/2}` of the lumped 5-point
/// discretisation, in compressed rows with the full pattern stored.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub(crate) n: usize,
    pub(crate) row_ptr: Vec<usize>,
    pub(crate) cols: Vec<usize>,
    pub(crate) vals: Vec<f64>,
    /// Grid indices `(i, j)` of each unknown, `x = i h`, `y = j h`.
    pub nodes: Vec<(usize, usize)>,
    pub mass: Vec<f64>,
    pub h: f64,
}

impl SparseOperator {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for r in 0..self.n {
            let mut s = 0.0;
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                s += self.vals[p] * x[self.cols[p]];
            }
            y[r] = s;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(p) => self.vals[self.row_ptr[r] + p],
            Err(_) => 0.0,
        }
    }

    /// `max |A_rc - A_cr|` over the stored pattern.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                worst = worst.max((self.vals[p] - self.get(self.cols[p], r)).abs());
            }
        }
        worst
    }

    /// Largest `|r - c|` over nonzeros.
    pub fn bandwidth(&self) -> usize {
        (0..self.n).flat_map(|r| self.cols[self.row_ptr[r]..self.row_ptr[r + 1]].iter().map(move |&c| r.abs_diff(c))).max().unwrap_or(0)
    }

    /// `sum_c K_rc` with the mass scaling undone.
    pub fn stiffness_row_sum(&self, r: usize) -> f64 {
        let mr = self.mass[r].sqrt();
        (self.row_ptr[r]..self.row_ptr[r + 1]).map(|p| self.vals[p] * mr * self.mass[self.cols[p]].sqrt()).sum()
    }
}

/// Generic assembly over unit cells `[i, i+1] x [j, j+1]`. Each cell adds
/// half of the coupling of each of its four edges and a quarter of its area
/// to each corner; nodes rejected by `unknown` carry homogeneous Dirichlet
/// data.
fn assemble_cells<C, U>(nx: usize, ny: usize, h: f64, cell_in: C, unknown: U) -> SparseOperator
where
    C: Fn(usize, usize) -> bool,
    U: Fn(usize, usize) -> bool,
{
    let mut index = vec![usize::MAX; (nx + 1) * (ny + 1)];
    let id = |i: usize, j: usize| i * (ny + 1) + j;
    let touches = |i: usize, j: usize| {
        let ok = |ci: isize, cj: isize| ci >= 0 && cj >= 0 && (ci as usize) < nx && (cj as usize) < ny && cell_in(ci as usize, cj as usize);
        let (i, j) = (i as isize, j as isize);
        ok(i - 1, j - 1) || ok(i - 1, j) || ok(i, j - 1) || ok(i, j)
    };
    let mut nodes = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            if touches(i, j) && unknown(i, j) {
                index[id(i, j)] = nodes.len();
                nodes.push((i, j));
            }
        }
    }
    let n = nodes.len();
    let mut mass = vec![0.0; n];
    let mut diag = vec![0.0; n];
    // off-diagonal couplings: right neighbour and upper neighbour per node
    let mut east = vec![0.0; n];
    let mut north = vec![0.0; n];
    for i in 0..nx {
        for j in 0..ny {
            if !cell_in(i, j) {
                continue;
            }
            for &(p, q) in &[(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)] {
                let k = index[id(p, q)];
                if k != usize::MAX {
                    mass[k] += 0.25 * h * h;
                }
            }
            let edges =
                [((i, j), (i + 1, j), 0u8), ((i, j + 1), (i + 1, j + 1), 0), ((i, j), (i, j + 1), 1), ((i + 1, j), (i + 1, j + 1), 1)];
            for &((pi, pj), (qi, qj), dir) in &edges {
                let u = index[id(pi, pj)];
                let v = index[id(qi, qj)];
                if u != usize::MAX {
                    diag[u] += 0.5;
                }
                if v != usize::MAX {
                    diag[v] += 0.5;
                }
                if u != usize::MAX && v != usize::MAX {
                    if dir == 0 {
                        east[u] += 0.5;
                    } else {
                        north[u] += 0.5;
                    }
                }
            }
        }
    }
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::with_capacity(5 * n);
    let mut vals = Vec::with_capacity(5 * n);
    row_ptr.push(0);
    for (k, &(i, j)) in nodes.iter().enumerate() {
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(5);
        entries.push((k, diag[k]));
        if i > 0 {
            let w = index[id(i - 1, j)];
            if w != usize::MAX && east[w] != 0.0 {
                entries.push((w, -east[w]));
            }
        }
        if i < nx {
            let e = index[id(i + 1, j)];
            if e != usize::MAX && east[k] != 0.0 {
                entries.push((e, -east[k]));
            }
        }
        if j > 0 {
            let s = index[id(i, j - 1)];
            if s != usize::MAX && north[s] != 0.0 {
                entries.push((s, -north[s]));
            }
        }
        if j < ny {
            let t = index[id(i, j + 1)];
            if t != usize::MAX && north[k] != 0.0 {
                entries.push((t, -north[k]));
            }
        }
        entries.sort_by_key(|e| e.0);
        for (c, v) in entries {
            cols.push(c);
            vals.push(v / (mass[k].sqrt() * mass[c].sqrt()));
        }
        row_ptr.push(cols.len());
    }
    SparseOperator { n, row_ptr, cols, vals, nodes, mass, h }
}

/// `-Laplacian` on `(0, X) x (0, 1)` minus the obstacle `(0, a) x (0, 1 - delta)`,
/// Dirichlet on `y = 0` (and `x = 0` for the Dirichlet-cut variant, `x = X`
/// for Dirichlet truncation), Neumann elsewhere. Unknowns are ordered by
/// column, which keeps the bandwidth near `1/h`.
pub fn assemble_grid(geometry: &Geometry, variant: SymmetryVariant, spec: &GridSpec) -> Result<SparseOperator> {
    let h = spec.h;
    let ny = steps(1.0, h, "strip width")?;
    let na = steps(geometry.a(), h, "half-length")?;
    let nd = steps(geometry.delta(), h, "channel width")?;
    if spec.x_end <= geometry.a() {
        return Err(Error::InvalidArgument(format!("truncation abscissa {} must exceed the half-length {}", spec.x_end, geometry.a())));
    }
    steps(spec.x_end - geometry.a(), h, "truncation length")?;
    let nx = steps(spec.x_end, h, "truncation abscissa")?;
    let floor = ny - nd;
    let cut_dirichlet = variant == SymmetryVariant::DirichletAtCut;
    let end_dirichlet = spec.trunc_bc == TruncBc::DirichletAtX;
    Ok(assemble_cells(nx, ny, h, |i, j| i >= na || j >= floor, |i, j| j > 0 && !(cut_dirichlet && i == 0) && !(end_dirichlet && i == nx)))
}

/// Benchmark strip `(0, X) x (0, 1)` without obstacle: Neumann at `x = 0`,
/// Dirichlet at `y = 0`, Neumann at `y = 1`, truncation condition at `X`.
pub fn assemble_strip(x_len: f64, spec_h: f64, trunc_bc: TruncBc) -> Result<SparseOperator> {
    let ny = steps(1.0, spec_h, "strip width")?;
    let nx = steps(x_len, spec_h, "strip length")?;
    let end_dirichlet = trunc_bc == TruncBc::DirichletAtX;
    Ok(assemble_cells(nx, ny, spec_h, |_, _| true, |i, j| j > 0 && !(end_dirichlet && i == nx)))
}

/// Closed-form number of unknowns of [`assemble_grid`].
pub fn expected_unknowns(geometry: &Geometry, variant: SymmetryVariant, spec: &GridSpec) -> Result<usize> {
    let h = spec.h;
    let ny = steps(1.0, h, "strip width")?;
    let na = steps(geometry.a(), h, "half-length")?;
    let nd = steps(geometry.delta(), h, "channel width")?;
    let nx = steps(spec.x_end, h, "truncation abscissa")?;
    let first = usize::from(variant == SymmetryVariant::DirichletAtCut);
    let last = if spec.trunc_bc == TruncBc::DirichletAtX { nx - 1 } else { nx };
    Ok((na - first) * (nd + 1) + (last - na + 1) * ny)
}
