//! Finite-difference bracket against the mode-matching value.

use trapmodes::fdoracle::{bracketed_eigenvalue, BracketOptions};
use trapmodes::modematch::{eigenvalues_below_threshold, SolveOptions};
use trapmodes::{make_geometry, SymmetryVariant};

fn main() -> trapmodes::Result<()> {
    let v = SymmetryVariant::NeumannAtCut;
    for a in [0.5, 1.0] {
        let g = make_geometry(a, 0.2)?;
        let mm = eigenvalues_below_threshold(&g, v, &SolveOptions::default())?.values[0];
        let b = bracketed_eigenvalue(&g, v, 1, &BracketOptions::default())?;
        println!("a = {a}: modematch {mm:.9}, bracket [{:.9}, {:.9}] width {:.2e} inside = {}", b.lo, b.hi, b.width, b.contains(mm));
        for ((h, dv), nv) in b.h_list.iter().zip(&b.dirichlet).zip(&b.neumann) {
            println!("    h = {h:<7} X-Dirichlet {dv:.9}  X-Neumann {nv:.9}");
        }
    }
    Ok(())
}
