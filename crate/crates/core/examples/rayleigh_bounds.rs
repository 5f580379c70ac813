//! Trial-function quotients and min-max bounds next to solver values.

use trapmodes::modematch::{eigenvalues_below_threshold, SolveOptions};
use trapmodes::rayleigh::{build_multimode_family, minimax_upper_bounds, rayleigh_quotient, TrialFunction};
use trapmodes::{make_geometry, predict, SymmetryVariant};

fn main() -> trapmodes::Result<()> {
    println!("a = 0.5");
    for delta in [0.1, 0.05, 0.025] {
        let g = make_geometry(0.5, delta)?;
        let naive = rayleigh_quotient(&TrialFunction::naive(&g), &g)?;
        let opt = rayleigh_quotient(&TrialFunction::fractional_optimal(&g)?, &g)?;
        let mm = eigenvalues_below_threshold(&g, SymmetryVariant::NeumannAtCut, &SolveOptions::default())?.values[0];
        println!(
            "  delta {delta:<6} naive {naive:.8} optimal {opt:.8} leading {:.8} solver {mm:.8} gap/delta^3 {:.3}",
            predict(&g).lambda_leading,
            (opt - mm) / delta.powi(3)
        );
    }

    let (a, delta) = (2.5, 0.05);
    let g = make_geometry(a, delta)?;
    let family = build_multimode_family(a, delta)?;
    let bounds = minimax_upper_bounds(&family, &g)?;
    let mm = eigenvalues_below_threshold(&g, SymmetryVariant::NeumannAtCut, &SolveOptions::default())?;
    println!("a = {a}, delta = {delta}: frequencies {:?}", family.iter().map(|f| f.mu).collect::<Vec<_>>());
    for (i, b) in bounds.bounds.iter().enumerate() {
        println!("  bound_{} = {b:.8}  solver {:.8}", i + 1, mm.values[i]);
    }

    let g = make_geometry(1.0, 0.001)?;
    let q = rayleigh_quotient(&TrialFunction::integer_a1(&g)?, &g)?;
    println!("a = 1, delta = 0.001: quotient {q:.8}, leading {:.8}", predict(&g).lambda_leading);
    Ok(())
}
