//! Trapped-mode field along a few horizontal lines, from the matched
//! coefficients.

use trapmodes::modematch::{eigenvalues_below_threshold, MatchedMode, SolveOptions};
use trapmodes::{make_geometry, SymmetryVariant};

fn main() -> trapmodes::Result<()> {
    let (a, delta) = (0.5, 0.2);
    let g = make_geometry(a, delta)?;
    let v = SymmetryVariant::NeumannAtCut;
    let res = eigenvalues_below_threshold(&g, v, &SolveOptions::default())?;
    let lambda = res.values[0];
    let mode = MatchedMode::new(&g, v, lambda, 40, 400)?;
    println!("lambda = {lambda:.10}, decay rate {:.6}, matching residual {:.2e}", mode.decay_rate(), mode.matching_residual());
    println!("{:>6} {:>12} {:>12} {:>12}", "x", "y=0.5", "y=0.9", "y=1");
    for i in 0..=16 {
        let x = i as f64 * 0.25;
        let row: Vec<String> = [0.5, 0.9, 1.0].iter().map(|&y| mode.value(x, y).map_or("-".to_string(), |u| format!("{u:.6}"))).collect();
        println!("{x:>6.2} {:>12} {:>12} {:>12}", row[0], row[1], row[2]);
    }
    Ok(())
}
