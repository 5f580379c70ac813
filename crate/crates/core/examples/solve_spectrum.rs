//! Both symmetry variants by mode matching, merged into one spectrum.

use trapmodes::modematch::{merged_spectrum, SolveOptions};
use trapmodes::{eigen_count, make_geometry, NU1};

fn main() -> trapmodes::Result<()> {
    let (a, delta) = (2.5, 0.1);
    let g = make_geometry(a, delta)?;
    let (merged, [n, d]) = merged_spectrum(&g, &SolveOptions::default())?;
    println!("a = {a}, delta = {delta}, threshold {NU1:.10}");
    for (i, e) in merged.iter().enumerate() {
        println!("  lambda_{} = {:.10}  ({})", i + 1, e.lambda, e.variant);
    }
    let c = eigen_count(a);
    println!("expected {} eigenvalues ({} N, {} D)", c.total, c.from_n, c.from_d);
    println!("N truncation {:?}, D truncation {:?}", n.truncation, d.truncation);
    for w in n.warnings.iter().chain(&d.warnings) {
        println!("warning: {w}");
    }
    Ok(())
}
