//! Leading-order predictions and eigenvalue counts for a few half-lengths.

use trapmodes::{eigen_count, make_geometry, predict};

fn main() -> trapmodes::Result<()> {
    let delta = 0.05;
    println!("{:>5} {:>10} {:>8} {:>12} {:>6} {:>4} {:>4}", "a", "regime", "M", "leading", "count", "N", "D");
    for a in [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.25] {
        let p = predict(&make_geometry(a, delta)?);
        let c = eigen_count(a);
        println!(
            "{a:>5} {:>10} {:>8.4} {:>12.8} {:>6} {:>4} {:>4}",
            format!("{:?}", p.regime),
            p.m,
            p.lambda_leading,
            c.total,
            c.from_n,
            c.from_d
        );
    }
    Ok(())
}
