//! Sweep, rate fit, CSV and plot files for a = 0.5.

use trapmodes::harness::{fit_rate, sweep, to_csv_string, write_plot, Method, SweepOptions};
use trapmodes::{m_of_a, SymmetryVariant};

fn main() -> trapmodes::Result<()> {
    let a = 0.5;
    let recs = sweep(a, &[0.2, 0.1, 0.05, 0.025], SymmetryVariant::NeumannAtCut, Method::Modematch, &SweepOptions::default())?;
    print!("{}", to_csv_string(&recs)?);
    let fit = fit_rate(&recs)?;
    println!("slopes {:?}", fit.exponent_estimates);
    println!("mean slope {:.4}, M fixed-p {:.4} (linear {:.4}), theory {:.4}", fit.p_hat, fit.m_hat, fit.m_hat_linear, m_of_a(a)?);
    let stem = std::env::temp_dir().join("trapmodes_a0.5");
    let (dat, gp) = write_plot(&fit, &stem, m_of_a(a)?)?;
    println!("plot: gnuplot -p {} (data {})", gp.display(), dat.display());
    Ok(())
}
