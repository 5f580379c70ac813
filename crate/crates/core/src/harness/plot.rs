//! Data file and gnuplot script for `log(nu1 - lambda)` against `log delta`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::fit::FitResult;
use super::records::fmt17;
use crate::error::Result;

/// Columns `delta gap` for the records used in `fit`.
pub fn plot_data(fit: &FitResult) -> String {
    let mut s = String::from("# delta gap\n");
    for (d, g) in fit.deltas.iter().zip(&fit.gaps) {
        let _ = writeln!(s, "{} {}", fmt17(*d), fmt17(*g));
    }
    s
}

/// Script drawing the data on log axes next to the line
/// `m_theory * delta^p` with the regime's exponent.
pub fn gnuplot_script(fit: &FitResult, data_file: &str, m_theory: f64) -> String {
    format!(
        "set logscale xy\n\
         set xlabel 'delta'\n\
         set ylabel 'pi^2/4 - lambda'\n\
         set key left top\n\
         set title 'a = {a}, variant {v}, {m}'\n\
         p = {p}\n\
         M = {mt}\n\
         plot '{data_file}' using 1:2 with linespoints title 'measured', \\\n     M * x**p with lines title sprintf('M delta^%.3f', p)\n",
        a = fit.a,
        v = fit.variant,
        m = fit.method,
        p = fmt17(fit.p_fixed),
        mt = fmt17(m_theory),
    )
}

/// Writes `<stem>.dat` and `<stem>.gp`; returns both paths.
pub fn write_plot(fit: &FitResult, stem: &Path, m_theory: f64) -> Result<(PathBuf, PathBuf)> {
    let with = |ext: &str| {
        let mut name = stem.as_os_str().to_owned();
        name.push(ext);
        PathBuf::from(name)
    };
    let dat = with(".dat");
    let gp = with(".gp");
    std::fs::write(&dat, plot_data(fit))?;
    let name = dat.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    std::fs::write(&gp, gnuplot_script(fit, &name, m_theory))?;
    Ok((dat, gp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SymmetryVariant;
    use crate::geometry::NU1;
    use crate::harness::fit::fit_rate;
    use crate::harness::records::{Method, SweepRecord};

    #[test]
    fn writes_data_and_script() {
        let recs: Vec<SweepRecord> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&d| SweepRecord::ok(0.5, d, SymmetryVariant::NeumannAtCut, Method::Modematch, 1, NU1 - 2.0 * d * d, 0.0, String::new()))
            .collect();
        let fit = fit_rate(&recs).unwrap();
        let dir = std::env::temp_dir().join(format!("trapmodes-plot-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let (dat, gp) = write_plot(&fit, &dir.join("a0.5"), 2.0).unwrap();
        assert!(dat.ends_with("a0.5.dat") && gp.ends_with("a0.5.gp"));
        let data = std::fs::read_to_string(&dat).unwrap();
        assert_eq!(data.lines().count(), 4);
        let script = std::fs::read_to_string(&gp).unwrap();
        assert!(script.contains("'a0.5.dat'") && script.contains("set logscale xy"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
