//! One-dimensional inequality checks and the Robin root structure.

use std::f64::consts::PI;

use trapmodes::harness::{lemma_checks, LemmaSet};
use trapmodes::m_of_a;
use trapmodes::oned::{robin_eigenvalues, solve_mu_tan, LeftBc, RobinProblem};

fn main() -> trapmodes::Result<()> {
    for c in lemma_checks(LemmaSet::All)? {
        println!("{} {:<32} {:+.3e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value);
    }

    for a in [0.25, 0.5, 0.75] {
        let p = RobinProblem::new(a, m_of_a(a)?.sqrt() / 2.0, LeftBc::Neumann)?;
        let ev = robin_eigenvalues(&p, 1, 1e-14)?[0];
        println!("a = {a}: first Robin eigenvalue {ev:.14} (pi^2/4 = {:.14})", PI * PI / 4.0);
    }

    let a = 4.5;
    let roots = solve_mu_tan(a, PI / 2.0 * (PI * a / 2.0).tan(), 3, 1e-14)?;
    for (m, r) in roots.roots.iter().zip(&roots.residuals) {
        println!("mu tan(4.5 mu) = c: mu = {m:.15}  residual {r:.1e}");
    }
    Ok(())
}
