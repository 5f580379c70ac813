//! Acceptance criteria. Runs every criterion in order, prints one
//! `CRITERION n PASS|FAIL` line each, and exits non-zero if any failed.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trapmodes::fdoracle::{assemble_strip, bracketed_eigenvalue, lowest_eigenvalues, BracketOptions, TruncBc};
use trapmodes::harness::{fit_rate, sweep, Method, SweepOptions};
use trapmodes::modematch::{eigenvalues_below_threshold, merged_spectrum, SolveOptions};
use trapmodes::oned::{
    lemma_right_residual, right_truncation, robin_eigenvalues, robin_remainder, solve_mu_tan, uniform_nodes, LeftBc, RobinProblem,
    SampledFunction,
};
use trapmodes::rayleigh::{rayleigh_quotient, TrialFunction};
use trapmodes::{eigen_count, m_of_a, make_geometry, SymmetryVariant, NU1};

const N: SymmetryVariant = SymmetryVariant::NeumannAtCut;

fn verdict(id: u32, title: &str, pass: bool, detail: &str) {
    println!("CRITERION {id} {} {title}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn within_rel(x: f64, target: f64, rel: f64) -> bool {
    (x - target).abs() <= rel * target.abs()
}

fn criterion_1_fractional_rate() -> bool {
    let t = Instant::now();
    let recs = sweep(0.5, &[0.2, 0.1, 0.05, 0.025], N, Method::Modematch, &SweepOptions::default()).unwrap();
    let fit = fit_rate(&recs).unwrap();
    let m = m_of_a(0.5).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let slope_ok = (1.85..=2.15).contains(&fit.p_hat);
    let m_ok = within_rel(fit.m_hat, m, 0.10);
    let pass = slope_ok && m_ok && secs < 30.0;
    verdict(
        1,
        "fractional-a rate, a = 0.5",
        pass,
        &format!(
            "slopes {:?}, mean {:.4} in [1.85, 2.15]: {slope_ok}; M_hat {:.4} vs {m:.4} (10%): {m_ok}; {secs:.1} s",
            fit.exponent_estimates, fit.p_hat, fit.m_hat
        ),
    );
    pass
}

fn criterion_2_constant_periodicity() -> bool {
    let t = Instant::now();
    let a = 1.5;
    let top = eigen_count(a).top_variant();
    let recs = sweep(a, &[0.2, 0.1, 0.05, 0.025], top, Method::Modematch, &SweepOptions::default()).unwrap();
    let fit = fit_rate(&recs).unwrap();
    let m = m_of_a(0.5).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let pass = within_rel(fit.m_hat, m, 0.10) && secs < 60.0;
    verdict(
        2,
        "constant periodicity, a = 1.5",
        pass,
        &format!("top eigenvalue from {top}; M_hat {:.4} vs {m:.4} (10%); slopes {:?}; {secs:.1} s", fit.m_hat, fit.exponent_estimates),
    );
    pass
}

fn criterion_3_integer_rate() -> bool {
    let t = Instant::now();
    let recs = sweep(1.0, &[0.02, 0.01, 0.005, 0.0025], N, Method::Modematch, &SweepOptions::default()).unwrap();
    let fit = fit_rate(&recs).unwrap();
    let two = fit.two_term.clone().unwrap();
    let m = PI.powf(4.0 / 3.0);
    let secs = t.elapsed().as_secs_f64();
    let slopes_ok = fit.exponent_estimates.iter().all(|p| (0.60..=0.74).contains(p));
    let m_ok = within_rel(two.m, m, 0.05);
    let pass = slopes_ok && m_ok && secs < 60.0;
    verdict(
        3,
        "integer-a rate, a = 1",
        pass,
        &format!(
            "slopes {:?} in [0.60, 0.74]: {slopes_ok}; two-term M_hat {:.4} (C_hat {:.3}) vs {m:.4} (5%): {m_ok}; {secs:.1} s",
            fit.exponent_estimates, two.m, two.c
        ),
    );
    pass
}

fn criterion_4_counting_and_attribution() -> bool {
    let t = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for a in [0.5, 1.5, 2.0, 2.5] {
        let g = make_geometry(a, 0.1).unwrap();
        let (merged, [n, d]) = merged_spectrum(&g, &SolveOptions::default()).unwrap();
        let c = eigen_count(a);
        let total_ok = merged.len() == a.ceil() as usize && merged.len() == c.total;
        let split_ok = n.values.len() == c.from_n && d.values.len() == c.from_d;
        let alt_ok = merged.iter().enumerate().all(|(i, e)| e.variant == if i % 2 == 0 { N } else { SymmetryVariant::DirichletAtCut });
        let top_ok = merged.last().is_some_and(|e| (e.variant == N) == (merged.len() % 2 == 1));
        let labels: String = merged.iter().map(|e| e.variant.label()).collect();
        pass &= total_ok && split_ok && alt_ok && top_ok;
        detail.push(format!("a={a}: {labels} ({}N+{}D)", n.values.len(), d.values.len()));
    }
    let secs = t.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    verdict(4, "counting and attribution", pass, &format!("{}; {secs:.1} s", detail.join(", ")));
    pass
}

fn criterion_5_oracle_agreement() -> bool {
    let t = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for a in [0.5, 1.0] {
        let g = make_geometry(a, 0.2).unwrap();
        let mm = eigenvalues_below_threshold(&g, N, &SolveOptions::default()).unwrap().values[0];
        let b = bracketed_eigenvalue(&g, N, 1, &BracketOptions::default()).unwrap();
        let ok = b.contains(mm) && b.width <= 2e-3;
        pass &= ok;
        detail.push(format!("a={a}: {mm:.8} in [{:.8}, {:.8}] width {:.2e}", b.lo, b.hi, b.width));
    }
    let secs = t.elapsed().as_secs_f64();
    pass &= secs < 120.0;
    verdict(5, "cross-solver agreement", pass, &format!("{}; {secs:.1} s", detail.join("; ")));
    pass
}

fn criterion_6_dominance_and_remainder() -> bool {
    let t = Instant::now();
    let a = 0.5;
    let mut scaled = Vec::new();
    let mut dominated = true;
    for delta in [0.1, 0.05, 0.025, 0.0125] {
        let g = make_geometry(a, delta).unwrap();
        let q = rayleigh_quotient(&TrialFunction::fractional_optimal(&g).unwrap(), &g).unwrap();
        let mm = eigenvalues_below_threshold(&g, N, &SolveOptions::default()).unwrap().values[0];
        dominated &= q - mm >= 0.0;
        scaled.push((q - mm) / delta.powi(3));
    }
    let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
    let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
    let spread_ok = lo > 0.0 && hi / lo <= 4.0;
    let g = make_geometry(a, 0.05).unwrap();
    let naive = rayleigh_quotient(&TrialFunction::naive(&g), &g).unwrap();
    let naive_err = (naive - (NU1 - (PI * PI * a - 1.0) * 0.05f64.powi(2))).abs();
    let naive_ok = naive_err <= 10.0 * 0.05f64.powi(3);
    let secs = t.elapsed().as_secs_f64();
    let pass = dominated && spread_ok && naive_ok && secs < 30.0;
    verdict(
        6,
        "upper-bound dominance and remainder order",
        pass,
        &format!(
            "gap/delta^3 {scaled:.3?} spread {:.3}; naive error {naive_err:.2e} (<= {:.2e}); {secs:.1} s",
            hi / lo,
            10.0 * 0.05f64.powi(3)
        ),
    );
    pass
}

fn criterion_7_lemma_suite() -> bool {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // (i) half-line identity
    let mut worst = f64::INFINITY;
    for _ in 0..100 {
        let m: f64 = rng.random_range(0.2..5.0);
        let x_end = right_truncation(m);
        let nodes = uniform_nodes(0.0, x_end, rng.random_range(8..40));
        let values: Vec<f64> = nodes.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        let f = SampledFunction::from_samples(nodes, values).unwrap();
        worst = worst.min(lemma_right_residual(&f, m).unwrap());
    }
    let m = 1.7;
    let e = SampledFunction::analytic_uniform(0.0, right_truncation(m), 64, move |x| (-m * x).exp(), move |x| -m * (-m * x).exp()).unwrap();
    let exp_res = lemma_right_residual(&e, m).unwrap();
    let ok_i = worst >= -1e-10 && exp_res.abs() <= 1e-10;

    // (ii) Robin ground state at the threshold
    let mut robin_err: f64 = 0.0;
    for a in [0.25, 0.5, 0.75] {
        let p = RobinProblem::new(a, m_of_a(a).unwrap().sqrt() / 2.0, LeftBc::Neumann).unwrap();
        robin_err = robin_err.max((robin_eigenvalues(&p, 1, 1e-15).unwrap()[0] - NU1).abs());
    }
    let ok_ii = robin_err <= 1e-10;

    // (iii) one root per bracket, counted independently by a sign scan
    let mut ok_iii = true;
    for _ in 0..50 {
        let a: f64 = rng.random_range(0.2..5.0);
        let c: f64 = rng.random_range(0.01..20.0);
        let k = 4;
        let roots = solve_mu_tan(a, c, k, 1e-13).unwrap().roots;
        let h = |mu: f64| mu * (mu * a).sin() - c * (mu * a).cos();
        let top = (k as f64 - 0.5) * PI / a;
        let steps = 40_000;
        let mut changes = 0;
        let mut prev = h(1e-12);
        for i in 1..=steps {
            let cur = h(top * i as f64 / steps as f64);
            if (prev < 0.0) != (cur < 0.0) {
                changes += 1;
            }
            prev = cur;
        }
        let in_brackets = roots.iter().enumerate().all(|(j, &r)| r > j as f64 * PI / a && r < (j as f64 + 0.5) * PI / a);
        ok_iii &= changes == k && in_brackets && roots.len() == k;
    }
    for (a, l) in [(2.5, 1), (4.5, 2)] {
        let c = PI / 2.0 * (PI * a / 2.0).tan();
        let r = solve_mu_tan(a, c, l + 1, 1e-15).unwrap();
        ok_iii &= (r.roots[l] - PI / 2.0).abs() < 1e-12 && r.residuals[l] < 1e-12;
    }

    // (iv) remainder of the unit-length Robin problem
    let ratios: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5].iter().map(|&d: &f64| robin_remainder(d, 1e-15).unwrap() / d.powf(4.0 / 3.0)).collect();
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let ok_iv = lo > 0.0 && hi / lo <= 3.0;

    let secs = t.elapsed().as_secs_f64();
    let pass = ok_i && ok_ii && ok_iii && ok_iv && secs < 30.0;
    verdict(
        7,
        "lemma suite",
        pass,
        &format!(
            "(i) min residual {worst:.2e}, exponential {exp_res:.1e}: {ok_i}; (ii) {robin_err:.1e}: {ok_ii}; (iii) {ok_iii}; (iv) ratios {ratios:.4?}: {ok_iv}; {secs:.1} s"
        ),
    );
    pass
}

fn criterion_8_discretization_order() -> bool {
    let t = Instant::now();
    let err = |h: f64| lowest_eigenvalues(&assemble_strip(2.0, h, TruncBc::NeumannAtX).unwrap(), 1, 1e-11).unwrap()[0] - NU1;
    let (e1, e2) = (err(0.1), err(0.05));
    let ratio = e1 / e2;
    let secs = t.elapsed().as_secs_f64();
    let pass = (3.6..=4.4).contains(&ratio) && secs < 30.0;
    verdict(8, "discretization order", pass, &format!("errors {e1:.4e}, {e2:.4e}, ratio {ratio:.4}; {secs:.1} s"));
    pass
}

fn criterion_9_determinism() -> bool {
    let t = Instant::now();
    let dir = std::env::temp_dir().join(format!("trapmodes-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("verify.cfg");
    std::fs::write(&cfg, "solver_tol = 1e-8\nn_right = 200\n").unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_trapmodes")).args(["verify", "--a", "0.5", "--config"]).arg(&cfg).output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        serde_json::to_string(&v["checks"]).unwrap()
    };
    let (first, second) = (run(), run());
    std::fs::remove_dir_all(&dir).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let pass = first == second && first.len() > 2;
    verdict(9, "determinism", pass, &format!("{} bytes of checks, identical: {}; {secs:.1} s", first.len(), first == second));
    pass
}

fn main() {
    let criteria: [fn() -> bool; 9] = [
        criterion_1_fractional_rate,
        criterion_2_constant_periodicity,
        criterion_3_integer_rate,
        criterion_4_counting_and_attribution,
        criterion_5_oracle_agreement,
        criterion_6_dominance_and_remainder,
        criterion_7_lemma_suite,
        criterion_8_discretization_order,
        criterion_9_determinism,
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let ok = std::panic::catch_unwind(c).unwrap_or_else(|_| {
            println!("CRITERION {} FAIL: panicked", i + 1);
            false
        });
        if !ok {
            failed.push(i + 1);
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
