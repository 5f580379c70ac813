//! Cross-solver agreement and spectral structure.

use trapmodes::fdoracle::{assemble_grid, bracketed_eigenvalue, lowest_eigenvalues, BracketOptions, GridSpec, TruncBc};
use trapmodes::harness::trial_family;
use trapmodes::modematch::{eigenvalues_below_threshold, merged_spectrum, SolveOptions};
use trapmodes::rayleigh::minimax_upper_bounds;
use trapmodes::{eigen_count, make_geometry, SymmetryVariant, NU1};

const N: SymmetryVariant = SymmetryVariant::NeumannAtCut;
const D: SymmetryVariant = SymmetryVariant::DirichletAtCut;

#[test]
fn single_grid_value_is_close_to_modematch() {
    let g = make_geometry(0.5, 0.2).unwrap();
    let op = assemble_grid(&g, N, &GridSpec::new(1.0 / 40.0, 6.0, TruncBc::NeumannAtX).unwrap()).unwrap();
    let fd = lowest_eigenvalues(&op, 1, 1e-9).unwrap()[0];
    let mm = eigenvalues_below_threshold(&g, N, &SolveOptions::default()).unwrap().values[0];
    assert!((fd - mm).abs() < 5e-3, "{fd} {mm}");
}

#[test]
fn grid_counts_for_two_and_a_half() {
    let g = make_geometry(2.5, 0.2).unwrap();
    let c = eigen_count(2.5);
    for (v, expected) in [(N, c.from_n), (D, c.from_d)] {
        let op = assemble_grid(&g, v, &GridSpec::new(0.05, 12.5, TruncBc::DirichletAtX).unwrap()).unwrap();
        let ev = lowest_eigenvalues(&op, 3, 1e-9).unwrap();
        let below = ev.iter().filter(|&&l| l < NU1).count();
        assert_eq!(below, expected, "{v}: {ev:?}");
    }
}

#[test]
fn dirichlet_truncation_sits_above_neumann() {
    for a in [0.5, 1.5] {
        let g = make_geometry(a, 0.2).unwrap();
        let v = eigen_count(a).top_variant();
        let b = bracketed_eigenvalue(&g, v, eigen_count(a).from_variant(v), &BracketOptions::default()).unwrap();
        for (d, n) in b.dirichlet.iter().zip(&b.neumann) {
            assert!(d >= n, "a={a}: {d} < {n}");
        }
        let mm = eigenvalues_below_threshold(&g, v, &SolveOptions::default()).unwrap().top().unwrap();
        assert!(b.width <= 2e-3 && b.contains(mm), "a={a}: {mm} not in [{}, {}]", b.lo, b.hi);
    }
}

#[test]
fn counts_and_parity_on_the_grid() {
    for a in [0.5, 1.0, 1.5, 2.0, 2.5] {
        for delta in [0.05, 0.1, 0.2, 0.3] {
            let g = make_geometry(a, delta).unwrap();
            let (merged, _) = merged_spectrum(&g, &SolveOptions::default()).unwrap();
            let c = eigen_count(a);
            assert_eq!(merged.len(), c.total, "a={a} delta={delta}");
            assert_eq!(merged.last().unwrap().variant == N, c.top_is_n, "a={a} delta={delta}");
            assert!(merged.iter().all(|e| e.lambda > 0.0 && e.lambda < NU1));
        }
    }
}

#[test]
fn lower_eigenvalues_stay_away_from_threshold() {
    let mut worst: f64 = 0.0;
    let mut tops = Vec::new();
    for delta in [0.2, 0.1, 0.05, 0.025] {
        let (merged, _) = merged_spectrum(&make_geometry(2.5, delta).unwrap(), &SolveOptions::default()).unwrap();
        assert_eq!(merged.len(), 3);
        worst = worst.max(merged[1].lambda);
        tops.push(merged[2].lambda);
    }
    assert!(worst < NU1 - 0.05, "{worst}");
    assert!(tops.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn doubling_the_truncation_does_not_move_the_values() {
    for (a, delta) in [(0.5, 0.1), (1.0, 0.05), (2.5, 0.1)] {
        let g = make_geometry(a, delta).unwrap();
        for v in SymmetryVariant::ALL {
            let base = SolveOptions::default();
            let doubled = SolveOptions { n_right: 2 * base.n_right, ..base.clone() };
            let r1 = eigenvalues_below_threshold(&g, v, &base).unwrap();
            let r2 = eigenvalues_below_threshold(&g, v, &doubled).unwrap();
            assert_eq!(r1.values.len(), r2.values.len());
            for (x, y) in r1.values.iter().zip(&r2.values) {
                assert!((x - y).abs() < 10.0 * base.tol, "a={a} {v}: {x} {y}");
            }
        }
    }
}

#[test]
fn min_max_bounds_dominate_solver_values() {
    for a in [0.5, 1.0, 1.5, 2.5, 3.5, 4.5] {
        for delta in [0.2, 0.1, 0.05] {
            let g = make_geometry(a, delta).unwrap();
            let v = eigen_count(a).top_variant();
            let family = trial_family(&g, v).unwrap();
            let bounds = minimax_upper_bounds(&family, &g).unwrap().bounds;
            let solved = eigenvalues_below_threshold(&g, v, &SolveOptions::default()).unwrap().values;
            for (i, b) in bounds.iter().enumerate().take(solved.len()) {
                assert!(*b >= solved[i] - 1e-8, "a={a} delta={delta} i={i}: {b} < {}", solved[i]);
            }
        }
    }
}
