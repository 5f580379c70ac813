//! Bracketed bisection for `mu tan(mu a) = c`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 400;

/// Ascending positive roots with the residual and bracket used for each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootList {
    pub roots: Vec<f64>,
    pub residuals: Vec<f64>,
    pub brackets: Vec<(f64, f64)>,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

/// Bisection on a sign change of `g` over `[lo, hi]`.
///
/// `residual` maps `(x, g(x))` to the residual reported to the caller and
/// `floor` gives the rounding level of that residual at `x`. The search
/// stops once the residual is below `tol`; if the bracket collapses to
/// adjacent floats first, the root is accepted when its residual is at the
/// rounding floor.
pub(crate) fn bisect<G, R, F>(g: G, residual: R, floor: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    G: Fn(f64) -> f64,
    R: Fn(f64, f64) -> f64,
    F: Fn(f64) -> f64,
{
    let glo = g(lo);
    let ghi = g(hi);
    if !(glo.is_finite() && ghi.is_finite()) || glo.signum() == ghi.signum() {
        return Err(Error::NoConvergence { iterations: 0, residual: glo.abs().min(ghi.abs()) });
    }
    let rising = glo < 0.0;
    let mut best = (lo, f64::INFINITY);
    for it in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        let r = residual(mid, gm);
        if r < best.1 {
            best = (mid, r);
        }
        if r <= tol {
            return Ok((mid, r));
        }
        if mid <= lo || mid >= hi {
            if best.1 <= floor(best.0) {
                return Ok(best);
            }
            return Err(Error::NoConvergence { iterations: it, residual: best.1 });
        }
        if (gm < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_BISECTIONS, residual: best.1 })
}

/// Bracket `j` (zero based) of `mu tan(mu a) = c`: `(0, pi/2a)` then
/// `((2j-1)pi/2a, (2j+1)pi/2a)`. Exactly one root lies in each.
pub fn mu_tan_bracket(a: f64, j: usize) -> (f64, f64) {
    if j == 0 {
        (0.0, PI / (2.0 * a))
    } else {
        ((2 * j - 1) as f64 * PI / (2.0 * a), (2 * j + 1) as f64 * PI / (2.0 * a))
    }
}

/// First `count` positive solutions of `mu tan(mu a) = c` for `c > 0`.
pub fn solve_mu_tan(a: f64, c: f64, count: usize, tol: f64) -> Result<RootList> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("interval length must be positive, got {a}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!("right-hand side must be positive, got {c}")));
    }
    if count == 0 || !(tol > 0.0) {
        return Err(Error::InvalidArgument("count and tolerance must be positive".into()));
    }
    // pole-free form, same sign as mu tan(mu a) - c inside each bracket
    let h = |mu: f64| mu * (mu * a).sin() - c * (mu * a).cos();
    let res = |mu: f64, _: f64| (mu * (mu * a).tan() - c).abs();
    let floor = |mu: f64| {
        let t = (mu * a).tan();
        let slope = t + mu * a * (1.0 + t * t);
        8.0 * f64::EPSILON * (c + mu * slope.abs())
    };
    let mut out = RootList { roots: Vec::new(), residuals: Vec::new(), brackets: Vec::new() };
    for j in 0..count {
        let (l, r) = mu_tan_bracket(a, j);
        let eps = 1e-12 * (r - l);
        let (mu, r_mu) = bisect(h, res, floor, l + eps, r - eps, tol)?;
        out.roots.push(mu);
        out.residuals.push(r_mu);
        out.brackets.push((l, r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pi_over_two_is_a_root_for_a_two_and_a_half() {
        let c = PI / 2.0 * (1.25 * PI).tan();
        let r = solve_mu_tan(2.5, c, 3, 1e-12).unwrap();
        // [a] = 2: the (l+1)-th root with l = 1
        assert!((r.roots[1] - PI / 2.0).abs() < 1e-12, "{:?}", r.roots);
        assert!(r.residuals[1] <= 1e-12);
        assert!(r.roots[0] < PI / 2.0 && r.roots[2] > PI / 2.0);
    }

    #[test]
    fn large_c_approaches_dirichlet_limit_monotonically() {
        let mut prev = 0.0;
        for c in [10.0, 100.0, 1000.0] {
            let mu = solve_mu_tan(1.0, c, 1, 1e-9).unwrap().roots[0];
            assert!(mu > prev && mu < PI / 2.0);
            prev = mu;
        }
        assert!(PI / 2.0 - prev < 2e-3);
    }

    #[test]
    fn c_one_matches_sign_scan() {
        let mu = solve_mu_tan(1.0, 1.0, 1, 1e-13).unwrap().roots[0];
        // brute-force scan with step 1e-6
        let step: f64 = 1e-6;
        let mut x = step;
        let mut prev = x * x.tan() - 1.0;
        let scanned = loop {
            let nx = x + step;
            let v = nx * nx.tan() - 1.0;
            if prev < 0.0 && v >= 0.0 {
                break 0.5 * (x + nx);
            }
            prev = v;
            x = nx;
        };
        assert!((mu - scanned).abs() < 1e-6);
        assert!((mu - 0.8603335890193797).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_mu_tan(1.0, 0.0, 1, 1e-10).is_err());
        assert!(solve_mu_tan(1.0, -2.0, 1, 1e-10).is_err());
        assert!(solve_mu_tan(0.0, 1.0, 1, 1e-10).is_err());
    }

    #[test]
    fn root_resolved_to_machine_precision_near_a_pole() {
        let r = solve_mu_tan(1.0, 1e6, 1, 1e-300).unwrap();
        let mu = r.roots[0];
        assert!(mu < PI / 2.0);
        assert!((mu * mu.tan() / 1e6 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn missing_sign_change_is_reported() {
        let out = bisect(|x| x * x + 1.0, |_, v: f64| v.abs(), |_| 0.0, -1.0, 1.0, 1e-12);
        assert!(matches!(out, Err(Error::NoConvergence { iterations: 0, .. })));
    }

    proptest! {
        #[test]
        fn one_root_per_bracket(a in 0.05f64..6.0, c in 0.01f64..50.0, count in 1usize..6) {
            let r = solve_mu_tan(a, c, count, 1e-9).unwrap();
            prop_assert_eq!(r.len(), count);
            for i in 0..count {
                let (lo, hi) = r.brackets[i];
                prop_assert!(r.roots[i] > lo && r.roots[i] < hi);
                prop_assert!(r.residuals[i] <= 1e-9);
                if i > 0 {
                    prop_assert!(r.roots[i] > r.roots[i - 1]);
                }
            }
        }

        #[test]
        fn first_root_increases_with_c(a in 0.1f64..3.0, c in 0.01f64..20.0, dc in 0.01f64..5.0) {
            let m1 = solve_mu_tan(a, c, 1, 1e-11).unwrap().roots[0];
            let m2 = solve_mu_tan(a, c + dc, 1, 1e-11).unwrap().roots[0];
            prop_assert!(m2 > m1);
            prop_assert!(m2 < PI / (2.0 * a));
        }
    }
}
