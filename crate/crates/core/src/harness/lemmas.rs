//! Numerical spot checks of the one-dimensional inequalities.

use std::f64::consts::PI;
use std::str::FromStr;

use super::verify::Check;
use crate::asymptotics::m_of_a;
use crate::error::{Error, Result};
use crate::oned::{lemma_left_lhs, lemma_multi_check, lemma_right_residual, right_truncation, robin_remainder, SampledFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaSet {
    /// Half-line identity for `phi' + m phi`.
    Right,
    /// Robin form on `[0, a]`, `0 < a < 1`.
    Left,
    /// Unit-length form with the `delta^{2/3}` scaling.
    Integer,
    /// Span form for `a > 1`.
    Multi,
    All,
}

impl FromStr for LemmaSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "right" => Ok(Self::Right),
            "left" => Ok(Self::Left),
            "integer" => Ok(Self::Integer),
            "multi" => Ok(Self::Multi),
            "all" => Ok(Self::All),
            _ => Err(Error::Parse(format!("unknown lemma set '{s}' (right, left, integer, multi, all)"))),
        }
    }
}

fn right_checks(out: &mut Vec<Check>) -> Result<()> {
    let m = PI;
    let x = right_truncation(m);
    let exact = SampledFunction::analytic_uniform(0.0, x, 64, move |t| (-m * t).exp(), move |t| -m * (-m * t).exp())?;
    out.push(Check::band("right_exponential_residual", lemma_right_residual(&exact, m)?, 0.0, 1e-10));
    let other = SampledFunction::analytic_uniform(
        0.0,
        x,
        64,
        move |t| (1.0 + t) * (-m * t).exp(),
        move |t| (1.0 - m * (1.0 + t)) * (-m * t).exp(),
    )?;
    out.push(Check::at_least("right_polynomial_residual", lemma_right_residual(&other, m)?, 0.0, 1e-10));
    Ok(())
}

fn left_checks(out: &mut Vec<Check>) -> Result<()> {
    for a in [0.25, 0.5, 0.75] {
        let f = SampledFunction::analytic_uniform(0.0, a, 32, |t| (PI * t / 2.0).cos(), |t| -PI / 2.0 * (PI * t / 2.0).sin())?;
        out.push(Check::band(format!("left_optimal_profile_a{a}"), lemma_left_lhs(&f, a)?, 0.0, 1e-10));
        let g = SampledFunction::analytic_uniform(0.0, a, 32, |t| 1.0 + t * t, |t| 2.0 * t)?;
        out.push(Check::at_least(format!("left_quadratic_profile_a{a}"), lemma_left_lhs(&g, a)?, 0.0, 1e-10));
    }
    Ok(())
}

fn integer_checks(out: &mut Vec<Check>) -> Result<()> {
    let ratios: Vec<f64> =
        [1e-2, 1e-3, 1e-4, 1e-5].iter().map(|&d: &f64| Ok(robin_remainder(d, 1e-15)? / d.powf(4.0 / 3.0))).collect::<Result<_>>()?;
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    out.push(Check::band("integer_remainder_spread", hi / lo, 1.0, 2.0));
    Ok(())
}

fn multi_checks(out: &mut Vec<Check>) -> Result<()> {
    for a in [2.5, 4.5, 1.5] {
        let r = lemma_multi_check(a, 64, 1e-14)?;
        let last = *r.mu.last().expect("at least one frequency");
        out.push(Check::band(format!("multi_top_frequency_a{a}"), last, PI / 2.0, 1e-12));
        let scale = m_of_a(a)?;
        out.push(Check::at_least(format!("multi_span_max_a{a}"), -r.span_max, 0.0, 1e-8 * scale));
    }
    Ok(())
}

/// Checks for the requested set, in a fixed order.
pub fn lemma_checks(which: LemmaSet) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if matches!(which, LemmaSet::Right | LemmaSet::All) {
        right_checks(&mut out)?;
    }
    if matches!(which, LemmaSet::Left | LemmaSet::All) {
        left_checks(&mut out)?;
    }
    if matches!(which, LemmaSet::Integer | LemmaSet::All) {
        integer_checks(&mut out)?;
    }
    if matches!(which, LemmaSet::Multi | LemmaSet::All) {
        multi_checks(&mut out)?;
    }
    Ok(out)
}
