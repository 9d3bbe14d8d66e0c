//! Generalized degrees of freedom.
//!
//! The closed forms are written once over [`Scalar`] so the same code
//! evaluates in `f64` and in exact rationals (the latter is what the
//! deterministic-model oracle compares against).

use num_rational::Ratio;
use num_traits::Num;
use serde::Serialize;

use crate::channel::{ExponentPoint, Topology};
use crate::error::{Error, Result};

pub trait Scalar: Copy + PartialOrd + Num {
    fn frac(num: i64, den: i64) -> Self;
}

impl Scalar for f64 {
    fn frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for Ratio<i64> {
    fn frac(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}

fn max<T: Scalar>(a: T, b: T) -> T {
    if a >= b {
        a
    } else {
        b
    }
}

fn min<T: Scalar>(a: T, b: T) -> T {
    if a <= b {
        a
    } else {
        b
    }
}

fn pos<T: Scalar>(x: T) -> T {
    max(x, T::zero())
}

/// `num * factor / den`, defined as zero whenever the clamped numerator is zero.
fn gain_term<T: Scalar>(num: T, factor: T, den: T) -> T {
    if num.is_zero() {
        T::zero()
    } else {
        num * factor / den
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GdofBranch {
    SymVeryWeak,
    SymWeak,
    SymStrong,
    SymVeryStrong,
    ZBelowVeryStrong,
    ZVeryStrong,
    SWeak,
    SStrong,
    SVeryStrong,
}

/// Piecewise gDoF of `topology` at `(alpha, beta)`.
pub fn closed_form<T: Scalar>(alpha: T, beta: T, topology: Topology) -> (T, GdofBranch) {
    let (a, b) = (alpha, beta);
    let one = T::one();
    let two = T::frac(2, 1);
    let half = T::frac(1, 2);
    let very_strong = |a: T, b: T| one + half * gain_term(pos(b - two), a - two, b + a - T::frac(3, 1));
    let no_coop_mid = max(one - a * half, a * half);
    match topology {
        Topology::Symmetric => {
            if a < half {
                let d = one - a + half * gain_term(pos(b - two + two * a), a, b + a - one);
                (d, GdofBranch::SymVeryWeak)
            } else if a < T::frac(2, 3) {
                let d = a + half * gain_term(pos(b - two * a), two - T::frac(3, 1) * a, b - T::frac(3, 1) * a + one);
                (d, GdofBranch::SymWeak)
            } else if a < two {
                (no_coop_mid, GdofBranch::SymStrong)
            } else {
                (very_strong(a, b), GdofBranch::SymVeryStrong)
            }
        }
        Topology::Z => {
            if a < two {
                (no_coop_mid, GdofBranch::ZBelowVeryStrong)
            } else {
                (very_strong(a, b), GdofBranch::ZVeryStrong)
            }
        }
        Topology::S => {
            if a < one {
                let d = one - a * half + half * gain_term(pos(a + b - two), a, b + a - one);
                (d, GdofBranch::SWeak)
            } else if a < two {
                let d = a * half + half * gain_term(pos(b - a), two - a, b - a + one);
                (d, GdofBranch::SStrong)
            } else {
                (one, GdofBranch::SVeryStrong)
            }
        }
    }
}

pub fn nocoop<T: Scalar>(alpha: T, topology: Topology) -> T {
    let one = T::one();
    let half = T::frac(1, 2);
    let classical = min(one, max(one - alpha * half, alpha * half));
    match topology {
        Topology::Symmetric => min(classical, max(one - alpha, alpha)),
        Topology::Z | Topology::S => classical,
    }
}

pub fn ideal<T: Scalar>(alpha: T, topology: Topology) -> T {
    let half = T::frac(1, 2);
    match topology {
        Topology::Symmetric | Topology::Z => max(T::one() - alpha * half, alpha * half),
        Topology::S => T::one(),
    }
}

/// Optimal listening fraction at high SNR; zero where cooperation is useless.
pub fn gamma_star_of<T: Scalar>(alpha: T, beta: T, topology: Topology) -> T {
    let (a, b) = (alpha, beta);
    let one = T::one();
    let two = T::frac(2, 1);
    let three = T::frac(3, 1);
    let very_strong = || {
        if a >= two && b > two {
            (a - two) / (b + a - three)
        } else {
            T::zero()
        }
    };
    match topology {
        Topology::Symmetric => {
            if a < T::frac(1, 2) {
                if b > two - two * a {
                    a / (b + a - one)
                } else {
                    T::zero()
                }
            } else if a < T::frac(2, 3) {
                if b > two * a {
                    (two - three * a) / (b - three * a + one)
                } else {
                    T::zero()
                }
            } else {
                very_strong()
            }
        }
        Topology::Z => very_strong(),
        Topology::S => {
            if a < one && b > two - a {
                a / (b + a - one)
            } else if a >= one && a < two && b > a {
                (two - a) / (b - a + one)
            } else {
                T::zero()
            }
        }
    }
}

/// Exact gDoF for rational exponents.
pub fn gdof_exact(alpha: Ratio<i64>, beta: Ratio<i64>, topology: Topology) -> Ratio<i64> {
    closed_form(alpha, beta, topology).0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdofResult {
    pub d: f64,
    pub gamma_star: f64,
    pub active_branch: GdofBranch,
    pub d_nocoop: f64,
    pub d_ideal: f64,
}

pub fn gdof_closed_form(point: &ExponentPoint) -> GdofResult {
    let (d, active_branch) = closed_form(point.alpha, point.beta, point.topology);
    GdofResult {
        d,
        gamma_star: gamma_star(point),
        active_branch,
        d_nocoop: gdof_nocoop(point.alpha, point.topology),
        d_ideal: gdof_ideal(point.alpha, point.topology),
    }
}

pub fn gdof_nocoop(alpha: f64, topology: Topology) -> f64 {
    nocoop(alpha, topology)
}

pub fn gdof_ideal(alpha: f64, topology: Topology) -> f64 {
    ideal(alpha, topology)
}

pub fn gamma_star(point: &ExponentPoint) -> f64 {
    gamma_star_of(point.alpha, point.beta, point.topology)
}

/// `intercept + slope * gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTerm {
    pub intercept: f64,
    pub slope: f64,
}

impl AffineTerm {
    fn through(at_zero: f64, at_one: f64) -> Self {
        AffineTerm {
            intercept: at_zero,
            slope: at_one - at_zero,
        }
    }

    pub fn eval(&self, gamma: f64) -> f64 {
        self.intercept + self.slope * gamma
    }

    fn intersect(&self, other: &AffineTerm) -> Option<f64> {
        let ds = self.slope - other.slope;
        if ds == 0.0 {
            None
        } else {
            Some((other.intercept - self.intercept) / ds)
        }
    }
}

/// The high-SNR bound terms whose half-minimum is maximized over gamma.
pub fn maxmin_terms(point: &ExponentPoint) -> Vec<AffineTerm> {
    let (a, b) = (point.alpha, point.beta);
    let direct_transmit = a.max(1.0) + (1.0 - a).max(0.0);
    let cut_set = AffineTerm::through(2.0, b.max(1.0));
    let tuninetti = AffineTerm::through(direct_transmit, 1.0);
    match point.topology {
        Topology::Symmetric => {
            let pv = AffineTerm::through(2.0 * a.max(1.0 - a), a.max(b).max(1.0));
            vec![cut_set, tuninetti, pv]
        }
        Topology::Z => vec![cut_set, tuninetti],
        Topology::S => vec![
            AffineTerm::through(2.0, 1.0),
            AffineTerm::through(direct_transmit, b.max(a).max(1.0)),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxMin {
    pub d: f64,
    pub gamma: f64,
}

fn half_min(terms: &[AffineTerm], gamma: f64) -> f64 {
    0.5 * terms
        .iter()
        .map(|t| t.eval(gamma))
        .fold(f64::INFINITY, f64::min)
}

const TIE_TOLERANCE: f64 = 1e-12;

/// Grid oracle for the gDoF, refined at the exact breakpoints next to the
/// grid optimum. Ties resolve to the smallest gamma.
pub fn gdof_maxmin(point: &ExponentPoint, gamma_grid_step: f64) -> Result<MaxMin> {
    let coarse = gdof_maxmin_grid(point, gamma_grid_step)?;
    let terms = maxmin_terms(point);
    let lo = (coarse.gamma - gamma_grid_step).max(0.0);
    let hi = (coarse.gamma + gamma_grid_step).min(1.0);
    let mut candidates = vec![lo, coarse.gamma, hi];
    for (k, t) in terms.iter().enumerate() {
        for u in &terms[k + 1..] {
            if let Some(g) = t.intersect(u) {
                if g >= lo && g <= hi {
                    candidates.push(g);
                }
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    let best = candidates
        .iter()
        .map(|&g| half_min(&terms, g))
        .fold(f64::NEG_INFINITY, f64::max);
    let gamma = candidates
        .into_iter()
        .find(|&g| half_min(&terms, g) >= best - TIE_TOLERANCE)
        .unwrap_or(coarse.gamma);
    Ok(MaxMin { d: best, gamma })
}

/// The unrefined grid maximum.
pub fn gdof_maxmin_grid(point: &ExponentPoint, gamma_grid_step: f64) -> Result<MaxMin> {
    if !(gamma_grid_step > 0.0 && gamma_grid_step <= 0.01) {
        return Err(Error::InvalidParameter {
            name: "gamma_grid_step",
            value: gamma_grid_step,
        });
    }
    let terms = maxmin_terms(point);
    let n = (1.0 / gamma_grid_step).ceil() as usize;
    let mut best = MaxMin {
        d: f64::NEG_INFINITY,
        gamma: 0.0,
    };
    for k in 0..=n {
        let g = (k as f64 * gamma_grid_step).min(1.0);
        let v = half_min(&terms, g);
        if v > best.d {
            best = MaxMin { d: v, gamma: g };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CooperationLabel {
    Useless,
    StrictGain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CooperationClass {
    pub label: CooperationLabel,
    pub ideal_attained: bool,
}

impl CooperationClass {
    pub fn as_str(&self) -> &'static str {
        match (self.label, self.ideal_attained) {
            (CooperationLabel::Useless, false) => "useless",
            (CooperationLabel::Useless, true) => "useless+ideal_attained",
            (CooperationLabel::StrictGain, false) => "strict_gain",
            (CooperationLabel::StrictGain, true) => "strict_gain+ideal_attained",
        }
    }
}

const CLASS_TOLERANCE: f64 = 1e-12;

pub fn cooperation_classification(point: &ExponentPoint) -> CooperationClass {
    let r = gdof_closed_form(point);
    let label = if r.d > r.d_nocoop + CLASS_TOLERANCE {
        CooperationLabel::StrictGain
    } else {
        CooperationLabel::Useless
    };
    CooperationClass {
        label,
        ideal_attained: (r.d - r.d_ideal).abs() <= CLASS_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(a: f64, b: f64, t: Topology) -> ExponentPoint {
        ExponentPoint::new(a, b, t).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn closed_form_values() {
        let sym = Topology::Symmetric;
        assert_eq!(gdof_exact(r(11, 20), r(2, 1), sym), r(2, 3));
        assert_eq!(gdof_exact(r(3, 1), r(4, 1), sym), r(5, 4));
        assert_eq!(gdof_exact(r(1, 1), r(17, 3), sym), r(1, 2));
        assert_eq!(gdof_exact(r(1, 2), r(3, 1), Topology::S), r(9, 10));
        assert_eq!(gdof_exact(r(1, 4), r(2, 1), sym), r(4, 5));
        let g = gdof_closed_form(&pt(0.55, 2.0, sym));
        assert_abs_diff_eq!(g.d, 2.0 / 3.0, epsilon = 1e-12);
        assert_eq!(g.active_branch, GdofBranch::SymWeak);
    }

    #[test]
    fn oracle_examples() {
        let m = gdof_maxmin(&pt(0.55, 2.0, Topology::Symmetric), 0.01).unwrap();
        assert_abs_diff_eq!(m.d, 2.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.gamma, 7.0 / 27.0, epsilon = 1e-12);
        let m = gdof_maxmin(&pt(0.0, 0.0, Topology::Symmetric), 0.01).unwrap();
        assert_abs_diff_eq!(m.d, 1.0, epsilon = 1e-12);
        let m = gdof_maxmin(&pt(3.0, 4.0, Topology::Z), 0.01).unwrap();
        assert_abs_diff_eq!(m.d, 1.25, epsilon = 1e-9);
        assert!(gdof_maxmin(&pt(1.0, 1.0, Topology::Z), 0.02).is_err());
        assert!(gdof_maxmin(&pt(1.0, 1.0, Topology::Z), 0.0).is_err());
    }

    #[test]
    fn baselines() {
        assert_eq!(gdof_nocoop(0.0, Topology::Symmetric), 1.0);
        assert_eq!(gdof_nocoop(0.5, Topology::Symmetric), 0.5);
        assert_eq!(gdof_nocoop(3.0, Topology::Z), 1.0);
        assert_eq!(gdof_ideal(3.0, Topology::Symmetric), 1.5);
        assert_eq!(gdof_ideal(0.5, Topology::Z), 0.75);
        assert_eq!(gdof_ideal(7.3, Topology::S), 1.0);
    }

    #[test]
    fn gamma_star_values() {
        assert_abs_diff_eq!(gamma_star(&pt(3.0, 4.0, Topology::Symmetric)), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(gamma_star(&pt(0.25, 2.0, Topology::Symmetric)), 0.2, epsilon = 1e-15);
        assert_eq!(gamma_star(&pt(1.2, 9.0, Topology::Symmetric)), 0.0);
        assert_abs_diff_eq!(gamma_star(&pt(1.5, 3.0, Topology::S)), 0.2, epsilon = 1e-15);
        assert_eq!(gamma_star_of(r(11, 20), r(2, 1), Topology::Symmetric), r(7, 27));
    }

    #[test]
    fn cooperation_labels() {
        let sym = Topology::Symmetric;
        let c = cooperation_classification(&pt(0.4, 1.2, sym));
        assert_eq!(c.label, CooperationLabel::Useless);
        let c = cooperation_classification(&pt(0.4, 1.5, sym));
        assert_eq!(c.label, CooperationLabel::StrictGain);
        assert_abs_diff_eq!(gdof_closed_form(&pt(0.4, 1.5, sym)).d, 2.0 / 3.0, epsilon = 1e-12);
        let c = cooperation_classification(&pt(1.0, 10.0, sym));
        assert_eq!(c.label, CooperationLabel::Useless);
        assert!(c.ideal_attained);
        assert_eq!(c.as_str(), "useless+ideal_attained");
    }
}
