//! Critical points of `U_γ(χ)` on `χ ∈ [0, π]`.
//!
//! `dU/dχ = 0` reduces to `f(χ) = f(γ - χ)` with `f(x) = sin 2x / (3 + cos 2x)`.
//! The roots are found numerically by a uniform sign scan followed by
//! bisection; the two trivial roots `γ/2` and `γ/2 + π/2` are always present.

use std::fmt;

use super::{is_complementary, uncertainty_angle_form, value_slack};
use crate::error::{Error, Result};
use crate::real::{tol, wrap, Real};

/// Number of uniform subintervals of `[0, π]` scanned for sign changes.
pub const SCAN_INTERVALS: usize = 4096;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOLERANCE: f64 = 1e-12;
/// Roots closer than this are merged.
pub const DEDUP_TOLERANCE: f64 = 1e-9;
/// Offset used to probe `U` on either side of a root.
pub const PROBE_OFFSET: f64 = 1e-5;
/// Half-width of the band around `γ*`, `γ**` flagged as ambiguous.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// `γ* = π - arccos(-1/3)`: below it only the trivial roots exist.
pub fn critical_gamma_low<T: Real>() -> T {
    T::PI() - critical_gamma_high::<T>()
}

/// `γ** = arccos(-1/3)`: above it only the trivial roots exist.
pub fn critical_gamma_high<T: Real>() -> T {
    (-T::one() / T::lit(3.0)).acos()
}

/// `f(x) = sin 2x / (3 + cos 2x)`, half the slope of one entropy term.
#[inline]
pub fn term_slope<T: Real>(x: T) -> T {
    let (s, c) = (x + x).sin_cos();
    s / (T::lit(3.0) + c)
}

/// `f(χ) - f(γ - χ)`; zero exactly at the critical points.
#[inline]
pub fn stationarity_residual<T: Real>(gamma: T, chi: T) -> T {
    term_slope(chi) - term_slope(gamma - chi)
}

/// Interval of `γ` the pair falls in, named after the root count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `(0, γ*]`
    TwoSolutionsLowGamma,
    /// `(γ*, π/2)`
    FourSolutionsLowGamma,
    /// `γ = π/2`
    Complementary,
    /// `(π/2, γ**)`
    FourSolutionsHighGamma,
    /// `[γ**, π)`
    TwoSolutionsHighGamma,
}

impl Regime {
    pub fn classify<T: Real>(gamma: T) -> Self {
        if is_complementary(gamma) {
            Self::Complementary
        } else if gamma <= critical_gamma_low() {
            Self::TwoSolutionsLowGamma
        } else if gamma < T::FRAC_PI_2() {
            Self::FourSolutionsLowGamma
        } else if gamma < critical_gamma_high() {
            Self::FourSolutionsHighGamma
        } else {
            Self::TwoSolutionsHighGamma
        }
    }

    pub fn expected_count(self) -> usize {
        match self {
            Self::TwoSolutionsLowGamma | Self::TwoSolutionsHighGamma => 2,
            Self::FourSolutionsLowGamma | Self::FourSolutionsHighGamma => 4,
            Self::Complementary => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::TwoSolutionsLowGamma => "two_solutions_low_gamma",
            Self::FourSolutionsLowGamma => "four_solutions_low_gamma",
            Self::Complementary => "complementary",
            Self::FourSolutionsHighGamma => "four_solutions_high_gamma",
            Self::TwoSolutionsHighGamma => "two_solutions_high_gamma",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    AbsoluteMin,
    RelativeMin,
    Maximum,
}

impl CriticalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::AbsoluteMin => "absolute_min",
            Self::RelativeMin => "relative_min",
            Self::Maximum => "maximum",
        }
    }
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint<T> {
    pub chi: T,
    /// `U_γ(χ)` in nats.
    pub value: T,
    pub kind: CriticalKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport<T> {
    pub gamma: T,
    pub regime: Regime,
    /// Ascending in `χ`.
    pub points: Vec<CriticalPoint<T>>,
    /// Minimizing angle(s): one value, or `π/4` and `3π/4` when complementary.
    pub chi_min: Vec<T>,
    /// Set when `γ` sits within [`BOUNDARY_BAND`] of `γ*` or `γ**`, or when
    /// the number of resolved roots disagrees with the regime. Near those
    /// angles two roots merge and the scan may not separate them.
    pub boundary_ambiguous: bool,
}

impl<T: Real> CriticalPointReport<T> {
    /// Minimizing angles on the second half-turn, `χ̃ = χ + π`.
    pub fn tilde_chi_min(&self) -> Vec<T> {
        self.chi_min.iter().map(|&c| c + T::PI()).collect()
    }
}

pub(crate) fn check_gamma<T: Real>(gamma: T) -> Result<()> {
    let eps = T::lit(crate::bloch::COMMUTING_TOLERANCE);
    if gamma > eps && gamma < T::PI() - eps {
        Ok(())
    } else {
        Err(Error::CommutingObservables { gamma: gamma.as_f64() })
    }
}

/// All solutions of `f(χ) = f(γ - χ)` in `[0, π]`, classified.
pub fn critical_points<T: Real>(gamma: T) -> Result<CriticalPointReport<T>> {
    check_gamma(gamma)?;
    let pi = T::PI();
    let half = T::lit(0.5);
    let dedup = tol::<T>(DEDUP_TOLERANCE);

    let chi_lt = half * gamma;
    let chi_gt = half * gamma + T::FRAC_PI_2();
    let mut roots = vec![chi_lt, chi_gt];

    for r in scan_roots(gamma) {
        let r = wrap(r, pi);
        if !roots.iter().any(|&x| circular_distance(x, r, pi) <= dedup) {
            roots.push(r);
        }
    }

    // 0 and π are the same point of a π-periodic function; list both ends.
    let mut chis = Vec::with_capacity(roots.len() + 1);
    for r in roots {
        if r <= dedup || r >= pi - dedup {
            chis.push(T::zero());
            chis.push(pi);
        } else {
            chis.push(r);
        }
    }
    chis.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));

    let points = classify(gamma, &chis);
    let regime = Regime::classify(gamma);
    let near_boundary = (gamma - critical_gamma_low()).abs() < T::lit(BOUNDARY_BAND)
        || (gamma - critical_gamma_high()).abs() < T::lit(BOUNDARY_BAND);
    let chi_min = if regime == Regime::Complementary {
        vec![chi_lt, chi_gt]
    } else if gamma < T::FRAC_PI_2() {
        vec![chi_lt]
    } else {
        vec![chi_gt]
    };

    Ok(CriticalPointReport {
        gamma,
        regime,
        boundary_ambiguous: near_boundary || points.len() != regime.expected_count(),
        points,
        chi_min,
    })
}

fn circular_distance<T: Real>(x: T, y: T, period: T) -> T {
    let d = (x - y).abs();
    d.min(period - d)
}

/// Sign-change scan over `[-h, π + h]`, so roots sitting on either end of
/// `[0, π]` still fall strictly inside some bracket.
fn scan_roots<T: Real>(gamma: T) -> Vec<T> {
    let n = SCAN_INTERVALS;
    let step = T::PI() / T::lit(n as f64);
    let g = |chi: T| stationarity_residual(gamma, chi);
    let at = |i: isize| T::lit(i as f64) * step;

    let mut roots = Vec::new();
    let mut lo = at(-1);
    let mut g_lo = g(lo);
    for i in 0..=(n as isize + 1) {
        let hi = at(i);
        let g_hi = g(hi);
        if g_lo == T::zero() {
            roots.push(lo);
        } else if g_lo * g_hi < T::zero() {
            roots.push(bisect(&g, lo, hi, g_lo));
        }
        lo = hi;
        g_lo = g_hi;
    }
    if g_lo == T::zero() {
        roots.push(lo);
    }
    roots
}

fn bisect<T: Real>(g: &impl Fn(T) -> T, mut lo: T, mut hi: T, mut g_lo: T) -> T {
    let eps = tol::<T>(BISECTION_TOLERANCE);
    let half = T::lit(0.5);
    while hi - lo > eps {
        let mid = half * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == T::zero() {
            return mid;
        }
        if (g_mid < T::zero()) == (g_lo < T::zero()) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    half * (lo + hi)
}

/// Minimum or maximum by comparing `U` at the root with `U` at `root ± δ`.
fn classify<T: Real>(gamma: T, chis: &[T]) -> Vec<CriticalPoint<T>> {
    let probe = T::lit(PROBE_OFFSET);
    let u = |chi: T| uncertainty_angle_form(gamma, chi);

    let mut points: Vec<(T, T, bool)> = chis
        .iter()
        .map(|&chi| {
            let value = u(chi);
            let is_min = u(chi - probe) > value && u(chi + probe) > value;
            (chi, value, is_min)
        })
        .collect();

    let lowest = points.iter().filter(|p| p.2).map(|p| p.1).fold(T::infinity(), T::min);
    let slack = value_slack::<T>();

    points
        .drain(..)
        .map(|(chi, value, is_min)| {
            let kind = match is_min {
                true if value <= lowest + slack => CriticalKind::AbsoluteMin,
                true => CriticalKind::RelativeMin,
                false => CriticalKind::Maximum,
            };
            CriticalPoint { chi, value, kind }
        })
        .collect()
}
