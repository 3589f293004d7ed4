//! Other uncertainty relations for the same pair and state, each normalized
//! to read `lhs ≥ rhs`: Heisenberg–Robertson, Landau–Pollak,
//! Maassen–Uffink, the Luis purity bound and the mixed-index Rényi relation.

use std::fmt;

use rayon::prelude::*;

use crate::bloch::{outcome_probabilities, ObservablePair, PureState};
use crate::entropy::{bound_function, renyi_entropy, EntropyIndex};
use crate::error::{Error, Result};
use crate::oracle::{brute_force_min_with, OracleConfig};
use crate::real::{tol, Real};
use crate::uncertainty::analytic_bound;

/// `|lhs - rhs|` at or below this counts as saturation.
pub const SATURATION_TOLERANCE: f64 = 1e-9;
/// Slack allowed on `lhs ≥ rhs`.
pub const SATISFACTION_SLACK: f64 = 1e-12;
/// Slack on the Shannon optimality test `brute_min ≥ F₁ - slack`.
pub const SHANNON_OPTIMALITY_SLACK: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationName {
    HeisenbergRobertson,
    Luis,
    LandauPollak,
    MaassenUffink,
    RenyiPair,
}

impl RelationName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HeisenbergRobertson => "heisenberg_robertson",
            Self::Luis => "luis",
            Self::LandauPollak => "landau_pollak",
            Self::MaassenUffink => "maassen_uffink",
            Self::RenyiPair => "renyi_pair",
        }
    }
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationReport<T> {
    pub name: RelationName,
    pub lhs: T,
    pub rhs: T,
    pub satisfied: bool,
    pub saturated: bool,
}

impl<T: Real> RelationReport<T> {
    pub fn new(name: RelationName, lhs: T, rhs: T) -> Self {
        let slack = tol::<T>(SATISFACTION_SLACK) * rhs.abs().max(T::one());
        Self {
            name,
            lhs,
            rhs,
            satisfied: lhs >= rhs - slack,
            saturated: (lhs - rhs).abs() <= tol::<T>(SATURATION_TOLERANCE),
        }
    }
}

/// `ΔA ΔB ≥ |⟨[A, B]⟩|/2` in Bloch form, using the observables' scales.
pub fn heisenberg_robertson<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> RelationReport<T> {
    let s = state.bloch();
    let (a, b) = (pair.a(), pair.b());
    let scale = (pair.first().scale() * pair.second().scale()).abs();
    let spread = |x: T| (T::one() - x * x).max(T::zero()).sqrt();
    let lhs = scale * spread(a.dot(&s)) * spread(b.dot(&s));
    let [nx, ny, nz] = a.cross(b);
    let rhs = scale * (nx * s.x() + ny * s.y() + nz * s.z()).abs();
    RelationReport::new(RelationName::HeisenbergRobertson, lhs, rhs)
}

/// Luis bound `2 ln(2N/(N+1))` on the collision-entropy sum of
/// complementary observables; only `N = 2` is supported.
pub fn luis_bound<T: Real>(n: u32) -> Result<T> {
    if n != 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let n = T::lit(f64::from(n));
    Ok(T::lit(2.0) * (T::lit(2.0) * n / (n + T::one())).ln())
}

/// `arccos √P_A + arccos √P_B ≥ arccos c` with `P` the largest outcome
/// probability.
pub fn landau_pollak<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> RelationReport<T> {
    let p_a = outcome_probabilities(pair.first(), state).max();
    let p_b = outcome_probabilities(pair.second(), state).max();
    let lhs = p_a.sqrt().min(T::one()).acos() + p_b.sqrt().min(T::one()).acos();
    RelationReport::new(RelationName::LandauPollak, lhs, pair.overlap().acos())
}

/// Overlap implied by a saturated Landau–Pollak relation,
/// `√(P_A P_B) - √((1 - P_A)(1 - P_B))`.
pub fn lp_saturation_overlap<T: Real>(p_a: T, p_b: T) -> Result<T> {
    let slack = tol::<T>(1e-12);
    for p in [p_a, p_b] {
        if !(p >= T::lit(0.5) - slack && p <= T::one() + slack) {
            return Err(Error::MaxProbabilityOutOfRange(p.as_f64()));
        }
    }
    let (p_a, p_b) = (p_a.min(T::one()), p_b.min(T::one()));
    Ok((p_a * p_b).sqrt() - ((T::one() - p_a) * (T::one() - p_b)).sqrt())
}

/// `H_∞(A) + H_∞(B) ≥ -2 ln((1 + c)/2)`.
pub fn maassen_uffink<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> RelationReport<T> {
    let lhs = renyi_entropy(EntropyIndex::MinEntropy, &outcome_probabilities(pair.first(), state))
        + renyi_entropy(EntropyIndex::MinEntropy, &outcome_probabilities(pair.second(), state));
    let half = T::lit(0.5);
    let rhs = -T::lit(2.0) * (half * (T::one() + pair.overlap())).ln();
    RelationReport::new(RelationName::MaassenUffink, lhs, rhs)
}

/// `H_q(A) + H_q'(B) ≥ -2 ln((1 + c²)/2)` for `0 < q, q' ≤ 2`.
pub fn renyi_pair_bound<T: Real>(
    q: EntropyIndex<T>,
    q_prime: EntropyIndex<T>,
    pair: &ObservablePair<T>,
    state: &PureState<T>,
) -> Result<RelationReport<T>> {
    for idx in [q, q_prime] {
        let order = idx.order();
        if !(order > T::zero() && order <= T::lit(2.0)) {
            return Err(Error::IndexOutOfRegion(order.as_f64()));
        }
    }
    let lhs = renyi_entropy(q, &outcome_probabilities(pair.first(), state))
        + renyi_entropy(q_prime, &outcome_probabilities(pair.second(), state));
    let rhs = analytic_bound(pair.overlap())?;
    Ok(RelationReport::new(RelationName::RenyiPair, lhs, rhs))
}

/// The collision relation itself, i.e. [`renyi_pair_bound`] at `q = q' = 2`.
pub fn collision_relation<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> RelationReport<T> {
    let h2 = EntropyIndex::collision();
    renyi_pair_bound(h2, h2, pair, state).expect("q = 2 lies in the region")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShannonProbe<T> {
    pub overlap: T,
    /// `F₁(c)`, the Shannon sum at `P_A = P_B = (1 + c)/2`.
    pub f1: T,
    /// Brute-force minimum of `H₁(A) + H₁(B)`.
    pub brute_min: T,
    pub f1_is_optimal: bool,
}

/// Checks whether `F₁(c)` is the true minimum of the Shannon sum for a pair
/// with overlap `c`. Above `c* ≈ 0.834` it is; below, the brute-force
/// minimum drops under it.
pub fn shannon_counterexample_probe<T: Real>(c: T) -> Result<ShannonProbe<T>> {
    shannon_counterexample_probe_with(&OracleConfig::default(), c)
}

pub fn shannon_counterexample_probe_with<T: Real>(config: &OracleConfig, c: T) -> Result<ShannonProbe<T>> {
    let f1 = bound_function(EntropyIndex::Shannon, c)?;
    let pair = ObservablePair::with_overlap(c)?;
    let brute_min = brute_force_min_with(config, EntropyIndex::Shannon, EntropyIndex::Shannon, &pair).min_value;
    Ok(ShannonProbe {
        overlap: c,
        f1,
        brute_min,
        f1_is_optimal: brute_min >= f1 - T::lit(SHANNON_OPTIMALITY_SLACK),
    })
}

/// Probes several overlaps in parallel; results follow input order.
pub fn shannon_probe_scan<T: Real>(config: &OracleConfig, overlaps: &[T]) -> Result<Vec<ShannonProbe<T>>> {
    overlaps
        .par_iter()
        .map(|&c| shannon_counterexample_probe_with(config, c))
        .collect()
}

/// Bisects on `f1_is_optimal` between `lo` (not optimal) and `hi` (optimal).
/// Returns the final bracket and the number of probes spent.
pub fn locate_shannon_threshold<T: Real>(
    config: &OracleConfig,
    mut lo: T,
    mut hi: T,
    iterations: usize,
) -> Result<(T, T, usize)> {
    let mut probes = 0;
    for _ in 0..iterations {
        let mid = T::lit(0.5) * (lo + hi);
        probes += 1;
        if shannon_counterexample_probe_with(config, mid)?.f1_is_optimal {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi, probes))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, LN_2};

    use super::*;
    use crate::bloch::{BlochVector, Observable};
    use crate::uncertainty::{bound_check, minimizers};

    const TWO_LN_4_3: f64 = 0.575_364_144_903_561_9;

    fn sxsy() -> ObservablePair<f64> {
        ObservablePair::from_directions(BlochVector::unit_x(), BlochVector::unit_y()).unwrap()
    }

    fn hadamard() -> ObservablePair<f64> {
        let a = BlochVector::normalized(1.0, 0.0, 1.0).unwrap();
        ObservablePair::from_directions(a, BlochVector::unit_z()).unwrap()
    }

    fn state(v: BlochVector<f64>) -> PureState<f64> {
        PureState::from_bloch(&v)
    }

    #[test]
    fn hr_in_plane_and_eigenstate() {
        let p = hadamard();
        let r = heisenberg_robertson(&p, &PureState::new(1.0, 0.0).unwrap());
        assert!(r.rhs.abs() < 1e-15 && r.satisfied);

        let r = heisenberg_robertson(&p, &state(*p.a()));
        assert!(r.lhs.abs() < 1e-7 && r.rhs.abs() < 1e-15);

        let r = heisenberg_robertson(&sxsy(), &PureState::new(0.0, 0.0).unwrap());
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        assert!(r.saturated && r.satisfied);
    }

    #[test]
    fn hr_uses_scales() {
        let first = Observable::new(3.0f64, -2.0, BlochVector::unit_x()).unwrap();
        let second = Observable::new(0.5, 1.5, BlochVector::unit_y()).unwrap();
        let p = ObservablePair::new(first, second).unwrap();
        let r = heisenberg_robertson(&p, &PureState::new(0.0, 0.0).unwrap());
        assert!((r.lhs - 3.0).abs() < 1e-15 && (r.rhs - 3.0).abs() < 1e-15);
        // entropic relations ignore the affine parameters
        let s = PureState::new(0.4, 1.1).unwrap();
        assert_eq!(maassen_uffink(&p, &s), maassen_uffink(&sxsy(), &s));
    }

    #[test]
    fn luis() {
        let b: f64 = luis_bound(2).unwrap();
        assert!((b - TWO_LN_4_3).abs() < 1e-15);
        assert!((b - analytic_bound(FRAC_1_SQRT_2).unwrap()).abs() < 1e-15);
        assert_eq!(luis_bound::<f64>(3), Err(Error::UnsupportedDimension(3)));
    }

    #[test]
    fn landau_pollak_examples() {
        let p = hadamard();
        let m = minimizers(&p).minimizers[0].vector;
        let r = landau_pollak(&p, &state(m));
        assert!(r.saturated, "{r:?}");
        let pa = outcome_probabilities(p.first(), &state(m)).max();
        let pb = outcome_probabilities(p.second(), &state(m)).max();
        let want = (FRAC_PI_8 / 2.0).cos().powi(2);
        assert!((pa - want).abs() < 1e-15 && (pb - want).abs() < 1e-15);
        assert!((pa - (1.0 + p.overlap()) / 2.0).abs() < 1e-15);

        let perp = PureState::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        let r = landau_pollak(&p, &perp);
        assert!((r.lhs - FRAC_PI_2).abs() < 1e-15);
        assert!(r.satisfied && !r.saturated);
    }

    #[test]
    fn lp_overlap_identity() {
        let c: f64 = 0.85;
        let p = (1.0 + c) / 2.0;
        assert!((lp_saturation_overlap(p, p).unwrap() - c).abs() < 1e-15);
        assert_eq!(lp_saturation_overlap(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(lp_saturation_overlap(0.5, 0.5).unwrap(), 0.0);
        assert!(lp_saturation_overlap(0.4, 0.9).is_err());
        // cos²(γ/4) form for γ ≤ π/2, sin²((γ+π)/4) above
        for g in [0.3f64, 1.0, FRAC_PI_4] {
            let p = (g / 4.0).cos().powi(2);
            assert!((lp_saturation_overlap(p, p).unwrap() - (g / 2.0).cos()).abs() < 1e-15);
        }
        for g in [1.7f64, 2.5, 3.0] {
            let p = ((g + std::f64::consts::PI) / 4.0).sin().powi(2);
            assert!((lp_saturation_overlap(p, p).unwrap() - (g / 2.0).sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn maassen_uffink_examples() {
        let p = sxsy();
        for m in minimizers(&p).bloch_vectors() {
            let r = maassen_uffink(&p, &state(m));
            assert!(r.saturated);
            let want = -2.0 * ((1.0 + FRAC_1_SQRT_2) / 2.0).ln();
            assert!((r.lhs - want).abs() < 1e-15);
        }
        let perp = PureState::new(0.0, 0.0).unwrap();
        let r = maassen_uffink(&p, &perp);
        assert!((r.lhs - 2.0 * LN_2).abs() < 1e-15 && r.satisfied);
    }

    #[test]
    fn renyi_pair_examples() {
        let p = hadamard();
        let h2 = EntropyIndex::collision();
        for m in minimizers(&p).bloch_vectors() {
            let r = renyi_pair_bound(h2, h2, &p, &state(m)).unwrap();
            assert!(r.saturated);
        }
        let s = PureState::new(0.3, 2.0).unwrap();
        let r = renyi_pair_bound(EntropyIndex::Shannon, EntropyIndex::Shannon, &p, &s).unwrap();
        assert!(r.satisfied);
        assert!(matches!(
            renyi_pair_bound(EntropyIndex::Finite(3.0), h2, &p, &s),
            Err(Error::IndexOutOfRegion(_))
        ));
        assert!(renyi_pair_bound(h2, EntropyIndex::MinEntropy, &p, &s).is_err());

        // bit-for-bit agreement with the uncertainty module
        let r = collision_relation(&p, &s);
        let (lhs, rhs) = bound_check(&p, &s).unwrap();
        assert_eq!((r.lhs.to_bits(), r.rhs.to_bits()), (lhs.to_bits(), rhs.to_bits()));
    }

    #[test]
    fn shannon_probe_coarse() {
        let cfg = OracleConfig {
            grid_theta: 256,
            grid_phi: 512,
            ..OracleConfig::default()
        };
        let hi = shannon_counterexample_probe_with(&cfg, 0.9).unwrap();
        assert!(hi.f1_is_optimal, "{hi:?}");
        let lo = shannon_counterexample_probe_with(&cfg, FRAC_1_SQRT_2).unwrap();
        assert!(!lo.f1_is_optimal && lo.brute_min < lo.f1);
        // F₁ in closed form
        let c: f64 = 0.9;
        let f1 = -(1.0 + c) * ((1.0 + c) / 2.0).ln() - (1.0 - c) * ((1.0 - c) / 2.0).ln();
        assert!((hi.f1 - f1).abs() < 1e-15);
    }
}
