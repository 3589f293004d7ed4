//! Brute-force minimization of `H_q(A) + H_q'(B)` over the Bloch sphere.
//!
//! The search knows nothing about the structure of the problem: it evaluates
//! the entropy sum on a uniform `(θ, φ)` grid, then repeatedly zooms into the
//! neighbourhood of the best point. It is the reference every closed-form
//! result in this crate is checked against.

use rayon::prelude::*;

use crate::bloch::{outcome_probabilities_bloch, BlochVector, ObservablePair, PureState};
use crate::entropy::{renyi_entropy, EntropyIndex};
use crate::real::Real;
use crate::uncertainty::analytic_bound;

/// Maximum number of times one refinement level re-centres its window when
/// the best point lands on the window border.
const MAX_RECENTRE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Points along θ, poles included.
    pub grid_theta: usize,
    /// Points along φ over `[0, 2π)`.
    pub grid_phi: usize,
    pub refinement_levels: usize,
    /// Points per axis in each zoom window.
    pub zoom_points: usize,
    /// Step shrink factor per refinement level.
    pub zoom_factor: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_theta: 1024,
            grid_phi: 2048,
            refinement_levels: 3,
            zoom_points: 32,
            zoom_factor: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult<T> {
    pub min_value: T,
    pub argmin: PureState<T>,
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub refinement_levels: usize,
}

/// Objective at a raw Bloch vector.
#[inline]
pub fn entropy_sum<T: Real>(
    q_a: EntropyIndex<T>,
    q_b: EntropyIndex<T>,
    pair: &ObservablePair<T>,
    s: &BlochVector<T>,
) -> T {
    renyi_entropy(q_a, &outcome_probabilities_bloch(pair.a(), s))
        + renyi_entropy(q_b, &outcome_probabilities_bloch(pair.b(), s))
}

/// Global minimum with the default 1024×2048 grid and three zoom levels.
pub fn brute_force_min<T: Real>(
    q_a: EntropyIndex<T>,
    q_b: EntropyIndex<T>,
    pair: &ObservablePair<T>,
) -> OracleResult<T> {
    brute_force_min_with(&OracleConfig::default(), q_a, q_b, pair)
}

#[derive(Debug, Clone, Copy)]
struct Candidate<T> {
    value: T,
    i: usize,
    j: usize,
}

impl<T: Real> Candidate<T> {
    /// Lower value wins; ties go to the smaller `(i, j)`.
    fn better(self, other: Self) -> Self {
        match self.value.partial_cmp(&other.value) {
            Some(std::cmp::Ordering::Less) => self,
            Some(std::cmp::Ordering::Greater) => other,
            _ if (self.i, self.j) <= (other.i, other.j) => self,
            _ => other,
        }
    }

    fn sentinel() -> Self {
        Self {
            value: T::infinity(),
            i: usize::MAX,
            j: usize::MAX,
        }
    }
}

pub fn brute_force_min_with<T: Real>(
    config: &OracleConfig,
    q_a: EntropyIndex<T>,
    q_b: EntropyIndex<T>,
    pair: &ObservablePair<T>,
) -> OracleResult<T> {
    assert!(config.grid_theta >= 2 && config.grid_phi >= 1, "grid too small");
    assert!(config.zoom_points >= 2 && config.zoom_factor >= 2, "zoom too small");

    let objective = |theta: T, phi: T| entropy_sum(q_a, q_b, pair, &BlochVector::from_angles(theta, phi));

    let d_theta = T::PI() / T::lit((config.grid_theta - 1) as f64);
    let d_phi = T::TAU() / T::lit(config.grid_phi as f64);
    let phis: Vec<(T, T)> = (0..config.grid_phi)
        .map(|j| (T::lit(j as f64) * d_phi).sin_cos())
        .collect();

    let coarse = (0..config.grid_theta)
        .into_par_iter()
        .map(|i| {
            let (st, ct) = (T::lit(i as f64) * d_theta).sin_cos();
            phis.iter()
                .enumerate()
                .map(|(j, &(sp, cp))| {
                    let s = BlochVector::from_components_unchecked(cp * st, sp * st, ct);
                    Candidate {
                        value: entropy_sum(q_a, q_b, pair, &s),
                        i,
                        j,
                    }
                })
                .fold(Candidate::sentinel(), Candidate::better)
        })
        .reduce(Candidate::sentinel, Candidate::better);

    let mut theta = T::lit(coarse.i as f64) * d_theta;
    let mut phi = T::lit(coarse.j as f64) * d_phi;
    let mut best = objective(theta, phi);
    let (mut step_theta, mut step_phi) = (d_theta, d_phi);

    let n = config.zoom_points;
    let centre = T::lit((n - 1) as f64) * T::lit(0.5);
    let zoom = T::lit(config.zoom_factor as f64);
    for _ in 0..config.refinement_levels {
        step_theta = step_theta / zoom;
        step_phi = step_phi / zoom;
        for _ in 0..MAX_RECENTRE {
            let mut local = Candidate::sentinel();
            for i in 0..n {
                let t = theta + (T::lit(i as f64) - centre) * step_theta;
                for j in 0..n {
                    let p = phi + (T::lit(j as f64) - centre) * step_phi;
                    local = local.better(Candidate {
                        value: objective(t, p),
                        i,
                        j,
                    });
                }
            }
            let improved = local.value < best;
            if !improved {
                break;
            }
            best = local.value;
            theta = theta + (T::lit(local.i as f64) - centre) * step_theta;
            phi = phi + (T::lit(local.j as f64) - centre) * step_phi;
            let on_border = local.i == 0 || local.j == 0 || local.i == n - 1 || local.j == n - 1;
            if !on_border {
                break;
            }
        }
    }

    let argmin = PureState::from_bloch(&BlochVector::from_angles(theta, phi));
    OracleResult {
        min_value: entropy_sum(q_a, q_b, pair, &argmin.bloch()),
        argmin,
        grid_theta: config.grid_theta,
        grid_phi: config.grid_phi,
        refinement_levels: config.refinement_levels,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundVerification<T> {
    pub analytic: T,
    pub oracle: T,
    /// `oracle - analytic`.
    pub gap: T,
}

/// Compares the closed-form collision bound with the brute-force minimum.
pub fn verify_bound<T: Real>(pair: &ObservablePair<T>) -> BoundVerification<T> {
    verify_bound_with(&OracleConfig::default(), pair)
}

pub fn verify_bound_with<T: Real>(config: &OracleConfig, pair: &ObservablePair<T>) -> BoundVerification<T> {
    let h2 = EntropyIndex::collision();
    let analytic = analytic_bound(pair.overlap()).expect("pair overlap is always in range");
    let oracle = brute_force_min_with(config, h2, h2, pair).min_value;
    BoundVerification {
        analytic,
        oracle,
        gap: oracle - analytic,
    }
}
