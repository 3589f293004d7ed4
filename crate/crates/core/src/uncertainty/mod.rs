//! Sum of collision entropies of two qubit observables, its optimal lower
//! bound and the states attaining it.
//!
//! For directions `a`, `b` and a state with Bloch vector `s`,
//!
//! ```text
//! U(a, b; s) = -ln((1 + (a·s)²)/2) - ln((1 + (b·s)²)/2)
//! ```
//!
//! lies in `[-2 ln((1 + c²)/2), 2 ln 2]` where `c` is the overlap of the two
//! eigenbases. The lower end is attained on the bisector `(b + a)/2c` for
//! `γ < π/2`, on `(b - a)/2c` for `γ > π/2`, on both at `γ = π/2`, and on
//! their antipodes.

mod critical;

use num_complex::Complex;

pub(crate) use critical::check_gamma;
pub use critical::{
    critical_gamma_high, critical_gamma_low, critical_points, stationarity_residual, term_slope, CriticalKind,
    CriticalPoint, CriticalPointReport, Regime,
};

use crate::bloch::{outcome_probabilities, BlochVector, ObservablePair, PureState};
use crate::entropy::{check_overlap, renyi_entropy, EntropyIndex};
use crate::error::Result;
use crate::real::{tol, Real};

/// `γ` within this distance of `π/2` counts as complementary.
pub const COMPLEMENTARY_TOLERANCE: f64 = 1e-9;

/// `2 ln 2`, the largest value the collision sum can take.
pub fn upper_bound<T: Real>() -> T {
    T::lit(2.0) * T::LN_2()
}

/// `H₂(A) + H₂(B)` from the outcome distributions.
pub fn collision_uncertainty<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> T {
    let h2 = EntropyIndex::collision();
    renyi_entropy(h2, &outcome_probabilities(pair.first(), state))
        + renyi_entropy(h2, &outcome_probabilities(pair.second(), state))
}

/// The same sum written through the projections `a·s` and `b·s`.
pub fn uncertainty_from_projections<T: Real>(a_dot_s: T, b_dot_s: T) -> T {
    single_term(a_dot_s) + single_term(b_dot_s)
}

/// [`uncertainty_from_projections`] on raw Bloch vectors.
pub fn uncertainty_bloch<T: Real>(a: &BlochVector<T>, b: &BlochVector<T>, s: &BlochVector<T>) -> T {
    uncertainty_from_projections(a.dot(s), b.dot(s))
}

/// `U_γ(χ)` for a state in the plane of `a` and `b` at angle `χ` from `a`.
/// Periodic in `χ` with period π.
pub fn uncertainty_angle_form<T: Real>(gamma: T, chi: T) -> T {
    single_term(chi.cos()) + single_term((gamma - chi).cos())
}

#[inline]
fn single_term<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    -(half * (T::one() + x * x)).ln()
}

/// Optimal lower bound `-2 ln((1 + c²)/2)` for `c ∈ [1/√2, 1)`.
pub fn analytic_bound<T: Real>(c: T) -> Result<T> {
    check_overlap(c)?;
    // -2 ln(1 - (1 - c²)/2), kept accurate as c → 1
    let deficit = T::lit(0.5) * (T::one() - c) * (T::one() + c);
    Ok(-T::lit(2.0) * (-deficit).ln_1p())
}

/// The same bound as a function of `γ`, branch by branch.
pub fn bound_from_gamma<T: Real>(gamma: T) -> Result<T> {
    critical::check_gamma(gamma)?;
    let half = T::lit(0.5) * gamma;
    let x = if gamma <= T::FRAC_PI_2() {
        half.cos()
    } else {
        half.sin()
    };
    Ok(-T::lit(2.0) * (T::lit(0.5) * (T::one() + x * x)).ln())
}

/// `(U, bound)` for one pair and state. Any consumer that wants to test the
/// collision relation should go through here so all checks agree bit for bit.
pub fn bound_check<T: Real>(pair: &ObservablePair<T>, state: &PureState<T>) -> Result<(T, T)> {
    Ok((collision_uncertainty(pair, state), analytic_bound(pair.overlap())?))
}

/// Which critical line a minimizer sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizerBranch {
    /// `±(b + a)/2c`, the interior bisector.
    Sum,
    /// `±(b - a)/2c`, perpendicular to it.
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimizer<T> {
    pub vector: BlochVector<T>,
    pub branch: MinimizerBranch,
    /// `true` for the `-(b ± a)/2c` member of the antipodal pair.
    pub antipodal: bool,
}

/// All pure states reaching the lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerSet<T> {
    pub minimizers: Vec<Minimizer<T>>,
    pub min_value: T,
}

impl<T: Real> MinimizerSet<T> {
    pub fn bloch_vectors(&self) -> Vec<BlochVector<T>> {
        self.minimizers.iter().map(|m| m.vector).collect()
    }
}

pub fn is_complementary<T: Real>(gamma: T) -> bool {
    (gamma - T::FRAC_PI_2()).abs() <= T::lit(COMPLEMENTARY_TOLERANCE)
}

/// Two antipodal minimizers, or four when the pair is complementary.
pub fn minimizers<T: Real>(pair: &ObservablePair<T>) -> MinimizerSet<T> {
    let c = pair.overlap();
    let gamma = pair.gamma();
    let (a, b) = (*pair.a(), *pair.b());
    let two_c = T::lit(2.0) * c;

    let mut branches = Vec::with_capacity(2);
    if is_complementary(gamma) {
        branches.push((MinimizerBranch::Sum, b + a));
        branches.push((MinimizerBranch::Difference, b - a));
    } else if gamma < T::FRAC_PI_2() {
        branches.push((MinimizerBranch::Sum, b + a));
    } else {
        branches.push((MinimizerBranch::Difference, b - a));
    }

    let mut out = Vec::with_capacity(2 * branches.len());
    for (branch, [x, y, z]) in branches {
        // b ± a never vanishes for a non-commuting pair
        let vector = BlochVector::normalized(x / two_c, y / two_c, z / two_c)
            .expect("b ± a is nonzero for non-commuting directions");
        out.push(Minimizer {
            vector,
            branch,
            antipodal: false,
        });
        out.push(Minimizer {
            vector: -vector,
            branch,
            antipodal: true,
        });
    }

    let min_value = analytic_bound(c).expect("pair overlap is always in range");
    MinimizerSet {
        minimizers: out,
        min_value,
    }
}

/// `ρ = (I + v·σ)/2` as a row-major 2×2 complex matrix.
pub fn density_matrix<T: Real>(v: &BlochVector<T>) -> [[Complex<T>; 2]; 2] {
    let half = T::lit(0.5);
    let (x, y, z) = (v.x(), v.y(), v.z());
    [
        [
            Complex::new(half * (T::one() + z), T::zero()),
            Complex::new(half * x, -half * y),
        ],
        [
            Complex::new(half * x, half * y),
            Complex::new(half * (T::one() - z), T::zero()),
        ],
    ]
}

/// Slack used by [`CriticalPoint`] invariants and property tests.
pub(crate) fn value_slack<T: Real>() -> T {
    tol::<T>(1e-12)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, LN_2, PI};

    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;
    use crate::bloch::Observable;

    const TWO_LN_4_3: f64 = 0.575_364_144_903_561_9;
    const HADAMARD_BOUND: f64 = 0.152_085_264_164_988_5;

    fn pair(a: [f64; 3], b: [f64; 3]) -> ObservablePair<f64> {
        let a = BlochVector::normalized(a[0], a[1], a[2]).unwrap();
        let b = BlochVector::normalized(b[0], b[1], b[2]).unwrap();
        ObservablePair::from_directions(a, b).unwrap()
    }

    #[test]
    fn perpendicular_state_is_maximal() {
        let p = pair([1.0, 0.0, 1.0], [0.3, 0.0, 1.0]);
        let s = PureState::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((collision_uncertainty(&p, &s) - 2.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn complementary_example() {
        let p = pair([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let s = PureState::new(FRAC_PI_2, FRAC_PI_4).unwrap();
        assert!((collision_uncertainty(&p, &s) - TWO_LN_4_3).abs() < 1e-15);
    }

    #[test]
    fn hadamard_example() {
        let p = pair([1.0, 0.0, 1.0], [0.0, 0.0, 1.0]);
        let s = PureState::new(FRAC_PI_8, 0.0).unwrap();
        let u = collision_uncertainty(&p, &s);
        assert!((u - HADAMARD_BOUND).abs() < 1e-15);
        assert!((u - 2.0 * (8.0 / (6.0 + 2f64.sqrt())).ln()).abs() < 1e-15);
    }

    #[test]
    fn angle_form_examples() {
        assert!((uncertainty_angle_form(FRAC_PI_2, FRAC_PI_4) - TWO_LN_4_3).abs() < 1e-15);
        // 2 ln(8/7), frozen from mpmath
        let u = uncertainty_angle_form(FRAC_PI_3, FRAC_PI_6);
        assert!((u - 0.267_062_785_249_045_2).abs() < 1e-15);
        for &(g, chi) in &[(0.3f64, 0.1f64), (1.4, 2.0), (2.8, -0.7)] {
            let lhs = uncertainty_angle_form(g, chi);
            let rhs = uncertainty_angle_form(g, g - chi);
            assert!((lhs - rhs).abs() < 1e-15);
            assert!((lhs - uncertainty_angle_form(g, chi + PI)).abs() < 1e-14);
        }
    }

    #[test]
    fn analytic_bound_examples() {
        assert!((analytic_bound(FRAC_1_SQRT_2).unwrap() - TWO_LN_4_3).abs() < 1e-15);
        let c = FRAC_PI_8.cos();
        assert!((analytic_bound(c).unwrap() - HADAMARD_BOUND).abs() < 1e-15);
        let tiny = analytic_bound(1.0 - 1e-12).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-11);
        assert!(analytic_bound(0.5).is_err());
        assert!(analytic_bound(1.0).is_err());
    }

    #[test]
    fn bound_is_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..=200 {
            let c = FRAC_1_SQRT_2 + (1.0 - FRAC_1_SQRT_2) * i as f64 / 201.0;
            let b = analytic_bound(c).unwrap();
            assert!(b < prev);
            assert!((b + 2.0 * ((1.0 + c * c) / 2.0).ln()).abs() < 1e-14);
            prev = b;
        }
    }

    #[test]
    fn gamma_branches_agree_with_overlap_form() {
        for i in 1..400 {
            let g = PI * i as f64 / 400.0;
            let c = crate::bloch::overlap_from_gamma(g);
            let lhs = bound_from_gamma(g).unwrap();
            assert!((lhs - analytic_bound(c).unwrap()).abs() < 1e-13, "gamma {g}");
        }
        // both branches meet at π/2
        let h = 0.5 * FRAC_PI_2;
        let low = -2.0 * ((1.0 + h.cos().powi(2)) / 2.0).ln();
        let high = -2.0 * ((1.0 + h.sin().powi(2)) / 2.0).ln();
        assert!((low - TWO_LN_4_3).abs() < 1e-15 && (high - TWO_LN_4_3).abs() < 1e-15);
    }

    #[test]
    fn complementary_minimizers() {
        let p = pair([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let set = minimizers(&p);
        assert_eq!(set.minimizers.len(), 4);
        let mut seen: Vec<[i32; 2]> = set
            .bloch_vectors()
            .iter()
            .map(|v| {
                assert!((v.x().abs() - FRAC_1_SQRT_2).abs() < 1e-15);
                assert!((v.y().abs() - FRAC_1_SQRT_2).abs() < 1e-15);
                assert_eq!(v.z(), 0.0);
                [v.x().signum() as i32, v.y().signum() as i32]
            })
            .collect();
        seen.sort();
        assert_eq!(seen, vec![[-1, -1], [-1, 1], [1, -1], [1, 1]]);
        assert!((set.min_value - TWO_LN_4_3).abs() < 1e-15);
    }

    #[test]
    fn hadamard_minimizer_direction() {
        let p = pair([1.0, 0.0, 1.0], [0.0, 0.0, 1.0]);
        let set = minimizers(&p);
        assert_eq!(set.minimizers.len(), 2);
        let first = set.minimizers[0];
        assert_eq!(first.branch, MinimizerBranch::Sum);
        let st = PureState::from_bloch(&first.vector);
        assert!((st.theta() - FRAC_PI_8).abs() < 1e-15);
        assert_eq!(st.phi(), 0.0);
        let anti = PureState::from_bloch(&set.minimizers[1].vector);
        assert!((anti.theta() - 7.0 * FRAC_PI_8).abs() < 1e-15);
        assert!((anti.phi() - PI).abs() < 1e-15);
    }

    #[test]
    fn minimizers_are_coplanar_units() {
        for &g in &[0.2f64, 1.0, 1.5, 1.7, 2.9] {
            let p = ObservablePair::with_gamma(g).unwrap();
            let normal = p.a().cross(p.b());
            for m in minimizers(&p).minimizers {
                let v = m.vector;
                assert!((v.dot(&v) - 1.0).abs() < 1e-15);
                let off_plane = normal[0] * v.x() + normal[1] * v.y() + normal[2] * v.z();
                assert!(off_plane.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn saturation_sweep() {
        for i in 1..200 {
            let g = PI * i as f64 / 200.0;
            let p = ObservablePair::with_gamma(g).unwrap();
            let set = minimizers(&p);
            assert_eq!(set.minimizers.len(), if i == 100 { 4 } else { 2 });
            for v in set.bloch_vectors() {
                let u = collision_uncertainty(&p, &PureState::from_bloch(&v));
                assert!((u - set.min_value).abs() <= 1e-10, "gamma {g}");
            }
        }
    }

    #[test]
    fn density_matrix_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(density_matrix(&BlochVector::unit_z()), [[one, zero], [zero, zero]]);
        assert_eq!(density_matrix(&BlochVector::unit_x()), [[half, half], [half, half]]);

        let g: f64 = 1.1;
        let p = ObservablePair::with_gamma(g).unwrap();
        let [x, y, z] = *p.b() + *p.a();
        let n = 2.0 * (g / 2.0).cos();
        let expected = BlochVector::new(x / n, y / n, z / n).unwrap();
        let rho = density_matrix(&minimizers(&p).minimizers[0].vector);
        let want = density_matrix(&expected);
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho[i][j] - want[i][j]).norm() < 1e-15);
            }
        }
    }

    fn matmul(m: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = m[i][0] * m[0][j] + m[i][1] * m[1][j];
            }
        }
        out
    }

    fn unit() -> impl Strategy<Value = BlochVector<f64>> {
        (0.0..PI, 0.0..2.0 * PI).prop_map(|(t, p)| BlochVector::from_angles(t, p))
    }

    proptest! {
        #[test]
        fn density_matrix_is_a_pure_state(v in unit()) {
            let rho = density_matrix(&v);
            prop_assert!((rho[0][0] + rho[1][1] - Complex64::new(1.0, 0.0)).norm() <= 1e-15);
            prop_assert!((rho[0][1] - rho[1][0].conj()).norm() == 0.0);
            let sq = matmul(&rho);
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((sq[i][j] - rho[i][j]).norm() <= 1e-12);
                }
            }
        }

        #[test]
        fn three_forms_agree(a in unit(), b in unit(), s in unit(), off in -3.0..3.0f64, sc in 0.2..4.0f64) {
            let first = Observable::new(off, sc, a).unwrap();
            let second = Observable::new(-off, -sc, b).unwrap();
            if let Ok(p) = ObservablePair::new(first, second) {
                let state = PureState::from_bloch(&s);
                let via_probs = collision_uncertainty(&p, &state);
                let via_dots = uncertainty_bloch(&a, &b, &state.bloch());
                prop_assert!((via_probs - via_dots).abs() <= 1e-12);
                let (lhs, rhs) = bound_check(&p, &state).unwrap();
                prop_assert!(lhs >= rhs - 1e-12 && lhs <= 2.0 * LN_2 + 1e-12);
                // antipodal state gives the same value
                let anti = uncertainty_bloch(&a, &b, &-s);
                prop_assert_eq!(anti, uncertainty_bloch(&a, &b, &s));
            }
        }
    }
}
