//! Bloch-sphere geometry: pure states, observables, outcome probabilities
//! and the overlap between two eigenbases.
//!
//! A pure qubit state is a point `s` on the unit sphere and a (non-trivial)
//! observable `A = α₁ I + α₂ a·σ` is determined, up to its spectrum, by the
//! unit direction `a`. Measuring `A` on `s` yields the two outcomes with
//! probabilities `(1 ± a·s) / 2`.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::real::{tol, wrap, Real};

/// Inputs whose norm is within this distance of 1 are silently normalized.
pub const NORMALIZE_TOLERANCE: f64 = 1e-9;

/// Angles closer than this to 0 or π mark commuting observables.
pub const COMMUTING_TOLERANCE: f64 = 1e-9;

/// Probability pairs summing to 1 within this tolerance are renormalized.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> BlochVector<T> {
    /// Builds a unit vector, normalizing inputs that are off by at most
    /// [`NORMALIZE_TOLERANCE`] and rejecting everything else.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() {
            return Err(Error::DegenerateVector);
        }
        let tolerance = tol::<T>(NORMALIZE_TOLERANCE);
        if (norm - T::one()).abs() > tolerance {
            return Err(Error::NotUnit {
                norm: norm.as_f64(),
                tolerance: tolerance.as_f64(),
            });
        }
        Ok(Self::from_nonzero(x, y, z, norm))
    }

    /// Normalizes any nonzero finite vector.
    pub fn normalized(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm <= T::min_positive_value() {
            return Err(Error::DegenerateVector);
        }
        Ok(Self::from_nonzero(x, y, z, norm))
    }

    fn from_nonzero(x: T, y: T, z: T, norm: T) -> Self {
        if norm == T::one() {
            Self { x, y, z }
        } else {
            Self {
                x: x / norm,
                y: y / norm,
                z: z / norm,
            }
        }
    }

    /// `(cos φ sin θ, sin φ sin θ, cos θ)` for arbitrary real angles.
    pub fn from_angles(theta: T, phi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            x: cp * st,
            y: sp * st,
            z: ct,
        }
    }

    /// Caller guarantees the triple is already a unit vector.
    #[inline]
    pub(crate) fn from_components_unchecked(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn unit_x() -> Self {
        Self {
            x: T::one(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn unit_y() -> Self {
        Self {
            x: T::zero(),
            y: T::one(),
            z: T::zero(),
        }
    }

    pub fn unit_z() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }

    #[inline]
    pub fn x(&self) -> T {
        self.x
    }

    #[inline]
    pub fn y(&self) -> T {
        self.y
    }

    #[inline]
    pub fn z(&self) -> T {
        self.z
    }

    #[inline]
    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product as a raw triple (generally not a unit vector).
    #[inline]
    pub fn cross(&self, other: &Self) -> [T; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }

    /// Angle to `other` in `[0, π]`, computed as `atan2(|u×v|, u·v)`,
    /// which keeps full precision near 0 and π.
    pub fn angle_to(&self, other: &Self) -> T {
        let [cx, cy, cz] = self.cross(other);
        (cx * cx + cy * cy + cz * cz).sqrt().atan2(self.dot(other))
    }
}

impl<T: Real> Neg for BlochVector<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Component-wise sum; the result is a raw triple.
impl<T: Real> Add for BlochVector<T> {
    type Output = [T; 3];

    fn add(self, rhs: Self) -> [T; 3] {
        [self.x + rhs.x, self.y + rhs.y, self.z + rhs.z]
    }
}

/// Component-wise difference; the result is a raw triple.
impl<T: Real> Sub for BlochVector<T> {
    type Output = [T; 3];

    fn sub(self, rhs: Self) -> [T; 3] {
        [self.x - rhs.x, self.y - rhs.y, self.z - rhs.z]
    }
}

/// Pure qubit state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState<T> {
    theta: T,
    phi: T,
}

impl<T: Real> PureState<T> {
    /// `theta` must lie in `[0, π]`; `phi` is reduced modulo 2π.
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::ThetaOutOfRange(theta.as_f64()));
        }
        if !phi.is_finite() {
            return Err(Error::DegenerateVector);
        }
        Ok(Self {
            theta,
            phi: wrap(phi, T::TAU()),
        })
    }

    /// Canonical angles of a Bloch vector: `θ = acos z`, `φ = atan2(y, x)`
    /// reduced to `[0, 2π)`. At the poles `φ = 0`.
    pub fn from_bloch(v: &BlochVector<T>) -> Self {
        let theta = v.z().max(-T::one()).min(T::one()).acos();
        let rho = v.x().hypot(v.y());
        let phi = if rho == T::zero() {
            T::zero()
        } else {
            wrap(v.y().atan2(v.x()), T::TAU())
        };
        Self { theta, phi }
    }

    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }

    #[inline]
    pub fn phi(&self) -> T {
        self.phi
    }

    #[inline]
    pub fn bloch(&self) -> BlochVector<T> {
        state_bloch(self)
    }
}

/// Affine qubit observable `offset·I + scale·(direction·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable<T> {
    offset: T,
    scale: T,
    direction: BlochVector<T>,
}

impl<T: Real> Observable<T> {
    pub fn new(offset: T, scale: T, direction: BlochVector<T>) -> Result<Self> {
        if scale == T::zero() || !scale.is_finite() || !offset.is_finite() {
            return Err(Error::ZeroScale);
        }
        Ok(Self {
            offset,
            scale,
            direction,
        })
    }

    /// `direction·σ`, i.e. offset 0 and scale 1.
    pub fn spin(direction: BlochVector<T>) -> Self {
        Self {
            offset: T::zero(),
            scale: T::one(),
            direction,
        }
    }

    #[inline]
    pub fn offset(&self) -> T {
        self.offset
    }

    #[inline]
    pub fn scale(&self) -> T {
        self.scale
    }

    #[inline]
    pub fn direction(&self) -> &BlochVector<T> {
        &self.direction
    }
}

/// Two non-commuting observables with their relative angle `gamma` and the
/// overlap `c` of their eigenbases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePair<T> {
    first: Observable<T>,
    second: Observable<T>,
    gamma: T,
    overlap: T,
}

impl<T: Real> ObservablePair<T> {
    pub fn new(first: Observable<T>, second: Observable<T>) -> Result<Self> {
        let (gamma, overlap) = overlap(first.direction(), second.direction())?;
        Ok(Self {
            first,
            second,
            gamma,
            overlap,
        })
    }

    /// Pair of spin observables `a·σ`, `b·σ`.
    pub fn from_directions(a: BlochVector<T>, b: BlochVector<T>) -> Result<Self> {
        Self::new(Observable::spin(a), Observable::spin(b))
    }

    /// Canonical pair in the xz-plane: `a = ẑ`, `b` at angle `gamma` from `a`.
    pub fn with_gamma(gamma: T) -> Result<Self> {
        crate::uncertainty::check_gamma(gamma)?;
        let a = BlochVector::unit_z();
        let b = BlochVector::from_angles(gamma, T::zero());
        Self::from_directions(a, b)
    }

    /// Canonical pair with overlap `c`, taking `gamma = 2 acos c ≤ π/2`.
    pub fn with_overlap(c: T) -> Result<Self> {
        if !(c >= T::FRAC_1_SQRT_2() - tol::<T>(1e-12) && c < T::one()) {
            return Err(Error::OverlapOutOfRange(c.as_f64()));
        }
        Self::with_gamma(T::lit(2.0) * c.min(T::one()).acos())
    }

    #[inline]
    pub fn first(&self) -> &Observable<T> {
        &self.first
    }

    #[inline]
    pub fn second(&self) -> &Observable<T> {
        &self.second
    }

    #[inline]
    pub fn gamma(&self) -> T {
        self.gamma
    }

    #[inline]
    pub fn overlap(&self) -> T {
        self.overlap
    }

    /// Direction of the first observable (`a`).
    #[inline]
    pub fn a(&self) -> &BlochVector<T> {
        self.first.direction()
    }

    /// Direction of the second observable (`b`).
    #[inline]
    pub fn b(&self) -> &BlochVector<T> {
        self.second.direction()
    }
}

/// Two-outcome probability distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityPair<T> {
    p1: T,
    p2: T,
}

impl<T: Real> ProbabilityPair<T> {
    pub fn new(p1: T, p2: T) -> Result<Self> {
        let slack = tol::<T>(PROBABILITY_TOLERANCE);
        let in_range = |p: T| p >= -slack && p <= T::one() + slack;
        let sum = p1 + p2;
        if !(in_range(p1) && in_range(p2) && (sum - T::one()).abs() <= slack) {
            return Err(Error::InvalidDistribution {
                p1: p1.as_f64(),
                p2: p2.as_f64(),
            });
        }
        let p1 = (p1 / sum).max(T::zero()).min(T::one());
        let p2 = (p2 / sum).max(T::zero()).min(T::one());
        Ok(Self { p1, p2 })
    }

    /// `((1 + x)/2, (1 - x)/2)` for a projection `x` clamped to `[-1, 1]`.
    pub fn from_projection(x: T) -> Self {
        let half = T::lit(0.5);
        let x = x.max(-T::one()).min(T::one());
        Self {
            p1: half * (T::one() + x),
            p2: half * (T::one() - x),
        }
    }

    #[inline]
    pub fn p1(&self) -> T {
        self.p1
    }

    #[inline]
    pub fn p2(&self) -> T {
        self.p2
    }

    #[inline]
    pub fn max(&self) -> T {
        self.p1.max(self.p2)
    }

    pub fn swapped(&self) -> Self {
        Self {
            p1: self.p2,
            p2: self.p1,
        }
    }
}

pub fn state_bloch<T: Real>(state: &PureState<T>) -> BlochVector<T> {
    BlochVector::from_angles(state.theta(), state.phi())
}

/// Outcome probabilities of `observable` measured on `state`. Offset and
/// scale of the observable play no role.
pub fn outcome_probabilities<T: Real>(observable: &Observable<T>, state: &PureState<T>) -> ProbabilityPair<T> {
    outcome_probabilities_bloch(observable.direction(), &state.bloch())
}

/// Same as [`outcome_probabilities`] but on raw Bloch vectors.
#[inline]
pub fn outcome_probabilities_bloch<T: Real>(direction: &BlochVector<T>, state: &BlochVector<T>) -> ProbabilityPair<T> {
    ProbabilityPair::from_projection(direction.dot(state))
}

/// Matrix of squared eigenvector overlaps `|⟨a_i|b_j⟩|²`.
pub fn overlap_matrix<T: Real>(pair: &ObservablePair<T>) -> [[T; 2]; 2] {
    let t = pair.a().dot(pair.b()).max(-T::one()).min(T::one());
    let half = T::lit(0.5);
    let same = half * (T::one() + t);
    let flip = half * (T::one() - t);
    [[same, flip], [flip, same]]
}

/// Angle `γ` between two directions and the overlap
/// `c = cos(γ/2)` for `γ ≤ π/2`, `sin(γ/2)` otherwise.
pub fn overlap<T: Real>(a: &BlochVector<T>, b: &BlochVector<T>) -> Result<(T, T)> {
    let gamma = a.angle_to(b);
    let eps = T::lit(COMMUTING_TOLERANCE);
    if !(gamma > eps && gamma < T::PI() - eps) {
        return Err(Error::CommutingObservables { gamma: gamma.as_f64() });
    }
    Ok((gamma, overlap_from_gamma(gamma)))
}

/// Overlap as a function of the angle alone.
#[inline]
pub fn overlap_from_gamma<T: Real>(gamma: T) -> T {
    let half = T::lit(0.5) * gamma;
    if gamma <= T::FRAC_PI_2() {
        half.cos()
    } else {
        half.sin()
    }
}
