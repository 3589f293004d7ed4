//! Rényi entropies of two-outcome distributions, in nats.

use crate::bloch::ProbabilityPair;
use crate::error::{Error, Result};
use crate::real::{tol, Real};

/// Indices this close to 1 are evaluated as Shannon entropy.
pub const SHANNON_PROMOTION: f64 = 1e-9;

/// Order of a Rényi entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyIndex<T> {
    /// `q > 0`, `q ≠ 1`.
    Finite(T),
    Shannon,
    MinEntropy,
}

impl<T: Real> EntropyIndex<T> {
    /// `+∞` maps to [`EntropyIndex::MinEntropy`] and values within
    /// [`SHANNON_PROMOTION`] of 1 to [`EntropyIndex::Shannon`].
    pub fn new(q: T) -> Result<Self> {
        if q.is_nan() || q <= T::zero() {
            return Err(Error::InvalidIndex(q.as_f64()));
        }
        if q.is_infinite() {
            Ok(Self::MinEntropy)
        } else if (q - T::one()).abs() <= T::lit(SHANNON_PROMOTION) {
            Ok(Self::Shannon)
        } else {
            Ok(Self::Finite(q))
        }
    }

    pub fn collision() -> Self {
        Self::Finite(T::lit(2.0))
    }

    /// Numeric order: 1 for Shannon, `+∞` for min-entropy.
    pub fn order(&self) -> T {
        match *self {
            Self::Finite(q) => q,
            Self::Shannon => T::one(),
            Self::MinEntropy => T::infinity(),
        }
    }
}

/// `H_q(p)`. The collision case `q = 2` is evaluated as `-ln(purity)`.
pub fn renyi_entropy<T: Real>(index: EntropyIndex<T>, dist: &ProbabilityPair<T>) -> T {
    let (p1, p2) = (dist.p1(), dist.p2());
    match index {
        EntropyIndex::Finite(q) if q == T::lit(2.0) => -purity(dist).ln(),
        EntropyIndex::Finite(q) => {
            let power = |p: T| if p == T::zero() { T::zero() } else { p.powf(q) };
            (power(p1) + power(p2)).ln() / (T::one() - q)
        }
        EntropyIndex::Shannon => {
            let term = |p: T| if p == T::zero() { T::zero() } else { -p * p.ln() };
            term(p1) + term(p2)
        }
        EntropyIndex::MinEntropy => -dist.max().ln(),
    }
}

/// `p₁² + p₂²`.
#[inline]
pub fn purity<T: Real>(dist: &ProbabilityPair<T>) -> T {
    dist.p1() * dist.p1() + dist.p2() * dist.p2()
}

/// `F_q(c) = 2 H_q((1+c)/2, (1-c)/2)`, the value of `H_q(A) + H_q(B)` when
/// both maximum probabilities equal `(1+c)/2`.
pub fn bound_function<T: Real>(index: EntropyIndex<T>, c: T) -> Result<T> {
    check_overlap(c)?;
    let dist = ProbabilityPair::from_projection(c);
    Ok(T::lit(2.0) * renyi_entropy(index, &dist))
}

pub(crate) fn check_overlap<T: Real>(c: T) -> Result<()> {
    let lower = T::FRAC_1_SQRT_2() - tol::<T>(1e-12);
    if c >= lower && c < T::one() {
        Ok(())
    } else {
        Err(Error::OverlapOutOfRange(c.as_f64()))
    }
}
