//! Collision-entropy uncertainty relation for pairs of qubit observables.
//!
//! For two observables with eigenbasis overlap `c`, every pure state obeys
//!
//! ```text
//! H₂(A) + H₂(B) ≥ -2 ln((1 + c²)/2)
//! ```
//!
//! and the bound is attained. The crate evaluates the functional, the bound,
//! the minimizing states and the critical-point structure of the
//! minimization, compares against other uncertainty relations, and checks
//! everything against a brute-force search over the Bloch sphere.
//!
//! All math is generic over [`Real`] (`f32`/`f64`); the `*F64` aliases below
//! are what the command-line front end uses.

pub mod bloch;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod oracle;
pub mod real;
pub mod relations;
pub mod uncertainty;

pub use bloch::{BlochVector, Observable, ObservablePair, ProbabilityPair, PureState};
pub use entropy::EntropyIndex;
pub use error::{Error, Result};
pub use oracle::{OracleConfig, OracleResult};
pub use real::Real;
pub use relations::{RelationName, RelationReport};
pub use uncertainty::{CriticalPointReport, MinimizerSet};

pub type BlochVectorF64 = BlochVector<f64>;
pub type PureStateF64 = PureState<f64>;
pub type ObservableF64 = Observable<f64>;
pub type ObservablePairF64 = ObservablePair<f64>;
pub type ProbabilityPairF64 = ProbabilityPair<f64>;
pub type EntropyIndexF64 = EntropyIndex<f64>;

pub type BlochVectorF32 = BlochVector<f32>;
pub type PureStateF32 = PureState<f32>;
pub type ObservableF32 = Observable<f32>;
pub type ObservablePairF32 = ObservablePair<f32>;
pub type ProbabilityPairF32 = ProbabilityPair<f32>;
pub type EntropyIndexF32 = EntropyIndex<f32>;
