//! Factorization invariants of numerical monoids in exact arithmetic.
//!
//! - [`monoid`]: construction, membership, Frobenius number, arithmetical
//!   detection.
//! - [`factorizations`]: factorization sets, length sets, `M(n)`, `m(n)` and
//!   elasticities with quasilinear lookups.
//! - [`arithmetical`]: the elasticity-tuple parametrization for monoids
//!   generated by arithmetic sequences, recovery of `d` and `a/k`, and the
//!   equality criterion for their elasticity sets.
//! - [`profile`]: the finite-part-plus-sequences description of the
//!   elasticity set of any numerical monoid, exact membership and
//!   certified comparison.

pub mod arithmetical;
pub mod error;
pub mod factorizations;
pub mod monoid;
pub mod plot;
pub mod profile;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use monoid::{ArithmeticalParams, NumericalMonoid};
pub use rational::Rational;
