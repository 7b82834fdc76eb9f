//! Spectral scales, majorization and constructive Schur-Horn approximation
//! for operators given by atomic spectral data.
//!
//! The core is generic over [`Scalar`]: decisions run over exact rationals,
//! matrix constructions over `f64` (or `f32`).

pub mod discretize;
pub mod error;
pub mod extended;
pub mod finite;
pub mod gen;
pub mod io;
pub mod majorize;
pub mod pipeline;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use extended::{ExtReal, ExtWeight, Mult};
pub use scalar::{Real, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactOperator = spectral::StepOperator<Rational>;
pub type FloatOperator = spectral::StepOperator<f64>;
pub type ExactCurve = spectral::PLFunction<Rational>;
