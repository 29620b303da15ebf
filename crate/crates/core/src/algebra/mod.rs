//! Dependency matrices, availability vectors and adaptation factors, with
//! the discrete (boolean) and probabilistic operators over them.
//!
//! Index 0 of every axis is the dummy method. Public file formats refer to
//! methods by name, so this convention never leaks out of the crate.

mod factor;
mod matrix;
mod ops;
mod vector;

pub use factor::{
    identity_factor, validate_factor, validate_parts, FactorBuilder, FactorViolation,
    ProbabilisticAdaptationFactor,
};
pub use matrix::{ConversionProbabilityMatrix, MethodDependencyMatrix, DUMMY};
pub use ops::{discrete_adapt, discrete_compose, prob_adapt, prob_compose};
pub use vector::{full_availability, DiscreteAvailabilityVector, MethodAvailabilityVector};
