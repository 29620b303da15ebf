//! Probabilistic analysis of loss in interface adapter chains.
//!
//! An interface adapter converts calls made against a *target* interface into
//! calls against a *source* interface. Adapters rarely convert perfectly, and
//! chaining them compounds the loss. This crate models each adapter with a
//! [`ProbabilisticAdaptationFactor`] (a boolean method dependency matrix paired
//! with per-dependency conversion probabilities), applies factors to
//! [`MethodAvailabilityVector`]s, and searches an [`InterfaceAdapterGraph`] for
//! the adapter chain with the smallest weighted loss.
//!
//! Every interface carries an implicit *dummy* method at index 0. A dependency
//! row that only references the dummy marks a method that can never be
//! implemented; an empty row marks one that is always implementable. The dummy
//! is never available, so availability vectors always hold 0 at index 0.
//!
//! Module map:
//!
//! - [`algebra`]: matrices, vectors, factors and the adaptation/composition
//!   operators, for both the discrete and the probabilistic models.
//! - [`graph`]: interfaces, adapters, chains, chain enumeration.
//! - [`chaining`]: loss evaluation, greedy best-first chain search, the
//!   exhaustive oracle and the threshold decision problem.
//! - [`reduction`]: embedding of discrete adapter graphs into the
//!   probabilistic model.
//! - [`fixtures`] and [`random`]: bundled example graphs and seeded random
//!   instance generators shared by tests, the CLI and benchmarks.

pub mod algebra;
pub mod chaining;
mod error;
pub mod fixtures;
pub mod graph;
pub mod random;
pub mod reduction;

pub use algebra::{
    discrete_adapt, discrete_compose, full_availability, identity_factor, prob_adapt, prob_compose,
    validate_factor, ConversionProbabilityMatrix, DiscreteAvailabilityVector, FactorBuilder,
    FactorViolation, MethodAvailabilityVector, MethodDependencyMatrix,
    ProbabilisticAdaptationFactor, DUMMY,
};
pub use chaining::{
    brute_force_optimal, brute_force_optimal_multi_source, evaluate_chain, greedy_chain,
    greedy_chain_multi_source, greedy_search, prob_chain_decision, prob_loss, ChainSearchResult,
    GreedySearch, InvocationWeights, PoppedChain,
};
pub use error::{Error, GraphIssue, Result};
pub use graph::{
    chain_factor, enumerate_acyclic_chains, AdapterChain, AdapterSpec, InterfaceAdapterGraph,
    InterfaceSpec,
};
pub use reduction::{
    chain_decision_discrete, reduce_graph, DiscreteAdapterGraph, DiscreteAdapterSpec,
};
