//! Seeded generators for random factors, vectors and graphs.
//!
//! Used by property tests, the acceptance suite and benchmarks. Callers pass
//! their own RNG so runs are reproducible from a seed.

use rand::Rng;

use crate::algebra::{
    DiscreteAvailabilityVector, FactorBuilder, MethodAvailabilityVector, MethodDependencyMatrix,
    ProbabilisticAdaptationFactor, DUMMY,
};
use crate::chaining::InvocationWeights;
use crate::graph::{AdapterSpec, InterfaceAdapterGraph, InterfaceSpec};
use crate::reduction::{DiscreteAdapterGraph, DiscreteAdapterSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorParams {
    /// Chance that a real target method depends on a given real source method.
    pub density: f64,
    /// Chance that a real target method is marked never implementable.
    pub never_rate: f64,
}

impl Default for FactorParams {
    fn default() -> Self {
        Self {
            density: 0.5,
            never_rate: 0.1,
        }
    }
}

/// A valid factor with `rows` target slots and `cols` source slots (dummies
/// included) and conversion probabilities uniform in `[0, 1)`.
pub fn random_factor<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    params: FactorParams,
) -> ProbabilisticAdaptationFactor {
    let mut b = FactorBuilder::new(rows, cols);
    for j in 1..rows {
        if rng.random_bool(params.never_rate) {
            b = b.never(j);
            continue;
        }
        for i in 1..cols {
            if rng.random_bool(params.density) {
                b = b.depends(j, i, rng.random::<f64>());
            }
        }
    }
    b.build()
}

/// A valid factor in which every real target method depends on exactly one
/// slot of the source (the dummy included, meaning never implementable).
pub fn random_functional_factor<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> ProbabilisticAdaptationFactor {
    let mut b = FactorBuilder::new(rows, cols);
    for j in 1..rows {
        let i = rng.random_range(0..cols);
        b = if i == DUMMY {
            b.never(j)
        } else {
            b.depends(j, i, rng.random::<f64>())
        };
    }
    b.build()
}

/// A dependency matrix obeying the dummy-row rule.
pub fn random_dependency<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    params: FactorParams,
) -> MethodDependencyMatrix {
    random_factor(rng, rows, cols, params).into_parts().0
}

pub fn random_availability<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MethodAvailabilityVector {
    let mut entries: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    entries[DUMMY] = 0.0;
    MethodAvailabilityVector::new(entries).expect("entries drawn from [0, 1)")
}

pub fn random_discrete_availability<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> DiscreteAvailabilityVector {
    let mut entries: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    entries[DUMMY] = false;
    DiscreteAvailabilityVector::new(entries).expect("dummy cleared")
}

/// Positive random weights over `methods` real methods.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, methods: usize) -> InvocationWeights {
    InvocationWeights::new((0..methods).map(|_| rng.random_range(0.01..1.0)).collect())
        .expect("positive weights")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphParams {
    pub max_interfaces: usize,
    pub max_adapters: usize,
    /// Real methods per interface, at least one.
    pub max_methods: usize,
    pub factor: FactorParams,
}

impl Default for GraphParams {
    fn default() -> Self {
        Self {
            max_interfaces: 6,
            max_adapters: 10,
            max_methods: 4,
            factor: FactorParams::default(),
        }
    }
}

fn random_topology<R: Rng + ?Sized>(
    rng: &mut R,
    params: &GraphParams,
) -> (Vec<InterfaceSpec>, Vec<(String, usize, usize)>) {
    let count = rng.random_range(2..=params.max_interfaces.max(2));
    let interfaces: Vec<_> = (0..count)
        .map(|n| {
            let methods = rng.random_range(1..=params.max_methods.max(1));
            InterfaceSpec::new(format!("I{n}"), (0..methods).map(|m| format!("m{m}")))
        })
        .collect();
    let adapters = (0..rng.random_range(0..=params.max_adapters))
        .map(|n| {
            (
                format!("A{n}"),
                rng.random_range(0..count),
                rng.random_range(0..count),
            )
        })
        .collect();
    (interfaces, adapters)
}

/// Random multigraph with self-loops and parallel adapters allowed.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, params: &GraphParams) -> InterfaceAdapterGraph {
    let (interfaces, edges) = random_topology(rng, params);
    let adapters = edges
        .into_iter()
        .map(|(name, s, t)| {
            let f = random_factor(
                rng,
                interfaces[t].slots(),
                interfaces[s].slots(),
                params.factor,
            );
            AdapterSpec::new(name, &interfaces[s].name, &interfaces[t].name, f)
        })
        .collect();
    InterfaceAdapterGraph::new(interfaces, adapters).expect("generated graph is valid")
}

pub fn random_discrete_graph<R: Rng + ?Sized>(
    rng: &mut R,
    params: &GraphParams,
) -> DiscreteAdapterGraph {
    let (interfaces, edges) = random_topology(rng, params);
    let adapters = edges
        .into_iter()
        .map(|(name, s, t)| {
            let dep = random_dependency(
                rng,
                interfaces[t].slots(),
                interfaces[s].slots(),
                params.factor,
            );
            DiscreteAdapterSpec::new(name, &interfaces[s].name, &interfaces[t].name, dep)
        })
        .collect();
    DiscreteAdapterGraph::new(interfaces, adapters).expect("generated graph is valid")
}
