//! Embedding of the discrete model into the probabilistic one.
//!
//! A discrete adapter only records which source methods each target method
//! needs. Giving every such dependency conversion probability 1 turns
//! boolean availability into 0/1 probabilities and conjunction into
//! multiplication, so the probabilistic engine answers discrete questions
//! exactly.

use crate::algebra::{
    ConversionProbabilityMatrix, MethodDependencyMatrix, ProbabilisticAdaptationFactor, DUMMY,
};
use crate::chaining::{prob_chain_decision, InvocationWeights};
use crate::error::{Error, Result};
use crate::graph::{enumerate_acyclic_chains, AdapterSpec, InterfaceAdapterGraph, InterfaceSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteAdapterSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub dep: MethodDependencyMatrix,
}

impl DiscreteAdapterSpec {
    pub fn new(
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        dep: MethodDependencyMatrix,
    ) -> Self {
        Self {
            name: name.into(),
            source: source.into(),
            target: target.into(),
            dep,
        }
    }
}

/// Adapter graph whose edges carry only dependency matrices.
#[derive(Debug, Clone)]
pub struct DiscreteAdapterGraph {
    interfaces: Vec<InterfaceSpec>,
    adapters: Vec<DiscreteAdapterSpec>,
    reduced: InterfaceAdapterGraph,
}

impl DiscreteAdapterGraph {
    /// Same validation rules as [`InterfaceAdapterGraph::new`].
    pub fn new(interfaces: Vec<InterfaceSpec>, adapters: Vec<DiscreteAdapterSpec>) -> Result<Self> {
        let reduced = InterfaceAdapterGraph::new(
            interfaces.clone(),
            adapters.iter().map(reduce_adapter).collect(),
        )?;
        Ok(Self {
            interfaces,
            adapters,
            reduced,
        })
    }

    pub fn interfaces(&self) -> &[InterfaceSpec] {
        &self.interfaces
    }

    pub fn adapters(&self) -> &[DiscreteAdapterSpec] {
        &self.adapters
    }

    pub fn interface(&self, name: &str) -> Option<&InterfaceSpec> {
        self.interfaces.iter().find(|i| i.name == name)
    }
}

/// Dependencies unchanged, conversion probability 1 on every real
/// dependency. The dummy row and column stay 0; the dummy is never
/// available, so this does not change any result.
pub fn reduce_factor(dep: &MethodDependencyMatrix) -> ProbabilisticAdaptationFactor {
    let mut conv = ConversionProbabilityMatrix::zeros(dep.rows(), dep.cols());
    for j in 1..dep.rows() {
        for i in dep.support(j).filter(|&i| i != DUMMY) {
            conv.set(j, i, 1.0);
        }
    }
    ProbabilisticAdaptationFactor::new(dep.clone(), conv).expect("same shape by construction")
}

fn reduce_adapter(a: &DiscreteAdapterSpec) -> AdapterSpec {
    AdapterSpec::new(&a.name, &a.source, &a.target, reduce_factor(&a.dep))
}

pub fn reduce_graph(graph: &DiscreteAdapterGraph) -> InterfaceAdapterGraph {
    graph.reduced.clone()
}

/// Whether some acyclic chain from `source` makes at least `required` real
/// methods of `target` available, answered through the reduced graph with
/// uniform weights and threshold `required / M`.
pub fn chain_decision_discrete(
    graph: &DiscreteAdapterGraph,
    source: &str,
    target: &str,
    required: usize,
) -> Result<bool> {
    let methods = graph
        .interface(target)
        .ok_or_else(|| Error::UnknownInterface(target.to_string()))?
        .methods
        .len();
    if required > methods {
        return Err(Error::MethodCountOutOfRange {
            requested: required,
            available: methods,
        });
    }
    if methods == 0 {
        return Ok(
            enumerate_acyclic_chains(&graph.reduced, source, target, None)?
                .next()
                .is_some(),
        );
    }
    let weights = InvocationWeights::uniform(methods)?;
    prob_chain_decision(
        &graph.reduced,
        source,
        target,
        &weights,
        required as f64 / methods as f64,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaining::evaluate_chain;
    use crate::fixtures;
    use crate::graph::AdapterChain;

    #[test]
    fn video_chains_are_indistinguishable_after_reduction() {
        let g = reduce_graph(&fixtures::video_discrete_graph());
        let w = InvocationWeights::uniform(1).unwrap();
        for chain in [["A1", "A2"], ["A3", "A4"]] {
            let r = evaluate_chain(&g, &AdapterChain::new(chain), "Video3", &w).unwrap();
            assert_eq!(r.availability, 1.0);
        }
    }

    #[test]
    fn empty_graph_reduces_to_empty_graph() {
        let g = DiscreteAdapterGraph::new(vec![], vec![]).unwrap();
        let r = reduce_graph(&g);
        assert!(r.interfaces().is_empty() && r.adapters().is_empty());
    }

    #[test]
    fn reduced_factor_is_valid_and_zero_one() {
        let dep = MethodDependencyMatrix::from_rows(vec![
            vec![true, false, false],
            vec![false, true, true],
            vec![true, false, false],
            vec![false, false, false],
        ])
        .unwrap();
        let f = reduce_factor(&dep);
        assert!(crate::algebra::validate_factor(&f).is_empty());
        assert_eq!(
            f.conv().to_rows(),
            vec![
                vec![0.0, 0.0, 0.0],
                vec![0.0, 1.0, 1.0],
                vec![0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0]
            ]
        );
    }

    #[test]
    fn discrete_decision_on_video() {
        let g = fixtures::video_discrete_graph();
        assert!(chain_decision_discrete(&g, "Video1", "Video3", 1).unwrap());
        assert!(chain_decision_discrete(&g, "Video1", "Video3", 0).unwrap());
        assert!(!chain_decision_discrete(&g, "Video3", "Video1", 0).unwrap());
        assert_eq!(
            chain_decision_discrete(&g, "Video1", "Video3", 2).unwrap_err(),
            Error::MethodCountOutOfRange {
                requested: 2,
                available: 1
            }
        );
    }

    #[test]
    fn invalid_discrete_graph_is_rejected() {
        let bad = MethodDependencyMatrix::from_rows(vec![vec![false]]).unwrap();
        let err = DiscreteAdapterGraph::new(
            vec![InterfaceSpec::new("I", Vec::<String>::new())],
            vec![DiscreteAdapterSpec::new("A", "I", "I", bad)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
    }
}
