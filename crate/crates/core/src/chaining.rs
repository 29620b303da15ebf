//! Optimal chain selection.
//!
//! Loss of a chain is `1 - Σ r_m v_m`, where `v` is the target availability
//! obtained by applying each adapter's factor in turn to a fully functional
//! source, and `r` weighs target methods by how often they are invoked.
//!
//! [`greedy_chain`] is a best-first search that grows chains backwards from
//! the target, always extending the cheapest chain seen so far. Prepending
//! an adapter can only lower availability (adaptation is monotone in its
//! input, and one adapter applied to a full source yields at most a full
//! vector), so the first chain popped that starts at a requested source is
//! optimal. It explores every acyclic chain in the worst case.
//! [`brute_force_optimal`] enumerates all chains and serves as its oracle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::algebra::{full_availability, prob_adapt, MethodAvailabilityVector};
use crate::error::{Error, Result};
use crate::graph::{enumerate_acyclic_chains, AdapterChain, InterfaceAdapterGraph, InterfaceSpec};

/// Relative invocation frequencies of the real methods of a target
/// interface, normalized to sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct InvocationWeights(Vec<f64>);

impl InvocationWeights {
    /// `raw[m]` weighs real method `m` (declaration order, dummy excluded).
    /// Any non-negative vector with a positive sum is accepted and rescaled.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidWeights(
                "target interface has no methods to weigh".into(),
            ));
        }
        if let Some(bad) = raw.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weight {bad} is not a finite non-negative number"
            )));
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidWeights("weights sum to zero".into()));
        }
        Ok(Self(raw.into_iter().map(|w| w / total).collect()))
    }

    /// `1/M` on each of the `M` real methods.
    pub fn uniform(methods: usize) -> Result<Self> {
        Self::new(vec![1.0; methods])
    }

    /// Weights keyed by method name; unnamed methods get 0.
    pub fn for_interface<'a>(
        iface: &InterfaceSpec,
        named: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        let mut raw = vec![0.0; iface.methods.len()];
        for (method, weight) in named {
            let index = iface.method_index(method).ok_or_else(|| {
                Error::InvalidWeights(format!(
                    "interface `{}` has no method `{method}`",
                    iface.name
                ))
            })?;
            raw[index - 1] = weight;
        }
        Self::new(raw)
    }

    pub fn method_count(&self) -> usize {
        self.0.len()
    }

    /// Normalized weights, dummy excluded.
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `Σ r_m v_m` over real methods, clamped into `[0, 1]` against
    /// rounding in the normalization.
    pub fn weighted_availability(&self, v: &MethodAvailabilityVector) -> f64 {
        debug_assert_eq!(v.len(), self.0.len() + 1);
        let sum: f64 = self
            .0
            .iter()
            .zip(&v.entries()[1..])
            .map(|(r, p)| r * p)
            .sum();
        sum.clamp(0.0, 1.0)
    }

    fn check_target(&self, target: &InterfaceSpec) -> Result<()> {
        if self.0.len() == target.methods.len() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op: "invocation weights",
                expected: target.methods.len(),
                found: self.0.len(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSearchResult {
    pub chain: AdapterChain,
    /// Weighted availability `Σ r_m v_m`.
    pub availability: f64,
    /// Always `1 - availability`.
    pub loss: f64,
    /// Availability of each target method (dummy slot included).
    pub per_method: MethodAvailabilityVector,
}

impl ChainSearchResult {
    fn new(
        chain: AdapterChain,
        per_method: MethodAvailabilityVector,
        weights: &InvocationWeights,
    ) -> Self {
        let availability = weights.weighted_availability(&per_method);
        Self {
            chain,
            availability,
            loss: 1.0 - availability,
            per_method,
        }
    }

    fn identity(target: &InterfaceSpec) -> Self {
        Self {
            chain: AdapterChain::empty(),
            availability: 1.0,
            loss: 0.0,
            per_method: full_availability(target.slots()),
        }
    }
}

/// Target availability of a resolved, non-empty chain, adapter by adapter.
fn stepwise_availability(graph: &InterfaceAdapterGraph, ids: &[usize]) -> MethodAvailabilityVector {
    let source = graph.ends(ids[0]).0;
    let start = full_availability(graph.interface_at(source).slots());
    ids.iter().fold(start, |p, &id| {
        prob_adapt(&graph.adapter_at(id).factor, &p).expect("graph shapes are validated")
    })
}

/// Loss and per-method availability of an explicit chain ending at `target`.
/// The empty chain adapts nothing and has loss 0.
pub fn evaluate_chain(
    graph: &InterfaceAdapterGraph,
    chain: &AdapterChain,
    target: &str,
    weights: &InvocationWeights,
) -> Result<ChainSearchResult> {
    let target_id = graph.interface_id(target)?;
    let target_spec = graph.interface_at(target_id);
    weights.check_target(target_spec)?;
    let ids = graph.resolve_chain(chain)?;
    let Some(&last) = ids.last() else {
        return Ok(ChainSearchResult::identity(target_spec));
    };
    let end = graph.ends(last).1;
    if end != target_id {
        return Err(Error::ChainTargetMismatch {
            expected: target.to_string(),
            found: graph.interface_at(end).name.clone(),
        });
    }
    Ok(ChainSearchResult::new(
        chain.clone(),
        stepwise_availability(graph, &ids),
        weights,
    ))
}

/// `1 - Σ r_m v_m` for a chain ending at `target`.
pub fn prob_loss(
    graph: &InterfaceAdapterGraph,
    chain: &AdapterChain,
    target: &str,
    weights: &InvocationWeights,
) -> Result<f64> {
    evaluate_chain(graph, chain, target, weights).map(|r| r.loss)
}

/// Ordering shared by the greedy search and the oracle: lower loss, then
/// fewer adapters, then lexicographically smaller adapter names.
fn rank(a_loss: f64, a_names: &[String], b_loss: f64, b_names: &[String]) -> Ordering {
    a_loss
        .total_cmp(&b_loss)
        .then(a_names.len().cmp(&b_names.len()))
        .then_with(|| a_names.cmp(b_names))
}

struct Candidate {
    loss: f64,
    // Source end first.
    ids: Vec<usize>,
    chain: AdapterChain,
    per_method: MethodAvailabilityVector,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Reversed: BinaryHeap pops the maximum.
    fn cmp(&self, other: &Self) -> Ordering {
        rank(
            other.loss,
            other.chain.adapters(),
            self.loss,
            self.chain.adapters(),
        )
    }
}

/// A chain taken off the greedy frontier, in pop order.
#[derive(Debug, Clone, PartialEq)]
pub struct PoppedChain {
    pub chain: AdapterChain,
    pub loss: f64,
}

/// Outcome of a greedy search together with its pop sequence.
#[derive(Debug, Clone)]
pub struct GreedySearch {
    pub result: Option<ChainSearchResult>,
    pub popped: Vec<PoppedChain>,
    /// Chains ever placed on the frontier, the empty chain included.
    pub pushed: usize,
}

/// Best-first search from `target` backwards until a chain starting at one
/// of `sources` is popped. Each popped chain is expanded exactly once.
pub fn greedy_search(
    graph: &InterfaceAdapterGraph,
    sources: &[&str],
    target: &str,
    weights: &InvocationWeights,
) -> Result<GreedySearch> {
    if sources.is_empty() {
        return Err(Error::EmptySourceSet);
    }
    let target_id = graph.interface_id(target)?;
    let target_spec = graph.interface_at(target_id);
    weights.check_target(target_spec)?;
    let mut is_source = vec![false; graph.interfaces().len()];
    for name in sources {
        is_source[graph.interface_id(name)?] = true;
    }

    let mut frontier = BinaryHeap::new();
    let empty = ChainSearchResult::identity(target_spec);
    frontier.push(Candidate {
        loss: empty.loss,
        ids: Vec::new(),
        chain: empty.chain,
        per_method: empty.per_method,
    });
    let mut search = GreedySearch {
        result: None,
        popped: Vec::new(),
        pushed: 1,
    };

    while let Some(current) = frontier.pop() {
        search.popped.push(PoppedChain {
            chain: current.chain.clone(),
            loss: current.loss,
        });
        let head = match current.ids.first() {
            Some(&first) => graph.ends(first).0,
            None => target_id,
        };
        if is_source[head] {
            search.result = Some(ChainSearchResult::new(
                current.chain,
                current.per_method,
                weights,
            ));
            return Ok(search);
        }
        for &edge in graph.incoming(head) {
            let from = graph.ends(edge).0;
            let revisits =
                from == target_id || current.ids.iter().any(|&id| graph.ends(id).0 == from);
            if revisits {
                continue;
            }
            let mut ids = Vec::with_capacity(current.ids.len() + 1);
            ids.push(edge);
            ids.extend_from_slice(&current.ids);
            let chain = graph.chain_from_ids(&ids);
            let result = ChainSearchResult::new(chain, stepwise_availability(graph, &ids), weights);
            frontier.push(Candidate {
                loss: result.loss,
                ids,
                chain: result.chain,
                per_method: result.per_method,
            });
            search.pushed += 1;
        }
    }
    Ok(search)
}

/// Minimum-loss chain from `source` to `target`, or `None` when no chain
/// exists. `source == target` gives the empty chain with loss 0.
pub fn greedy_chain(
    graph: &InterfaceAdapterGraph,
    source: &str,
    target: &str,
    weights: &InvocationWeights,
) -> Result<Option<ChainSearchResult>> {
    greedy_search(graph, &[source], target, weights).map(|s| s.result)
}

/// Like [`greedy_chain`] but any member of `sources` may start the chain.
pub fn greedy_chain_multi_source(
    graph: &InterfaceAdapterGraph,
    sources: &[&str],
    target: &str,
    weights: &InvocationWeights,
) -> Result<Option<ChainSearchResult>> {
    greedy_search(graph, sources, target, weights).map(|s| s.result)
}

/// Exhaustive reference: scores every acyclic chain and keeps the best
/// under the same ordering as [`greedy_chain`].
pub fn brute_force_optimal(
    graph: &InterfaceAdapterGraph,
    source: &str,
    target: &str,
    weights: &InvocationWeights,
) -> Result<Option<ChainSearchResult>> {
    weights.check_target(graph.interface_at(graph.interface_id(target)?))?;
    let mut best: Option<ChainSearchResult> = None;
    for chain in enumerate_acyclic_chains(graph, source, target, None)? {
        let scored = evaluate_chain(graph, &chain, target, weights)?;
        let better = best.as_ref().is_none_or(|b| {
            rank(
                scored.loss,
                scored.chain.adapters(),
                b.loss,
                b.chain.adapters(),
            ) == Ordering::Less
        });
        if better {
            best = Some(scored);
        }
    }
    Ok(best)
}

/// [`brute_force_optimal`] over several candidate sources.
pub fn brute_force_optimal_multi_source(
    graph: &InterfaceAdapterGraph,
    sources: &[&str],
    target: &str,
    weights: &InvocationWeights,
) -> Result<Option<ChainSearchResult>> {
    if sources.is_empty() {
        return Err(Error::EmptySourceSet);
    }
    let mut best: Option<ChainSearchResult> = None;
    for source in sources {
        let Some(found) = brute_force_optimal(graph, source, target, weights)? else {
            continue;
        };
        let better = best.as_ref().is_none_or(|b| {
            rank(
                found.loss,
                found.chain.adapters(),
                b.loss,
                b.chain.adapters(),
            ) == Ordering::Less
        });
        if better {
            best = Some(found);
        }
    }
    Ok(best)
}

/// Whether some chain reaches weighted availability `threshold` (with
/// 1e-12 slack).
pub fn prob_chain_decision(
    graph: &InterfaceAdapterGraph,
    source: &str,
    target: &str,
    weights: &InvocationWeights,
    threshold: f64,
) -> Result<bool> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::ThresholdOutOfRange(threshold));
    }
    Ok(brute_force_optimal(graph, source, target, weights)?
        .is_some_and(|best| best.availability >= threshold - 1e-12))
}
