//! Interface adapter graphs: interfaces as nodes, adapters as directed edges
//! from source to target interface, each edge carrying its factor.
//!
//! Parallel adapters between the same pair of interfaces are allowed. Chains
//! are acyclic over interfaces: no interface may be visited twice.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::algebra::{prob_compose, ProbabilisticAdaptationFactor};
use crate::error::{Error, GraphIssue, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceSpec {
    pub name: String,
    /// Real methods in declaration order. The dummy is implicit and sits in
    /// front of these, so method `methods[m]` has internal index `m + 1`.
    pub methods: Vec<String>,
}

impl InterfaceSpec {
    pub fn new(
        name: impl Into<String>,
        methods: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Self {
            name: name.into(),
            methods: methods.into_iter().map(Into::into).collect(),
        }
    }

    /// Number of slots including the dummy.
    pub fn slots(&self) -> usize {
        self.methods.len() + 1
    }

    /// Internal index (dummy at 0) of a named method.
    pub fn method_index(&self, method: &str) -> Option<usize> {
        self.methods.iter().position(|m| m == method).map(|m| m + 1)
    }

    /// Name of the method at an internal index; `None` for the dummy.
    pub fn method_name(&self, index: usize) -> Option<&str> {
        index
            .checked_sub(1)
            .and_then(|m| self.methods.get(m))
            .map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdapterSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub factor: ProbabilisticAdaptationFactor,
}

impl AdapterSpec {
    pub fn new(
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        factor: ProbabilisticAdaptationFactor,
    ) -> Self {
        Self {
            name: name.into(),
            source: source.into(),
            target: target.into(),
            factor,
        }
    }
}

/// Adapter names in application order: the first adapter consumes the
/// source interface, the last one produces the target interface.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdapterChain(Vec<String>);

impl AdapterChain {
    pub fn new(adapters: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self(adapters.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn adapters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AdapterChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// A validated, immutable adapter graph.
#[derive(Debug, Clone)]
pub struct InterfaceAdapterGraph {
    interfaces: Vec<InterfaceSpec>,
    adapters: Vec<AdapterSpec>,
    interface_ids: HashMap<String, usize>,
    adapter_ids: HashMap<String, usize>,
    ends: Vec<(usize, usize)>,
    // Adapter ids sorted by adapter name.
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

impl InterfaceAdapterGraph {
    /// Checks names, endpoints and every adapter factor, reporting all
    /// problems at once.
    pub fn new(interfaces: Vec<InterfaceSpec>, adapters: Vec<AdapterSpec>) -> Result<Self> {
        let mut issues = Vec::new();
        let mut interface_ids = HashMap::new();
        for (id, iface) in interfaces.iter().enumerate() {
            if interface_ids.insert(iface.name.clone(), id).is_some() {
                issues.push(GraphIssue::DuplicateInterface(iface.name.clone()));
            }
            let mut seen = HashSet::new();
            for method in &iface.methods {
                if !seen.insert(method.as_str()) {
                    issues.push(GraphIssue::DuplicateMethod {
                        interface: iface.name.clone(),
                        method: method.clone(),
                    });
                }
            }
        }

        let mut adapter_ids = HashMap::new();
        let mut ends = Vec::with_capacity(adapters.len());
        for (id, adapter) in adapters.iter().enumerate() {
            if adapter_ids.insert(adapter.name.clone(), id).is_some() {
                issues.push(GraphIssue::DuplicateAdapter(adapter.name.clone()));
            }
            let mut endpoint = |name: &str| {
                let found = interface_ids.get(name).copied();
                if found.is_none() {
                    issues.push(GraphIssue::UnknownEndpoint {
                        adapter: adapter.name.clone(),
                        interface: name.to_string(),
                    });
                }
                found
            };
            let (source, target) = (endpoint(&adapter.source), endpoint(&adapter.target));
            let (Some(source), Some(target)) = (source, target) else {
                ends.push((usize::MAX, usize::MAX));
                continue;
            };
            ends.push((source, target));
            let expected = (interfaces[target].slots(), interfaces[source].slots());
            if adapter.factor.shape() != expected {
                issues.push(GraphIssue::FactorShape {
                    adapter: adapter.name.clone(),
                    expected,
                    found: adapter.factor.shape(),
                });
                continue;
            }
            issues.extend(
                crate::algebra::validate_factor(&adapter.factor)
                    .into_iter()
                    .map(|violation| GraphIssue::Factor {
                        adapter: adapter.name.clone(),
                        violation,
                    }),
            );
        }
        if !issues.is_empty() {
            return Err(Error::InvalidGraph(issues));
        }

        let mut incoming = vec![Vec::new(); interfaces.len()];
        let mut outgoing = vec![Vec::new(); interfaces.len()];
        let mut by_name: Vec<usize> = (0..adapters.len()).collect();
        by_name.sort_by(|&a, &b| adapters[a].name.cmp(&adapters[b].name));
        for id in by_name {
            let (source, target) = ends[id];
            outgoing[source].push(id);
            incoming[target].push(id);
        }
        Ok(Self {
            interfaces,
            adapters,
            interface_ids,
            adapter_ids,
            ends,
            incoming,
            outgoing,
        })
    }

    pub fn interfaces(&self) -> &[InterfaceSpec] {
        &self.interfaces
    }

    pub fn adapters(&self) -> &[AdapterSpec] {
        &self.adapters
    }

    pub fn interface(&self, name: &str) -> Option<&InterfaceSpec> {
        self.interface_ids.get(name).map(|&id| &self.interfaces[id])
    }

    pub fn adapter(&self, name: &str) -> Option<&AdapterSpec> {
        self.adapter_ids.get(name).map(|&id| &self.adapters[id])
    }

    pub(crate) fn interface_id(&self, name: &str) -> Result<usize> {
        self.interface_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownInterface(name.to_string()))
    }

    pub(crate) fn adapter_id(&self, name: &str) -> Result<usize> {
        self.adapter_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAdapter(name.to_string()))
    }

    pub(crate) fn interface_at(&self, id: usize) -> &InterfaceSpec {
        &self.interfaces[id]
    }

    pub(crate) fn adapter_at(&self, id: usize) -> &AdapterSpec {
        &self.adapters[id]
    }

    /// `(source, target)` interface ids of an adapter.
    pub(crate) fn ends(&self, adapter: usize) -> (usize, usize) {
        self.ends[adapter]
    }

    pub(crate) fn incoming(&self, interface: usize) -> &[usize] {
        &self.incoming[interface]
    }

    pub(crate) fn outgoing(&self, interface: usize) -> &[usize] {
        &self.outgoing[interface]
    }

    /// Resolves a chain to adapter ids, checking names, consecutive
    /// compatibility and acyclicity.
    pub(crate) fn resolve_chain(&self, chain: &AdapterChain) -> Result<Vec<usize>> {
        let ids = chain
            .adapters()
            .iter()
            .map(|name| self.adapter_id(name))
            .collect::<Result<Vec<_>>>()?;
        let mut visited = HashSet::new();
        for (m, &id) in ids.iter().enumerate() {
            let (source, target) = self.ends(id);
            if m == 0 {
                visited.insert(source);
            } else {
                let previous = ids[m - 1];
                let previous_target = self.ends(previous).1;
                if previous_target != source {
                    return Err(Error::IncompatibleChain {
                        previous: self.adapters[previous].name.clone(),
                        previous_target: self.interfaces[previous_target].name.clone(),
                        next: self.adapters[id].name.clone(),
                        next_source: self.interfaces[source].name.clone(),
                    });
                }
            }
            if !visited.insert(target) {
                return Err(Error::CyclicChain(self.interfaces[target].name.clone()));
            }
        }
        Ok(ids)
    }

    /// Source interface of a non-empty chain, after validating it.
    pub fn chain_source(&self, chain: &AdapterChain) -> Result<&InterfaceSpec> {
        let ids = self.resolve_chain(chain)?;
        let first = *ids.first().ok_or(Error::EmptyChain)?;
        Ok(&self.interfaces[self.ends(first).0])
    }

    /// Target interface of a non-empty chain, after validating it.
    pub fn chain_target(&self, chain: &AdapterChain) -> Result<&InterfaceSpec> {
        let ids = self.resolve_chain(chain)?;
        let last = *ids.last().ok_or(Error::EmptyChain)?;
        Ok(&self.interfaces[self.ends(last).1])
    }

    pub(crate) fn chain_from_ids(&self, ids: &[usize]) -> AdapterChain {
        AdapterChain(
            ids.iter()
                .map(|&id| self.adapters[id].name.clone())
                .collect(),
        )
    }
}

/// The single factor equivalent to a whole chain under [`prob_compose`].
///
/// Composition runs from the target end, `((f_n ⊗ f_{n-1}) ⊗ ...) ⊗ f_1`,
/// which is the order in which the greedy search extends chains.
pub fn chain_factor(
    graph: &InterfaceAdapterGraph,
    chain: &AdapterChain,
) -> Result<ProbabilisticAdaptationFactor> {
    let ids = graph.resolve_chain(chain)?;
    let (&last, rest) = ids.split_last().ok_or(Error::EmptyChain)?;
    rest.iter()
        .rev()
        .try_fold(graph.adapter_at(last).factor.clone(), |acc, &id| {
            prob_compose(&acc, &graph.adapter_at(id).factor)
        })
}

/// All acyclic chains from `source` to `target`, shortest first, then in
/// lexicographic order of adapter names. The empty chain is produced only
/// when `source == target`. `max_len` caps the chain length.
pub fn enumerate_acyclic_chains<'g>(
    graph: &'g InterfaceAdapterGraph,
    source: &str,
    target: &str,
    max_len: Option<usize>,
) -> Result<AcyclicChains<'g>> {
    let source = graph.interface_id(source)?;
    let target = graph.interface_id(target)?;
    let mut ready = VecDeque::new();
    let mut frontier = Vec::new();
    if source == target {
        ready.push_back(Vec::new());
    } else {
        frontier.push(Partial {
            adapters: Vec::new(),
            nodes: vec![source],
        });
    }
    Ok(AcyclicChains {
        graph,
        target,
        max_len,
        depth: 0,
        frontier,
        ready,
    })
}

#[derive(Debug, Clone)]
struct Partial {
    adapters: Vec<usize>,
    nodes: Vec<usize>,
}

/// Lazy level-by-level enumeration; see [`enumerate_acyclic_chains`].
#[derive(Debug)]
pub struct AcyclicChains<'g> {
    graph: &'g InterfaceAdapterGraph,
    target: usize,
    max_len: Option<usize>,
    depth: usize,
    // Partial paths of length `depth` not yet at the target, kept in
    // lexicographic order so each level comes out sorted.
    frontier: Vec<Partial>,
    ready: VecDeque<Vec<usize>>,
}

impl AcyclicChains<'_> {
    fn expand(&mut self) {
        let mut next = Vec::new();
        for path in self.frontier.drain(..) {
            let here = *path.nodes.last().expect("paths start at the source");
            for &id in self.graph.outgoing(here) {
                let to = self.graph.ends(id).1;
                if path.nodes.contains(&to) {
                    continue;
                }
                let mut adapters = path.adapters.clone();
                adapters.push(id);
                if to == self.target {
                    self.ready.push_back(adapters);
                } else {
                    let mut nodes = path.nodes.clone();
                    nodes.push(to);
                    next.push(Partial { adapters, nodes });
                }
            }
        }
        self.frontier = next;
        self.depth += 1;
    }
}

impl Iterator for AcyclicChains<'_> {
    type Item = AdapterChain;

    fn next(&mut self) -> Option<AdapterChain> {
        loop {
            if let Some(ids) = self.ready.pop_front() {
                return Some(self.graph.chain_from_ids(&ids));
            }
            if self.frontier.is_empty() || self.max_len.is_some_and(|cap| self.depth >= cap) {
                return None;
            }
            self.expand();
        }
    }
}
