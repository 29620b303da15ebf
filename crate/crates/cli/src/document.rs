//! JSON graph documents.
//!
//! ```json
//! {
//!   "interfaces": [{"name": "Video1", "methods": ["playFile"]}, ...],
//!   "adapters": [{
//!     "name": "A1", "source": "Video1", "target": "Video2",
//!     "methods": {"play": [{"method": "playFile", "p": 0.6666666666666666}]}
//!   }, ...]
//! }
//! ```
//!
//! Each target method maps to `"always"`, `"never"` or a list of source
//! method dependencies. Every target method must be listed. Discrete
//! documents omit `"p"`.

use chainloss_core::algebra::{FactorBuilder, FactorViolation, DUMMY};
use chainloss_core::graph::{AdapterSpec, InterfaceSpec};
use chainloss_core::{
    DiscreteAdapterGraph, DiscreteAdapterSpec, Error as CoreError, GraphIssue,
    InterfaceAdapterGraph, ProbabilisticAdaptationFactor,
};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub interfaces: Vec<InterfaceEntry>,
    pub adapters: Vec<AdapterEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfaceEntry {
    pub name: String,
    pub methods: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdapterEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub methods: IndexMap<String, MethodRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MethodRule {
    Keyword(Keyword),
    Depends(Vec<Dependency>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Always,
    Never,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dependency {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Probabilistic,
    Discrete,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Builds and validates the probabilistic graph, or returns one
    /// diagnostic per problem.
    pub fn to_graph(&self) -> Result<InterfaceAdapterGraph, Vec<String>> {
        let (interfaces, built, mut diagnostics) = self.build(Mode::Probabilistic);
        let adapters = built
            .into_iter()
            .map(|(a, f)| AdapterSpec::new(&a.name, &a.source, &a.target, f))
            .collect();
        match InterfaceAdapterGraph::new(interfaces, adapters) {
            Ok(graph) if diagnostics.is_empty() => Ok(graph),
            Ok(_) => Err(diagnostics),
            Err(err) => {
                diagnostics.extend(self.describe(err));
                Err(diagnostics)
            }
        }
    }

    /// Builds and validates a discrete graph; `"p"` must be absent.
    pub fn to_discrete_graph(&self) -> Result<DiscreteAdapterGraph, Vec<String>> {
        let (interfaces, built, mut diagnostics) = self.build(Mode::Discrete);
        let adapters = built
            .into_iter()
            .map(|(a, f)| DiscreteAdapterSpec::new(&a.name, &a.source, &a.target, f.into_parts().0))
            .collect();
        match DiscreteAdapterGraph::new(interfaces, adapters) {
            Ok(graph) if diagnostics.is_empty() => Ok(graph),
            Ok(_) => Err(diagnostics),
            Err(err) => {
                diagnostics.extend(self.describe(err));
                Err(diagnostics)
            }
        }
    }

    fn build(
        &self,
        mode: Mode,
    ) -> (
        Vec<InterfaceSpec>,
        Vec<(&AdapterEntry, ProbabilisticAdaptationFactor)>,
        Vec<String>,
    ) {
        let interfaces: Vec<InterfaceSpec> = self
            .interfaces
            .iter()
            .map(|i| InterfaceSpec::new(&i.name, &i.methods))
            .collect();
        let find = |name: &str| interfaces.iter().find(|i| i.name == name);
        let mut diagnostics = Vec::new();
        let mut built = Vec::new();
        for entry in &self.adapters {
            let (Some(source), Some(target)) = (find(&entry.source), find(&entry.target)) else {
                // Let the graph builder name the missing endpoint.
                built.push((entry, FactorBuilder::new(1, 1).build()));
                continue;
            };
            built.push((entry, entry.factor(source, target, mode, &mut diagnostics)));
        }
        (interfaces, built, diagnostics)
    }

    fn describe(&self, err: CoreError) -> Vec<String> {
        match err {
            CoreError::InvalidGraph(issues) => {
                issues.iter().map(|i| self.describe_issue(i)).collect()
            }
            other => vec![other.to_string()],
        }
    }

    fn describe_issue(&self, issue: &GraphIssue) -> String {
        let GraphIssue::Factor {
            adapter,
            violation: FactorViolation::ConversionOutOfRange { row, col, value },
        } = issue
        else {
            return issue.to_string();
        };
        let names = self
            .adapters
            .iter()
            .find(|a| &a.name == adapter)
            .and_then(|a| {
                let method = |iface: &str, index: usize| {
                    self.interfaces
                        .iter()
                        .find(|i| i.name == iface)
                        .and_then(|i| index.checked_sub(1).and_then(|m| i.methods.get(m)))
                };
                Some((method(&a.target, *row)?, method(&a.source, *col)?))
            });
        match names {
            Some((target, source)) => format!(
                "adapter `{adapter}`: probability {value} for `{target}` -> `{source}` is outside [0, 1]"
            ),
            None => issue.to_string(),
        }
    }

    /// Document form of a validated graph.
    pub fn from_graph(graph: &InterfaceAdapterGraph) -> Self {
        Self {
            interfaces: graph
                .interfaces()
                .iter()
                .map(|i| InterfaceEntry {
                    name: i.name.clone(),
                    methods: i.methods.clone(),
                })
                .collect(),
            adapters: graph
                .adapters()
                .iter()
                .map(|a| {
                    AdapterEntry::from_factor(
                        &a.name,
                        graph.interface(&a.source).expect("validated endpoint"),
                        graph.interface(&a.target).expect("validated endpoint"),
                        &a.factor,
                    )
                })
                .collect(),
        }
    }
}

impl AdapterEntry {
    fn factor(
        &self,
        source: &InterfaceSpec,
        target: &InterfaceSpec,
        mode: Mode,
        diagnostics: &mut Vec<String>,
    ) -> ProbabilisticAdaptationFactor {
        let name = &self.name;
        let mut builder = FactorBuilder::new(target.slots(), source.slots());
        for key in self.methods.keys() {
            if target.method_index(key).is_none() {
                diagnostics.push(format!(
                    "adapter `{name}`: `{key}` is not a method of target interface `{}`",
                    target.name
                ));
            }
        }
        for (j, method) in target
            .methods
            .iter()
            .enumerate()
            .map(|(m, name)| (m + 1, name))
        {
            let Some(rule) = self.methods.get(method) else {
                diagnostics.push(format!(
                    "adapter `{name}`: target method `{method}` has no rule (use \"always\", \"never\" or a dependency list)"
                ));
                continue;
            };
            let deps = match rule {
                MethodRule::Keyword(Keyword::Always) => continue,
                MethodRule::Keyword(Keyword::Never) => {
                    builder = builder.never(j);
                    continue;
                }
                MethodRule::Depends(deps) => deps,
            };
            let mut seen = Vec::new();
            for dep in deps {
                let Some(i) = source.method_index(&dep.method) else {
                    diagnostics.push(format!(
                        "adapter `{name}`: `{method}` depends on `{}`, which is not a method of source interface `{}`",
                        dep.method, source.name
                    ));
                    continue;
                };
                if seen.contains(&i) {
                    diagnostics.push(format!(
                        "adapter `{name}`: `{method}` lists `{}` twice",
                        dep.method
                    ));
                    continue;
                }
                seen.push(i);
                let p = match (mode, dep.p) {
                    (Mode::Probabilistic, Some(p)) => p,
                    (Mode::Probabilistic, None) => {
                        diagnostics.push(format!(
                            "adapter `{name}`: dependency `{method}` -> `{}` has no probability `p`",
                            dep.method
                        ));
                        continue;
                    }
                    (Mode::Discrete, None) => 1.0,
                    (Mode::Discrete, Some(_)) => {
                        diagnostics.push(format!(
                            "adapter `{name}`: discrete dependency `{method}` -> `{}` must not carry `p`",
                            dep.method
                        ));
                        continue;
                    }
                };
                builder = builder.depends(j, i, p);
            }
        }
        builder.build()
    }

    /// Renders a factor between two interfaces as a document entry.
    pub fn from_factor(
        name: &str,
        source: &InterfaceSpec,
        target: &InterfaceSpec,
        factor: &ProbabilisticAdaptationFactor,
    ) -> Self {
        let dep = factor.dep();
        let methods = target
            .methods
            .iter()
            .enumerate()
            .map(|(m, method)| {
                let j = m + 1;
                let rule = if dep.get(j, DUMMY) {
                    MethodRule::Keyword(Keyword::Never)
                } else if dep.support(j).next().is_none() {
                    MethodRule::Keyword(Keyword::Always)
                } else {
                    MethodRule::Depends(
                        dep.support(j)
                            .map(|i| Dependency {
                                method: source.method_name(i).expect("real method").to_string(),
                                p: Some(factor.conv().get(j, i)),
                            })
                            .collect(),
                    )
                };
                (method.clone(), rule)
            })
            .collect();
        Self {
            name: name.to_string(),
            source: source.name.clone(),
            target: target.name.clone(),
            methods,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"{
      "interfaces": [
        {"name": "S", "methods": ["a", "b"]},
        {"name": "T", "methods": ["x", "y", "z"]}
      ],
      "adapters": [
        {"name": "ST", "source": "S", "target": "T", "methods": {
          "x": [{"method": "a", "p": 0.5}, {"method": "b", "p": 0.25}],
          "y": "never",
          "z": "always"
        }}
      ]
    }"#;

    #[test]
    fn rules_map_onto_dependency_rows() {
        let g = GraphDocument::parse(MINI).unwrap().to_graph().unwrap();
        let f = &g.adapter("ST").unwrap().factor;
        assert_eq!(
            f.dep().to_rows(),
            vec![
                vec![true, false, false],
                vec![false, true, true],
                vec![true, false, false],
                vec![false, false, false],
            ]
        );
        assert_eq!(f.conv().get(1, 1), 0.5);
        assert_eq!(f.conv().get(1, 2), 0.25);
    }

    #[test]
    fn document_round_trips_through_graph() {
        let doc = GraphDocument::parse(MINI).unwrap();
        let back = GraphDocument::from_graph(&doc.to_graph().unwrap());
        assert_eq!(back, doc);
    }

    #[test]
    fn every_problem_gets_a_diagnostic() {
        let text = r#"{
          "interfaces": [{"name": "S", "methods": ["a"]}, {"name": "T", "methods": ["x", "y"]}],
          "adapters": [
            {"name": "A", "source": "S", "target": "T", "methods": {
              "x": [{"method": "a", "p": 1.2}, {"method": "q", "p": 0.1}],
              "w": "always"
            }},
            {"name": "B", "source": "Nope", "target": "T", "methods": {}}
          ]
        }"#;
        let diags = GraphDocument::parse(text).unwrap().to_graph().unwrap_err();
        assert_eq!(diags.len(), 5, "{diags:#?}");
        assert!(diags.iter().any(|d| d.contains("`w` is not a method")));
        assert!(diags.iter().any(|d| d.contains("`y` has no rule")));
        assert!(diags.iter().any(|d| d.contains("`q`")));
        assert!(diags.iter().any(|d| d.contains("unknown interface `Nope`")));
        assert!(diags
            .iter()
            .any(|d| d.contains("probability 1.2 for `x` -> `a` is outside [0, 1]")));
    }

    #[test]
    fn missing_or_unexpected_probabilities() {
        let prob = MINI.replace(r#", "p": 0.25"#, "");
        let diags = GraphDocument::parse(&prob).unwrap().to_graph().unwrap_err();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].contains("no probability"));
        let diags = GraphDocument::parse(MINI)
            .unwrap()
            .to_discrete_graph()
            .unwrap_err();
        assert_eq!(diags.len(), 2);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = GraphDocument::parse("{\n  \"interfaces\": [,]\n}").unwrap_err();
        assert_eq!(err.line(), 2);
        assert!(err.to_string().contains("line 2"));
    }
}
