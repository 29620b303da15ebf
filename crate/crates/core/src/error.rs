use std::fmt;

use crate::algebra::FactorViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch in {op}: expected {expected}, found {found}")]
    ShapeMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix needs at least one row and one column")]
    EmptyMatrix,
    #[error("ragged matrix: row {row} has {found} cells, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("availability entry {index} = {value} is outside [0, 1]")]
    AvailabilityOutOfRange { index: usize, value: f64 },
    #[error("the dummy method must be unavailable")]
    DummyAvailable,
    #[error("availability vector needs at least the dummy slot")]
    EmptyVector,
    #[error("invalid graph: {}", join_issues(.0))]
    InvalidGraph(Vec<GraphIssue>),
    #[error("unknown interface `{0}`")]
    UnknownInterface(String),
    #[error("unknown adapter `{0}`")]
    UnknownAdapter(String),
    #[error("adapter `{next}` (source `{next_source}`) cannot follow `{previous}` (target `{previous_target}`)")]
    IncompatibleChain {
        previous: String,
        previous_target: String,
        next: String,
        next_source: String,
    },
    #[error("chain visits interface `{0}` twice")]
    CyclicChain(String),
    #[error("chain is empty")]
    EmptyChain,
    #[error("chain ends at `{found}`, expected `{expected}`")]
    ChainTargetMismatch { expected: String, found: String },
    #[error("invalid invocation weights: {0}")]
    InvalidWeights(String),
    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("method count {requested} is outside 0..={available}")]
    MethodCountOutOfRange { requested: usize, available: usize },
    #[error("source set is empty")]
    EmptySourceSet,
}

fn join_issues(issues: &[GraphIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// One problem found while assembling an adapter graph.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphIssue {
    DuplicateInterface(String),
    DuplicateMethod {
        interface: String,
        method: String,
    },
    DuplicateAdapter(String),
    UnknownEndpoint {
        adapter: String,
        interface: String,
    },
    FactorShape {
        adapter: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    Factor {
        adapter: String,
        violation: FactorViolation,
    },
}

impl fmt::Display for GraphIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphIssue::DuplicateInterface(name) => write!(f, "duplicate interface `{name}`"),
            GraphIssue::DuplicateMethod { interface, method } => {
                write!(
                    f,
                    "interface `{interface}` declares method `{method}` twice"
                )
            }
            GraphIssue::DuplicateAdapter(name) => write!(f, "duplicate adapter `{name}`"),
            GraphIssue::UnknownEndpoint { adapter, interface } => {
                write!(
                    f,
                    "adapter `{adapter}` references unknown interface `{interface}`"
                )
            }
            GraphIssue::FactorShape {
                adapter,
                expected,
                found,
            } => write!(
                f,
                "adapter `{adapter}` has a {}x{} factor, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            GraphIssue::Factor { adapter, violation } => {
                write!(f, "adapter `{adapter}`: {violation}")
            }
        }
    }
}
