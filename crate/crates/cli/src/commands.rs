use std::fs;
use std::path::{Path, PathBuf};

use chainloss_core::chaining::{
    brute_force_optimal, brute_force_optimal_multi_source, evaluate_chain, greedy_chain,
    greedy_chain_multi_source, ChainSearchResult, InvocationWeights,
};
use chainloss_core::graph::InterfaceSpec;
use chainloss_core::{
    chain_factor, enumerate_acyclic_chains, reduce_graph, AdapterChain, Error as CoreError,
    InterfaceAdapterGraph,
};
use indexmap::IndexMap;
use serde::Serialize;

use crate::document::{AdapterEntry, GraphDocument};

/// Exit status for a successful command.
pub const EXIT_OK: u8 = 0;
/// Bad input: unreadable or invalid files, unknown names, invalid chains.
pub const EXIT_INPUT: u8 = 1;
/// The search found no chain between the requested interfaces.
pub const EXIT_NO_CHAIN: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: parse error: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{} problem(s) found", .0.len())]
    Invalid(Vec<String>),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// One line per problem.
    pub fn diagnostics(&self) -> Vec<String> {
        match self {
            CliError::Invalid(lines) => lines.clone(),
            other => vec![other.to_string()],
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
        }
    }
}

pub fn read_document(path: &Path) -> Result<GraphDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    GraphDocument::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<InterfaceAdapterGraph, CliError> {
    read_document(path)?.to_graph().map_err(CliError::Invalid)
}

/// `uniform`, or a path to a JSON object mapping method names to weights.
pub fn load_weights(spec: &str, target: &InterfaceSpec) -> Result<InvocationWeights, CliError> {
    if spec == "uniform" {
        return Ok(InvocationWeights::uniform(target.methods.len())?);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let named: IndexMap<String, f64> =
        serde_json::from_str(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
    Ok(InvocationWeights::for_interface(
        target,
        named.iter().map(|(k, v)| (k.as_str(), *v)),
    )?)
}

fn target_spec<'g>(
    graph: &'g InterfaceAdapterGraph,
    name: &str,
) -> Result<&'g InterfaceSpec, CliError> {
    graph
        .interface(name)
        .ok_or_else(|| CoreError::UnknownInterface(name.to_string()).into())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

#[derive(Debug, Serialize)]
struct ChainReport {
    chain: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    availability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loss: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_method: Option<IndexMap<String, f64>>,
}

impl ChainReport {
    fn none() -> Self {
        Self {
            chain: None,
            availability: None,
            loss: None,
            per_method: None,
        }
    }

    fn from_result(result: &ChainSearchResult, target: &InterfaceSpec) -> Self {
        Self {
            chain: Some(result.chain.adapters().to_vec()),
            availability: Some(result.availability),
            loss: Some(result.loss),
            per_method: Some(
                target
                    .methods
                    .iter()
                    .zip(&result.per_method.entries()[1..])
                    .map(|(m, v)| (m.clone(), *v))
                    .collect(),
            ),
        }
    }
}

pub fn validate(path: &Path, discrete: bool) -> Result<Outcome, CliError> {
    if discrete {
        read_document(path)?
            .to_discrete_graph()
            .map_err(CliError::Invalid)?;
    } else {
        load_graph(path)?;
    }
    Ok(Outcome::ok("ok\n".into()))
}

#[derive(Debug, Clone, Default)]
pub struct ChainArgs {
    pub source: Option<String>,
    pub sources: Vec<String>,
    pub target: String,
    pub weights: String,
    pub exhaustive: bool,
}

pub fn chain(path: &Path, args: &ChainArgs) -> Result<Outcome, CliError> {
    let graph = load_graph(path)?;
    let target = target_spec(&graph, &args.target)?;
    let weights = load_weights(&args.weights, target)?;
    let sources: Vec<&str> = match (&args.source, args.sources.is_empty()) {
        (Some(s), true) => vec![s.as_str()],
        (None, false) => args.sources.iter().map(String::as_str).collect(),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --source or --sources".into(),
            ))
        }
    };
    let found = match (args.exhaustive, sources.as_slice()) {
        (false, [single]) => greedy_chain(&graph, single, &args.target, &weights)?,
        (false, many) => greedy_chain_multi_source(&graph, many, &args.target, &weights)?,
        (true, [single]) => brute_force_optimal(&graph, single, &args.target, &weights)?,
        (true, many) => brute_force_optimal_multi_source(&graph, many, &args.target, &weights)?,
    };
    Ok(match found {
        Some(result) => Outcome::ok(to_json(&ChainReport::from_result(&result, target))),
        None => Outcome {
            code: EXIT_NO_CHAIN,
            stdout: to_json(&ChainReport::none()),
        },
    })
}

/// Parses `A1,A2`; an empty string is the empty chain.
pub fn parse_chain(spec: &str) -> AdapterChain {
    AdapterChain::new(spec.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

pub fn loss(path: &Path, chain: &str, target: &str, weights: &str) -> Result<Outcome, CliError> {
    let graph = load_graph(path)?;
    let spec = target_spec(&graph, target)?;
    let weights = load_weights(weights, spec)?;
    let result = evaluate_chain(&graph, &parse_chain(chain), target, &weights)?;
    Ok(Outcome::ok(to_json(&ChainReport::from_result(
        &result, spec,
    ))))
}

pub fn compose(path: &Path, chain: &str) -> Result<Outcome, CliError> {
    let graph = load_graph(path)?;
    let chain = parse_chain(chain);
    let factor = chain_factor(&graph, &chain)?;
    let source = graph.chain_source(&chain)?;
    let target = graph.chain_target(&chain)?;
    let entry = AdapterEntry::from_factor(&chain.adapters().join("+"), source, target, &factor);
    Ok(Outcome::ok(to_json(&entry)))
}

#[derive(Debug, Serialize)]
struct EnumerationReport {
    chains: Vec<ChainReport>,
}

pub fn enumerate(
    path: &Path,
    source: &str,
    target: &str,
    weights: &str,
    max_len: Option<usize>,
) -> Result<Outcome, CliError> {
    let graph = load_graph(path)?;
    let spec = target_spec(&graph, target)?;
    let weights = load_weights(weights, spec)?;
    let chains = enumerate_acyclic_chains(&graph, source, target, max_len)?
        .map(|c| {
            evaluate_chain(&graph, &c, target, &weights).map(|r| ChainReport::from_result(&r, spec))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(to_json(&EnumerationReport { chains })))
}

pub fn reduce(path: &Path) -> Result<Outcome, CliError> {
    let discrete = read_document(path)?
        .to_discrete_graph()
        .map_err(CliError::Invalid)?;
    let reduced = reduce_graph(&discrete);
    Ok(Outcome::ok(to_json(&GraphDocument::from_graph(&reduced))))
}
