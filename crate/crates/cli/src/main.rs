use std::path::PathBuf;
use std::process::ExitCode;

use chainloss_cli::commands::{self, ChainArgs, EXIT_INPUT};
use clap::{Parser, Subcommand};

/// Loss analysis and selection of interface adapter chains.
#[derive(Debug, Parser)]
#[command(name = "chainloss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph document; prints "ok" or one diagnostic per problem.
    Validate {
        graph: PathBuf,
        /// Check a discrete document (no `p` fields).
        #[arg(long)]
        discrete: bool,
    },
    /// Find the chain with the least loss.
    Chain {
        graph: PathBuf,
        #[arg(long, required_unless_present = "sources", conflicts_with = "sources")]
        source: Option<String>,
        /// Accept a chain starting at any of these interfaces.
        #[arg(long, value_delimiter = ',')]
        sources: Vec<String>,
        #[arg(long)]
        target: String,
        /// `uniform` or a JSON file mapping method names to weights.
        #[arg(long, default_value = "uniform")]
        weights: String,
        /// Score every acyclic chain instead of searching.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Loss and per-method availability of an explicit chain.
    Loss {
        graph: PathBuf,
        /// Comma-separated adapter names, source end first.
        #[arg(long, allow_hyphen_values = true)]
        chain: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "uniform")]
        weights: String,
    },
    /// Fuse a chain into a single adapter entry.
    Compose {
        graph: PathBuf,
        #[arg(long)]
        chain: String,
    },
    /// List every acyclic chain with its loss.
    Enumerate {
        graph: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "uniform")]
        weights: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Turn a discrete graph (no `p` fields) into a probabilistic one.
    Reduce { graph: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { graph, discrete } => commands::validate(&graph, discrete),
        Command::Chain {
            graph,
            source,
            sources,
            target,
            weights,
            exhaustive,
        } => commands::chain(
            &graph,
            &ChainArgs {
                source,
                sources,
                target,
                weights,
                exhaustive,
            },
        ),
        Command::Loss {
            graph,
            chain,
            target,
            weights,
        } => commands::loss(&graph, &chain, &target, &weights),
        Command::Compose { graph, chain } => commands::compose(&graph, &chain),
        Command::Enumerate {
            graph,
            source,
            target,
            weights,
            max_len,
        } => commands::enumerate(&graph, &source, &target, &weights, max_len),
        Command::Reduce { graph } => commands::reduce(&graph),
    };
    match outcome {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            for line in err.diagnostics() {
                eprintln!("error: {line}");
            }
            ExitCode::from(EXIT_INPUT)
        }
    }
}
