use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgraph_core::GraphKind;

#[derive(Debug, Parser)]
#[command(
    name = "nilgraph",
    version,
    about = "Nilpotent and commuting graphs of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format. `dot` is only valid for `graph`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest group order to construct.
    #[arg(long, env = "NILGRAPH_ORDER_CAP", global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub order_cap: Option<u64>,

    /// Worker threads; 0 or omitted uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a group and print its Cayley table.
    Build(SpecArg),
    /// Structural invariants, graph statistics and check outcomes for one group.
    Analyze {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        checks: CheckArg,
    },
    /// Export one graph of a group.
    Graph {
        #[command(flatten)]
        spec: SpecArg,
        /// nilpotent, reduced or commuting.
        #[arg(long, default_value = "reduced", value_parser = parse_kind)]
        kind: GraphKind,
    },
    /// Run every check over a catalog of groups.
    Verify {
        /// Catalog file: a list of specs or `{"cap": n, "entries": [...]}`.
        /// Defaults to the built-in catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        checks: CheckArg,
    },
    /// Search the order-54 groups N : C2 for the diameter-3 witness.
    Witness54 {
        /// Include every examined candidate.
        #[arg(long)]
        list_candidates: bool,
    },
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Group spec as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, Args)]
pub struct CheckArg {
    /// Restrict outcomes to this check; repeatable.
    #[arg(long = "check")]
    pub checks: Vec<String>,
}

impl CheckArg {
    pub fn only(&self) -> Option<&[String]> {
        (!self.checks.is_empty()).then_some(self.checks.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse()
        .map_err(|e: nilgraph_core::GraphError| e.to_string())
}
