use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netcavity_core::GateConfig;

#[derive(Debug, Parser)]
#[command(
    name = "netcavity",
    version,
    about = "Clique complexes, Betti numbers and cavities of undirected networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coreness histogram, maximum coreness and the computability verdict.
    Kcore {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        gate: GateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Clique counts, boundary ranks, Betti numbers and optionally cavities.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Also search one certificate per Betti number of every order.
        #[arg(long, env = "NETCAVITY_CAVITIES")]
        cavities: bool,
        /// Write one DOT file per cavity into this directory.
        #[arg(
            long,
            env = "NETCAVITY_EMIT_DOT",
            value_name = "DIR",
            requires = "cavities"
        )]
        emit_dot: Option<PathBuf>,
        /// Re-check every certificate before printing it.
        #[arg(long, env = "NETCAVITY_VERIFY", requires = "cavities")]
        verify: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cavity certificates, for one order or for every order with cavities.
    Cavities {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Only this order.
        #[arg(long, env = "NETCAVITY_ORDER")]
        order: Option<usize>,
        #[arg(long, env = "NETCAVITY_EMIT_DOT", value_name = "DIR")]
        emit_dot: Option<PathBuf>,
        #[arg(long, env = "NETCAVITY_VERIFY")]
        verify: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Face counts and Euler characteristic of the smallest k-cavity.
    SmallestCavity {
        /// Cavity order, 1 to 12.
        k: usize,
        /// Also write the generated network as an edge list.
        #[arg(long, value_name = "FILE")]
        network_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Uniform random network with a fixed number of nodes and edges.
    RandomEr {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, env = "NETCAVITY_SEED", default_value_t = 0)]
        seed: u64,
        /// Edge list destination; standard output when absent.
        #[arg(long, short, env = "NETCAVITY_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Download a catalogued network into the data directory.
    Fetch {
        /// Catalogue name, or any name when --url is given.
        name: String,
        /// Archive or edge-list location: an http(s) URL or a local path.
        #[arg(long, env = "NETCAVITY_URL")]
        url: Option<String>,
        #[arg(long, env = "NETCAVITY_DATA_DIR", default_value = "data")]
        data_dir: PathBuf,
        /// Accept a download whose checksum differs from the lock file.
        #[arg(long)]
        repin: bool,
    },
    /// Re-check exported certificates against a network.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Certificates as written by `cavities --format json` or `analyze --cavities --format json`.
        #[arg(long, env = "NETCAVITY_CERTIFICATES")]
        certificates: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list: two labels per line, `#` or `%` comments.
    #[arg(long, short, env = "NETCAVITY_INPUT")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// Per-order cap on the number of cliques.
    #[arg(long, env = "NETCAVITY_BUDGET", default_value_t = GateConfig::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Largest maximum coreness for which enumeration is attempted.
    #[arg(long, env = "NETCAVITY_THRESHOLD", default_value_t = GateConfig::DEFAULT_THRESHOLD)]
    pub threshold: usize,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub gate: GateArgs,
    /// Stop enumeration after this order. The profile is then refused.
    #[arg(long, env = "NETCAVITY_MAX_ORDER")]
    pub max_order: Option<usize>,
    /// Run even when the computability gate fails.
    #[arg(long, env = "NETCAVITY_FORCE")]
    pub force: bool,
    /// JSON file holding the clique complex, reused when the input matches.
    #[arg(long, env = "NETCAVITY_CACHE", value_name = "FILE")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, env = "NETCAVITY_SCHEDULE", value_enum, default_value_t = Schedule::Standard)]
    pub schedule: Schedule,
    /// Longest cycle tried per generator.
    #[arg(long, env = "NETCAVITY_CEILING")]
    pub ceiling: Option<usize>,
    /// Branch-and-bound nodes allowed per search.
    #[arg(long, env = "NETCAVITY_NODE_LIMIT")]
    pub node_limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    Standard,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, env = "NETCAVITY_FORMAT", value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, env = "NETCAVITY_OUTPUT")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}
