use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bubbletrap",
    version,
    about = "De Bruijn graphs, repeat models and branching-bounded bubbles"
)]
pub struct Cli {
    /// Worker threads; all available cores by default.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the de Bruijn graph of a set of reads.
    Build(BuildArgs),
    /// Contract the compressible chains of a graph file.
    Compress(CompressArgs),
    /// Sample a repeat family S(m, n, alpha).
    Simulate(SimulateArgs),
    /// Compare gamma of random reads with gamma of a repeat family.
    GammaExperiment(GammaArgs),
    /// Enumerate branching-bounded bubbles.
    Bubbles(BubblesArgs),
    /// Enumerate bubbles by brute force (small graphs only).
    Oracle(OracleArgs),
    /// Generate a repeat-trap instance with a known bubble.
    PlantedBubble(PlantedArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    #[default]
    Gfa,
    Dbg1,
}

impl GraphFormat {
    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::Gfa => "gfa",
            GraphFormat::Dbg1 => "dbg1",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum NPolicyArg {
    /// Split reads at non-ACGT characters.
    #[default]
    Split,
    /// Fail on any non-ACGT character.
    Reject,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// FASTA or FASTQ files, optionally gzip-compressed.
    #[arg(required = true)]
    pub reads: Vec<PathBuf>,
    #[arg(long, default_value_t = 31)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::Gfa)]
    pub format: GraphFormat,
    #[arg(long, value_enum, default_value_t = NPolicyArg::Split)]
    pub n_policy: NPolicyArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    /// Graph in GFA or DBG1 format.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphFormat::Gfa)]
    pub format: GraphFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 20)]
    pub m: usize,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, default_value_t = 100)]
    pub m: usize,
    #[arg(long, default_value_t = 300)]
    pub n: usize,
    #[arg(long, default_value_t = 15)]
    pub k: usize,
    #[arg(long, default_value_t = 0.02)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file (GFA or DBG1). Mutually exclusive with --reads.
    #[arg(long, conflicts_with = "reads", required_unless_present = "reads")]
    pub graph: Option<PathBuf>,
    /// Build the graph from these read files instead.
    #[arg(long, num_args = 1..)]
    pub reads: Vec<PathBuf>,
    /// k for --reads.
    #[arg(long, default_value_t = 31)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = NPolicyArg::Split)]
    pub n_policy: NPolicyArg,
    /// Search the graph as given instead of its compressed form.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Length bound on the longer path.
    #[arg(long)]
    pub alpha1: u64,
    /// Length bound on the shorter path; alpha1 if omitted.
    #[arg(long)]
    pub alpha2: Option<u64>,
    /// Branching vertices allowed per path.
    #[arg(long, default_value_t = 5)]
    pub b: usize,
    /// Only this source (1-based segment name).
    #[arg(long)]
    pub source: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BubblesArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub query: QueryArgs,
    /// Lift the branching bound.
    #[arg(long, conflicts_with = "b")]
    pub uncapped: bool,
    /// Only bubbles ending here (1-based segment name).
    #[arg(long)]
    pub sink: Option<usize>,
    /// Wall-clock budget per source, in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Budget on recursion nodes per source.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, conflicts_with = "b")]
    pub uncapped: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct PlantedArgs {
    #[arg(long, default_value_t = 50)]
    pub m: usize,
    #[arg(long, default_value_t = 300)]
    pub n: usize,
    #[arg(long, default_value_t = 0.03)]
    pub alpha: f64,
    #[arg(long, default_value_t = 25)]
    pub k: usize,
    #[arg(long, default_value_t = 40)]
    pub upper_middle: usize,
    #[arg(long, default_value_t = 10)]
    pub lower_middle: usize,
    /// Insertion offset in the host copy; its middle by default.
    #[arg(long)]
    pub insert_at: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Gfa)]
    pub format: GraphFormat,
    #[command(flatten)]
    pub out: OutArgs,
}
