use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ordshadow", version, about = "Shadows of ordered graphs: searches, lattice checks and hereditary speeds")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Flags accepted by every subcommand. Each subcommand reads the ones it needs.
#[derive(Args, Clone, Debug, Serialize)]
pub struct Globals {
    /// Vertex count, lattice level, or upper level for speeds.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Number of types, or family size for min-shadow.
    #[arg(long, global = true)]
    pub t: Option<usize>,
    /// Lattice dimension.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Excess bound.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Deficit term of the general-k conjecture.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f: Option<i64>,
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on visited partial families.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// A graph literal such as `3:1`.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    /// A named family, lemma or property.
    #[arg(long, global = true)]
    pub name: Option<String>,
    /// Read the input as forbidden patterns rather than a property.
    #[arg(long, global = true)]
    pub forbidden: bool,
    /// Persist a run record in this directory.
    #[arg(long, global = true)]
    pub record_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shadow of a graph or family.
    Shadow,
    /// Homogeneous blocks, type and excess of a graph.
    Blocks,
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Search(SearchCmd),
    #[command(subcommand)]
    Speed(SpeedCmd),
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Shadow/line dichotomy over subsets of Z^d(n) of size below 2n.
    #[command(name = "verify-line-lemma")]
    VerifyLineLemma,
    /// Shadow of a lattice set read from --input.
    Shadow,
    /// The two line-free extremal sets in Z^3(n).
    Extremal,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// |dG| >= |G| for families of at most --max-size graphs on [n].
    Theorem1,
    /// Deficient families must contain a line within some type.
    Gline,
    /// Shadow bound inside type classes containing a line.
    #[command(name = "2mT")]
    TwoMT,
    /// Joint shadow bound for graphs of small excess.
    Difftypes,
    /// Component bound for unions of cliques.
    Allcliques,
    /// The two closing numerical inequalities.
    #[command(name = "obs-calc")]
    ObsCalc,
    /// One of the small-excess lemmas, chosen with --name.
    Lemma,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Smallest shadow of a family of --t graphs on [n].
    #[command(name = "min-shadow")]
    MinShadow,
    /// Smallest shadow of two excess-0 graphs on [n].
    #[command(name = "question-5-1")]
    Question51,
    /// |dG| >= |G| for |G| < k n - f.
    #[command(name = "conjecture-k")]
    ConjectureK,
}

#[derive(Subcommand, Debug)]
pub enum SpeedCmd {
    /// Speeds of a property file, or of the property avoiding --forbidden patterns.
    Compute,
    /// Speeds of a named property up to --n.
    Named,
    /// Speeds of the hereditary closure of the graphs in --input.
    Closure,
    /// Level sizes never increase after a level of size below its index.
    #[command(name = "check-theorem2")]
    CheckTheorem2,
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Re-run a stored run record and compare payloads.
    Replay,
}
