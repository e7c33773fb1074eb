use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when none is given; fixed so that runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x7172_6621;

#[derive(Parser, Debug)]
#[command(name = "tqrf", version, about = "Reference frames, classifier diagrams, cobordism words and finite-group amplitudes")]
pub struct Cli {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Reject interaction strengths below 7/10 instead of 693/1000.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Measure, prepare and sample bit-string frames.
    #[command(subcommand)]
    Qrf(QrfCmd),
    /// Build, check and transform classifier diagrams.
    #[command(subcommand)]
    Cccd(CccdCmd),
    /// Sections, obstructions and contextuality of quiver representations.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Compile morphisms to cobordism words and evaluate them.
    #[command(subcommand)]
    Cobord(CobordCmd),
    /// Finite-group spin-network amplitudes and the image classifier.
    #[command(subcommand)]
    Tqnn(TqnnCmd),
    /// Index formulas from named rational inputs, e.g. `tau=-16 c1sq=0`.
    Index {
        inputs: Vec<String>,
        /// Also report the signature-theorem reconciliation of both formulas.
        #[arg(long)]
        cross_check: bool,
    },
    /// Built-in end-to-end scenarios.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
    /// Execute a JSON run manifest.
    Run { manifest: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoKind {
    Fission,
    Rotation,
}

#[derive(Subcommand, Debug)]
pub enum QrfCmd {
    /// Measure a deterministic frame on a bit string, or read one column of
    /// a probabilistic frame.
    Measure {
        file: PathBuf,
        input: Option<String>,
        #[arg(long)]
        column: Option<usize>,
    },
    /// Prepare a pointer state.
    Prepare {
        file: PathBuf,
        /// Elementary frames: the outcome to prepare for (0 or 1).
        #[arg(long, default_value_t = 1)]
        outcome: u8,
        /// Elementary frames: the string to leave when the outcome is 0.
        #[arg(long)]
        target: Option<String>,
        /// Composite frames: member index; probabilistic frames: column.
        #[arg(long, default_value_t = 0)]
        member: usize,
    },
    /// Draw pointer states from a probabilistic frame's column.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        column: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Steps {
    /// Morphism steps in order: `fission:I`, `fuse:I`, `rotate:K:P0,P1,...`.
    #[arg(long = "step")]
    pub steps: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Cross {
    /// Cross maps between the two frames: `identity` or `basis:K:P0,P1,...`.
    #[arg(long, default_value = "identity")]
    pub cross: String,
}

#[derive(Subcommand, Debug)]
pub enum CccdCmd {
    /// Compile a frame file into its diagram.
    Build { qrf: PathBuf },
    /// Exhaustive commutativity check; exits 1 with a witness on failure.
    Check { diagram: PathBuf },
    /// Apply morphism steps and emit the target diagram.
    Morph {
        diagram: PathBuf,
        #[command(flatten)]
        steps: Steps,
    },
    /// Assemble the joint diagram of two frames.
    Joint {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        cross: Cross,
    },
    /// Whether two frames can be deployed together.
    Codeploy {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        cross: Cross,
    },
    /// The frame a diagram's cores pick out.
    Frame { diagram: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum QuiverCmd {
    /// Basis of the global sections.
    Sections { quiver: PathBuf },
    /// Parallel-pair and cycle obstructions.
    Obstruction { quiver: PathBuf },
    /// Contextuality dimension and fraction of a pair of frames.
    Context {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        cross: Cross,
    },
    /// Representation of a commuting diagram on token functions.
    Rep { diagram: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CobordCmd {
    /// Image of a morphism (steps applied to a diagram) as a cobordism word.
    Compile {
        diagram: PathBuf,
        #[command(flatten)]
        steps: Steps,
    },
    /// Permutation the canonical TQFT assigns to a word.
    Eval { cobordism: PathBuf },
    /// Register-level commuting square; exits 1 with a witness on failure.
    Check {
        diagram: PathBuf,
        #[command(flatten)]
        steps: Steps,
    },
    /// Interaction eigenvalue for a screen outcome.
    Hab {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "1")]
        temperature: String,
        /// Comma-separated weights summing to 1; uniform when omitted.
        #[arg(long)]
        alphas: Option<String>,
        /// Comma-separated outcomes, each `1` or `-1`.
        #[arg(long, allow_hyphen_values = true)]
        outcome: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TqnnCmd {
    /// Encode an image as a labeled graph.
    Encode {
        image: PathBuf,
        /// Also build the gauge-invariant state over this cyclic group (e.g. z2).
        #[arg(long)]
        group: Option<String>,
    },
    /// Inner product of two spin-network states on a graph file.
    Amplitude {
        graph: PathBuf,
        #[arg(long, default_value = "z2")]
        group: String,
        /// Comma-separated irrep label per link.
        #[arg(long)]
        psi: String,
        /// Defaults to `psi`.
        #[arg(long)]
        phi: Option<String>,
        /// Skip the flatness projection.
        #[arg(long)]
        kinematic: bool,
    },
    /// Rank archetype images by overlap with a test image.
    Classify {
        test: PathBuf,
        #[arg(required = true)]
        archetypes: Vec<PathBuf>,
        #[arg(long, default_value = "z2")]
        group: String,
    },
    /// Partition function of a graph with faces.
    Partition {
        graph: PathBuf,
        #[arg(long, default_value = "z2")]
        group: String,
    },
}
