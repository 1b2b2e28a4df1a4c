//! `pucb`: build codebooks, tabulate bounds, run experiments and write
//! figure data bundles.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pucodes::codebook::{self, FourthLevelSteps, Kind};
use pucodes::{Codebook, Error};

mod bounds_cmd;
mod codebook_cmd;
mod figure;
mod sim_cmd;
pub mod table;

/// Exit status for bad input, including usage errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit status when a construction disagrees with its closed form.
pub const EXIT_CONSISTENCY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pucb",
    version,
    about = "Codebooks and bounds in the projective unitary group"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, inspect and measure codebooks.
    #[command(subcommand)]
    Codebook(CodebookCommand),
    /// Evaluate closed-form bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Run a Monte-Carlo experiment.
    #[command(subcommand)]
    Sim(SimCommand),
    /// Write the CSV bundle for one figure.
    Figure(FigureArgs),
}

#[derive(Debug, Subcommand)]
pub enum CodebookCommand {
    /// Construct a family member and write it to a file.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the header and cardinality check of a codebook.
    Info {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Exact minimum distance.
    Mindist {
        #[command(flatten)]
        source: SourceArgs,
        /// Cap on |C|² for pairwise scans.
        #[arg(long, default_value_t = pucodes::analysis::DEFAULT_PAIR_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Bounds over a geometric grid of K, or over a grid of δ with --delta-points.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        k_min: f64,
        #[arg(long, default_value_t = 4096.0)]
        k_max: f64,
        /// Ratio between consecutive K values.
        #[arg(long, default_value_t = 2.0)]
        log_step: f64,
        /// Minimum distance at which the distortion upper bounds are evaluated.
        #[arg(long)]
        delta: Option<f64>,
        /// Tabulate over δ = i/N, i = 1..N, instead of K.
        #[arg(long)]
        delta_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every bound at one point.
    Point {
        #[arg(long)]
        n: usize,
        #[arg(long = "K", alias = "card")]
        cardinality: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SimCommand {
    /// Empirical CDF of d(I, U) for Haar U.
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        rmax: f64,
        #[arg(long, default_value_t = 30)]
        bins: usize,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Midpoint distances of Haar pairs against the kissing bounds.
    Kissing {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Mean squared quantization error of a codebook.
    Distortion {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Covering radius estimate of a codebook.
    Covering {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        mc: McArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Thread count; affects speed only. 0 uses every core.
    #[arg(long, env = "PUCB_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Samples per work unit; affects scheduling only.
    #[arg(long, default_value_t = 65_536)]
    pub chunk: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl McArgs {
    pub fn config(&self) -> pucodes::analysis::MCConfig {
        pucodes::analysis::MCConfig {
            samples: self.samples,
            master_seed: self.seed,
            chunk: self.chunk,
            workers: self.workers,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StepsArg {
    SqrtTAndT,
    SqrtTOnly,
}

/// A family member to construct.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<Kind>,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Hierarchy level of diag_hierarchy and semi_clifford.
    #[arg(long)]
    pub k: Option<u32>,
    /// Gate-count cap of clifford_t and clifford_s.
    #[arg(long)]
    pub l: Option<u32>,
    /// Step gates of clifford_s.
    #[arg(long, value_enum, default_value_t = StepsArg::SqrtTAndT)]
    pub steps: StepsArg,
}

/// A codebook given either by a file or by family parameters.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    #[arg(long = "in", conflicts_with = "kind")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
    pub id: u8,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the figure's default sample count.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, env = "PUCB_WORKERS", default_value_t = 0)]
    pub workers: usize,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse::<Kind>().map_err(|e| e.to_string())
}

fn usage(msg: String) -> anyhow::Error {
    Error::InvalidParameter(msg).into()
}

impl FamilyArgs {
    pub fn build(&self) -> anyhow::Result<Codebook> {
        let kind = self
            .kind
            .ok_or_else(|| usage("either --in or --kind is required".into()))?;
        let k = || self.k.ok_or_else(|| usage(format!("{kind} needs --k")));
        let l = || self.l.ok_or_else(|| usage(format!("{kind} needs --l")));
        let single = || {
            if self.m == 1 {
                Ok(())
            } else {
                Err(usage(format!("{kind} is single-qubit; use --m 1")))
            }
        };
        let cb = match kind {
            Kind::Pauli => codebook::pauli_codebook(self.m)?,
            Kind::Clifford => codebook::clifford_codebook(self.m)?,
            Kind::DiagHierarchy => codebook::diagonal_hierarchy_codebook(self.m, k()?)?,
            Kind::SemiClifford => {
                single()?;
                codebook::semi_clifford_codebook(k()?)?
            }
            Kind::CliffordT => {
                single()?;
                codebook::clifford_t_codebook(l()?)?
            }
            Kind::CliffordS => {
                single()?;
                let steps = match self.steps {
                    StepsArg::SqrtTAndT => FourthLevelSteps::SqrtTAndT,
                    StepsArg::SqrtTOnly => FourthLevelSteps::SqrtTOnly,
                };
                codebook::clifford_s_codebook_with(l()?, steps)?
            }
            Kind::Custom => return Err(usage("custom codebooks are read with --in".into())),
        };
        Ok(cb)
    }
}

impl SourceArgs {
    pub fn load(&self) -> anyhow::Result<Codebook> {
        match &self.input {
            Some(p) => Ok(codebook::io::read_codebook(p)?),
            None => self.family.build(),
        }
    }
}

/// Exit status for an error chain.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let consistency = err
        .chain()
        .filter_map(|e| e.downcast_ref::<Error>())
        .any(Error::is_consistency);
    if consistency {
        EXIT_CONSISTENCY
    } else {
        EXIT_USAGE
    }
}

pub fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Codebook(c) => codebook_cmd::run(c),
        Command::Bounds(c) => bounds_cmd::run(c),
        Command::Sim(c) => sim_cmd::run(c),
        Command::Figure(a) => figure::run(&a),
    }
}

/// Parses `argv` and runs it; returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
