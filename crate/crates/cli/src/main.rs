mod commands;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;
use crate::report::{Body, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "tilecheck", version, about = "Exact verification of translational tilings by rational polyboxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lebesgue measure of a polybox.
    Measure {
        #[arg(long)]
        set: PathBuf,
    },
    /// Set operation on two polyboxes.
    Boolean {
        #[arg(long, value_enum)]
        op: BoolOp,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Does E + T tile the window?
    TilingCheck(SystemArgs),
    /// Is E + T a packing on the window?
    PackingCheck(SystemArgs),
    /// Forced left-to-right completion of a 1D tiling containing E.
    #[command(name = "complete-1d")]
    Complete1d {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Write the completed translation set here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact autocorrelation |E ∩ (E + x)| of a 1D set.
    Autocorr {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Does E overlap every translate E + x with 0 ≤ x < 1?
    OverlapLemma {
        #[arg(long)]
        set: PathBuf,
    },
    /// Exact test of whether the Fourier transform of 1_E vanishes at ξ.
    FtZero {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        xi: String,
    },
    /// Orthogonality and completeness of a periodic spectrum candidate.
    SpectrumCheck {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Sample frequencies lie in [-range, range].
        #[arg(long, default_value_t = 100.0)]
        range: f64,
        #[arg(long, default_value_t = 1e4)]
        truncation: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Fejér kernel identities for a given δ.
    Fejer {
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20.0)]
        range: f64,
        #[arg(long, default_value_t = 1000)]
        truncation: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Write a construction to JSON.
    #[command(subcommand)]
    Build(Build),
    /// Checkerboard tiling of the near-cube holds and every lattice configuration fails.
    #[command(name = "verify-theorem3d")]
    VerifyTheorem3d {
        #[arg(long)]
        epsilon: String,
        /// Lift to E × [0,1]^(dim-3).
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Extract a lattice from a patch of a planar near-square tiling.
    #[command(name = "extract-lattice-2d")]
    ExtractLattice2d {
        #[arg(long)]
        set: PathBuf,
        /// Translation system JSON whose reps are the patch.
        #[arg(long)]
        patch: PathBuf,
    },
    /// SVG of a planar set or a planar slice of a 3D set.
    RenderSlice {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = 2)]
        axis: usize,
        #[arg(long)]
        level: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    SymmDiff,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    system: PathBuf,
    /// Box such as "[0,2]x[0,2]x[0,1]".
    #[arg(long)]
    window: String,
}

#[derive(Debug, Subcommand)]
pub enum Build {
    /// The near-cube E(ε) and its segment manifest.
    Counterexample3d {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// [0,1/2] ∪ [1,3/2].
    Example1d {
        #[arg(long)]
        out: PathBuf,
    },
    /// Checkerboard column tiling as a periodic translation system.
    Checkerboard {
        #[arg(long)]
        out: PathBuf,
    },
    /// One of the four lattice column configurations.
    LatticeConfig {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        index: u8,
        #[arg(long, default_value = "1/4")]
        t: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// A generated planar near-square and a tiling patch.
    NearSquare {
        #[arg(long)]
        epsilon: String,
        #[arg(long, value_enum, default_value_t = ProfileKind::Bumps)]
        profile: ProfileKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        steps: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        patch: PathBuf,
    },
    /// E × [0,1]^(dim-3) for a 3D set.
    Lift {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProfileKind {
    Trivial,
    ShiftedRows,
    Bumps,
    Staircase,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("TILECHECK_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("TILECHECK_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::Usage("TILECHECK_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Measure { .. } => "measure",
        Command::Boolean { .. } => "boolean",
        Command::TilingCheck(_) => "tiling-check",
        Command::PackingCheck(_) => "packing-check",
        Command::Complete1d { .. } => "complete-1d",
        Command::Autocorr { .. } => "autocorr",
        Command::OverlapLemma { .. } => "overlap-lemma",
        Command::FtZero { .. } => "ft-zero",
        Command::SpectrumCheck { .. } => "spectrum-check",
        Command::Fejer { .. } => "fejer",
        Command::Build(_) => "build",
        Command::VerifyTheorem3d { .. } => "verify-theorem3d",
        Command::ExtractLattice2d { .. } => "extract-lattice-2d",
        Command::RenderSlice { .. } => "render-slice",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command).to_string();
    let start = Instant::now();
    let mut ctx = commands::Context::default();
    let outcome = configure_threads().and_then(|_| commands::run(cli.command, &mut ctx));
    let (status, result) = match outcome {
        Ok(o) => (o.status, o.result),
        Err(e) => {
            eprintln!("tilecheck {name}: {e}");
            (Status::Error, serde_json::json!({ "error": e.to_string() }))
        }
    };
    let body = Body {
        command: name,
        status,
        inputs: ctx.inputs,
        outputs: ctx.outputs,
        result,
    };
    let report = Report::new(body, start.elapsed());
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    ExitCode::from(status.exit_code() as u8)
}
