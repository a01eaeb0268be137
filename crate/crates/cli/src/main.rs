//! `mixvol` command-line front end.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "mixvol", version, about = "Mixed volumes, mixed discriminants and inequality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Master seed; every random input is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials for sweeps (each command has its own default).
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Relative equality tolerance overriding the defaults.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Quadrature rule id (icosaK or glN on the sphere, circleN on the circle).
    #[arg(long, global = true)]
    pub quad: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Omit the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mixed discriminants.
    Md {
        #[command(subcommand)]
        cmd: MdCmd,
    },
    /// Body construction.
    Bodies {
        #[command(subcommand)]
        cmd: BodiesCmd,
    },
    /// Mixed volumes and mean widths.
    Mv {
        #[command(subcommand)]
        cmd: MvCmd,
    },
    /// Inequality checks on given bodies, or seeded sweeps when bodies are omitted.
    Ineq {
        #[command(subcommand)]
        cmd: IneqCmd,
    },
    /// Truncated-prism counterexample to the projection inequality for `I = V/|∂|`.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long = "M", default_value_t = 400.0)]
        m: f64,
        /// Scan the default (ε, M) grid instead of a single instance.
        #[arg(long)]
        scan: bool,
    },
    /// Spherical-harmonic expansions on S².
    Harmonics {
        #[command(subcommand)]
        cmd: HarmonicsCmd,
    },
    /// Batch reproduction of every check.
    Paper {
        #[command(subcommand)]
        cmd: PaperCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum MdCmd {
    /// Cross-checks the two algorithms and sweeps the discriminant inequality.
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BodiesCmd {
    Make(MakeArgs),
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    /// polytope, zonotope, segment, ball, point (random) or cube, unit-ball, prism, polygon.
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Points or generators for random bodies, vertex count for polygons.
    #[arg(long, default_value_t = 8)]
    pub size: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long = "M", default_value_t = 400.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
}

#[derive(Debug, Subcommand)]
pub enum MvCmd {
    /// `V(K₁[m₁], …)` from a JSON file `{"dim": n, "items": [{"body": …, "multiplicity": m}]}`.
    Compute {
        #[arg(long)]
        args: PathBuf,
    },
    /// `M*(K)` exactly where available and by quadrature.
    Mstar {
        #[arg(long)]
        body: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum IneqCmd {
    Thm2 {
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        z: Option<PathBuf>,
    },
    Prop13 {
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        t: Option<PathBuf>,
    },
    Prop51 {
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        t: Option<PathBuf>,
        #[arg(long)]
        a: Option<PathBuf>,
    },
    Prop53 {
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        t: Option<PathBuf>,
    },
    Bonnesen {
        #[arg(long)]
        t: Option<PathBuf>,
        #[arg(long)]
        a: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HarmonicsCmd {
    Expand {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = mixvol::harmonics::DEFAULT_LMAX)]
        lmax: usize,
    },
    Mv {
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, default_value_t = mixvol::harmonics::DEFAULT_LMAX)]
        lmax: usize,
    },
    /// Coefficient inequality for two bodies, or a sweep over smooth bodies when omitted.
    Conjecture {
        #[arg(long)]
        k: Option<PathBuf>,
        #[arg(long)]
        t: Option<PathBuf>,
        #[arg(long, default_value_t = mixvol::harmonics::DEFAULT_LMAX)]
        lmax: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PaperCmd {
    Reproduce,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
