//! Argument definitions for the `spintop` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "spintop",
    version,
    about = "Quantum vs classical dynamics of a nonlinear spin top on its spherical phase space",
    after_help = "Exit codes: 0 success, 2 usage error, 3 numerical validation failure, 4 io error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a coherent initial state and write its Q-function grid
    Evolve(EvolveArgs),
    /// Evolve under collective dephasing (evolve --mode dephasing shorthand)
    Dephase(DephaseArgs),
    /// Compare two Q-grid CSV files node by node
    Compare(CompareArgs),
    /// Reproduce the three-panel comparison: initial, classical, quantum
    Figure1(Figure1Args),
    /// Scan the bilinear propagation kernel for complex values
    Scan(ScanArgs),
    /// Run the Bell pulse sequence and test the output for entanglement
    Bell(BellArgs),
    /// Evaluate the gate-count signal decay model
    Decay(DecayArgs),
    /// Build the n-qubit GHZ state by Hadamard plus a CNOT cascade
    Ghz(GhzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Quantum,
    Classical,
    Dephasing,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
            Mode::Dephasing => "dephasing",
        }
    }
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Evolution to run
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Spin quantum number (half-integers allowed, e.g. 0.5, 1, 2.5)
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Linear precession rate
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    /// Twist strength
    #[arg(long = "J", default_value_t = 1.0)]
    pub j: f64,
    /// Collective dephasing rate (dephasing mode only)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Evolution time
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Initial coherent-state label, complex literal "a+bi"
    #[arg(long, default_value = "1+0i")]
    pub z0: String,
    /// Grid size as THETAxPHI, e.g. 64x128
    #[arg(long, default_value = "64x128")]
    pub grid: String,
    /// Output base path: writes BASE.csv and BASE.manifest.json
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a BASE.pgm grayscale heatmap
    #[arg(long)]
    pub heatmap: bool,
}

#[derive(Debug, Args)]
pub struct DephaseArgs {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    pub j: f64,
    /// Collective dephasing rate
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, default_value = "1+0i")]
    pub z0: String,
    #[arg(long, default_value = "64x128")]
    pub grid: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub heatmap: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// First Q-grid CSV
    pub file_a: PathBuf,
    /// Second Q-grid CSV
    pub file_b: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    /// Output directory for the three panels
    #[arg(long)]
    pub outdir: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, default_value = "1+0i")]
    pub z0: String,
    #[arg(long, default_value = "64x128")]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    pub j: f64,
    /// Kernel time; defaults to the quarter revival pi/2
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub t: f64,
    /// Number of sampled label triples
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    /// Number of qubits
    #[arg(long)]
    pub n: u32,
    /// Number of gates
    #[arg(long)]
    pub g: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GhzArgs {
    /// Number of qubits (2..=12)
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
