use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mclab", version, about = "Numerical toolkit for commuting row contractions")]
pub struct Cli {
    /// Numerical tolerance (commutation, contraction, classification, spectrum)
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Random seed for generation and verification
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TupleKind {
    /// Polynomials in one random triangular matrix
    Random,
    /// Jointly nilpotent variant of `random`
    Nilpotent,
    /// Truncated multishift of degree `--degree`
    Multishift,
    /// Diagonal tuple with joint eigenvalues on the unit sphere
    Spherical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a tuple document
    Gen(GenArgs),
    /// Compute A_∞ and the pure / C₁ / c.n.c. flags
    Classify(ClassifyArgs),
    /// Evaluate the characteristic function at a point
    Theta(ThetaArgs),
    /// Apply a ball automorphism α = ω∘φ_λ
    Transform(TransformArgs),
    /// Run verification suites
    Verify(VerifyArgs),
    /// Build the functional model of a pure tuple
    Model(ModelArgs),
    /// Compare right-spectrum membership with surjectivity of θ_T
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Row norm is 1 − margin
    #[arg(long, default_value_t = 0.1)]
    pub margin: f64,
    #[arg(long, value_enum, default_value_t = TupleKind::Random)]
    pub kind: TupleKind,
    /// Truncation degree for `--kind multishift`
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Output path; the document goes to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    /// Defaults to --tol
    #[arg(long)]
    pub tol_zero: Option<f64>,
    /// Defaults to --tol
    #[arg(long)]
    pub tol_one: Option<f64>,
    #[arg(long, default_value_t = 20_000)]
    pub k_max: usize,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    pub input: PathBuf,
    /// Comma-separated complex coordinates, e.g. "0.3,0.1-0.2i"
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    pub input: PathBuf,
    /// Centre λ of the involution (defaults to 0)
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// JSON file with the n×n unitary ω (defaults to I)
    #[arg(long)]
    pub omega: Option<PathBuf>,
    /// Output path; the document goes to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Overrides each suite's default number of trials
    #[arg(long)]
    pub trials: Option<usize>,
    /// Largest Hilbert-space dimension drawn
    #[arg(long, default_value_t = 6)]
    pub dims: usize,
    /// Largest number of operators drawn
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    /// Truncation degree bound
    #[arg(long, default_value_t = 5)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    pub input: PathBuf,
    /// Truncation degree (defaults to dim)
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}
