use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// R-dual sequences in finite dimensions: construction, certification,
/// decision and operator representations.
///
/// Every command prints a JSON report on standard output and a short summary
/// on standard error. The exit status is 0 unless the verdict is "fail".
#[derive(Debug, Parser)]
#[command(name = "rdual", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Relative threshold below which singular values count as zero.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_rank: f64,
    /// Relative acceptance level for certificates and bound comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_cert: f64,
    /// Worker threads for `batch`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Also write the command's main artifact (a sequence, operator or
    /// certificate) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, kind, optimal bounds and singular values of a sequence.
    Analyze { seq: PathBuf },
    /// Build an R-dual of type I or III.
    #[command(subcommand)]
    Rdual(RdualCommand),
    /// Certify that omega is the symmetrical type III R-dual of f.
    Certify { f: PathBuf, omega: PathBuf },
    /// Recover f from omega and a certificate bundle.
    Recover {
        omega: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// `S_f^{1/2}`, needed when the bundle does not carry it.
        #[arg(long)]
        sf_sqrt: Option<PathBuf>,
    },
    /// Certify the pair, then build gamma and check biorthogonality.
    Gamma { f: PathBuf, omega: PathBuf },
    /// Decide whether omega is a type I R-dual of f.
    Decide { f: PathBuf, omega: PathBuf },
    /// Expand `S_omega^{-1/2}` in the shift-operator family.
    Represent {
        f: PathBuf,
        omega: PathBuf,
        /// Orthonormal basis for the shift; the standard basis by default.
        #[arg(long)]
        h: Option<PathBuf>,
        /// Use `h_k` as the first basis vector.
        #[arg(long, default_value_t = 0)]
        h0_index: usize,
    },
    /// Extend an operator on a subspace to the whole space.
    Extend {
        /// k x k matrix of the operator in subspace coordinates.
        #[arg(long)]
        phi: PathBuf,
        /// k orthonormal vectors spanning the subspace.
        #[arg(long)]
        vbasis: PathBuf,
    },
    /// Generate a seeded sequence.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: GenerateKindArg,
        /// Singular values for `--kind spectrum`.
        #[arg(long, value_delimiter = ',')]
        sv: Vec<f64>,
        #[arg(long)]
        seed: u64,
    },
    /// Run seeded property trials, in parallel with `--jobs`.
    Batch {
        #[arg(long, value_enum, default_value_t = BatchCheck::All)]
        check: BatchCheck,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dimension drawn.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum RdualCommand {
    /// `omega_j = sum_i <f_i, e_j> h_i`.
    Type1 {
        f: PathBuf,
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// `omega_j = sum_i <S_f^{-1/2} f_i, e_j> Q h_i`.
    Type3 {
        f: PathBuf,
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKindArg {
    Onb,
    Spectrum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatchCheck {
    Duality,
    Certify,
    Decide,
    Represent,
    All,
}
