use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "cherednik", version, about = "Exact computations in infinitesimal Cherednik algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Result cache directory; falls back to $CHEREDNIK_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Ignore the cache even when a directory is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Json,
    Latex,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Gl,
    Sp,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionArg {
    Residue,
    Trace,
    Both,
}

/// Which τ_i enters the sp center generators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauArg {
    /// (−1)^{i−1} Σ_j {Q_i, v_j} v_j*.
    Bracket,
    /// The closed form −Σ Q_j ω(A^{2i−1−2j} v, v), taken literally.
    Closed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PbwConsistency,
    Shapovalov,
    Casimir,
    Bridge,
    Findim,
    PoissonGl,
    PoissonSp,
    #[value(alias = "appendix-sp4")]
    AppendixSp,
}

/// Rank and deformation shared by most subcommands.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Deform {
    #[arg(long, default_value_t = 1)]
    pub n: usize,

    /// Comma-separated ζ coefficients: rationals like 3 or -1/2, or symbols
    /// `zeta_j`; `s` stands for the symbol matching its position. For sp the
    /// list is ζ_0, ζ_2, ζ_4, ….
    #[arg(long, default_value = "s", allow_hyphen_values = true)]
    pub zeta: String,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// The pairing ζ(y_i, x_j) (gl) or {v_i, v_j} (sp).
    Pair {
        #[command(flatten)]
        deform: Deform,
        #[arg(long, value_enum, default_value_t = Algebra::Gl)]
        algebra: Algebra,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Normal-order a word such as `y_1,x_1,e_12`.
    NormalOrder {
        #[command(flatten)]
        deform: Deform,
        #[arg(long)]
        word: String,
    },
    /// Shapovalov Gram determinant against the product formula.
    Shapovalov {
        #[command(flatten)]
        deform: Deform,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// `symbolic` or comma-separated rationals.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        lambda: String,
    },
    /// The quadratic Casimir and its centrality certificate.
    Casimir {
        #[command(flatten)]
        deform: Deform,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Both)]
        construction: ConstructionArg,
    },
    /// The action polynomial P(λ) and the f/g/w pipeline.
    PPoly {
        #[command(flatten)]
        deform: Deform,
    },
    /// Decide whether L(λ) is finite-dimensional.
    Classify {
        #[command(flatten)]
        deform: Deform,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Box decomposition and dimension of L(λ) for a given ν.
    Character {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        nu: String,
    },
    /// Construct a deformation with prescribed ν.
    Design {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        nu: String,
    },
    /// Verify the Poisson center generators.
    PoissonCenter {
        #[command(flatten)]
        deform: Deform,
        #[arg(long, value_enum, default_value_t = Algebra::Gl)]
        algebra: Algebra,
        /// sp only.
        #[arg(long, value_enum, default_value_t = TauArg::Bracket)]
        tau: TauArg,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest rank to include; each suite has its own default.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pair { .. } => "pair",
            Command::NormalOrder { .. } => "normal-order",
            Command::Shapovalov { .. } => "shapovalov",
            Command::Casimir { .. } => "casimir",
            Command::PPoly { .. } => "p-poly",
            Command::Classify { .. } => "classify",
            Command::Character { .. } => "character",
            Command::Design { .. } => "design",
            Command::PoissonCenter { .. } => "poisson-center",
            Command::Verify { .. } => "verify",
        }
    }
}
