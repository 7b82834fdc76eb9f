mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "shorn", version, about = "Majorization checks and Schur-Horn constructions on atomic spectral data")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Arithmetic for operator and profile inputs.
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    pub mode: Mode,
    /// Write the verb's CSV output (curves, partial sums or ledger) here.
    #[arg(long, global = true)]
    pub csv_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct Precision {
    /// Precision integer: target accuracy 1/m.
    #[arg(long, default_value_t = 4)]
    pub m: u64,
    /// Essential copies kept in the finite stage.
    #[arg(long = "T", default_value_t = 16)]
    pub copies: usize,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Spectral scales and their integrals for one operator.
    Scales { file: PathBuf },
    /// Decide a ≺ b.
    Check(Pair),
    /// Decide a ≺_w b.
    CheckWeak(Pair),
    /// Ky Fan partial sums of a matrix, profile or vector.
    Kfan {
        file: PathBuf,
        /// Largest k for profiles.
        #[arg(long, default_value_t = 12)]
        k: u64,
    },
    /// Orthogonal U with diag(U diag(y) Uᵀ) = x.
    Horn {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain of T-transforms carrying y to x.
    Ttransform { x: PathBuf, y: PathBuf },
    /// Convex combination of permutations for a doubly stochastic matrix.
    Birkhoff { file: PathBuf },
    /// Block-diagonal compression and its eigenvalue majorization.
    Pinch {
        file: PathBuf,
        /// Blocks as index lists, e.g. `0,1;2`. Singletons by default.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Contraction C with diag(C diag(g) Cᵀ) ≈ f for f ≺_w g.
    Contract {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profiles f ≺ g discretizing a ≺ b.
    Discretize {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 4)]
        m: u64,
        /// Submajorization mode for positive inputs.
        #[arg(long)]
        weak: bool,
    },
    /// Unitary approximation of a by an orbit element of b.
    Run {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        precision: Precision,
    },
    /// Contractive approximation for positive a ≺_w b.
    RunContractive {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        precision: Precision,
        #[arg(long, default_value = "1/4")]
        eps: String,
    },
    /// a ≺ b with equal finite traces.
    L1Check(Pair),
    /// Hinge traces τ((x − c)₊) at every atom value.
    Hinge {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Side::Upper)]
        side: Side,
    },
    /// Doubly stochastic matrix from the finite stage of a unitary run.
    Ds {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random inputs for testing.
    #[command(hide = true)]
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenKind::Pair)]
        kind: GenKind,
        /// Write one file per document here instead of printing them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GenKind {
    Pair,
    Weak,
    Operator,
    Profile,
    Vectors,
    Symmetric,
    Ds,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("shorn: {e}");
            ExitCode::from(e.code())
        }
    }
}
