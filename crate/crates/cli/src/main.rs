use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Eigenvalue shifts, canonical factorizations and matrix equations for
/// matrix polynomials stored as `.mp.json` files.
#[derive(Parser, Debug)]
#[command(name = "mpshift", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for every randomized step (eigensolver probes, oracle samples).
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write one of the built-in example polynomials.
    Fixture {
        /// p1, p2, p3 or scalar-quadratic.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Eigenvalues sorted by modulus, infinite ones last.
    Eig {
        /// Input file, or the name of a built-in fixture.
        input: String,
        /// Also compute left eigenvectors.
        #[arg(long)]
        left: bool,
    },
    /// Apply an eigenvalue shift and verify it with the determinant-ratio oracle.
    Shift(ShiftArgs),
    /// Canonical factorization of a quadratic Laurent polynomial, or the
    /// factorization `A(z) = U(z)(zI − G)` of a matrix polynomial.
    Factor {
        input: String,
        /// Also compute the factorization of `A(1/z)`.
        #[arg(long)]
        both: bool,
        /// Require a quadratic Laurent input.
        #[arg(long)]
        quad: bool,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long, default_value_t = 64)]
        maxit: usize,
    },
    /// Minimal solvent of `Σ AᵢXⁱ = 0`.
    Solve {
        input: String,
        /// `LAMBDA[,MU]`: shift LAMBDA to MU (default 0) before solving.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Eigenvector for the shifted eigenvalue (`auto` or comma-separated entries).
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        u: String,
        /// Dual vector, `auto` selects `u/‖u‖²`.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        v: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Cr)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long, default_value_t = 64)]
        maxit: usize,
    },
    /// Standalone determinant-ratio oracle between two files.
    Check {
        original: String,
        shifted: String,
        /// Removed eigenvalues, comma separated (`inf` allowed).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        removed: String,
        /// Added eigenvalues, comma separated (`inf` allowed).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        added: String,
        /// `unit`, `fitted` or a complex literal.
        #[arg(long, default_value = "unit", allow_hyphen_values = true)]
        constant: String,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Cr,
    Eigen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

#[derive(Args, Debug)]
pub struct ShiftArgs {
    pub input: String,
    /// Eigenvalue to move (`inf` allowed for matrix polynomials).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Target value (`inf` allowed for matrix polynomials).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    /// Eigenvector: `auto` (smallest singular vector) or comma-separated entries.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub u: String,
    /// Dual vector: `auto` selects `u/‖u‖²`.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub v: String,
    /// `LAMBDA2,MU2`: additionally move LAMBDA2 to MU2 with a left shift.
    #[arg(long, allow_hyphen_values = true)]
    pub double: Option<String>,
    /// Left eigenvector for LAMBDA2 in a double shift.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub w: String,
    /// JSON file with matrices `u`, `lambda`, `s` and optionally `v`.
    #[arg(long)]
    pub multi: Option<PathBuf>,
    /// Move an infinite eigenvalue to `--mu`.
    #[arg(long)]
    pub from_inf: bool,
    /// Move `--lambda` to infinity.
    #[arg(long)]
    pub to_inf: bool,
    /// Structure-preserving shift of a *-palindromic polynomial.
    #[arg(long)]
    pub palindromic: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
