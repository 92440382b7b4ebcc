mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use output::{emit, Format};

#[derive(Parser)]
#[command(
    name = "superharm",
    version,
    about = "Exact harmonic analysis on R^{m|2n}"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for pseudo-random sampling.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Report wall-clock time (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Point {
    /// Number of bosonic variables.
    #[arg(long)]
    pub m: usize,
    /// Half the number of fermionic variables.
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Clone, Copy)]
pub struct Graded {
    #[command(flatten)]
    pub point: Point,
    /// Polynomial degree.
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Clone)]
pub struct WithPoly {
    #[command(flatten)]
    pub point: Point,
    /// Polynomial in x1..xm and e1..e2n, e.g. "x1^2 - 2*e1*e2".
    #[arg(long)]
    pub poly: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of P_k, H_k and L_(k,0,...,0).
    Dim(Graded),
    /// Supersphere integral by three routes.
    Pizzetti(WithPoly),
    /// Components f_{l,p,q} H_p ⊗ H_q of H_k.
    Decompose(Graded),
    /// Fischer pieces R^{2j} H_{k-2j} of P_k.
    Fischer(Graded),
    /// Spherical mean and its Darboux residual.
    Mean(WithPoly),
    /// Branching of L_(k,0,...,0) to osp(m-1|2n).
    Branch(Graded),
    /// Run an invariant suite.
    Verify(commands::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Dim(a) => commands::dim(*a),
        Command::Pizzetti(a) => commands::pizzetti(a),
        Command::Decompose(a) => commands::decompose(*a),
        Command::Fischer(a) => commands::fischer(*a),
        Command::Mean(a) => commands::mean(a),
        Command::Branch(a) => commands::branch(*a),
        Command::Verify(a) => commands::verify(a, cli.seed),
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    match result {
        Ok(out) => {
            if let Err(e) = emit(&out, cli.format, elapsed) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            match &out.failure {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("check failed: {f}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
