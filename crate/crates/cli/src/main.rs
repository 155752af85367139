use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypinfl_cli::commands::exit_code;
use hypinfl_cli::config::OUT_DIR_ENV;
use hypinfl_cli::{run, Command, RunConfig};

#[derive(Parser)]
#[command(name = "hypinfl", version, about = "Exact inflection data and GW-valued Euler indices of hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Per-point local index reports (JSON).
    Indices(Opts),
    /// Global audit of the local indices against the expected class (JSON).
    Audit(Opts),
    /// Inflection polynomial of a curve, or atomic P_n of a family.
    Poly(Opts),
    /// M(ℓ,g), its determinant and the lattice-path count (JSON).
    MatrixM(Opts),
    /// Real-root sweep of P_n over a grid of a-values (CSV + JSON report).
    Sweep(Opts),
    /// Point counts of C_n over primes (CSV).
    Count(Opts),
    /// C_2 point counts, the elliptic identity and the histogram (CSV).
    SatoTate(Opts),
    /// Closed forms against the series oracle at rational points (JSON).
    Oracle(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// JSON file with RunConfig fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Q, R, Fq:p=13[,n=2], F13, Q(a), C((t)).
    #[arg(long)]
    field: Option<String>,
    /// Curve y² = f(x), e.g. "x^3 + x + 2".
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// weierstrass or legendre.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_prec: Option<usize>,
    #[arg(long)]
    prime_bound: Option<u64>,
    /// lo:hi:step with exact rationals, e.g. "-10:10:1/4".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

impl Opts {
    fn config(self) -> Result<RunConfig, hypinfl::Error> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(base.merged(RunConfig {
            field: self.field,
            f: self.f,
            ell: self.ell,
            g: self.g,
            n: self.n,
            family: self.family,
            out_dir: self.out_dir,
            seed: self.seed,
            max_prec: self.max_prec,
            prime_bound: self.prime_bound,
            grid: self.grid,
        }))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts) = match cli.cmd {
        Sub::Indices(o) => (Command::Indices, o),
        Sub::Audit(o) => (Command::Audit, o),
        Sub::Poly(o) => (Command::Poly, o),
        Sub::MatrixM(o) => (Command::MatrixM, o),
        Sub::Sweep(o) => (Command::Sweep, o),
        Sub::Count(o) => (Command::Count, o),
        Sub::SatoTate(o) => (Command::SatoTate, o),
        Sub::Oracle(o) => (Command::Oracle, o),
    };
    let result = opts.config().and_then(|cfg| run(cmd, &cfg));
    match result {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error of the run.
            let _ = writeln!(std::io::stdout(), "{}", out.stdout);
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
