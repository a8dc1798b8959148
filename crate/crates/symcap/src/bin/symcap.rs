//! Thin command-line front end over the `symcap` library.

use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use symcap::cli::{self, CliError};

#[derive(Parser)]
#[command(
    name = "symcap",
    version,
    about = "ECH capacities of toric domains, their asymptotics, and related invariants"
)]
struct Cli {
    /// Worker threads for per-k solvers (default: SYMCAP_THREADS, then the
    /// machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Capacity table c_0..c_kmax of a domain.
    Capacities {
        /// Domain spec JSON file.
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        kmax: u64,
        /// auto | weights | path | complement | closed.
        #[arg(long, default_value = "auto")]
        method: String,
        /// csv | json.
        #[arg(long, default_value = "csv")]
        out: String,
    },
    /// Error terms e_k = c_k - 2 sqrt(k vol) with a window summary.
    ErrorTerm {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        kmax: u64,
        /// Fraction of the index range summarized at the top end.
        #[arg(long, default_value_t = 0.5)]
        window: f64,
    },
    /// Ruelle invariant: closed form, plus quadrature for profile specs.
    Ruelle {
        #[arg(long)]
        domain: PathBuf,
        /// Quadrature node budget.
        #[arg(long, default_value_t = 256)]
        quadrature: usize,
    },
    /// Volume-constrained embedding obstruction between two toric domains.
    Obstruct {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Area tolerance for the equal-volume hypothesis.
        #[arg(long, default_value = "0")]
        area_tol: String,
    },
    /// Dyadic cube packing lower bounds on e_k.
    CubeBound {
        #[arg(long)]
        domain: PathBuf,
        /// Maximum packing level.
        #[arg(long)]
        depth: u32,
        /// Comma-separated list of indices.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
    /// ECH index, approximate index and gap of a generator file.
    EchIndex {
        #[arg(long)]
        generator: PathBuf,
    },
    /// Weight expansion of a concave toric domain.
    Weights {
        #[arg(long)]
        domain: PathBuf,
        /// Stop branches below this weight (default: a(Omega) * 2^-20).
        #[arg(long)]
        min_weight: Option<String>,
        /// Term budget (0 means the default of 4096).
        #[arg(long, default_value_t = 4096)]
        max_terms: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError {
        code: cli::EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli::resolve_threads(cli.threads);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.cmd {
        Cmd::Capacities {
            domain,
            kmax,
            method,
            out: fmt,
        } => cli::cmd_capacities(&read(&domain)?, kmax, &method, &fmt, threads, &mut out),
        Cmd::ErrorTerm {
            domain,
            kmax,
            window,
        } => cli::cmd_error_term(&read(&domain)?, kmax, window, threads, &mut out),
        Cmd::Ruelle { domain, quadrature } => {
            cli::cmd_ruelle(&read(&domain)?, quadrature, &mut out)
        }
        Cmd::Obstruct {
            source,
            target,
            area_tol,
        } => cli::cmd_obstruct(&read(&source)?, &read(&target)?, &area_tol, &mut out),
        Cmd::CubeBound { domain, depth, k } => {
            cli::cmd_cube_bound(&read(&domain)?, depth, &k, &mut out)
        }
        Cmd::EchIndex { generator } => {
            let stderr = std::io::stderr();
            let mut diag = stderr.lock();
            cli::cmd_ech_index(&read(&generator)?, &mut out, &mut diag)
        }
        Cmd::Weights {
            domain,
            min_weight,
            max_terms,
        } => cli::cmd_weights(&read(&domain)?, min_weight.as_deref(), max_terms, &mut out),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        let _ = writeln!(std::io::stderr(), "symcap: {}", e.message);
        std::process::exit(e.code);
    }
}
