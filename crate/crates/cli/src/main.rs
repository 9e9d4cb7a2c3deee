//! Command-line front end: locate limit cycles, certify transversal
//! curves, assemble Poincaré–Bendixson annuli, issue Liénard
//! non-existence certificates, bisect bifurcation bounds, dump plot data,
//! and re-verify certificate files.
//!
//! Exit codes: 0 proved/ok, 2 inconclusive, 3 input error, 4 refuted
//! (numeric sign change found).

mod commands;
mod formats;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tier {
    /// desk-scale runs (the default)
    Desk,
    /// long-running computations (high-degree fits, large Cherkas orders)
    Long,
}

#[derive(Parser)]
#[command(name = "cyclecert", version, about = "certified limit-cycle existence proofs for planar polynomial systems", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output directory for certificates and CSV files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// desk-scale or long-running tier
    #[arg(long, global = true, value_enum, default_value = "desk")]
    tier: Tier,
}

#[derive(Subcommand)]
enum Command {
    /// Locate a limit cycle and report period, Floquet data and spectrum
    Detect {
        /// system spec JSON
        #[arg(long)]
        system: PathBuf,
        /// displacement bracket "lo:hi" on the section parameter
        #[arg(long)]
        bracket: Option<String>,
        /// locate an unstable cycle (reversed-time integration)
        #[arg(long)]
        unstable: bool,
        /// integrator relative tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// harmonics to include in the spectrum table
        #[arg(long, default_value_t = 24)]
        spectrum: usize,
    },
    /// Fit, rationalize and certify a transversal curve near a cycle
    Certify {
        #[arg(long)]
        system: PathBuf,
        /// band offset; its sign picks the side of the cycle
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        /// trigonometric degree of the fit (2m+1 sample points)
        #[arg(long)]
        m: usize,
        /// denominator bound for coefficient rationalization
        #[arg(long, default_value_t = 1_000_000)]
        denbound: u64,
        /// expected side, checked against the construction: inner|outer
        #[arg(long)]
        side: Option<String>,
        #[arg(long)]
        bracket: Option<String>,
        #[arg(long)]
        unstable: bool,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// pin the no-zero proof to a full Sturm sequence
        #[arg(long)]
        force_sturm: bool,
        /// output certificate path (default: <out>/<system>-<side>.cert.json)
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Assemble two transversality certificates into an annulus certificate
    Annulus {
        /// the two curve certificates (inner and outer in any order)
        certs: Vec<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Issue a Cherkas non-existence certificate for a Liénard system
    Nonexist {
        /// Liénard spec JSON (F coefficients, possibly parameterized)
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        n: usize,
        /// parameter value, exact rational like 236252/1000000
        #[arg(long)]
        delta: String,
        #[arg(long)]
        force_sturm: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Bisect the parameter for the smallest certified non-existence bound
    Bound {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        n: usize,
        /// bracket "lo:hi" (test must fail at lo and pass at hi)
        #[arg(long)]
        bracket: String,
        /// bisection width target
        #[arg(long, default_value = "1/10000000")]
        tol: String,
        /// annulus certificates giving the two-cycle lower bound
        #[arg(long)]
        annulus: Vec<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit CSV plot data for cycles and certified curves
    Plotdata {
        /// certificate files to sample
        artifacts: Vec<PathBuf>,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        bracket: Option<String>,
        #[arg(long)]
        unstable: bool,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// samples per curve
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// Re-check a certificate file from its contents alone
    Verify {
        cert: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Detect { system, bracket, unstable, tol, spectrum } => {
            commands::detect(&system, bracket.as_deref(), unstable, tol, spectrum)
        }
        Command::Certify {
            system,
            eps,
            m,
            denbound,
            side,
            bracket,
            unstable,
            tol,
            force_sturm,
            cert,
        } => commands::certify(commands::CertifyArgs {
            system,
            eps,
            m,
            denbound,
            side,
            bracket,
            unstable,
            tol,
            force_sturm,
            cert,
            out: cli.out.clone(),
            tier: cli.tier,
        }),
        Command::Annulus { certs, cert } => commands::annulus(&certs, cert, &cli.out),
        Command::Nonexist { system, n, delta, force_sturm, cert } => {
            commands::nonexist(&system, n, &delta, force_sturm, cert, &cli.out, cli.tier)
        }
        Command::Bound { system, n, bracket, tol, annulus, report } => {
            commands::bound(&system, n, &bracket, &tol, &annulus, report, &cli.out, cli.tier)
        }
        Command::Plotdata { artifacts, system, bracket, unstable, tol, samples } => {
            commands::plotdata(&artifacts, system.as_deref(), bracket.as_deref(), unstable, tol, samples, &cli.out)
        }
        Command::Verify { cert } => commands::verify(&cert),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
