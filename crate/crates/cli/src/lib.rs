//! The `salemlab` command line: Salem certification, trace-field arithmetic,
//! graph spectra and seeded experiments.

pub mod config;
pub mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use salemlab_core::arith::{
    find_inert_prime, ramification_plan, trace_field, PlanReport, PrimeReport, DEFAULT_PRIME_BOUND,
};
use salemlab_core::interval::to_decimal;
use salemlab_core::salem::{
    certify_salem, geodesic_length, NotSalemReason, SalemCertificate, SalemReport, CERTIFICATE_BITS,
};
use salemlab_core::spectral::{
    double_cover, format_graph, parse_graph, proof_chain_check, spectral_report, verify_two_cover_bound, Signing,
    WeightedGraph,
};
use salemlab_core::IntPolynomial;

pub use config::{ExperimentConfig, ExperimentKind, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot write to stdout: {0}")]
    Stdout(std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "salemlab", version, about = "Salem numbers, trace fields and two-cover spectral experiments")]
pub struct Cli {
    /// Worker threads for enumerations and experiments.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized experiments.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Salem number certification and enumeration.
    #[command(subcommand)]
    Salem(SalemCommand),
    /// Trace fields and quaternion ramification.
    #[command(subcommand)]
    Arith(ArithCommand),
    /// Graph spectra, Cheeger constants and double covers.
    #[command(subcommand)]
    Spec(SpecCommand),
    /// Run an experiment described by a JSON config file.
    Run { config: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SalemCommand {
    /// Certify a polynomial given as comma-separated coefficients, constant term first.
    Check {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Every Salem number whose trace polynomial has the given degree and height.
    Enumerate {
        #[arg(long)]
        half_degree: usize,
        #[arg(long)]
        height: u32,
    },
    /// Enclosure of the closed-geodesic length `2 ln(tau)`.
    Geodesic {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = CERTIFICATE_BITS)]
        bits: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum ArithCommand {
    /// Ramification set of the quaternion algebra attached to a Salem polynomial.
    Plan {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
    },
    /// Smallest degree-one prime of the trace field inert in `Q(tau)`.
    Inert {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        bound: u64,
    },
    /// Ramification plans for every Salem number in a search box.
    Survey {
        #[arg(long)]
        half_degree: usize,
        #[arg(long)]
        height: u32,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecCommand {
    /// Spectral report of a graph file (`n m` header, then `u v w [s]` lines).
    Report { graph: PathBuf },
    /// The double cover defined by the file's edge signs.
    Cover {
        graph: PathBuf,
        /// Trace the two-cover bound and check each step of its proof.
        #[arg(long)]
        verify: bool,
    },
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Random graphs with random connected double covers.
    TwoCover {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        instances: u64,
        #[arg(long, default_value_t = 0.5)]
        edge_probability: f64,
    },
    /// First eigenvalue of the m-fold cyclic covers of a triangle.
    CyclicScaling {
        #[arg(long, default_value_t = 4)]
        m_min: usize,
        #[arg(long, default_value_t = 64)]
        m_max: usize,
    },
}

fn parse_poly(coeffs: &str) -> Result<IntPolynomial, CliError> {
    coeffs.parse().map_err(|e| CliError::Input(format!("cannot parse polynomial `{coeffs}`: {e}")))
}

fn read_graph(path: &Path) -> Result<(WeightedGraph, Signing), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Rejection {
    salem: bool,
    reason: NotSalemReason,
}

#[derive(Serialize)]
struct GeodesicReport {
    p: String,
    bits: u32,
    geodesic_lo: String,
    geodesic_hi: String,
}

#[derive(Serialize)]
struct CoverVerification<'a> {
    trace: &'a salemlab_core::spectral::ProofChainTrace,
    ledger: Option<salemlab_core::spectral::ChainLedger>,
}

/// Prints a JSON rejection and returns exit 1 when `p` is not Salem.
fn certify_or_reject(p: &IntPolynomial, stdout: &mut dyn Write) -> Result<Result<SalemCertificate, i32>, CliError> {
    match certify_salem(p) {
        Ok(c) => Ok(Ok(c)),
        Err(reason) => {
            print(stdout, &run::to_json(&Rejection { salem: false, reason }))?;
            Ok(Err(EXIT_FAILURE))
        }
    }
}

fn print(stdout: &mut dyn Write, s: &str) -> Result<(), CliError> {
    stdout.write_all(s.as_bytes()).map_err(CliError::Stdout)
}

/// Writes to `--out` when given, otherwise to stdout.
fn output(out: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => run::write_file(path, content),
        None => print(stdout, content),
    }
}

fn experiment_config(cli: &Cli, experiment: ExperimentKind) -> ExperimentConfig {
    ExperimentConfig {
        experiment,
        seed: cli.seed.unwrap_or(0),
        out: cli.out.clone(),
        jobs: cli.jobs.unwrap_or(1),
        format: cli.format,
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Salem(SalemCommand::Check { coeffs }) => {
            let p = parse_poly(coeffs)?;
            match certify_or_reject(&p, stdout)? {
                Ok(cert) => {
                    output(out, &run::to_json(&SalemReport::new(&cert, CERTIFICATE_BITS)), stdout)?;
                    Ok(EXIT_OK)
                }
                Err(code) => Ok(code),
            }
        }
        Command::Salem(SalemCommand::Enumerate { half_degree, height }) => run::run(
            &experiment_config(cli, ExperimentKind::SalemEnumeration { half_degree: *half_degree, height: *height }),
            stdout,
        ),
        Command::Salem(SalemCommand::Geodesic { coeffs, bits }) => {
            let p = parse_poly(coeffs)?;
            match certify_or_reject(&p, stdout)? {
                Ok(cert) => {
                    let g = geodesic_length(&cert, *bits);
                    let report = GeodesicReport {
                        p: cert.p().to_coeff_string(),
                        bits: *bits,
                        geodesic_lo: to_decimal(g.lo()).expect("dyadic"),
                        geodesic_hi: to_decimal(g.hi()).expect("dyadic"),
                    };
                    output(out, &run::to_json(&report), stdout)?;
                    Ok(EXIT_OK)
                }
                Err(code) => Ok(code),
            }
        }
        Command::Arith(ArithCommand::Plan { coeffs, prime_bound }) => {
            let p = parse_poly(coeffs)?;
            match certify_or_reject(&p, stdout)? {
                Ok(cert) => {
                    let plan = ramification_plan(&cert, *prime_bound).map_err(|e| CliError::Input(e.to_string()))?;
                    output(out, &run::to_json(&PlanReport::from(&plan)), stdout)?;
                    Ok(EXIT_OK)
                }
                Err(code) => Ok(code),
            }
        }
        Command::Arith(ArithCommand::Inert { coeffs, bound }) => {
            let p = parse_poly(coeffs)?;
            match certify_or_reject(&p, stdout)? {
                Ok(cert) => {
                    let prime =
                        find_inert_prime(&trace_field(&cert), *bound).map_err(|e| CliError::Input(e.to_string()))?;
                    output(out, &run::to_json(&PrimeReport::from(prime)), stdout)?;
                    Ok(EXIT_OK)
                }
                Err(code) => Ok(code),
            }
        }
        Command::Arith(ArithCommand::Survey { half_degree, height, prime_bound }) => run::run(
            &experiment_config(
                cli,
                ExperimentKind::RamificationSurvey {
                    half_degree: *half_degree,
                    height: *height,
                    prime_bound: *prime_bound,
                },
            ),
            stdout,
        ),
        Command::Spec(SpecCommand::Report { graph }) => {
            let (g, _) = read_graph(graph)?;
            let report = spectral_report(&g).map_err(|e| CliError::Input(e.to_string()))?;
            output(out, &run::to_json(&report), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Spec(SpecCommand::Cover { graph, verify }) => {
            let (g, s) = read_graph(graph)?;
            if !verify {
                let cover = double_cover(&g, &s).map_err(|e| CliError::Input(e.to_string()))?;
                output(out, &format_graph(&cover, None), stdout)?;
                return Ok(EXIT_OK);
            }
            let trace = verify_two_cover_bound(&g, &s).map_err(|e| CliError::Input(e.to_string()))?;
            let ledger = if trace.vacuous {
                None
            } else {
                Some(proof_chain_check(&trace).map_err(|e| CliError::Input(e.to_string()))?)
            };
            let failed =
                ledger.as_ref().is_some_and(|l| !l.all_asserted_hold()) || (!trace.vacuous && !trace.final_holds());
            output(out, &run::to_json(&CoverVerification { trace: &trace, ledger }), stdout)?;
            Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Spec(SpecCommand::Experiment(ExperimentCommand::TwoCover {
            vertices,
            instances,
            edge_probability,
        })) => run::run(
            &experiment_config(
                cli,
                ExperimentKind::TwoCover {
                    vertices: *vertices,
                    instances: *instances,
                    edge_probability: *edge_probability,
                },
            ),
            stdout,
        ),
        Command::Spec(SpecCommand::Experiment(ExperimentCommand::CyclicScaling { m_min, m_max })) => {
            run::run(&experiment_config(cli, ExperimentKind::CyclicScaling { m_min: *m_min, m_max: *m_max }), stdout)
        }
        Command::Run { config } => {
            let mut c = ExperimentConfig::from_file(config)?;
            if let Some(seed) = cli.seed {
                c.seed = seed;
            }
            if let Some(jobs) = cli.jobs {
                c.jobs = jobs;
            }
            if cli.out.is_some() {
                c.out = cli.out.clone();
            }
            if cli.format.is_some() {
                c.format = cli.format;
            }
            run::run(&c, stdout)
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Usage and
/// input errors are reported on `stderr` with exit code 1.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}
