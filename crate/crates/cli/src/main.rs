//! `sigmakit`: prove, verify and benchmark the demo scenarios.
//!
//! Exit codes: 0 success, 1 proof rejected, 2 malformed input or bad
//! configuration, 3 proving failed.

mod bench;
mod public;
mod scenario;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_core::{CryptoRngCore, OsRng};
use sigmakit::codec::DecodeError;
use sigmakit::nizk::{deserialize, prove, serialize, verify};
use sigmakit::Error;
use thiserror::Error as ThisError;

use public::PublicInputs;
use scenario::{instantiate, template, Backend, Scenario};

#[derive(Debug, ThisError)]
pub enum Failure {
    #[error("proof rejected: {0}")]
    Reject(String),
    #[error("{0}")]
    Config(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("proving failed during {stage}: {message}")]
    Prove { stage: &'static str, message: String },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Reject(_) => 1,
            Failure::Config(_) | Failure::Malformed(_) => 2,
            Failure::Prove { .. } => 3,
        }
    }

    pub fn prove(e: &Error) -> Self {
        let stage = match e {
            Error::DangerousOr { .. } | Error::AllSimulated => "statement validation",
            Error::Precommit(_) | Error::NestedExtended => "precommitment",
            Error::MissingValue(_) | Error::ConflictingValues(_) => "witness collection",
            Error::SelfCheck(_) => "response self-check",
            _ => "proving",
        };
        Failure::Prove {
            stage,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sigmakit",
    version,
    about = "Composable sigma-protocol proofs: demo scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prove a scenario; writes a proof file and a public-inputs file.
    Prove(ProveArgs),
    /// Verify a proof file against a public-inputs file.
    Verify(VerifyArgs),
    /// Median prove and verify times as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Entropy {
    /// Deterministic randomness for tests and demos. Seeded proofs are not
    /// secure.
    #[arg(long)]
    seed: Option<u64>,
}

impl Entropy {
    fn rng(&self) -> Box<dyn CryptoRngCore> {
        match self.seed {
            Some(seed) => {
                eprintln!("warning: --seed makes proofs reproducible and insecure; use it only for tests and demos");
                Box::new(ChaCha20Rng::seed_from_u64(seed))
            }
            None => Box::new(OsRng),
        }
    }
}

#[derive(Debug, Args)]
struct ProveArgs {
    #[arg(long, value_enum)]
    scenario: Scenario,
    /// `curve` (ristretto255) or `toy:p,q,g`.
    #[arg(long, default_value = "curve")]
    backend: Backend,
    #[command(flatten)]
    entropy: Entropy,
    /// Proof output path.
    #[arg(short, long)]
    out: PathBuf,
    /// Public-inputs output path; defaults to `<out>.public`.
    #[arg(long)]
    public: Option<PathBuf>,
    /// Build enc-bit-or with r shared between the OR and its sibling, which
    /// the prover must refuse.
    #[arg(long)]
    dangerous_or: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    proof: PathBuf,
    #[arg(long)]
    public: PathBuf,
    /// Reject unless the public inputs describe this scenario.
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Benchmark one scenario; all of them by default.
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    #[arg(long, default_value = "curve")]
    backend: Backend,
    #[command(flatten)]
    entropy: Entropy,
    /// Iterations per measurement.
    #[arg(long, default_value_t = 30)]
    n: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prove(args) => cmd_prove(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sigmakit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_prove(args: ProveArgs) -> Result<(), Failure> {
    if args.dangerous_or && args.scenario != Scenario::EncBitOr {
        return Err(Failure::Config(
            "--dangerous-or only applies to --scenario enc-bit-or".into(),
        ));
    }
    let mut rng = args.entropy.rng();
    let (stmt, public) = instantiate(args.scenario, &args.backend, args.dangerous_or, &mut *rng)?;
    let proof = prove(&stmt, &mut *rng).map_err(|e| Failure::prove(&e))?;
    let bytes = serialize(&proof);
    let public_path = args.public.unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".public");
        p.into()
    });
    write(&args.out, &bytes)?;
    write(&public_path, &public.to_bytes())?;
    println!(
        "proved {} on {}: {} bytes to {}, public inputs to {}",
        args.scenario,
        args.backend,
        bytes.len(),
        args.out.display(),
        public_path.display()
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let public = PublicInputs::from_bytes(&read(&args.public)?)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", args.public.display())))?;
    if let Some(expected) = args.scenario {
        if expected != public.scenario {
            return Err(Failure::Reject(format!(
                "public inputs describe {}, not {expected}",
                public.scenario
            )));
        }
    }
    let stmt = template(&public)?;
    let proof = deserialize(&read(&args.proof)?, &stmt).map_err(|e| match e {
        Error::Decode(DecodeError::ShapeMismatch(m)) | Error::ShapeMismatch(m) => {
            Failure::Reject(format!("proof does not fit the {} statement: {m}", public.scenario))
        }
        other => Failure::Malformed(format!("{}: {other}", args.proof.display())),
    })?;
    match verify(&stmt, &proof) {
        Ok(true) => {
            println!("accepted: {} on {}", public.scenario, public.backend);
            Ok(())
        }
        Ok(false) => Err(Failure::Reject(
            "hash mismatch: the challenge does not match the recomputed transcript".into(),
        )),
        Err(Error::Validation(m)) => Err(Failure::Reject(format!("validation failure: {m}"))),
        Err(e) => Err(Failure::Reject(e.to_string())),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let scenarios = match args.scenario {
        Some(s) => vec![s],
        None => Scenario::ALL.to_vec(),
    };
    let mut rng = args.entropy.rng();
    bench::run(&scenarios, &args.backend, args.n, &mut *rng, &mut io::stdout().lock())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Config(format!("reading {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Config(format!("writing {}: {e}", path.display())))
}
