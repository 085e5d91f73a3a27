use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mubforge_core::analysis::SearchConfig;
use mubforge_core::builtin::{builtin, BUILTIN_NAMES};
use mubforge_core::certificate::{self, check_certificate, source_set, Certificate};
use mubforge_core::class::ClassSet;
use mubforge_core::unextendible::FourSetMode;

mod table;

const VERIFIED: u8 = 0;
const REFUTED: u8 = 1;
const MALFORMED: u8 = 2;

#[derive(Parser)]
#[command(name = "mubforge", version, about = "Build and verify unextendible sets of Pauli-class MUBs")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores). Results do not depend on it.
    #[arg(long, global = true, env = "MUBFORGE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Out {
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print a human-readable summary instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical complete set of 2^n + 1 classes.
    CompleteSet {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Replace d/2 + 1 classes of the canonical complete set by their extra class.
    FindUnextendible {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        /// Indices of the classes to replace, comma separated.
        #[arg(long, value_delimiter = ',', required_unless_present = "all", conflicts_with = "all")]
        chosen: Vec<usize>,
        /// Every possible choice.
        #[arg(long)]
        all: bool,
        /// Accepted for interface symmetry; the construction is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Out,
    },
    /// Re-verify a certificate. Exit 0 verified, 1 refuted, 2 malformed.
    Check {
        path: PathBuf,
        #[arg(long)]
        table: bool,
    },
    /// Search for a vector unbiased to every eigenbasis of a class set.
    Strong {
        /// Built-in name or class-set certificate path.
        source: String,
        #[arg(long, default_value_t = 1000)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Collision entropies of the transversal-class eigenstates of a two-qubit triple.
    Eur {
        source: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Measurement contexts and sign parity of an unextendible two-qubit triple.
    Ks {
        source: String,
        #[command(flatten)]
        out: Out,
    },
    /// Eigenbases of every class of a set.
    Bases {
        source: String,
        #[command(flatten)]
        out: Out,
    },
    /// Exhaustive search for classes in the operators a set leaves uncovered.
    ExtendCheck {
        source: String,
        #[command(flatten)]
        out: Out,
    },
    /// Extra-class counts over all k-subsets of the canonical three-qubit complete set.
    Census {
        /// Subset sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7")]
        k: Vec<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Evidence scan over (d/2 + 1)-subsets of the canonical complete set.
    Conjecture {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        /// Number of subsets; at least the total makes the scan exhaustive.
        #[arg(long, default_value_t = usize::MAX)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Check that no two classes of the two-qubit complete set extend to an unextendible four.
    FourSet {
        /// Enumerate candidate classes directly instead of through uniqueness.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug)]
enum Failure {
    Malformed(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Malformed(e.to_string())
    }
}

fn load(path: &Path) -> Result<Certificate, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Certificate::from_json(&text)?)
}

fn resolve(source: &str) -> Result<(ClassSet, String), Failure> {
    if BUILTIN_NAMES.contains(&source) {
        return Ok((builtin(source)?, source.to_string()));
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Failure::Malformed(format!(
            "{source:?} is neither a built-in example ({}) nor a file",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let cert = load(path)?;
    let name = path.file_name().map_or_else(|| source.to_string(), |f| f.to_string_lossy().into_owned());
    Ok((source_set(&cert)?, name))
}

fn emit(cert: &Certificate, out: &Out) -> Result<u8, Failure> {
    if let Some(path) = &out.output {
        fs::write(path, cert.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if out.table {
        print!("{}", table::render(cert));
    } else if out.output.is_none() {
        print!("{}", cert.to_json());
    }
    Ok(if cert.verified { VERIFIED } else { REFUTED })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match cli.command {
        Command::CompleteSet { n, out } => emit(&certificate::complete_set_certificate(n)?, &out),
        Command::FindUnextendible { n, chosen, all, seed: _, out } => {
            let cert = if all {
                certificate::unextendible_all_certificate(n)?
            } else {
                certificate::unextendible_certificate(n, &chosen)?
            };
            emit(&cert, &out)
        }
        Command::Check { path, table } => {
            let cert = load(&path)?;
            let report = check_certificate(&cert);
            if table {
                print!("{}", table::render(&cert));
            }
            if report.verified() {
                println!("verified: {} certificate", cert.command);
                Ok(VERIFIED)
            } else {
                println!("refuted: {} certificate", cert.command);
                for p in &report.problems {
                    println!("  {p}");
                }
                Ok(REFUTED)
            }
        }
        Command::Strong { source, starts, seed, out } => {
            let (set, name) = resolve(&source)?;
            let config = SearchConfig { starts, seed, ..SearchConfig::default() };
            emit(&certificate::strong_certificate(&set, &name, &config)?, &out)
        }
        Command::Eur { source, seed, out } => {
            let (set, name) = resolve(&source)?;
            emit(&certificate::eur_certificate(&set, &name, seed)?, &out)
        }
        Command::Ks { source, out } => {
            let (set, name) = resolve(&source)?;
            emit(&certificate::ks_certificate(&set, &name)?, &out)
        }
        Command::Bases { source, out } => {
            let (set, name) = resolve(&source)?;
            emit(&certificate::bases_certificate(&set, &name)?, &out)
        }
        Command::ExtendCheck { source, out } => {
            let (set, name) = resolve(&source)?;
            emit(&certificate::extension_certificate(&set, &name)?, &out)
        }
        Command::Census { k, out } => emit(&certificate::census_certificate(&k)?, &out),
        Command::Conjecture { n, budget, seed, out } => {
            emit(&certificate::conjecture_certificate(n, budget, seed)?, &out)
        }
        Command::FourSet { brute_force, out } => {
            let mode = if brute_force { FourSetMode::BruteForce } else { FourSetMode::ViaUniqueness };
            emit(&certificate::four_set_certificate(mode)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { MALFORMED } else { VERIFIED });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(MALFORMED)
        }
    }
}
