//! `stlc`: deterministic experiments with four-antenna quaternionic lattice
//! codes.

mod commands;
mod format;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use stlc::channel::DmtFamily;
use stlc::lattices::LatticeId;

#[derive(Parser)]
#[command(name = "stlc", version, about = "Quaternionic space-time lattice codes for 4x1 MISO")]
struct Cli {
    /// Cap on worker threads for simulations.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive minimum of det(MM^H) over a coordinate box.
    Mindet {
        #[arg(long)]
        lattice: LatticeId,
        #[arg(long = "box", default_value_t = 2)]
        bound: i64,
    },
    /// Lattice membership of a coefficient vector.
    Member {
        #[arg(long)]
        lattice: LatticeId,
        /// Eight comma-separated integers (Re c1, Im c1, ..., Re c4, Im c4).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x: Vec<i64>,
    },
    /// Average energy of the K shortest vectors at unit minimum determinant.
    Energy {
        #[arg(long)]
        lattice: LatticeId,
        #[arg(long = "K", alias = "k")]
        k: usize,
        /// Use the coset (1+i)/2 (1,1,1,1) + G^4.
        #[arg(long)]
        offset: bool,
    },
    /// Bits per channel use of the PAM code Z_Q^8 intersected with the lattice.
    Rate {
        #[arg(long)]
        lattice: LatticeId,
        #[arg(long = "Q", alias = "q")]
        q: u32,
    },
    /// Block error rate sweep from a JSON configuration.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides the configuration's `output`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decoder node counts binned by channel sensitivity.
    Profile {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10)]
        bins: usize,
        /// Also report the fraction of trials with sensitivity below this.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Diversity-multiplexing tradeoff bounds.
    Dmt {
        #[arg(long)]
        family: DmtFamily,
        /// Comma-separated multiplexing gains.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
    },
    /// Decode one received block and print every step of the search.
    DecodeTrace {
        #[arg(long)]
        instance: PathBuf,
    },
}

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Mindet { lattice, bound } => commands::mindet(lattice, bound, fmt),
        Command::Member { lattice, x } => commands::member(lattice, &x, fmt),
        Command::Energy { lattice, k, offset } => commands::energy(lattice, k, offset, fmt),
        Command::Rate { lattice, q } => commands::rate(lattice, q, fmt),
        Command::Simulate { config, output } => commands::simulate(&config, output, fmt),
        Command::Profile { config, bins, threshold, output } => commands::profile(&config, bins, threshold, output, fmt),
        Command::Dmt { family, r } => commands::dmt(family, &r, fmt),
        Command::DecodeTrace { instance } => commands::decode_trace(&instance, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
