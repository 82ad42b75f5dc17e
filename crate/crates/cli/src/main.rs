//! `uxh`: command-line driver producing JSON reports.

mod commands;
mod golden;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Envelope, Outcome};

#[derive(Parser, Debug, Clone)]
#[command(name = "uxh", version, about = "Unexpected hypersurfaces, their bihomogeneous forms and companion varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Working primes (default: the two built-in primes).
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Seeds (default: $UXH_SEED, else the built-in seeds).
    #[arg(long, global = true, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigRef {
    /// Catalog name (B3, B4, D4, F4, H3, H4, fermat0, fermat3, fermat28) or a JSON file.
    #[arg(long)]
    pub config: String,
    /// Parameter of the Fermat families.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Load and validate a configuration.
    Config {
        #[command(flatten)]
        config: ConfigRef,
        /// Include the coordinates of every point.
        #[arg(long)]
        emit_points: bool,
    },
    /// Hilbert function and h-vector of the points, and ideal dimensions.
    Hilbert {
        #[command(flatten)]
        config: ConfigRef,
        /// Degrees d for dim [I]_d and minimal generator counts.
        #[arg(long, value_delimiter = ',')]
        ideal_degrees: Vec<usize>,
    },
    /// Actual against expected dimension with general fat points.
    Unexpected {
        #[command(flatten)]
        config: ConfigRef,
        #[arg(long)]
        degree: usize,
        /// Multiplicities of the general points.
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<usize>,
    },
    /// Solve for the bihomogeneous form of the unexpected family.
    Bihom {
        #[command(flatten)]
        config: ConfigRef,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        mult: usize,
        #[arg(long)]
        t_max: Option<usize>,
        /// Random specializations checked against Z and the multiplicity.
        #[arg(long, default_value_t = 10)]
        check: usize,
    },
    /// Split the bihomogeneous form as sum h_i(a) g_i(x).
    Companion {
        #[command(flatten)]
        config: ConfigRef,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        mult: usize,
        #[arg(long, value_enum, default_value_t = BasisArg::Listed)]
        basis: BasisArg,
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Invariants of the image of a rational map.
    Image {
        /// `catalog:<id>` (f4-phi, h3-phi, h3-bar, h3-psi, fermat-phi, fermat-phi-bar, fermat-psi, veronese) or a JSON file.
        #[arg(long)]
        map: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        ideal_degrees: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        jacobian_trials: usize,
        /// Scan the structured alphabet for base points, with these root-of-unity orders.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        scan_base_locus: Option<Vec<u64>>,
    },
    /// Tangent-cone comparisons of the unexpected family.
    Duality {
        #[command(flatten)]
        config: ConfigRef,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        mult: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Run the golden manifest.
    Golden {
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Only entries whose name contains this.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisArg {
    Listed,
    Support,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let envelope = run(&cli);
    let text = envelope.to_json();
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| format!("cannot write {}: {e}", path.display())),
        // a closed pipe is not an error of the computation
        None => {
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("{msg}");
        return ExitCode::from(1);
    }
    if let Outcome::Error = envelope.outcome {
        if let Some(err) = &envelope.error {
            eprintln!("error [{}]: {}", err.code, err.message);
        }
    }
    ExitCode::from(envelope.outcome.exit_code())
}

/// Build the report for one parsed command line.
pub fn run(cli: &Cli) -> Envelope {
    let settings = match report::Settings::from_common(&cli.common) {
        Ok(s) => s,
        Err(e) => return Envelope::failed(cli.command.name(), None, e),
    };
    let result = match &cli.command {
        Command::Golden { manifest, only, jobs } => golden::run(&settings, manifest.as_deref(), only.as_deref(), *jobs),
        other => commands::run(&settings, other),
    };
    Envelope::new(cli.command.name(), &settings, result)
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Config { .. } => "config",
            Command::Hilbert { .. } => "hilbert",
            Command::Unexpected { .. } => "unexpected",
            Command::Bihom { .. } => "bihom",
            Command::Companion { .. } => "companion",
            Command::Image { .. } => "image",
            Command::Duality { .. } => "duality",
            Command::Golden { .. } => "golden",
        }
    }
}
