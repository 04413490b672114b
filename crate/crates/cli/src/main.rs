mod commands;
mod params;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use params::Params;

#[derive(Parser)]
#[command(name = "bandlimit", version, about = "Sampling, Boas differentiation and DHT orbits for bandlimited signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// D^r f on the sample lattice by the Boas formulas; r = 0 evaluates the sampling series.
    Differentiate(Params),
    /// f^{(m)} on a grid from the sampling series (m = --order, default 0).
    Reconstruct(Params),
    /// Discrete Hilbert transform operations on an `n,value` sequence file.
    Dht {
        #[arg(value_enum)]
        action: DhtAction,
        #[command(flatten)]
        params: Params,
    },
    /// Run a verification suite and report pass/fail per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
    },
    /// Write samples of the --reference function (sin, cos, sinc, fejer, const).
    Sample {
        /// First sample index k.
        #[arg(long, allow_hyphen_values = true)]
        first: i64,
        /// Last sample index k.
        #[arg(long, allow_hyphen_values = true)]
        last: i64,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DhtAction {
    Apply,
    Orbit,
    Power,
    Vt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bernstein,
    Pp,
    Lks,
    Favard,
    Group,
    DhtLaw,
}

/// Exit status with a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<bandlimit::Error> for Failure {
    fn from(e: bandlimit::Error) -> Self {
        use bandlimit::Error::*;
        let code = match e {
            Truncation { .. } | ToleranceUnachievable { .. } | Quadrature { .. } => 3,
            Domain(_) | ReconstructionUnsound(_) | MissingDerivative(_) | Input(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Differentiate(p) => commands::differentiate(&p),
        Command::Reconstruct(p) => commands::reconstruct(&p),
        Command::Dht { action, params } => commands::dht(action, &params),
        Command::Verify { suite, params } => verify::run(suite, &params),
        Command::Sample { first, last, params } => commands::sample(first, last, &params),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("bandlimit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
