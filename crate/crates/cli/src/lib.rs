//! Argument handling, dispatch and report serialization for `snc`.

mod commands;
mod render;

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use snc_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the input document, or of the generator parameters for `example`.
    pub inputs_digest: String,
    pub results: serde_json::Value,
    pub exit_status: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Parser, Debug)]
#[command(name = "snc", version, about = "Dual complexes, norm maps and reciprocity-kernel predictions for SNC configurations")]
pub struct Cli {
    /// Emit the machine-readable report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a configuration document.
    Validate { config: String },
    /// Print the dual complex of the configuration.
    DualComplex {
        config: String,
        /// Orbit quotient over the degree-F extension; 0 is the geometric complex.
        #[arg(long, default_value_t = 0)]
        f: u64,
    },
    /// Homology of the dual complex.
    Homology {
        config: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        reduced: bool,
        /// Work over the degree-F extension; 0 is the geometric complex.
        #[arg(long, default_value_t = 0)]
        f: u64,
    },
    /// Suspension of the dual complex and its homology.
    Suspend {
        config: String,
        #[arg(long, default_value = "z")]
        coeff: String,
    },
    /// Dual complex over the degree-F extension and the orbit map onto it.
    Extend {
        config: String,
        #[arg(long)]
        f: u64,
    },
    /// Norm map on homology for the degree-F extension.
    Norm {
        config: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value = "z")]
        coeff: String,
    },
    /// Theta localized at ELL.
    Theta {
        config: String,
        #[arg(long)]
        ell: u64,
    },
    /// The map alpha from H1 of the dual graph to Theta.
    Alpha {
        config: String,
        #[arg(long)]
        ell: u64,
    },
    /// Kernel prediction at one extension degree, or a sweep over 1..=SWEEP.
    Kernel {
        config: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        sweep: Option<u64>,
        #[arg(long, default_value_t = 1)]
        f: u64,
    },
    /// Generate a bundled example document.
    Example {
        kind: String,
        #[arg(long)]
        n: Option<u64>,
        /// Write the document here instead of standard output.
        #[arg(long)]
        out: Option<String>,
        /// Emit the cover configuration instead of the quotient.
        #[arg(long)]
        cover: bool,
    },
    /// Compare the mod-p homology engines.
    OracleCheck {
        /// Configuration to check; random complexes are used when absent.
        config: Option<String>,
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::DualComplex { .. } => "dual-complex",
            Command::Homology { .. } => "homology",
            Command::Suspend { .. } => "suspend",
            Command::Extend { .. } => "extend",
            Command::Norm { .. } => "norm",
            Command::Theta { .. } => "theta",
            Command::Alpha { .. } => "alpha",
            Command::Kernel { .. } => "kernel",
            Command::Example { .. } => "example",
            Command::OracleCheck { .. } => "oracle-check",
        }
    }

    fn input_path(&self) -> Option<&str> {
        match self {
            Command::Validate { config }
            | Command::DualComplex { config, .. }
            | Command::Homology { config, .. }
            | Command::Suspend { config, .. }
            | Command::Extend { config, .. }
            | Command::Norm { config, .. }
            | Command::Theta { config, .. }
            | Command::Alpha { config, .. }
            | Command::Kernel { config, .. } => Some(config),
            Command::OracleCheck { config, .. } => config.as_deref(),
            Command::Example { .. } => None,
        }
    }
}

/// What a command produced: the payload and its text rendering.
pub(crate) struct Output {
    pub results: serde_json::Value,
    pub text: String,
    pub status: i32,
}

impl Output {
    pub fn ok(results: serde_json::Value, text: String) -> Self {
        Output {
            results,
            text,
            status: EXIT_OK,
        }
    }
}

pub(crate) enum Failure {
    Invalid(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::NotPrime(_) | Error::TooLarge(..) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    let res = if path == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|e| Failure::Invalid(format!("cannot read '{path}': {e}")))?;
    Ok(bytes)
}

fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Parses `argv` (including the program name), runs the command, writes
/// output, and returns the exit status.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (report, text, message) = execute(&cli.command);
    if cli.json {
        let _ = writeln!(out, "{}", report.to_json());
    } else if !text.is_empty() {
        let _ = write!(out, "{text}");
    }
    if let Some(m) = message {
        let _ = writeln!(err, "error: {m}");
    }
    report.exit_status
}

/// Runs a parsed command and builds its report.
pub fn run(command: &Command) -> RunReport {
    execute(command).0
}

fn execute(command: &Command) -> (RunReport, String, Option<String>) {
    let name = command.name();
    let input = match command.input_path() {
        Some(path) => read_input(path).map(Some),
        None => Ok(None),
    };
    let outcome = input.and_then(|bytes| {
        let digest_source = match (&bytes, command) {
            (Some(b), _) => b.clone(),
            (None, Command::Example { kind, n, cover, .. }) => {
                format!("example {kind} n={n:?} cover={cover}").into_bytes()
            }
            (None, Command::OracleCheck { random, seed, .. }) => {
                format!("oracle-check random={random} seed={seed}").into_bytes()
            }
            (None, _) => Vec::new(),
        };
        let text = bytes.map(|b| String::from_utf8(b).map_err(|_| Failure::Invalid("input is not UTF-8".into())));
        let text = text.transpose()?;
        commands::dispatch(command, text.as_deref()).map(|o| (digest(&digest_source), o))
    });
    match outcome {
        Ok((inputs_digest, output)) => (
            RunReport {
                command: name.into(),
                inputs_digest,
                results: output.results,
                exit_status: output.status,
            },
            output.text,
            None,
        ),
        Err(failure) => {
            let (status, message) = match failure {
                Failure::Invalid(m) => (EXIT_INVALID, m),
                Failure::Usage(m) => (EXIT_USAGE, m),
            };
            let errors: Vec<&str> = message.lines().collect();
            (
                RunReport {
                    command: name.into(),
                    inputs_digest: String::new(),
                    results: serde_json::json!({ "errors": errors }),
                    exit_status: status,
                },
                String::new(),
                Some(message),
            )
        }
    }
}
