use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use perfiso_core::decimal::parse_strict;
use perfiso_core::{ExactInt, QuarticForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Certificate,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "perfiso",
    version,
    about = "Certified searches around isosceles perfect triangles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Exhaustive search of z^2 = a x^4 + b x^2 y^2 + c y^4 over [1, N]^2.
    SearchQuartic {
        /// Coefficients a,b,c.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_form)]
        form: QuarticForm,
        #[arg(long, value_parser = parse_exact)]
        bound: ExactInt,
        /// Sieve moduli, comma separated, or `none`.
        #[arg(long, default_value = "3,4", value_parser = parse_moduli)]
        sieve: Moduli,
        #[arg(long)]
        workers: Option<usize>,
        /// Scan every pair instead of coprime pairs only.
        #[arg(long)]
        allow_noncoprime: bool,
        /// List solutions with xyz = 0 as well.
        #[arg(long)]
        include_trivial: bool,
        #[arg(long, default_value_t = 64)]
        chunk_size: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Integer Heron triangles up to a perimeter, as CSV.
    SearchHeron {
        #[arg(long, value_parser = parse_exact)]
        max_perimeter: ExactInt,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Isosceles generators (m, n) up to a bound.
    SearchIsosceles {
        #[arg(long, value_parser = parse_exact)]
        bound: ExactInt,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Certificate)]
        format: OutputFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a search certificate.
    VerifyCert { path: PathBuf },
    /// Random exact checks of the polynomial identities behind the descent.
    IdentityFuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
    },
}

/// Newtype so clap does not treat the moduli list as a repeated argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moduli(pub Vec<ExactInt>);

pub fn parse_exact(s: &str) -> Result<ExactInt, String> {
    parse_strict(s.trim())
}

fn parse_form(s: &str) -> Result<QuarticForm, String> {
    s.parse()
        .map_err(|e: perfiso_core::quartic::FormParseError| e.to_string())
}

pub fn parse_moduli(s: &str) -> Result<Moduli, String> {
    if s.trim().is_empty() || s.trim() == "none" {
        return Ok(Moduli(Vec::new()));
    }
    s.split(',')
        .map(parse_exact)
        .collect::<Result<_, _>>()
        .map(Moduli)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    SearchQuartic {
        form: QuarticForm,
        bound: ExactInt,
        sieve_moduli: Vec<ExactInt>,
        workers: Option<usize>,
        coprime_only: bool,
        exclude_trivial: bool,
        chunk_size: u64,
        out: PathBuf,
    },
    SearchHeron {
        max_perimeter: ExactInt,
        workers: Option<usize>,
        out: PathBuf,
    },
    SearchIsosceles {
        bound: ExactInt,
        workers: Option<usize>,
        out: PathBuf,
        format: OutputFormat,
    },
    VerifyCert {
        path: PathBuf,
    },
    IdentityFuzz {
        seed: u64,
        iters: u64,
    },
}

/// Fully determines a run (together with the tool version).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CliCommand::SearchQuartic {
                form,
                bound,
                sieve,
                workers,
                allow_noncoprime,
                include_trivial,
                chunk_size,
                out,
            } => Command::SearchQuartic {
                form,
                bound,
                sieve_moduli: sieve.0,
                workers,
                coprime_only: !allow_noncoprime,
                exclude_trivial: !include_trivial,
                chunk_size,
                out,
            },
            CliCommand::SearchHeron {
                max_perimeter,
                workers,
                out,
            } => Command::SearchHeron {
                max_perimeter,
                workers,
                out,
            },
            CliCommand::SearchIsosceles {
                bound,
                workers,
                format,
                out,
            } => Command::SearchIsosceles {
                bound,
                workers,
                out,
                format,
            },
            CliCommand::VerifyCert { path } => Command::VerifyCert { path },
            CliCommand::IdentityFuzz { seed, iters } => Command::IdentityFuzz { seed, iters },
        };
        RunConfig { command }
    }
}

impl RunConfig {
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(RunConfig::from)
    }
}
