//! Command-line interface. Exit codes: 0 success, 1 verification failure,
//! 2 usage error, 3 analytic refusal (divergence or a non-integral slice).

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regzeta::typelib::GroupForm;
use regzeta::Error;

pub use render::Format;

#[derive(Parser, Debug)]
#[command(name = "regzeta", version, about = "Regular characters of GL_n, GU_n, SL_n, SU_n over compact DVRs")]
pub struct Cli {
    /// Output format; numbers are always decimal strings.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for the oracles (default: all cores).
    #[arg(long, global = true)]
    pub parallelism: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the n-types in canonical order.
    Types {
        #[arg(long)]
        n: u32,
    },
    /// Degrees (and counts) of regular characters per type.
    Degrees(TableArgs),
    /// Counts (and degrees) of regular characters per type.
    Counts(TableArgs),
    /// Regular representation zeta function.
    Zeta(ZetaArgs),
    /// Check that GU degrees are the Ennola duals of GL degrees.
    Ennola {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Run the brute-force finite-field oracles.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// gl, gu, sl or su
    #[arg(long)]
    pub form: GroupForm,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub level: u32,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").args(["s", "truncate", "symbolic"]))]
pub struct ZetaArgs {
    #[arg(long)]
    pub form: GroupForm,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
    /// Evaluate at a real point beyond the abscissa.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    /// Dirichlet coefficients for all degrees up to M.
    #[arg(long, value_name = "M")]
    pub truncate: Option<String>,
    /// Closed form (the default).
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Polys,
    Matrices,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest n (and largest self-dual degree) to check.
    #[arg(long, default_value_t = 2)]
    pub max_n: u32,
    /// Comma-separated field sizes.
    #[arg(long, default_value = "3,5", value_delimiter = ',')]
    pub q_list: Vec<u64>,
    /// Regular elements per type whose centralizer is computed.
    #[arg(long, default_value_t = 200)]
    pub sample_cap: usize,
    /// Include wall-clock seconds in the reports (breaks byte-identical output).
    #[arg(long)]
    pub timing: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Diverges(_) | Error::Unbounded(_) | Error::NonIntegral(_) => 3,
        Error::InternalInexact(_) | Error::InexactDivision(_) | Error::DivisionByZero => 1,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> ExitCode {
    if let Some(threads) = cli.parallelism {
        if threads == 0 {
            eprintln!("error: --parallelism must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Types { n } => commands::types(*n),
        Command::Degrees(args) => commands::table("degrees", args),
        Command::Counts(args) => commands::table("counts", args),
        Command::Zeta(args) => commands::zeta(args),
        Command::Ennola { n, level } => commands::ennola(*n, *level),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(output) => match render::render(&output, cli.format) {
            Ok(()) => ExitCode::from(output.exit),
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(output.exit),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
