mod args;
mod cmd;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

use output::{Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "henselian", version, about = "Exact computation in Henselian local rings")]
struct Cli {
    /// Tower session file, read and rewritten by `tower` commands.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// Compact single-line JSON; suppresses the stderr summary.
    #[arg(long, global = true)]
    json: bool,
    /// p-adic precision used when a command has to pick a truncated target.
    #[arg(long, global = true, default_value_t = 10)]
    precision: u32,
    /// Degree cap for universal decomposition algebras.
    #[arg(long = "cap-n", global = true, default_value_t = henselian::uda::DEFAULT_DEGREE_CAP)]
    cap_n: usize,
    /// Seed for randomized factoring.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic and local structure of single elements.
    #[command(subcommand)]
    Ring(cmd::ring::RingCmd),
    /// Polynomial arithmetic and residue-field factoring.
    #[command(subcommand)]
    Poly(cmd::poly::PolyCmd),
    /// Finite algebras `A[X]/(f)`.
    #[command(subcommand)]
    Alg(cmd::alg::AlgCmd),
    /// Idempotent calculus.
    #[command(subcommand)]
    Idem(cmd::idem::IdemCmd),
    /// Universal decomposition algebras.
    #[command(subcommand)]
    Uda(cmd::uda::UdaCmd),
    /// Hensel lifting of roots, factorizations and idempotents.
    #[command(subcommand)]
    Hensel(cmd::hensel::HenselCmd),
    /// Towers of one-step Henselian extensions.
    #[command(subcommand)]
    Tower(cmd::tower::TowerCmd),
}

/// Settings shared by every command.
pub struct Ctx {
    pub session: Option<PathBuf>,
    pub precision: u32,
    pub cap_n: usize,
    pub seed: u64,
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let ctx = Ctx {
        session: cli.session,
        precision: cli.precision,
        cap_n: cli.cap_n,
        seed: cli.seed,
    };
    match cli.command {
        Command::Ring(c) => cmd::ring::run(&ctx, c),
        Command::Poly(c) => cmd::poly::run(&ctx, c),
        Command::Alg(c) => cmd::alg::run(&ctx, c),
        Command::Idem(c) => cmd::idem::run(&ctx, c),
        Command::Uda(c) => cmd::uda::run(&ctx, c),
        Command::Hensel(c) => cmd::hensel::run(&ctx, c),
        Command::Tower(c) => cmd::tower::run(&ctx, c),
    }
}

/// Lets `--a -11` pass a negative element at every level.
fn negative_numbers(cmd: clap::Command) -> clap::Command {
    cmd.allow_negative_numbers(true).mut_subcommands(negative_numbers)
}

fn parse() -> Result<Cli, clap::Error> {
    let matches = negative_numbers(Cli::command()).try_get_matches()?;
    Cli::from_arg_matches(&matches)
}

fn main() -> ExitCode {
    let cli = match parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let compact = cli.json;
    match run(cli) {
        Ok(out) => {
            let doc = out.to_json();
            if compact {
                println!("{}", doc);
            } else {
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                eprint!("{}", out.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            println!("{}", f.to_json());
            eprintln!("error [{}]: {}", f.code(), f);
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
