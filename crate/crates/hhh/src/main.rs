use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hhh::checks::{euler_suite, hecke_suite, invariance_suite, reduce_info, soergel_suite, Suite};
use hhh::report::HhhReport;
use hhh::{parse_braid, run_hhh, CliError, Format, RunConfig, CACHE_ENV};
use hhh_core::hecke::homfly;
use serde_json::json;

#[derive(Parser)]
#[command(name = "hhh", version, about = "Triply-graded homology of braid closures via Soergel bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BraidArgs {
    /// Number of strands.
    #[arg(short = 'm', long = "strands")]
    strands: usize,
    /// Braid word, e.g. "1 -2 1" or "s1 s2^-1 s1".
    #[arg(short = 'w', long = "word", allow_hyphen_values = true, default_value = "")]
    word: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[command(flatten)]
    braid: BraidArgs,
    /// Largest internal degree computed (even); default 4 * (crossings + strands).
    #[arg(long)]
    qmax: Option<i32>,
    /// Gaussian-reduce the Rouquier complex first (default).
    #[arg(long, overrides_with = "no_reduce")]
    reduce: bool,
    /// Work with the full tensor-product complex.
    #[arg(long = "no-reduce", overrides_with = "reduce")]
    no_reduce: bool,
    /// Directory for cached tables.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for internal degrees.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Trigraded dimensions, Poincare polynomial and Euler characteristic.
    Hhh(RunArgs),
    /// HOMFLYPT value of the closure from the Hecke algebra trace.
    Homfly(BraidArgs),
    /// Relation and consistency suites.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Summand census of the Rouquier complex before and after reduction.
    ReduceInfo(BraidArgs),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Euler characteristic against the HOMFLYPT value, up to a monomial.
    Euler(RunArgs),
    /// Markov moves and braid relations on the given word.
    Invariance(RunArgs),
    /// Soergel bimodule relations.
    Soergel {
        #[arg(long)]
        json: bool,
    },
    /// Hecke algebra relations and Kazhdan-Lusztig checks.
    Hecke {
        #[arg(short = 'm', long = "strands", default_value_t = 3)]
        strands: usize,
        #[arg(long)]
        json: bool,
    },
}

fn config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let word = parse_braid(&args.braid.word, args.braid.strands)?;
    let mut c = RunConfig::new(word, args.qmax)?.with_jobs(args.jobs)?;
    c.reduce = !args.no_reduce;
    c.format = if args.braid.json { Format::Json } else { Format::Text };
    c.cache_dir = args.cache_dir.clone();
    Ok(c)
}

fn emit_suite(suite: Result<Suite, CliError>, json: bool) -> Result<(), CliError> {
    let suite = suite?;
    if json {
        println!("{}", serde_json::to_string_pretty(&suite)?);
    } else {
        print!("{}", suite.to_text());
    }
    suite.into_result().map(|_| ()).map_err(|(_, e)| e)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Hhh(args) => {
            let c = config(&args)?;
            let report = HhhReport::new(&c.word, &run_hhh(&c)?);
            match c.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
        }
        Command::Homfly(args) => {
            let word = parse_braid(&args.word, args.strands)?;
            let p = homfly(&word);
            if args.json {
                let value = json!({
                    "strands": word.strands(),
                    "word": word.letters(),
                    "numerator": p.numerator.render("q", "v"),
                    "denominator_power": p.denominator,
                    "homfly": p.render(),
                });
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                println!("{}", p.render());
            }
        }
        Command::Check(CheckCommand::Euler(args)) => {
            let c = config(&args)?;
            emit_suite(euler_suite(&c), args.braid.json)?;
        }
        Command::Check(CheckCommand::Invariance(args)) => {
            let c = config(&args)?;
            emit_suite(invariance_suite(&c), args.braid.json)?;
        }
        Command::Check(CheckCommand::Soergel { json }) => emit_suite(soergel_suite(), json)?,
        Command::Check(CheckCommand::Hecke { strands, json }) => {
            if strands == 0 {
                return Err(CliError::Parse("need at least one strand".into()));
            }
            emit_suite(hecke_suite(strands), json)?
        }
        Command::ReduceInfo(args) => {
            let word = parse_braid(&args.word, args.strands)?;
            let info = reduce_info(&word)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&info)?);
            } else {
                print!("{}", info.to_text());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hhh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
