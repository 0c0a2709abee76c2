use std::fs;
use std::io::{self, IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use padic_cli::{
    cauchy_command, describe_error, dist_command, eval_command, exit, expand_command,
    idempotent_command, norm_command, parse_rational, parse_sequence, probable_prime_note,
    probe_command, product_formula_command, run_repl, sqrt_command, val_command, CliError,
    CliResult, Session,
};
use padic_core::Rational;

#[derive(Parser)]
#[command(
    name = "padic",
    version,
    about = "Exact p-adic and g-adic arithmetic over the rationals"
)]
struct Cli {
    /// Base (prime p, or composite g for digit arithmetic)
    #[arg(short = 'p', long = "base", global = true, default_value = "10")]
    base: BigUint,
    /// Significant digits N
    #[arg(short = 'N', long = "precision", global = true, default_value_t = 12)]
    precision: usize,
    /// Append the O(b^M) precision term to digit output
    #[arg(long, global = true)]
    marker: bool,
    /// Emit key=value records instead of human-readable text
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as `1/3 + norm(12)`
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Exact periodic expansion of a rational
    Expand {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        q: Rational,
    },
    /// Valuation of a rational in the base
    Val {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        q: Rational,
    },
    /// Norm of a rational
    Norm {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        q: Rational,
        /// Use the real absolute value
        #[arg(long)]
        real: bool,
    },
    /// Distance between two rationals
    Dist {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        a: Rational,
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        b: Rational,
        #[arg(long)]
        real: bool,
    },
    /// Norms at every place and their product
    ProductFormula {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        q: Rational,
        /// Show the digit expansion at each prime of the support
        #[arg(long)]
        expansions: bool,
    },
    /// Cauchy analysis of a sequence, one rational per line
    Cauchy {
        /// Input file; standard input when omitted
        file: Option<PathBuf>,
        /// Number of leading terms to inspect (default: all)
        #[arg(long)]
        depth: Option<usize>,
        /// Check tolerances p^-1 ..= p^-k_max
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long)]
        real: bool,
    },
    /// Square root by Hensel lifting (odd prime base)
    Sqrt {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        a: Rational,
    },
    /// Nontrivial idempotent e and 1 - e of a composite base
    Idempotent,
    /// |n x| for n = 1 ..= n_max
    Probe {
        #[arg(allow_hyphen_values = true, value_parser = rational)]
        x: Rational,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long)]
        real: bool,
    },
    /// Interactive session (`:set p 7`, `:set N 8`, `:set marker on`, `:quit`)
    Repl,
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn read_input(file: Option<&PathBuf>) -> CliResult<String> {
    match file {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            context: path.display().to_string(),
            source,
        }),
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    context: "stdin".into(),
                    source,
                })?;
            Ok(text)
        }
    }
}

fn run(cli: &Cli, session: &mut Session) -> CliResult<String> {
    match &cli.command {
        Command::Eval { expr } => eval_command(session, expr),
        Command::Expand { q } => expand_command(session, q),
        Command::Val { q } => val_command(session, q),
        Command::Norm { q, real } => norm_command(session, q, *real),
        Command::Dist { a, b, real } => dist_command(session, a, b, *real),
        Command::ProductFormula { q, expansions } => {
            product_formula_command(session, q, *expansions)
        }
        Command::Cauchy {
            file,
            depth,
            k_max,
            real,
        } => {
            let terms = parse_sequence(&read_input(file.as_ref())?)?;
            cauchy_command(session, &terms, *depth, *k_max, *real)
        }
        Command::Sqrt { a } => sqrt_command(session, a),
        Command::Idempotent => idempotent_command(session),
        Command::Probe { x, n_max, real } => probe_command(session, x, *n_max, *real),
        Command::Repl => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            run_repl(
                stdin.lock(),
                &mut io::stdout(),
                &mut io::stderr(),
                session,
                prompt,
            )
            .map_err(|source| CliError::Io {
                context: "repl".into(),
                source,
            })?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = match Session::new(cli.base.clone(), cli.precision, cli.marker, cli.machine) {
        Ok(session) => session,
        Err(e) => {
            eprintln!("{}", describe_error(&e, None));
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(note) = probable_prime_note(&session.ctx) {
        eprintln!("{note}");
    }
    match run(&cli, &mut session) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::from(exit::OK as u8)
        }
        Err(e) => {
            let input = match &cli.command {
                Command::Eval { expr } => Some(expr.as_str()),
                _ => None,
            };
            eprintln!("{}", describe_error(&e, input));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
