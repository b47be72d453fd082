use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dpl_cli::{CliError, Flags, OracleOptions, Session, EXIT_COUNTEREXAMPLE, EXIT_OK, HELP};
use dpl_core::semantics::DEFAULT_WORLD_CAP;
use dpl_core::Operation;

#[derive(Parser)]
#[command(name = "dpl", version, about = "Mental-state engine for BDI agent programs")]
struct Cli {
    #[command(flatten)]
    flags: FlagArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FlagArgs {
    /// Accept incoherent programs and operation results
    #[arg(long, global = true)]
    permissive: bool,
    /// Recompute intentions with the full coherence check after each operation
    #[arg(long, global = true)]
    strict_intentions: bool,
    /// Largest vocabulary for which models are built
    #[arg(long, global = true, default_value_t = DEFAULT_WORLD_CAP)]
    world_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Read commands from standard input, one per line
    Repl { agent: PathBuf },
    /// Run commands from a script file or the command line
    Run {
        agent: PathBuf,
        #[arg(long)]
        script: Option<PathBuf>,
        /// A command to run; repeatable, executed after the script
        #[arg(short = 'e', long = "exec")]
        exec: Vec<String>,
    },
    /// Check the program-level operations against the model-level ones
    Oracle {
        #[arg(long, default_value_t = 200)]
        ops: usize,
        #[arg(long, default_value_t = 3)]
        symbols: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Restrict to one operation
        #[arg(long)]
        only: Option<Operation>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let flags = Flags {
        permissive: cli.flags.permissive,
        strict_intentions: cli.flags.strict_intentions,
        world_cap: cli.flags.world_cap,
    };
    let code = match run(cli.command, flags) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn run(command: Command, flags: Flags) -> Result<i32, CliError> {
    match command {
        Command::Oracle {
            ops,
            symbols,
            seed,
            only,
        } => {
            let opts = OracleOptions {
                ops,
                symbols,
                seed,
                only,
            };
            if symbols == 0 || symbols > 8 {
                return Err(CliError::Usage("--symbols must be between 1 and 8".into()));
            }
            let report = opts.run(&flags.dynamics())?;
            println!("{report}");
            Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Run {
            agent,
            script,
            exec,
        } => {
            let mut session = Session::load(&agent, flags)?;
            let mut lines = Vec::new();
            if let Some(path) = script {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                lines.extend(text.lines().map(str::to_owned));
            }
            lines.extend(exec);
            batch(&mut session, lines)
        }
        Command::Repl { agent } => {
            let mut session = Session::load(&agent, flags)?;
            repl(&mut session)
        }
    }
}

fn is_blank(line: &str) -> bool {
    let line = line.trim();
    line.is_empty() || line.starts_with('#')
}

/// Stops at the first failing command and returns its exit code.
fn batch(session: &mut Session, lines: Vec<String>) -> Result<i32, CliError> {
    let mut code = EXIT_OK;
    for line in lines.iter().filter(|l| !is_blank(l)) {
        let reply = session.run_command(line)?;
        if !reply.text.is_empty() {
            println!("{}", reply.text);
        }
        if reply.counterexample {
            code = EXIT_COUNTEREXAMPLE;
        }
    }
    Ok(code)
}

/// Errors are reported and the loop continues; the exit code reflects the
/// last failure.
fn repl(session: &mut Session) -> Result<i32, CliError> {
    let stdin = io::stdin();
    let mut out = io::stdout();
    let mut code = EXIT_OK;
    let _ = write!(out, "dpl> ");
    let _ = out.flush();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| CliError::Io(e.to_string()))?;
        match line.trim() {
            "quit" | "exit" => break,
            "help" => println!("{HELP}\n  quit"),
            l if is_blank(l) => {}
            l => match session.run_command(l) {
                Ok(reply) => {
                    if !reply.text.is_empty() {
                        println!("{}", reply.text);
                    }
                    if reply.counterexample {
                        code = EXIT_COUNTEREXAMPLE;
                    }
                }
                Err(e) => {
                    println!("error: {e}");
                    code = e.exit_code();
                }
            },
        }
        let _ = write!(out, "dpl> ");
        let _ = out.flush();
    }
    println!();
    Ok(code)
}
