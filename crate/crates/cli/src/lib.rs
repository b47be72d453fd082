//! Session state and command interpreter behind the `dpl` binary.

use std::fmt::Write;
use std::fs;
use std::path::Path;

use dpl_core::agentfile::{parse_agent, write_agent};
use dpl_core::dynamics::{self, DynamicsConfig, IntentionFilter, Operation};
use dpl_core::oracle;
use dpl_core::semantics::{export, induced_model, DEFAULT_WORLD_CAP};
use dpl_core::syntax::{parse_formula, to_dnf, Formula};
use dpl_core::{AgentProgram, Attitude, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_COHERENCE: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Accept incoherent programs and operation results.
    pub permissive: bool,
    /// Recompute intentions with the full coherence check after each operation.
    pub strict_intentions: bool,
    pub world_cap: usize,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            permissive: false,
            strict_intentions: false,
            world_cap: DEFAULT_WORLD_CAP,
        }
    }
}

impl Flags {
    pub fn dynamics(&self) -> DynamicsConfig {
        DynamicsConfig {
            filter: if self.strict_intentions {
                IntentionFilter::Strict
            } else {
                IntentionFilter::Verbatim
            },
            permissive: self.permissive,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Engine(e) => match e.root() {
                Error::Incoherent(_) | Error::InconsistentAnnouncement => EXIT_COHERENCE,
                Error::VocabularyTooLarge { .. } => EXIT_USAGE,
                _ => EXIT_PARSE,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => f.write_str(m),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

/// Output of one command. `counterexample` is set when an oracle run failed.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Reply {
    pub text: String,
    pub counterexample: bool,
}

impl Reply {
    fn text(text: impl Into<String>) -> Self {
        Reply {
            text: text.into(),
            counterexample: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub op: Operation,
    pub argument: String,
}

#[derive(Clone, Debug)]
pub struct Session {
    initial: AgentProgram,
    current: AgentProgram,
    history: Vec<Step>,
    pub flags: Flags,
}

pub const HELP: &str = "\
commands:
  query K|B|G|I <formula>     answer an attitude query (DNF formula)
  apply <op> <formula>        op: announce reviseB reviseD contractB contractD
  coherence                   report the seven coherence conditions
  show                        print the current program in agent-file syntax
  model dump                  print the induced model
  model export <path>         write the induced model as Graphviz DOT
  oracle verify [--ops N] [--symbols K] [--seed S] [--only OP]
  history                     list applied operations
  reset                       return to the loaded program
  help";

impl Session {
    /// Starts a session on `program`. Incoherent programs are rejected
    /// unless the flags are permissive.
    pub fn new(program: AgentProgram, flags: Flags) -> Result<Self, CliError> {
        let report = program.coherence()?;
        if !report.is_coherent() && !flags.permissive {
            return Err(Error::Incoherent(Box::new(report)).into());
        }
        Ok(Session {
            initial: program.clone(),
            current: program,
            history: Vec::new(),
            flags,
        })
    }

    pub fn load(path: &Path, flags: Flags) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_source(&text, flags)
    }

    pub fn from_source(text: &str, flags: Flags) -> Result<Self, CliError> {
        Session::new(parse_agent(text)?, flags)
    }

    pub fn program(&self) -> &AgentProgram {
        &self.current
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    /// Re-applies the history to the loaded program.
    pub fn replay(&self) -> Result<AgentProgram, CliError> {
        let cfg = self.flags.dynamics();
        let mut ag = self.initial.clone();
        for step in &self.history {
            let phi = parse_formula(&step.argument, ag.vocab(), ag.library())?;
            ag = dynamics::apply(&ag, step.op, &phi, &cfg)?;
        }
        Ok(ag)
    }

    fn formula(&self, text: &str) -> Result<Formula, CliError> {
        Ok(parse_formula(text, self.current.vocab(), self.current.library())?)
    }

    /// Runs one command line. On error the session is left unchanged.
    pub fn run_command(&mut self, line: &str) -> Result<Reply, CliError> {
        let words = shell_words::split(line).map_err(|e| CliError::Usage(e.to_string()))?;
        let Some((head, rest)) = words.split_first() else {
            return Ok(Reply::default());
        };
        match (head.as_str(), rest) {
            ("query", [attitude, formula @ ..]) if !formula.is_empty() => {
                let attitude: Attitude = attitude.parse().map_err(CliError::Usage)?;
                let phi = to_dnf(&self.formula(&formula.join(" "))?)?;
                Ok(Reply::text(self.current.query(attitude, &phi)?.to_string()))
            }
            ("apply", [op, formula @ ..]) if !formula.is_empty() => {
                let op: Operation = op.parse().map_err(CliError::Usage)?;
                let argument = formula.join(" ");
                let phi = self.formula(&argument)?;
                let next = dynamics::apply(&self.current, op, &phi, &self.flags.dynamics())?;
                self.current = next;
                self.history.push(Step { op, argument });
                let mut text = self.summary()?;
                let report = self.current.coherence()?;
                if !report.is_coherent() {
                    let failed: Vec<&str> =
                        report.failures().into_iter().map(|c| c.describe()).collect();
                    let _ = write!(text, "\nwarning: result is not coherent ({})", failed.join(", "));
                }
                Ok(Reply::text(text))
            }
            ("coherence", []) => {
                let report = self.current.coherence()?;
                let verdict = if report.is_coherent() { "coherent" } else { "incoherent" };
                Ok(Reply::text(format!("{report}{verdict}")))
            }
            ("show", []) => Ok(Reply::text(write_agent(&self.current).trim_end())),
            ("model", [sub, args @ ..]) => self.model(sub, args),
            ("oracle", [sub, args @ ..]) if sub == "verify" => self.oracle(args),
            ("history", []) => {
                let mut out = String::new();
                for (i, s) in self.history.iter().enumerate() {
                    let _ = writeln!(out, "{}. {} {}", i + 1, s.op, s.argument);
                }
                if self.history.is_empty() {
                    out.push_str("(no operations)");
                }
                Ok(Reply::text(out.trim_end()))
            }
            ("reset", []) => {
                self.current = self.initial.clone();
                self.history.clear();
                Ok(Reply::text("reset"))
            }
            ("help", _) => Ok(Reply::text(HELP)),
            (cmd, _) => Err(CliError::Usage(format!("bad command `{cmd}`; try `help`"))),
        }
    }

    fn summary(&self) -> Result<String, CliError> {
        let vocab = self.current.vocab();
        let lib = self.current.library();
        let intentions: Vec<&str> = self.current.intentions().iter().map(|&a| lib.name(a)).collect();
        Ok(format!(
            "B^Max {}\nD^Max {}\nI {{{}}}",
            self.current.belief_max()?.display(vocab),
            self.current.desire_max()?.display(vocab),
            intentions.join(", ")
        ))
    }

    fn model(&self, sub: &str, args: &[String]) -> Result<Reply, CliError> {
        let m = induced_model(&self.current, self.flags.world_cap)?;
        match (sub, args) {
            ("dump", []) => Ok(Reply::text(export::dump(&m).trim_end())),
            ("export", [path]) => {
                fs::write(path, export::to_dot(&m))
                    .map_err(|e| CliError::Io(format!("{path}: {e}")))?;
                Ok(Reply::text(format!("wrote {path}")))
            }
            _ => Err(CliError::Usage("model dump | model export <path>".into())),
        }
    }

    fn oracle(&self, args: &[String]) -> Result<Reply, CliError> {
        let opts = OracleOptions::parse(args)?;
        let report = opts.run(&self.flags.dynamics())?;
        Ok(Reply {
            text: report.to_string(),
            counterexample: !report.passed(),
        })
    }
}

/// Arguments of `oracle verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub ops: usize,
    pub symbols: usize,
    pub seed: u64,
    pub only: Option<Operation>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            ops: 200,
            symbols: 3,
            seed: 7,
            only: None,
        }
    }
}

impl OracleOptions {
    pub fn parse(args: &[String]) -> Result<Self, CliError> {
        fn value<T: std::str::FromStr>(flag: &str, v: Option<&String>) -> Result<T, CliError> {
            v.and_then(|v| v.parse().ok())
                .ok_or_else(|| CliError::Usage(format!("{flag} needs a valid value")))
        }
        let mut opts = OracleOptions::default();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            match flag.as_str() {
                "--ops" => opts.ops = value(flag, it.next())?,
                "--symbols" => opts.symbols = value(flag, it.next())?,
                "--seed" => opts.seed = value(flag, it.next())?,
                "--only" => {
                    let op = it.next().ok_or_else(|| CliError::Usage("--only needs an operation".into()))?;
                    opts.only = Some(op.parse().map_err(CliError::Usage)?);
                }
                other => return Err(CliError::Usage(format!("unknown oracle option `{other}`"))),
            }
        }
        if opts.symbols == 0 || opts.symbols > 8 {
            return Err(CliError::Usage("--symbols must be between 1 and 8".into()));
        }
        Ok(opts)
    }

    pub fn run(&self, cfg: &DynamicsConfig) -> Result<oracle::VerifyReport, CliError> {
        let ops: Vec<Operation> = match self.only {
            Some(op) => vec![op],
            None => Operation::ALL.to_vec(),
        };
        Ok(oracle::verify(&ops, self.ops, self.symbols, self.seed, cfg)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AGENT: &str = "vocab: p q r\nplan a { pre: p; post: q }\n\
        knowledge { p }\nbelief 0 { p }\nbelief 1 { ~q }\n\
        desire 0 { p }\ndesire 1 { q }\nintend a\n";

    fn session() -> Session {
        Session::from_source(AGENT, Flags::default()).unwrap()
    }

    #[test]
    fn query_answers_true_or_false() {
        let mut s = session();
        assert_eq!(s.run_command("query B \"~q\"").unwrap().text, "true");
        assert_eq!(s.run_command("query B q").unwrap().text, "false");
        assert_eq!(s.run_command("query I q").unwrap().text, "true");
    }

    #[test]
    fn revision_then_query() {
        let mut s = session();
        s.run_command("apply reviseB r").unwrap();
        assert_eq!(s.run_command("query B r").unwrap().text, "true");
        assert_eq!(s.history().len(), 1);
        assert_eq!(&s.replay().unwrap(), s.program());
    }

    #[test]
    fn failed_command_keeps_state() {
        let mut s = session();
        let before = s.program().clone();
        let err = s.run_command("apply announce ~p").unwrap_err();
        assert_eq!(err.exit_code(), EXIT_COHERENCE);
        assert_eq!(s.program(), &before);
        assert!(s.history().is_empty());
        let err = s.run_command("query B (p").unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PARSE);
        let err = s.run_command("frobnicate").unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn reset_restores_loaded_program() {
        let mut s = session();
        s.run_command("apply contractB ~q").unwrap();
        assert_ne!(s.program(), &s.initial);
        s.run_command("reset").unwrap();
        assert_eq!(s.program(), &s.initial);
        assert_eq!(s.run_command("history").unwrap().text, "(no operations)");
    }

    #[test]
    fn incoherent_file_needs_permissive() {
        let text = "vocab: p\nknowledge { p }\n";
        let err = Session::from_source(text, Flags::default()).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_COHERENCE);
        let flags = Flags {
            permissive: true,
            ..Flags::default()
        };
        assert!(Session::from_source(text, flags).is_ok());
    }

    #[test]
    fn oracle_options() {
        let args: Vec<String> = ["--ops", "5", "--seed", "3", "--only", "reviseB"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let o = OracleOptions::parse(&args).unwrap();
        assert_eq!((o.ops, o.seed, o.symbols), (5, 3, 3));
        assert_eq!(o.only, Some(Operation::ReviseBelief));
        assert!(OracleOptions::parse(&["--ops".to_string()]).is_err());
    }
}
