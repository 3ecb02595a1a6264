//! The text format and the `locus` command line.
//!
//! [`execute`] takes an argument vector and returns what the binary prints
//! and its exit code: 0 on success, 1 on a domain error or failed check,
//! 2 on a usage error.

pub mod commands;
pub mod dsl;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{run, Report};
pub use dsl::{parse, print, Block, BlockBody, Document, DslError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Dsl(#[from] DslError),
    #[error("{0}")]
    Domain(#[from] crate::Error),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Dsl(_) | CliError::Domain(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SierpView {
    Neg,
    Zeroexp,
    Spec,
    Coreflect,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Points of a frame, formal topology, GRD system or propositional theory.
    Points { file: PathBuf, block: Option<String> },
    /// The Lindenbaum algebra of a presentation.
    Lindenbaum { file: PathBuf, block: Option<String> },
    /// The spectrum of a frame.
    Spec { file: PathBuf, block: Option<String> },
    /// Clopens of a Stone space (Boolean frame) or discrete space (set).
    Clop { file: PathBuf, block: Option<String> },
    /// The exponential BASE^EXPONENT, one side a set and the other a Boolean frame.
    Exp { file: PathBuf, exponent: String, base: String },
    /// The free Boolean algebra on a set.
    Freeba { file: PathBuf, block: Option<String> },
    /// 2^(2^X) for a set X.
    Doubleexp { file: PathBuf, block: Option<String> },
    /// 0^X for a set or a Boolean frame.
    Zeroexp { file: PathBuf, block: Option<String> },
    /// Finite models of a geometric theory.
    Models { file: PathBuf, block: Option<String> },
    /// Flat functors on a category, or flat continuous ones on a site.
    Flat { file: PathBuf, block: Option<String> },
    /// Models of an extension over a model of its base.
    Fibre { file: PathBuf, extension: String, model: String },
    /// Axioms for a set, a function, or a construction over a geometric theory.
    Emit {
        file: PathBuf,
        block: String,
        /// `terminal S`, `pullback S f1 f2 p1 p2`, `coproduct S A.. i..`,
        /// `nno S zero succ`, `list S elem nil cons`, `coeq S p1 p2 q`.
        construction: Vec<String>,
    },
    /// Validates every block and the site condition of every site.
    Check { file: PathBuf },
    /// The Sierpinski topos at a subterminal, given as two bits.
    Sierp {
        #[arg(value_enum)]
        view: SierpView,
        #[arg(default_value = "01")]
        subterminal: String,
    },
}

impl Command {
    fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Points { file, .. }
            | Command::Lindenbaum { file, .. }
            | Command::Spec { file, .. }
            | Command::Clop { file, .. }
            | Command::Exp { file, .. }
            | Command::Freeba { file, .. }
            | Command::Doubleexp { file, .. }
            | Command::Zeroexp { file, .. }
            | Command::Models { file, .. }
            | Command::Flat { file, .. }
            | Command::Fibre { file, .. }
            | Command::Emit { file, .. }
            | Command::Check { file } => Some(file),
            Command::Sierp { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, clap::Args)]
pub struct Flags {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest carrier tried per sort in model search (default 3).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Keep one model per isomorphism class.
    #[arg(long, global = true)]
    pub dedupe_iso: bool,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Bound for NNO and list constructions.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "locus", version, about = "Finite point-free topology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments, reads the input file, runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            };
        }
    };
    let result = load(&cli.command).and_then(|doc| run(&cli.command, &doc, &cli.flags));
    match result {
        Ok(report) => Outcome {
            stdout: report.render(cli.flags.json),
            stderr: String::new(),
            code: if report.ok { 0 } else { 1 },
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn load(command: &Command) -> Result<Document, CliError> {
    let Some(path) = command.file() else { return Ok(Document::default()) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    Ok(parse(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(command: Command, text: &str) -> Report {
        run(&command, &parse(text).unwrap(), &Flags::default()).unwrap()
    }

    #[test]
    fn two_chain_has_one_point() {
        let r = run_text(Command::Points { file: "-".into(), block: None }, "frame two { elems: 0 1; leq: 0<=1 }");
        assert_eq!(r.fields["points"]["count"], 1);
    }

    #[test]
    fn double_exponential_of_a_pair() {
        let r = run_text(Command::Doubleexp { file: "-".into(), block: None }, "set x { elems: a b }");
        assert_eq!(r.fields["size"], 16);
        assert!(r.ok);
    }

    #[test]
    fn check_reports_the_unstable_cover() {
        let text = "category v { objects: a b c; morphism ac: a -> c; morphism bc: b -> c }\n\
                    site s { category: v; cover a: id_a; cover b: id_b; cover c: ac }";
        let r = run_text(Command::Check { file: "-".into() }, text);
        assert!(!r.ok);
        let v = &r.fields["blocks"][1]["violations"];
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["cover"], 2);
        assert_eq!(v[0]["morphism"], "bc");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(execute(["locus", "frobnicate"]).code, 2);
        assert_eq!(execute(["locus", "points", "/nonexistent/file.locus"]).code, 2);
        assert_eq!(execute(["locus", "sierp", "neg", "10"]).code, 1);
        let ok = execute(["locus", "sierp", "neg", "01", "--json"]);
        assert_eq!(ok.code, 0);
        assert!(ok.stdout.contains("\"format\": 1"));
    }

    #[test]
    fn wrong_block_kind_is_a_usage_error() {
        let doc = parse("set x { elems: a }").unwrap();
        let err =
            run(&Command::Spec { file: "-".into(), block: Some("x".into()) }, &doc, &Flags::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
