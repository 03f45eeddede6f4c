//! `dblcat`: checks, constructions, Whitehead inverses and lifting on
//! DBLX files and the builtin corpus.
//!
//! Exit status is 0 when the verdict is pass, 1 when it is fail, and 2 on
//! parse, validation, precondition or budget errors.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use dblcat::search::DEFAULT_BUDGET;
use dblcat::Budget;

use commands::{CheckKind, ConstructOp, Outcome};
use error::{CliError, ErrorInfo};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "dblcat", version, about = "Finite double categories: model-structure checks and constructions")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on search nodes for enumerations and lifting.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for randomized drivers (`corpus sample`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a functor or double category.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// DBLX file or builtin name.
        input: String,
    },
    /// Build a new structure from one or two inputs.
    Construct {
        #[arg(value_enum)]
        op: ConstructOp,
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Write the result here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where `strictify` writes its unit functor.
        #[arg(long)]
        unit: Option<PathBuf>,
    },
    /// Pseudo-inverse G with equivalences η, ε for a double biequivalence.
    Whitehead {
        input: String,
        /// Directory for the G, η and ε files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Solve a lifting problem `l∘i = top`, `p∘l = bottom`; `id` names an
    /// identity functor.
    Lift {
        i: String,
        p: String,
        top: String,
        bottom: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The builtin corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Export {
        name: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A random functor between small corpus-derived objects.
    Sample {
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    command: String,
    inputs: Vec<String>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Value::is_null")]
    details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    document: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
    budget: BudgetUse,
}

#[derive(Serialize)]
struct BudgetUse {
    limit: u64,
    used: u64,
}

fn command_label(c: &Command) -> String {
    use clap::ValueEnum;
    let name = |v: &dyn Fn() -> Option<clap::builder::PossibleValue>| v().map(|p| p.get_name().to_string()).unwrap_or_default();
    match c {
        Command::Check { kind, .. } => format!("check {}", name(&|| kind.to_possible_value())),
        Command::Construct { op, .. } => format!("construct {}", name(&|| op.to_possible_value())),
        Command::Whitehead { .. } => "whitehead".into(),
        Command::Lift { .. } => "lift".into(),
        Command::Corpus { action: CorpusAction::List } => "corpus list".into(),
        Command::Corpus { action: CorpusAction::Export { .. } } => "corpus export".into(),
        Command::Corpus { action: CorpusAction::Sample { .. } } => "corpus sample".into(),
    }
}

fn run(cli: &Cli, budget: &Budget) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { kind, input } => commands::check(*kind, input),
        Command::Construct { op, inputs, out, unit } => {
            commands::construct(*op, inputs, out.as_deref(), unit.as_deref(), budget)
        }
        Command::Whitehead { input, out_dir } => commands::whitehead(input, out_dir),
        Command::Lift { i, p, top, bottom, out } => commands::lift(i, p, top, bottom, out.as_deref(), budget),
        Command::Corpus { action: CorpusAction::List } => Ok(commands::corpus_list()),
        Command::Corpus { action: CorpusAction::Export { name, out } } => commands::corpus_export(name, out.as_deref()),
        Command::Corpus { action: CorpusAction::Sample { out } } => commands::corpus_sample(cli.seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::new(cli.budget);
    let command = command_label(&cli.command);
    let usage = |budget: &Budget| BudgetUse { limit: budget.limit(), used: budget.used() };
    match run(&cli, &budget) {
        Ok(out) => {
            let code = if out.passed { 0 } else { 1 };
            if cli.json {
                let report = Report {
                    schema: SCHEMA,
                    command,
                    inputs: out.inputs,
                    verdict: if out.passed { Verdict::Pass } else { Verdict::Fail },
                    details: out.details,
                    document: out.document,
                    outputs: out.outputs,
                    error: None,
                    budget: usage(&budget),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", out.text);
                if let Some(doc) = out.document {
                    print!("{doc}");
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            let info = e.info();
            match &info.detail {
                Some(d) if !d.is_empty() => eprintln!("{e} ({d})"),
                _ => eprintln!("{e}"),
            }
            if matches!(&e, CliError::Core(dblcat::Error::BudgetExceeded { .. })) {
                eprintln!("search nodes used: {} of {}", budget.used(), budget.limit());
            }
            if cli.json {
                let report = Report {
                    schema: SCHEMA,
                    command,
                    inputs: Vec::new(),
                    verdict: Verdict::Error,
                    details: Value::Null,
                    document: None,
                    outputs: Vec::new(),
                    error: Some(info),
                    budget: usage(&budget),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::from(2)
        }
    }
}
