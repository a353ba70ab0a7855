//! `addcat`: batch computations on additive sets described in a JSON document.
//!
//! Exit status: 0 success, 1 the property under test failed, 2 bad input,
//! 3 a search exceeded the budget.

mod commands;
mod document;

use std::path::PathBuf;
use std::process::ExitCode;

use addcat::freiman::DEFAULT_BUDGET;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{run, validate, CliError, Request, Task};
use document::Document;

#[derive(Parser)]
#[command(name = "addcat", version, about = "Freiman homomorphisms, doubling and categorical constructions on additive sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit canonical JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit a human-readable summary instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Largest number of candidate maps any search may consider.
    #[arg(long, global = true, env = "ADDCAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Freiman order k, overriding every order in the document.
    #[arg(long, global = true)]
    order: Option<usize>,
}

#[derive(Args)]
struct Selection {
    /// Problem document (JSON).
    document: PathBuf,
    /// A named set from the document; repeat for several.
    #[arg(long = "set", value_name = "NAME")]
    sets: Vec<String>,
    /// A named map from the document; repeat for several.
    #[arg(long = "map", value_name = "NAME")]
    maps: Vec<String>,
}

#[derive(Args)]
struct ConstructionArgs {
    #[command(flatten)]
    selection: Selection,
    /// Competitor apex for the universal-property check; defaults to every
    /// eligible set in the document.
    #[arg(long, value_name = "NAME")]
    against: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Doubling constant σ[A] = |A+A|/|A|.
    Doubling(Selection),
    /// A+B, or A+A with a single set.
    Sumset(Selection),
    /// Whether a map is a Freiman k-homomorphism, with a witness if not.
    CheckHom(Selection),
    /// Whether a map is a Freiman k-isomorphism.
    IsoCheck(Selection),
    /// All Freiman k-homomorphisms between two sets.
    EnumerateHoms {
        #[command(flatten)]
        selection: Selection,
        /// Only maps sending 0 to 0.
        #[arg(long)]
        preserve_zero: bool,
    },
    Product(ConstructionArgs),
    Coproduct(ConstructionArgs),
    Pullback(ConstructionArgs),
    Pushout(ConstructionArgs),
    Equalizer(ConstructionArgs),
    Coequalizer(ConstructionArgs),
    /// The universal ambient group of a set.
    Universal(Selection),
    /// Doubling bounds for a constructed object.
    StructureReport {
        #[arg(value_enum)]
        construction: Task,
        #[command(flatten)]
        selection: Selection,
    },
    /// Structural diagnostics for a document, optionally for one command.
    Validate {
        #[command(flatten)]
        selection: Selection,
        #[arg(long = "for", value_enum, value_name = "COMMAND")]
        task: Option<Task>,
        #[arg(long, value_name = "NAME")]
        against: Vec<String>,
    },
}

fn request(task: Task, s: &Selection) -> Request {
    let mut r = Request::new(task);
    r.sets = s.sets.clone();
    r.maps = s.maps.clone();
    r
}

impl Command {
    /// The document path and what to do with it; `None` for `validate`
    /// without `--for`.
    fn parts(&self) -> (&Selection, Option<Request>) {
        fn construction(task: Task, a: &ConstructionArgs) -> (&Selection, Option<Request>) {
            let mut r = request(task, &a.selection);
            r.against = a.against.clone();
            (&a.selection, Some(r))
        }
        match self {
            Command::Doubling(s) => (s, Some(request(Task::Doubling, s))),
            Command::Sumset(s) => (s, Some(request(Task::Sumset, s))),
            Command::CheckHom(s) => (s, Some(request(Task::CheckHom, s))),
            Command::IsoCheck(s) => (s, Some(request(Task::IsoCheck, s))),
            Command::EnumerateHoms { selection, preserve_zero } => {
                let mut r = request(Task::EnumerateHoms, selection);
                r.preserve_zero = *preserve_zero;
                (selection, Some(r))
            }
            Command::Product(a) => construction(Task::Product, a),
            Command::Coproduct(a) => construction(Task::Coproduct, a),
            Command::Pullback(a) => construction(Task::Pullback, a),
            Command::Pushout(a) => construction(Task::Pushout, a),
            Command::Equalizer(a) => construction(Task::Equalizer, a),
            Command::Coequalizer(a) => construction(Task::Coequalizer, a),
            Command::Universal(s) => (s, Some(request(Task::Universal, s))),
            Command::StructureReport { construction, selection } => {
                let mut r = request(*construction, selection);
                r.audit = true;
                (selection, Some(r))
            }
            Command::Validate { selection, task, against } => {
                let r = task.map(|t| {
                    let mut r = request(t, selection);
                    r.against = against.clone();
                    r
                });
                (selection, r)
            }
        }
    }
}

fn emit(value: &Value, text: &str, as_text: bool) {
    if as_text {
        println!("{text}");
    } else {
        println!("{value}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (selection, req) = cli.command.parts();
    let root: Value = match std::fs::read_to_string(&selection.document)
        .map_err(|e| e.to_string())
        .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
    {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}: {e}", selection.document.display());
            return ExitCode::from(2);
        }
    };
    let (doc, mut diagnostics) = Document::load(&root, cli.order);
    if let Some(r) = &req {
        diagnostics.extend(validate(&doc, r));
    }

    if let Command::Validate { .. } = cli.command {
        let text = if diagnostics.is_empty() {
            "no problems found".to_string()
        } else {
            diagnostics.join("\n")
        };
        emit(&json!({ "command": "validate", "diagnostics": diagnostics }), &text, cli.text);
        return ExitCode::from(if diagnostics.is_empty() { 0 } else { 2 });
    }

    if !diagnostics.is_empty() {
        for d in &diagnostics {
            eprintln!("error: {d}");
        }
        return ExitCode::from(2);
    }
    let req = req.expect("every command but validate builds a request");
    match run(&doc, &req, cli.budget) {
        Ok(out) => {
            emit(&out.json, &out.text, cli.text);
            ExitCode::from(if out.violated { 1 } else { 0 })
        }
        Err(e) => {
            if let CliError::Budget(_) = e {
                eprintln!("error: {e} (raise --budget or ADDCAT_BUDGET)");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
