use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use lambdaz::reducer::{EvalOptions, Strategy, DEFAULT_WINDOW};
use lambdaz::theory::Theory;
use lambdaz_cli::commands::{self, Demo, Extraction, RelKind};
use lambdaz_cli::parser::TheorySel;
use lambdaz_cli::report::{Format, Report};
use lambdaz_cli::script::{load_script, load_theory};

/// Check, normalize and extract witnesses from λZ proof scripts.
#[derive(Parser)]
#[command(name = "lambdaz", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Reduction budget for evaluation and extraction.
    #[arg(long, env = "LAMBDAZ_FUEL", default_value_t = 1_000_000, global = true)]
    fuel: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every `check` and `synth` judgment of a script.
    Check { script: PathBuf },
    /// Evaluate a proof definition.
    Eval {
        script: PathBuf,
        name: String,
        /// Leftmost-outermost reduction under binders instead of lazy evaluation.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        detect_cycles: bool,
        /// Print every intermediate term.
        #[arg(long)]
        trace: bool,
        /// Number of recent states kept for cycle detection.
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Which disjunct a closed proof of a disjunction proves.
    ExtractDisjunct { script: PathBuf, name: String },
    /// The witness of a closed proof of an existential.
    ExtractWitness { script: PathBuf, name: String },
    /// The natural number named by a closed proof of `t in omega`.
    ExtractNumeral { script: PathBuf, name: String },
    /// Generate and check the proof term of an axiom (`ind` for induction).
    Axiom {
        ctor: String,
        /// izf-r-minus, nonwf, or a theory file.
        #[arg(long, default_value = "izf-r-minus")]
        theory: String,
        /// Carried formula as `x y : phi`, or `a f… : phi` for induction.
        #[arg(long)]
        param: Option<String>,
    },
    /// Relativize a formula or set term to the class given by a formula.
    Relativize {
        #[arg(value_enum)]
        kind: RelKind,
        script: PathBuf,
        name: String,
        #[arg(long)]
        pred: String,
        /// The class variable of the predicate, if it has several free variables.
        #[arg(long)]
        hole: Option<String>,
    },
    /// The term-free defining formula of a set term.
    DefineTerm { script: PathBuf, name: String },
    /// Run one of the non-normalizing fixtures end to end.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
}

fn theory_from(sel: &str) -> anyhow::Result<Theory> {
    let cwd = std::env::current_dir().ok();
    Ok(load_theory(&TheorySel::from_word(sel), cwd.as_deref())?)
}

fn execute(cli: &Cli) -> anyhow::Result<Report> {
    let load = |p: &PathBuf| load_script(p).with_context(|| format!("cannot load {}", p.display()));
    Ok(match &cli.command {
        Command::Check { script } => commands::check_all(&load(script)?),
        Command::Eval { script, name, full, detect_cycles, trace, window } => {
            let opts = EvalOptions {
                fuel: cli.fuel,
                detect_cycles: *detect_cycles,
                strategy: if *full { Strategy::Full } else { Strategy::Lazy },
                window: *window,
            };
            commands::eval(&load(script)?, name, &opts, *trace)
        }
        Command::ExtractDisjunct { script, name } => {
            commands::extract(&load(script)?, name, Extraction::Disjunct, cli.fuel)
        }
        Command::ExtractWitness { script, name } => {
            commands::extract(&load(script)?, name, Extraction::Witness, cli.fuel)
        }
        Command::ExtractNumeral { script, name } => {
            commands::extract(&load(script)?, name, Extraction::Numeral, cli.fuel)
        }
        Command::Axiom { ctor, theory, param } => {
            let theory = theory_from(theory)?;
            let param = param
                .as_deref()
                .map(|p| lambdaz_cli::parse_param(p, &theory))
                .transpose()
                .context("cannot parse --param")?;
            commands::axiom(&theory, ctor, param)
        }
        Command::Relativize { kind, script, name, pred, hole } => {
            commands::relativize(&load(script)?, *kind, name, pred, hole.as_deref())
        }
        Command::DefineTerm { script, name } => commands::define(&load(script)?, name),
        Command::Demo { which } => commands::demo(*which),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(r) => {
                    let why = r.get("error").or_else(|| r.get("result")).unwrap_or("assertion failed");
                    eprintln!("error: {} {}: {why}", r.kind, r.subject);
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
