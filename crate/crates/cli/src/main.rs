use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cppl::checker::{check_trace, CheckReport};
use cppl::engine::{entails, refute, EngineConfig, Entailment, Refutation};
use cppl::ingest::{read_dimacs, read_instance, write_instance};
use cppl::normalize::{negate_standard, normalize_formula, standardize};
use cppl::parser::{parse_formula, parse_sentence};
use cppl::printer::{print_linear_form, print_standard};
use cppl::semantics::{evaluate, Oracle};
use cppl::sequent::{check_sequent_proof, parse_sequent_proof};
use cppl::trace::{parse_trace, write_trace};
use cppl::{Error, Interpretation, Sentence, Verdict, Vocabulary};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_INPUT: u8 = 1;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_ORACLE_MISMATCH: u8 = 99;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Constrained pseudo-propositional logic toolkit.
#[derive(Parser, Debug)]
#[command(name = "cppl", version)]
struct Cli {
    /// Output style; `structured` prints one JSON record per result.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct EngineArgs {
    /// Derivation step budget.
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// Disable subsumption filtering.
    #[arg(long)]
    no_subsumption: bool,
    /// Shuffle processing order with this seed (0 = canonical order).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the proof trace here when a refutation is found.
    #[arg(long)]
    trace: Option<PathBuf>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            max_steps: self.max_steps.max(1),
            enable_subsumption: !self.no_subsumption,
            deterministic_seed: self.seed,
            ..EngineConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the meaning pair of a formula under an interpretation.
    Eval {
        formula: String,
        /// Comma-separated true variables.
        #[arg(long, default_value = "")]
        model: String,
    },
    /// Print the normal form of a formula.
    Normalize { formula: String },
    /// Print the standard sentences equivalent to a sentence.
    Standardize { sentence: String },
    /// Print the standard form of the negation of a sentence.
    Negate { sentence: String },
    /// Decide satisfiability of an instance file.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Cross-check the verdict against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether an instance entails a goal sentence.
    Entail {
        instance: PathBuf,
        goal: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Verify a proof trace against an instance.
    CheckTrace {
        instance: PathBuf,
        trace: PathBuf,
        /// The trace refutes the instance plus the negation of this goal.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Verify a sequent proof file.
    CheckProof { proof: PathBuf },
    /// Convert DIMACS CNF to the native instance format.
    FromDimacs { cnf: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{context}: {err}"),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(path.display(), e))
}

fn load_instance(path: &Path, vocab: &mut Vocabulary) -> Result<Vec<Sentence>, Failure> {
    read_instance(&read(path)?, vocab).map_err(|e| Failure::input(path.display(), e))
}

fn arg_error(what: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::input(what, e)
}

fn emit(format: Format, text: &str, record: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Structured => println!("{record}"),
    }
}

fn interpretation(vocab: &mut Vocabulary, model: &str) -> Result<Interpretation, Failure> {
    let mut i = Interpretation::new();
    for name in model.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        i.insert(vocab.intern(name).map_err(arg_error("--model"))?);
    }
    Ok(i)
}

fn verdict_reason(v: &Verdict) -> Option<String> {
    match v {
        Verdict::Saturated => Some("saturated".into()),
        Verdict::Unknown(r) => Some(r.clone()),
        _ => None,
    }
}

fn write_trace_file(path: Option<&PathBuf>, vocab: &Vocabulary, r: &Refutation) -> Result<Option<String>, Failure> {
    match (path, &r.trace) {
        (Some(path), Some(trace)) => {
            fs::write(path, write_trace(vocab, trace)).map_err(|e| Failure::input(path.display(), e))?;
            Ok(Some(path.display().to_string()))
        }
        _ => Ok(None),
    }
}

fn solve(format: Format, path: &Path, engine: &EngineArgs, oracle: bool) -> Outcome {
    let mut vocab = Vocabulary::new();
    let sentences = load_instance(path, &mut vocab)?;
    let r = refute(&sentences, &engine.config()).map_err(|e| Failure::input(path.display(), e))?;
    let trace_path = write_trace_file(engine.trace.as_ref(), &vocab, &r)?;
    let mut code = match r.verdict {
        Verdict::Unsat => EXIT_UNSAT,
        Verdict::Sat(_) | Verdict::Saturated => EXIT_SAT,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    };
    let mut text = r.verdict.label().to_string();
    if let Some(reason) = verdict_reason(&r.verdict) {
        text = format!("{text} ({reason})");
    }
    let mut record = json!({
        "command": "solve",
        "verdict": r.verdict.label(),
        "reason": verdict_reason(&r.verdict),
        "steps": r.stats.steps,
        "resolvents": r.stats.resolvents,
        "trace": trace_path,
    });
    if oracle {
        let o = Oracle::default()
            .sat(&sentences)
            .map_err(|e| Failure::input(path.display(), e))?;
        let agrees = o.is_unknown() || r.verdict.is_unknown() || o.label() == r.verdict.label();
        text.push_str(&format!("\noracle: {}", o.label()));
        if let Verdict::Sat(w) = &o {
            let names: Vec<String> = w.true_vars().map(|v| vocab.name(v).into_owned()).collect();
            text.push_str(&format!("\nwitness: {{{}}}", names.join(", ")));
            record["witness"] = json!(names);
        }
        record["oracle"] = json!(o.label());
        record["oracle_agrees"] = json!(agrees);
        if !agrees {
            text.push_str("\nerror: engine and oracle disagree");
            code = EXIT_ORACLE_MISMATCH;
        }
    }
    emit(format, &text, record);
    Ok(code)
}

fn entail(format: Format, path: &Path, goal: &str, engine: &EngineArgs) -> Outcome {
    let mut vocab = Vocabulary::new();
    let sentences = load_instance(path, &mut vocab)?;
    let goal = parse_sentence(goal, &mut vocab).map_err(|e| Failure::input("goal", e))?;
    let r = entails(&sentences, &goal, &engine.config()).map_err(arg_error("goal"))?;
    let trace_path = write_trace_file(engine.trace.as_ref(), &vocab, &r)?;
    let (label, code) = match r.entailment() {
        Entailment::Entailed => ("ENTAILED".to_string(), EXIT_UNSAT),
        Entailment::NotEntailed => ("NOT ENTAILED".to_string(), EXIT_SAT),
        Entailment::Unknown(reason) => (format!("UNKNOWN ({reason})"), EXIT_UNKNOWN),
    };
    let record = json!({
        "command": "entail",
        "verdict": label.split(" (").next(),
        "steps": r.stats.steps,
        "trace": trace_path,
    });
    emit(format, &label, record);
    Ok(code)
}

fn report(format: Format, command: &str, r: &CheckReport) -> Outcome {
    let text = match &r.first_failure {
        None if r.hypotheses.is_empty() => "ACCEPTED".to_string(),
        None => format!(
            "ACCEPTED (assumptions on lines {})",
            r.hypotheses
                .iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Some(f) => format!("REJECTED: {f}"),
    };
    let record = json!({
        "command": command,
        "ok": r.ok,
        "failure_at": r.first_failure.as_ref().and_then(|f| f.at),
        "reason": r.first_failure.as_ref().map(|f| f.reason.clone()),
        "hypotheses": r.hypotheses,
    });
    emit(format, &text, record);
    Ok(if r.ok { 0 } else { EXIT_INPUT })
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let mut vocab = Vocabulary::new();
    match cli.command {
        Command::Eval { formula, model } => {
            let f = parse_formula(&formula, &mut vocab).map_err(|e| Failure::input("formula", e))?;
            let i = interpretation(&mut vocab, &model)?;
            let z = evaluate(&i, &f).map_err(arg_error("formula"))?;
            let text = format!("({}, {})", z.first, z.second);
            emit(
                format,
                &text,
                json!({"command": "eval", "first": z.first, "second": z.second}),
            );
            Ok(0)
        }
        Command::Normalize { formula } => {
            let f = parse_formula(&formula, &mut vocab).map_err(|e| Failure::input("formula", e))?;
            let lf = normalize_formula(&f).map_err(arg_error("formula"))?;
            let text = print_linear_form(&vocab, &lf);
            emit(
                format,
                &text,
                json!({"command": "normalize", "normal_form": text, "coefficient_sum": lf.coefficient_sum()}),
            );
            Ok(0)
        }
        Command::Standardize { sentence } => {
            let s = parse_sentence(&sentence, &mut vocab).map_err(|e| Failure::input("sentence", e))?;
            let parts = standardize(&s).map_err(arg_error("sentence"))?;
            let printed: Vec<String> = parts.iter().map(|p| print_standard(&vocab, p)).collect();
            emit(
                format,
                &printed.join("\n"),
                json!({"command": "standardize", "sentences": printed}),
            );
            Ok(0)
        }
        Command::Negate { sentence } => {
            let s = parse_sentence(&sentence, &mut vocab).map_err(|e| Failure::input("sentence", e))?;
            let parts = standardize(&s).map_err(arg_error("sentence"))?;
            let [single] = parts.as_slice() else {
                return Err(Failure::input("sentence", Error::NegatedEquality));
            };
            let n = negate_standard(single).map_err(arg_error("sentence"))?;
            let text = print_standard(&vocab, &n);
            emit(format, &text, json!({"command": "negate", "sentence": text}));
            Ok(0)
        }
        Command::Solve {
            instance,
            engine,
            oracle,
        } => solve(format, &instance, &engine, oracle),
        Command::Entail { instance, goal, engine } => entail(format, &instance, &goal, &engine),
        Command::CheckTrace { instance, trace, goal } => {
            let mut premises = load_instance(&instance, &mut vocab)?;
            if let Some(goal) = goal {
                let g = parse_sentence(&goal, &mut vocab).map_err(|e| Failure::input("goal", e))?;
                premises.push(g.negated());
            }
            let t = parse_trace(&read(&trace)?, &mut vocab).map_err(|e| Failure::input(trace.display(), e))?;
            report(format, "check-trace", &check_trace(&premises, &t))
        }
        Command::CheckProof { proof } => {
            let lines =
                parse_sequent_proof(&read(&proof)?, &mut vocab).map_err(|e| Failure::input(proof.display(), e))?;
            report(format, "check-proof", &check_sequent_proof(&lines))
        }
        Command::FromDimacs { cnf } => {
            let sentences = read_dimacs(&read(&cnf)?, &mut vocab).map_err(|e| Failure::input(cnf.display(), e))?;
            let text = write_instance(&vocab, &sentences);
            match format {
                Format::Text => print!("{text}"),
                Format::Structured => println!(
                    "{}",
                    json!({"command": "from-dimacs", "sentences": text.lines().collect::<Vec<_>>()})
                ),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match format {
                Format::Text => eprintln!("error: {}", f.message),
                Format::Structured => println!("{}", json!({"error": f.message})),
            }
            ExitCode::from(f.code)
        }
    }
}
