//! Batch command-line front end for the proofalg algebra.
//!
//! Exit codes: 0 success (laws hold, goal provable, member), 1 negative
//! result (law violation, goal unprovable at fixpoint, not a member),
//! 2 usage or parse error, 3 semantic error (unknown builtin, open
//! term, bad relator index), 4 budget exhausted.

use clap::{Parser, Subcommand, ValueEnum};
use proofalg::combinators::{
    check_laws, compile, k_element, parse_app_expr, s_element, Law, LawCheckConfig,
};
use proofalg::groups::{
    alg_normalize, parse_term, parse_term_with, trace_render, NormalizeError, NormalizeStatus,
    Presentation, PresentationError, TraceStyle,
};
use proofalg::json::{expr_to_json, set_to_json};
use proofalg::logic::{
    best_witness, lift, mp_constructor, parse_formula, roots_of, theory, Formula,
};
use proofalg::{
    parse_expr, parse_set, Alphabet, CanonSet, ClosureStatus, Element, Name, ParseError,
};
use serde_json::{json, Value};
use std::fmt::Display;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "proofalg", version, about = "Algebra of proof expressions", long_about = None)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply an element (builtin K, S, MP or an inline set) to finite
    /// sets, left to right.
    Apply {
        /// Element followed by at least one argument set.
        #[arg(required = true, num_args = 2..)]
        items: Vec<String>,
    },
    /// Close a set of formulas under modus ponens; optionally search
    /// for a goal.
    Close {
        /// Inline axioms, semicolon separated.
        axioms: Option<String>,
        /// Axioms file: one formula per line, `#` comments.
        #[arg(long)]
        file: Option<String>,
        /// Closure round budget.
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Formula to search for among the derived conclusions.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Normalize a group term by reassociation, cancellation, and
    /// relator deletion.
    Normalize {
        #[arg(long)]
        term: String,
        /// Presentation file (`gens:` and `rel:` lines). Without one,
        /// every identifier is a free generator.
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long, value_enum, default_value_t = TraceStyleArg::Maclane)]
        trace_style: TraceStyleArg,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Compile an applicative expression and evaluate it on probe
    /// tuples.
    Compile {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        arity: u64,
        /// Body over parameters X1..Xn, juxtaposition and inline sets.
        #[arg(long)]
        body: String,
        /// Probe tuple: semicolon-separated sets, one per parameter.
        /// Repeatable.
        #[arg(long)]
        probe: Vec<String>,
    },
    /// Probe a combinator law on randomized trials.
    CheckLaws {
        #[arg(long, value_enum)]
        law: LawArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// RNG seed; the report always states it.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Parse input and print its canonical form.
    Parse {
        input: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum)]
        kind: ParseKind,
    },
    /// Test membership of an expression in an element (builtin or
    /// inline set), optionally after applying argument sets.
    Member {
        expr: String,
        element: String,
        #[arg(num_args = 0..)]
        args: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceStyleArg {
    Maclane,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    #[value(name = "K")]
    K,
    #[value(name = "S")]
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParseKind {
    Expr,
    Set,
    Formula,
    Term,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("cannot read input: {e}"))
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Syntax(_)
            | PresentationError::BadDirective { .. }
            | PresentationError::DuplicateGens { .. }
            | PresentationError::RelBeforeGens { .. } => CliError::usage(e.to_string()),
            _ => CliError::semantic(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Cmd::Apply { items } => cmd_apply(&items, cli.format),
        Cmd::Close {
            axioms,
            file,
            steps,
            goal,
        } => cmd_close(
            axioms.as_deref(),
            file.as_deref(),
            steps,
            goal.as_deref(),
            cli.format,
        ),
        Cmd::Normalize {
            term,
            presentation,
            trace_style,
            budget,
        } => cmd_normalize(
            &term,
            presentation.as_deref(),
            trace_style,
            budget,
            cli.format,
        ),
        Cmd::Compile { arity, body, probe } => {
            cmd_compile(arity as usize, &body, &probe, cli.format)
        }
        Cmd::CheckLaws { law, trials, seed } => cmd_check_laws(law, trials, seed, cli.format),
        Cmd::Parse { input, file, kind } => {
            cmd_parse(input.as_deref(), file.as_deref(), kind, cli.format)
        }
        Cmd::Member {
            expr,
            element,
            args,
        } => cmd_member(&expr, &element, &args, cli.format),
    }
}

/// A builtin element name or an inline set text.
enum ElementSource<'a> {
    Inline(&'a str),
    K,
    S,
    Mp,
}

fn element_source(text: &str) -> Result<ElementSource<'_>, CliError> {
    if text.trim_start().starts_with('{') {
        return Ok(ElementSource::Inline(text));
    }
    match text.trim() {
        "K" => Ok(ElementSource::K),
        "S" => Ok(ElementSource::S),
        "MP" => Ok(ElementSource::Mp),
        other => Err(CliError::semantic(format!("unknown builtin `{other}`"))),
    }
}

fn cmd_apply(items: &[String], format: Format) -> Result<u8, CliError> {
    match element_source(&items[0])? {
        ElementSource::Inline(text) => {
            let element = Element::ext(parse_set::<Name>(text)?);
            apply_and_render(element, &items[1..], format)
        }
        ElementSource::K => apply_and_render(k_element::<Name>(), &items[1..], format),
        ElementSource::S => apply_and_render(s_element::<Name>(), &items[1..], format),
        ElementSource::Mp => apply_and_render(mp_constructor(), &items[1..], format),
    }
}

fn apply_and_render<A: Alphabet>(
    element: Element<A>,
    args: &[String],
    format: Format,
) -> Result<u8, CliError> {
    let mut current = element;
    for text in args {
        let set = parse_set::<A>(text)?;
        current = current.apply(&set);
    }
    render_element(&current, format);
    Ok(0)
}

fn render_element<A: Alphabet>(element: &Element<A>, format: Format) {
    match element {
        Element::Ext(set) => match format {
            Format::Text => println!("{set}"),
            Format::Json => println!("{}", set_to_json(set)),
        },
        Element::Int(int) => match format {
            Format::Text => {
                println!(
                    "<intensional: {} applied {} times>",
                    int.family_name(),
                    int.applied()
                );
                println!(
                    "hint: probe it with the `member` command, or apply further sets \
                     (saturates after {} arguments)",
                    int.saturation_arity()
                );
            }
            Format::Json => println!(
                "{}",
                json!({"intensional": {"name": int.family_name(), "applied": int.applied()}})
            ),
        },
        other => match format {
            Format::Text => println!("{}", other.describe()),
            Format::Json => {
                println!("{}", json!({"intensional": {"name": other.name_hint()}}))
            }
        },
    }
}

fn read_axioms(inline: Option<&str>, file: Option<&str>) -> Result<Vec<Formula>, CliError> {
    let texts: Vec<String> = match (inline, file) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage(
                "axioms may come inline or from --file, not both",
            ))
        }
        (None, None) => return Err(CliError::usage("provide axioms inline or via --file")),
        (Some(inline), None) => inline
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect(),
        (None, Some(path)) => std::fs::read_to_string(path)?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
    };
    texts.iter().map(|t| Ok(parse_formula(t)?)).collect()
}

fn cmd_close(
    inline: Option<&str>,
    file: Option<&str>,
    steps: usize,
    goal: Option<&str>,
    format: Format,
) -> Result<u8, CliError> {
    let axioms = read_axioms(inline, file)?;
    let goal = goal.map(parse_formula).transpose()?;
    let (set, status) =
        theory(&lift(&axioms), steps).map_err(|e| CliError::semantic(e.to_string()))?;
    let (status_text, rounds) = match status {
        ClosureStatus::Fixpoint { rounds } => ("fixpoint", rounds),
        ClosureStatus::BudgetExhausted { rounds } => ("budget-exhausted", rounds),
    };

    match goal {
        None => {
            let roots = roots_of(&set);
            match format {
                Format::Text => {
                    println!("status: {status_text}");
                    println!("rounds: {rounds}");
                    println!("roots: {}", braces(&roots));
                }
                Format::Json => {
                    let roots: Vec<Value> =
                        roots.iter().map(|f| Value::String(f.to_string())).collect();
                    println!(
                        "{}",
                        json!({"status": status_text, "rounds": rounds, "roots": roots})
                    );
                }
            }
            Ok(if status.is_fixpoint() { 0 } else { 4 })
        }
        Some(goal) => {
            let witness = best_witness(&set, &goal);
            let (verdict, code) = match (&witness, status.is_fixpoint()) {
                (Some(_), _) => ("PROVABLE", 0),
                (None, true) => ("NOT PROVABLE", 1),
                (None, false) => ("UNKNOWN (budget exhausted)", 4),
            };
            match format {
                Format::Text => {
                    println!("status: {status_text}");
                    println!("rounds: {rounds}");
                    println!("{verdict}");
                    if let Some(w) = witness {
                        println!("witness: {w}");
                    }
                }
                Format::Json => {
                    let provable = match code {
                        0 => Value::Bool(true),
                        1 => Value::Bool(false),
                        _ => Value::Null,
                    };
                    println!(
                        "{}",
                        json!({
                            "status": status_text,
                            "rounds": rounds,
                            "goal": goal.to_string(),
                            "provable": provable,
                            "witness": witness.map(expr_to_json),
                        })
                    );
                }
            }
            Ok(code)
        }
    }
}

fn braces<T: Display>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(T::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn cmd_normalize(
    term_text: &str,
    presentation_path: Option<&str>,
    style: TraceStyleArg,
    budget: usize,
    format: Format,
) -> Result<u8, CliError> {
    let (presentation, term) = match presentation_path {
        None => (Presentation::empty(), parse_term(term_text)?),
        Some(path) => {
            let presentation = Presentation::parse(&std::fs::read_to_string(path)?)?;
            let term = parse_term_with(term_text, presentation.generators())?;
            (presentation, term)
        }
    };
    let reduction = alg_normalize(&presentation, &term, budget)
        .map_err(|e: NormalizeError| CliError::semantic(e.to_string()))?;
    let style = match style {
        TraceStyleArg::Maclane => TraceStyle::MacLane,
        TraceStyleArg::Tree => TraceStyle::Tree,
    };
    let trace = trace_render(&reduction, style);
    let (status_text, code) = match reduction.status {
        NormalizeStatus::Normalized => ("normalized", 0),
        NormalizeStatus::BudgetExhausted => ("budget-exhausted", 4),
    };
    match format {
        Format::Text => {
            if code == 4 {
                println!("status: {status_text}");
            }
            println!("final: {}", reduction.final_term());
            println!("trace: {trace}");
        }
        Format::Json => {
            let steps: Vec<Value> = reduction
                .steps
                .iter()
                .map(|s| Value::String(s.label.to_string()))
                .collect();
            println!(
                "{}",
                json!({
                    "status": status_text,
                    "final": reduction.final_term().to_string(),
                    "steps": steps,
                    "trace": trace,
                })
            );
        }
    }
    Ok(code)
}

fn cmd_compile(
    arity: usize,
    body: &str,
    probes: &[String],
    format: Format,
) -> Result<u8, CliError> {
    let phi = parse_app_expr(body, arity)?;
    let element = compile(phi.clone());
    let mut tuples = Vec::new();
    for probe in probes {
        let sets: Vec<CanonSet<Name>> = probe
            .split(';')
            .map(|s| Ok(parse_set::<Name>(s.trim())?))
            .collect::<Result<_, CliError>>()?;
        if sets.len() != arity {
            return Err(CliError::usage(format!(
                "probe `{probe}` has {} sets, arity is {arity}",
                sets.len()
            )));
        }
        let result = element.apply_all(&sets);
        let result = result
            .as_ext()
            .expect("compiled element saturates at its arity")
            .clone();
        tuples.push((sets, result));
    }
    match format {
        Format::Text => {
            println!("phi: arity {arity}, body {phi}");
            for (sets, result) in &tuples {
                let args: Vec<String> = sets.iter().map(CanonSet::to_string).collect();
                println!("phi({}) = {result}", args.join("; "));
            }
        }
        Format::Json => {
            let probes: Vec<Value> = tuples
                .iter()
                .map(|(sets, result)| {
                    json!({
                        "args": sets.iter().map(set_to_json).collect::<Vec<_>>(),
                        "result": set_to_json(result),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({"arity": arity, "body": phi.to_string(), "probes": probes})
            );
        }
    }
    Ok(0)
}

fn cmd_check_laws(law: LawArg, trials: u64, seed: u64, format: Format) -> Result<u8, CliError> {
    let law = match law {
        LawArg::K => Law::K,
        LawArg::S => Law::S,
    };
    let report = check_laws(&LawCheckConfig::new(law, trials, seed));
    match format {
        Format::Text => println!("{report}"),
        Format::Json => {
            let universe = &report.universe;
            let atoms: Vec<Value> = universe
                .atoms
                .iter()
                .map(|a| Value::String(a.to_string()))
                .collect();
            let cexs: Vec<Value> = report
                .counterexamples
                .iter()
                .map(|c| json!({"trial": c.trial, "detail": c.detail}))
                .collect();
            println!(
                "{}",
                json!({
                    "law": report.law,
                    "trials": report.trials,
                    "seed": report.seed,
                    "universe": {
                        "atoms": atoms,
                        "max_rank": universe.max_rank,
                        "max_set": universe.max_set,
                    },
                    "counterexamples": cexs,
                    "pass": report.passed(),
                })
            );
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_parse(
    input: Option<&str>,
    file: Option<&str>,
    kind: ParseKind,
    format: Format,
) -> Result<u8, CliError> {
    let text = match (input, file) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage(
                "provide input inline or via --file, not both",
            ))
        }
        (None, None) => return Err(CliError::usage("provide input inline or via --file")),
        (Some(inline), None) => inline.to_string(),
        (None, Some(path)) => std::fs::read_to_string(path)?.trim_end().to_string(),
    };
    let rendered = match kind {
        ParseKind::Expr => {
            let e = parse_expr::<Name>(&text)?;
            match format {
                Format::Text => e.to_string(),
                Format::Json => expr_to_json(&e).to_string(),
            }
        }
        ParseKind::Set => {
            let s = parse_set::<Name>(&text)?;
            match format {
                Format::Text => s.to_string(),
                Format::Json => set_to_json(&s).to_string(),
            }
        }
        ParseKind::Formula => {
            let f = parse_formula(&text)?;
            match format {
                Format::Text => f.to_string(),
                Format::Json => json!({"formula": f.to_string()}).to_string(),
            }
        }
        ParseKind::Term => {
            let t = parse_term(&text)?;
            match format {
                Format::Text => t.to_string(),
                Format::Json => json!({"term": t.to_string()}).to_string(),
            }
        }
    };
    println!("{rendered}");
    Ok(0)
}

fn cmd_member(
    expr_text: &str,
    element_text: &str,
    args: &[String],
    format: Format,
) -> Result<u8, CliError> {
    fn decide<A: Alphabet>(
        element: Element<A>,
        expr_text: &str,
        args: &[String],
        format: Format,
    ) -> Result<u8, CliError> {
        let expr = parse_expr::<A>(expr_text)?;
        let mut current = element;
        for text in args {
            let set = parse_set::<A>(text)?;
            current = current.apply(&set);
        }
        let member = current.contains(&expr);
        match format {
            Format::Text => println!("{member}"),
            Format::Json => println!("{}", json!({"member": member})),
        }
        Ok(if member { 0 } else { 1 })
    }

    match element_source(element_text)? {
        ElementSource::Inline(text) => {
            let element = Element::ext(parse_set::<Name>(text)?);
            decide(element, expr_text, args, format)
        }
        ElementSource::K => decide(k_element::<Name>(), expr_text, args, format),
        ElementSource::S => decide(s_element::<Name>(), expr_text, args, format),
        ElementSource::Mp => decide(mp_constructor(), expr_text, args, format),
    }
}
