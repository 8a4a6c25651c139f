//! `evd`: command-line access to the diagram prover, proof checker,
//! countermodel search and algebra evaluator.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evd_core::corpus::agreement_corpus;
use evd_core::semantics::eval_diagram;
use evd_core::{
    canon_sequent, check_proof, decide, decide_with, enumerate_posets, find_countermodel, parse_diagram, parse_proof, parse_sequent,
    print_proof, prove_via_oracle, prove_with, AlgebraSpec, ContourName, Decision, HeytingAlgebra, ParseError,
    ProveOptions, Sequent, Valuation,
};

#[derive(Parser)]
#[command(name = "evd", version, about = "Intuitionistic Euler-Venn diagram toolkit")]
struct Cli {
    /// Seed for every sampled search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Backward proof search in the diagram calculus.
    Direct,
    /// Canonical translation and the sentential prover.
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent. Exit 0 when provable, 1 when not.
    Prove {
        sequent: String,
        /// Write the proof here when one is found.
        #[arg(long, value_name = "FILE")]
        emit_proof: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// Allow the reduction rules during search.
        #[arg(long)]
        with_reduce: bool,
    },
    /// Check a proof file. Exit 0 when valid, 1 when not.
    Check { file: PathBuf },
    /// Search finite Heyting algebras for a countermodel. Exit 0 when found,
    /// 1 when the search space is exhausted.
    Countermodel {
        sequent: String,
        /// Largest poset whose up-set algebra is tried.
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
    },
    /// Print the canonical formula translation.
    Translate { sequent: String },
    /// Evaluate a diagram under an assignment.
    Eval {
        #[arg(long, value_name = "SPEC")]
        algebra: String,
        /// Comma-separated `contour=element` pairs.
        #[arg(long, value_name = "ASSIGNMENT", default_value = "")]
        assign: String,
        diagram: String,
    },
    /// Run the algebra-law and agreement suites.
    Selftest,
}

/// Failure that maps to exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn located(input: &str, e: ParseError) -> Usage {
    let span = e.span();
    Usage(format!("{e}\n  {input}\n  {}^", " ".repeat(span.start.min(input.len()))))
}

fn sequent(text: &str) -> Result<Sequent, Usage> {
    parse_sequent(text).map_err(|e| located(text, e))
}

fn status(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn run_prove(text: &str, emit: Option<PathBuf>, method: Method, with_reduce: bool) -> Result<ExitCode, Usage> {
    let s = sequent(text)?;
    if method == Method::Oracle && emit.is_some() {
        return Err(Usage("--emit-proof needs --method direct; the oracle yields no diagram proof".into()));
    }
    let proved = match method {
        Method::Oracle => prove_via_oracle(&s)? == Decision::Proved,
        Method::Direct => {
            let options = ProveOptions { with_reduce, ..Default::default() };
            match &emit {
                None => decide_with(&s, &options)? == Decision::Proved,
                Some(path) => {
                    let outcome = prove_with(&s, &options)?;
                    if let Some(p) = outcome.proof() {
                        fs::write(path, print_proof(p) + "\n")
                            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
                    }
                    outcome.is_proved()
                }
            }
        }
    };
    println!("{}", if proved { "proved" } else { "refuted" });
    Ok(status(proved))
}

fn run_check(file: &PathBuf) -> Result<ExitCode, Usage> {
    let text = fs::read_to_string(file).map_err(|e| Usage(format!("cannot read {}: {e}", file.display())))?;
    let result = parse_proof(&text).map_err(|e| e.to_string()).and_then(|p| {
        check_proof(&p).map_err(|e| e.to_string())?;
        Ok(p)
    });
    match result {
        Ok(p) => {
            println!("valid proof of {}", p.conclusion);
            Ok(status(true))
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(status(false))
        }
    }
}

fn run_countermodel(text: &str, max_poset: usize, seed: u64) -> Result<ExitCode, Usage> {
    let s = sequent(text)?;
    match find_countermodel(&s, max_poset, seed)? {
        Some(c) => {
            println!("{c}");
            Ok(status(true))
        }
        None => {
            println!("no countermodel among chains up to 6 and posets up to {max_poset} points");
            Ok(status(false))
        }
    }
}

fn parse_assignment(text: &str) -> Result<BTreeMap<ContourName, usize>, Usage> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (name, value) = pair.split_once('=').ok_or_else(|| Usage(format!("expected `name=element`, found `{pair}`")))?;
            let value = value.trim().parse().map_err(|_| Usage(format!("bad element `{value}`")))?;
            Ok((ContourName::new(name.trim())?, value))
        })
        .collect()
}

fn run_eval(spec: &str, assign: &str, text: &str) -> Result<ExitCode, Usage> {
    let algebra = spec.parse::<AlgebraSpec>()?.build()?;
    let d = parse_diagram(text).map_err(|e| located(text, e))?;
    let v = Valuation::new(&algebra, parse_assignment(assign)?)?;
    println!("{}", eval_diagram(&v, &d)?);
    Ok(status(true))
}

fn run_selftest() -> Result<ExitCode, Usage> {
    let mut algebras: Vec<HeytingAlgebra> = (1..=6).map(HeytingAlgebra::chain).collect::<Result<_, _>>()?;
    for n in 0..=4 {
        for p in enumerate_posets(n)? {
            algebras.push(HeytingAlgebra::upset_algebra(&p)?);
        }
    }
    let lawless: Vec<&str> = algebras.iter().filter(|a| !a.verify_laws().is_ok()).map(|a| a.name()).collect();
    println!("algebra laws: {} algebras, {} violating", algebras.len(), lawless.len());
    for name in &lawless {
        println!("  violation in {name}");
    }

    let corpus = agreement_corpus();
    let mut disagreements = Vec::new();
    for s in &corpus {
        if decide(s)? != prove_via_oracle(s)? {
            disagreements.push(s.to_string());
        }
    }
    println!("agreement: {} sequents, {} disagreements", corpus.len(), disagreements.len());
    for s in &disagreements {
        println!("  disagreement on {s}");
    }
    Ok(status(lawless.is_empty() && disagreements.is_empty()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prove { sequent, emit_proof, method, with_reduce } => run_prove(&sequent, emit_proof, method, with_reduce),
        Command::Check { file } => run_check(&file),
        Command::Countermodel { sequent, max_poset } => run_countermodel(&sequent, max_poset, cli.seed),
        Command::Translate { sequent: text } => sequent(&text).map(|s| {
            println!("{}", canon_sequent(&s));
            status(true)
        }),
        Command::Eval { algebra, assign, diagram } => run_eval(&algebra, &assign, &diagram),
        Command::Selftest => run_selftest(),
    };
    result.unwrap_or_else(|Usage(msg)| {
        eprintln!("evd: {msg}");
        ExitCode::from(2)
    })
}
