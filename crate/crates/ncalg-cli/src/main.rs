//! Batch front end for the workbench: parses presentation documents,
//! dispatches one command per invocation, prints a human summary, and
//! optionally writes a deterministic structured report.

mod parser;
mod report;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser as ClapParser, Subcommand};
use serde_json::json;

use ncalg::completion::{
    h_certificates, series_number_operator_solve, verify_relations, CompletionError,
    SeriesOutcome,
};
use ncalg::freealg::{Monomial, Scalar};
use ncalg::noa::{
    classify, number_operator_solve, preset, property_report, standard_form,
    ClassificationLabel, Family, IdealPropriety, NoaError, NumberOperatorStatus, Presentation,
};
use ncalg::ordering::DeglexOrder;
use ncalg::rewrite::{Reduction, ReductionSystem, RewriteError};

use parser::{
    parse_document, parse_expression, print_monomial, print_polynomial, print_presentation,
    print_scalar, ParseError, ParsedDocument,
};
use report::{input_digest, Report};

#[derive(ClapParser)]
#[command(
    name = "ncalg",
    about = "Workbench for quadratically presented creation/destruction algebras",
    version
)]
struct Cli {
    /// Presentation document; stdin is read when the command needs a
    /// document and no file is given.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Write the structured report to this path as JSON.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression under the document's reduction system
    Nf { expr: String },
    /// Resolve every overlap and inclusion ambiguity of the system
    Confluent,
    /// Turn unresolvable residuals into new rules within a degree bound
    Complete {
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 32)]
        passes: usize,
    },
    /// List the irreducible monomials up to a degree bound
    Basis {
        #[arg(long)]
        deg: usize,
    },
    /// Decompose an expression by i-number grading
    Grade { expr: String },
    /// Report properness, adjoint stability, symmetry, and number operators
    Props {
        /// Degree bound for the number-operator search
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// Standard-form label of a quadratic presentation
    StandardForm,
    /// Classify a quadratic presentation into the known families
    Classify,
    /// Solve the number-operator equations with a polynomial ansatz
    NoaSolve {
        #[arg(long = "i")]
        index: u32,
        #[arg(long)]
        deg: usize,
    },
    /// Solve the number-operator equations stratum by stratum
    SeriesSolve {
        #[arg(long = "i")]
        index: u32,
        #[arg(long = "K")]
        truncation: usize,
    },
    /// Verify a family's truncated Fock representation
    Fock {
        #[arg(long)]
        family: String,
        #[arg(long = "n", default_value_t = 1)]
        n: usize,
        #[arg(long = "h", default_value = "1")]
        constant: String,
        #[arg(long = "L")]
        level: usize,
    },
    /// Separation and continuity certificates for the filtration
    CertifyH {
        #[arg(long)]
        deg: usize,
    },
    /// Print a built-in presentation as a document
    Preset {
        #[arg(long)]
        family: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "h", default_value = "1")]
        constant: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::Confluent => "confluent",
            Command::Complete { .. } => "complete",
            Command::Basis { .. } => "basis",
            Command::Grade { .. } => "grade",
            Command::Props { .. } => "props",
            Command::StandardForm => "standard-form",
            Command::Classify => "classify",
            Command::NoaSolve { .. } => "noa-solve",
            Command::SeriesSolve { .. } => "series-solve",
            Command::Fock { .. } => "fock",
            Command::CertifyH { .. } => "certify-h",
            Command::Preset { .. } => "preset",
        }
    }

    fn canonical_args(&self) -> String {
        match self {
            Command::Nf { expr } => format!("expr={expr}"),
            Command::Confluent | Command::StandardForm | Command::Classify => String::new(),
            Command::Complete { deg, passes } => format!("deg={deg} passes={passes}"),
            Command::Basis { deg } => format!("deg={deg}"),
            Command::Grade { expr } => format!("expr={expr}"),
            Command::Props { deg } => format!("deg={deg}"),
            Command::NoaSolve { index, deg } => format!("i={index} deg={deg}"),
            Command::SeriesSolve { index, truncation } => format!("i={index} K={truncation}"),
            Command::Fock { family, n, constant, level } => {
                format!("family={family} n={n} h={constant} L={level}")
            }
            Command::CertifyH { deg } => format!("deg={deg}"),
            Command::Preset { family, n, constant } => {
                format!("family={family} n={n} h={constant}")
            }
        }
    }

    fn needs_document(&self) -> bool {
        !matches!(self, Command::Fock { .. } | Command::Preset { .. })
    }
}

#[derive(Debug)]
enum CliError {
    Parse(ParseError),
    Usage(String),
    Io(std::io::Error),
    Rewrite(RewriteError),
    Noa(NoaError),
    Completion(CompletionError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Rewrite(e) => write!(f, "{e}"),
            CliError::Noa(e) => write!(f, "{e}"),
            CliError::Completion(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        CliError::Rewrite(e)
    }
}

impl From<NoaError> for CliError {
    fn from(e: NoaError) -> Self {
        CliError::Noa(e)
    }
}

impl From<CompletionError> for CliError {
    fn from(e: CompletionError) -> Self {
        CliError::Completion(e)
    }
}

struct Outcome {
    human: String,
    results: serde_json::Value,
    /// False on a property-failure verdict, which maps to exit code 1.
    ok: bool,
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let document_text = if cli.command.needs_document() {
        match load_document_text(&cli) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        String::new()
    };
    match run(&cli.command, &document_text) {
        Ok(outcome) => {
            print!("{}", outcome.human);
            println!("wall time: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
            if let Some(path) = &cli.json {
                let digest = input_digest(&[
                    cli.command.name(),
                    &cli.command.canonical_args(),
                    &document_text,
                ]);
                let report = Report::new(cli.command.name(), digest, outcome.results);
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_document_text(cli: &Cli) -> Result<String, CliError> {
    match &cli.file {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

/// Reduction system of a document: explicit rules when given, otherwise
/// rules oriented from the relation polynomials.
fn build_system(doc: &ParsedDocument) -> Result<ReductionSystem, CliError> {
    let ord = DeglexOrder::new(doc.order.clone());
    if !doc.rules.is_empty() {
        let rules = doc
            .rules
            .iter()
            .map(|(lhs, rhs)| Reduction { lhs: lhs.clone(), rhs: rhs.clone() })
            .collect();
        Ok(ReductionSystem::new(rules, ord)?)
    } else {
        Ok(ReductionSystem::from_presentation(&doc.relations, ord, true)?)
    }
}

fn build_presentation(doc: &ParsedDocument) -> Result<Presentation, CliError> {
    if doc.relations.is_empty() {
        return Err(CliError::Usage(
            "this command needs a `relations:` section in the document".to_string(),
        ));
    }
    Ok(Presentation::new(doc.n, doc.relations.clone()))
}

fn parse_constant(text: &str) -> Result<Scalar, CliError> {
    let p = parse_expression(text, 0)
        .map_err(|e| CliError::Usage(format!("invalid constant `{text}`: {e}")))?;
    if p.degree().is_some_and(|d| d > 0) {
        return Err(CliError::Usage(format!(
            "invalid constant `{text}`: generators are not allowed here"
        )));
    }
    Ok(p.coeff(&Monomial::one()))
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    Family::parse(name).ok_or_else(|| {
        let known: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!(
            "unknown family `{name}` (known: {})",
            known.join(", ")
        ))
    })
}

fn family_label(family: Family, constant: Scalar) -> ClassificationLabel {
    match family {
        Family::Boson => ClassificationLabel::Boson(constant),
        Family::PseudoBoson => ClassificationLabel::PseudoBoson(constant),
        Family::Fermion => ClassificationLabel::Fermion(constant),
        Family::PseudoFermion => ClassificationLabel::PseudoFermion(constant),
        Family::Matrix => ClassificationLabel::Matrix(constant),
        Family::MatrixDual => ClassificationLabel::MatrixDual(constant),
        Family::QBoson => ClassificationLabel::QBoson(constant),
        Family::PseudoQBoson => ClassificationLabel::PseudoQBoson(constant),
    }
}

fn run(command: &Command, document_text: &str) -> Result<Outcome, CliError> {
    let doc = if command.needs_document() {
        Some(parse_document(document_text)?)
    } else {
        None
    };
    let doc = doc.as_ref();

    match command {
        Command::Nf { expr } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            let p = parse_expression(expr, doc.n)?;
            let nf = system.normal_form(&p)?;
            let text = print_polynomial(&nf);
            Ok(Outcome {
                human: format!("normal form: {text}\n"),
                results: json!({ "input": expr, "normal_form": text }),
                ok: true,
            })
        }
        Command::Confluent => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            let report = system.confluence()?;
            let unresolved: Vec<serde_json::Value> = report
                .reports
                .iter()
                .filter(|r| !r.solvable)
                .map(|r| {
                    json!({
                        "word": print_monomial(&r.ambiguity.superposition()),
                        "residual": print_polynomial(&r.residual),
                    })
                })
                .collect();
            let mut human = format!(
                "confluent: {}\nambiguities: {}\nunresolved: {}\n",
                report.confluent,
                report.reports.len(),
                unresolved.len()
            );
            for r in report.reports.iter().filter(|r| !r.solvable) {
                human.push_str(&format!(
                    "  {}: residual {}\n",
                    print_monomial(&r.ambiguity.superposition()),
                    print_polynomial(&r.residual)
                ));
            }
            Ok(Outcome {
                human,
                ok: report.confluent,
                results: json!({
                    "confluent": report.confluent,
                    "ambiguities": report.reports.len(),
                    "unresolved": unresolved,
                }),
            })
        }
        Command::Complete { deg, passes } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            let outcome = system.buchberger_complete(*deg, *passes)?;
            let rules: Vec<String> = outcome
                .system
                .rules()
                .iter()
                .map(|r| format!("{} -> {}", print_monomial(&r.lhs), print_polynomial(&r.rhs)))
                .collect();
            let mut human = format!(
                "complete: {}\npasses: {}\nadded: {}\ndeferred: {}\ncollapsed: {}\n",
                outcome.complete,
                outcome.passes,
                outcome.added.len(),
                outcome.deferred.len(),
                outcome.collapsed
            );
            for r in &rules {
                human.push_str(&format!("  {r}\n"));
            }
            Ok(Outcome {
                human,
                ok: outcome.complete,
                results: json!({
                    "complete": outcome.complete,
                    "passes": outcome.passes,
                    "added": outcome.added.len(),
                    "deferred": outcome.deferred.len(),
                    "collapsed": outcome.collapsed,
                    "rules": rules,
                }),
            })
        }
        Command::Basis { deg } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            let basis = system.irreducible_basis(*deg);
            let monomials: Vec<String> = basis.monomials.iter().map(print_monomial).collect();
            let mut human = format!(
                "count: {}\nsaturated: {}\n",
                basis.monomials.len(),
                basis.saturated
            );
            human.push_str(&format!("  {}\n", monomials.join(", ")));
            Ok(Outcome {
                human,
                ok: true,
                results: json!({
                    "degree_bound": deg,
                    "count": basis.monomials.len(),
                    "saturated": basis.saturated,
                    "monomials": monomials,
                }),
            })
        }
        Command::Grade { expr } => {
            let doc = doc.unwrap();
            let p = parse_expression(expr, doc.n)?;
            let parts = p.grade_decompose(doc.n);
            let components: Vec<serde_json::Value> = parts
                .iter()
                .map(|(g, q)| json!({ "grade": g.0, "polynomial": print_polynomial(q) }))
                .collect();
            let homogeneous = parts.len() <= 1;
            let mut human = format!("homogeneous: {homogeneous}\n");
            for (g, q) in &parts {
                human.push_str(&format!("  grade {:?}: {}\n", g.0, print_polynomial(q)));
            }
            Ok(Outcome {
                human,
                ok: true,
                results: json!({
                    "input": expr,
                    "homogeneous": homogeneous,
                    "components": components,
                }),
            })
        }
        Command::Props { deg } => {
            let doc = doc.unwrap();
            let presentation = build_presentation(doc)?;
            let system = build_system(doc)?;
            let confluent = system.confluence()?.confluent;
            let rep = property_report(&presentation, &system, confluent, Some(*deg))?;
            let p3 = match &rep.p3 {
                NumberOperatorStatus::Found(_) => "found",
                NumberOperatorStatus::NoneAtBound => "none at the bound",
                NumberOperatorStatus::NotRun => "not run",
            };
            let ok = rep.p0 == IdealPropriety::Holds
                && rep.p1
                && rep.p2
                && matches!(rep.p3, NumberOperatorStatus::Found(_));
            let mut human = format!(
                "proper ideal: {}\nadjoint stable: {}\nsymmetric: {}\nnumber operators: {p3}\n",
                rep.p0, rep.p1, rep.p2
            );
            for note in &rep.notes {
                human.push_str(&format!("  note: {note}\n"));
            }
            Ok(Outcome {
                human,
                ok,
                results: json!({
                    "proper": rep.p0.to_string(),
                    "adjoint_stable": rep.p1,
                    "symmetric": rep.p2,
                    "number_operators": p3,
                    "notes": rep.notes,
                }),
            })
        }
        Command::StandardForm => {
            let doc = doc.unwrap();
            let presentation = build_presentation(doc)?;
            match standard_form(&presentation) {
                Ok(label) => {
                    let tags: Vec<String> =
                        label.part_00.iter().map(|t| t.to_string()).collect();
                    Ok(Outcome {
                        human: format!("standard form: {label}\n"),
                        ok: true,
                        results: json!({
                            "standardizable": true,
                            "part_20": label.part_20.to_string(),
                            "part_11": label.part_11.to_string(),
                            "part_1m1": label.part_1m1.to_string(),
                            "part_00": tags,
                        }),
                    })
                }
                Err(NoaError::NotStandardizable { detail }) => Ok(Outcome {
                    human: format!("not standardizable: {detail}\n"),
                    ok: false,
                    results: json!({ "standardizable": false, "detail": detail }),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Classify => {
            let doc = doc.unwrap();
            let presentation = build_presentation(doc)?;
            let label = classify(&presentation);
            Ok(Outcome {
                human: format!("label: {label}\n"),
                ok: label != ClassificationLabel::Unknown,
                results: json!({ "label": label.to_string() }),
            })
        }
        Command::NoaSolve { index, deg } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            if *index == 0 || *index as usize > doc.n {
                return Err(CliError::Usage(format!(
                    "index {index} out of range for n = {}",
                    doc.n
                )));
            }
            if *deg < 2 {
                return Err(CliError::Usage(
                    "the ansatz degree bound must be at least 2".to_string(),
                ));
            }
            let outcome = number_operator_solve(&system, *index, *deg)?;
            match outcome.solution(*index) {
                Some(solution) => {
                    let op = print_polynomial(&solution.operator);
                    let free: Vec<String> =
                        solution.free_directions.iter().map(print_polynomial).collect();
                    let mut human = format!("N = {op}");
                    if free.len() == 1 && free[0] == "1" {
                        human.push_str(" + λ·1");
                    } else {
                        for (k, f) in free.iter().enumerate() {
                            human.push_str(&format!(" + λ{}·({f})", k + 1));
                        }
                    }
                    human.push('\n');
                    human.push_str(&format!("certified: {}\n", outcome.certified));
                    Ok(Outcome {
                        human,
                        ok: true,
                        results: json!({
                            "status": "found",
                            "operator": op,
                            "free_directions": free,
                            "certified": outcome.certified,
                        }),
                    })
                }
                None => Ok(Outcome {
                    human: format!("no number operator within degree bound {deg}\n"),
                    ok: false,
                    results: json!({ "status": "empty", "degree_bound": deg }),
                }),
            }
        }
        Command::SeriesSolve { index, truncation } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            if *index == 0 || *index as usize > doc.n {
                return Err(CliError::Usage(format!(
                    "index {index} out of range for n = {}",
                    doc.n
                )));
            }
            match series_number_operator_solve(&system, *index, *truncation)? {
                SeriesOutcome::Solved { element, free_directions } => {
                    let components: Vec<String> =
                        element.components.iter().map(print_polynomial).collect();
                    let free: Vec<Vec<String>> = free_directions
                        .iter()
                        .map(|d| d.components.iter().map(print_polynomial).collect())
                        .collect();
                    let mut human = String::new();
                    for (k, c) in components.iter().enumerate() {
                        human.push_str(&format!("stratum {k}: {c}\n"));
                    }
                    human.push_str(&format!("free directions: {}\n", free.len()));
                    Ok(Outcome {
                        human,
                        ok: true,
                        results: json!({
                            "status": "solved",
                            "components": components,
                            "free_directions": free,
                        }),
                    })
                }
                SeriesOutcome::EmptyAtLevel { level } => Ok(Outcome {
                    human: format!("no solution: the equations are inconsistent at stratum {level}\n"),
                    ok: false,
                    results: json!({ "status": "empty_at_level", "level": level }),
                }),
            }
        }
        Command::Fock { family, n, constant, level } => {
            let family = parse_family(family)?;
            let constant = parse_constant(constant)?;
            let label = family_label(family, constant);
            let rep = verify_relations(&label, *n, *level)?;
            let occupations: Vec<Vec<u32>> =
                rep.states.iter().map(|s| s.occupation.clone()).collect();
            let mut human = format!(
                "family: {label}\nstates: {}\nverified: {}\n",
                rep.states.len(),
                rep.ok()
            );
            for failure in &rep.failures {
                human.push_str(&format!("  failure: {failure}\n"));
            }
            Ok(Outcome {
                human,
                ok: rep.ok(),
                results: json!({
                    "family": label.to_string(),
                    "states": rep.states.len(),
                    "occupations": occupations,
                    "verified": rep.ok(),
                    "failures": rep.failures,
                }),
            })
        }
        Command::CertifyH { deg } => {
            let doc = doc.unwrap();
            let system = build_system(doc)?;
            let certs = h_certificates(&system, *deg)?;
            let witnesses: Vec<String> =
                certs.h1_witnesses.iter().map(print_polynomial).collect();
            let entries: Vec<serde_json::Value> = certs
                .h2_entries
                .iter()
                .map(|e| {
                    json!({
                        "creation_index": e.creation_index,
                        "target_level": e.target_level,
                        "least_shift": e.least_shift,
                        "counterexample": e.counterexample.as_ref().map(print_monomial),
                    })
                })
                .collect();
            let h2 = certs.h2_passed();
            let mut human = format!(
                "separation (H1): {}\n",
                if certs.h1_passed { "pass" } else { "fail" }
            );
            for w in &witnesses {
                human.push_str(&format!("  witness: {w}\n"));
            }
            human.push_str(&format!("continuity (H2): {}\n", if h2 { "pass" } else { "fail" }));
            for e in &certs.h2_entries {
                match e.least_shift {
                    Some(shift) => human.push_str(&format!(
                        "  index {} target {}: least shift {shift}\n",
                        e.creation_index, e.target_level
                    )),
                    None => human.push_str(&format!(
                        "  index {} target {}: no shift up to {} works\n",
                        e.creation_index,
                        e.target_level,
                        deg + 1
                    )),
                }
            }
            Ok(Outcome {
                human,
                ok: certs.h1_passed && h2,
                results: json!({
                    "degree_bound": deg,
                    "h1": certs.h1_passed,
                    "h1_witnesses": witnesses,
                    "h2": h2,
                    "h2_entries": entries,
                }),
            })
        }
        Command::Preset { family, n, constant } => {
            let family = parse_family(family)?;
            let constant = parse_constant(constant)?;
            let built = preset(family, *n, &constant)?;
            let text = print_presentation(
                *n,
                built.system.order().base(),
                &built.presentation.generators,
            );
            Ok(Outcome {
                human: text.clone(),
                ok: true,
                results: json!({
                    "family": family.name(),
                    "n": n,
                    "constant": print_scalar(&constant),
                    "document": text,
                }),
            })
        }
    }
}
