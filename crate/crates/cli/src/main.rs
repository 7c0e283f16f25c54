//! `mmppf`: validate structures, check and translate formulas.
//!
//! Exit codes:
//!
//! | code | meaning                                              |
//! |------|------------------------------------------------------|
//! | 0    | success: all axioms pass, formula true, oracle agrees |
//! | 1    | input could not be read, parsed or resolved           |
//! | 2    | `validate`: at least one axiom fails                  |
//! | 3    | `check`: formula false                                |
//! | 4    | `check`: candidate budget exhausted                   |
//! | 5    | `check`: formula is not well formed                   |
//! | 6    | `translate`: translation error                        |
//! | 7    | `oracle`: checker and oracle disagree                 |
//! | 8    | `oracle`: structure exceeds the oracle limits         |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mmppf_core::checker::{CheckError, LiftedVerdict};
use mmppf_core::model::save_structure;
use mmppf_core::syntax::{parse_cl, parse_pl, parse_pl_star, print_cl, print_formula};
use mmppf_core::{
    check, check_cl, check_star, check_transition_totality, load_structure, oracle_check,
    translate_tr1, translate_tr2, validate_all, AbstractionProfile, MmppfStructure, RgtcGrammar,
};

const AFTER_HELP: &str = "Exit codes: 0 success, 1 unreadable or invalid input, 2 axiom \
violations, 3 formula false, 4 budget exhausted, 5 not a wff, 6 translation error, \
7 checker/oracle disagreement, 8 oracle limits exceeded.";

#[derive(Parser)]
#[command(name = "mmppf", version, about = "MMPPF structures and their description languages", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Layer {
    Pl,
    #[value(name = "pl*")]
    PlStar,
    Cl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    Tr1,
    Tr2,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the eleven axioms on a structure.
    Validate {
        structure: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a formula at a temporal perspective.
    Check {
        structure: PathBuf,
        formula: PathBuf,
        /// Perspective anchor; defaults to the latest time.
        #[arg(long)]
        anchor: Option<usize>,
        /// Formula layer; inferred from the extension (.pl, .pls, .cl) when omitted.
        #[arg(long, value_enum)]
        layer: Option<Layer>,
        /// PL witness for a PL* formula, or PL* witness for a CL formula.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Candidate budget for witness search.
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long)]
        grammar: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Translate PL to PL* (tr1) or PL* to CL (tr2).
    Translate {
        #[arg(value_enum)]
        direction: Direction,
        formula: PathBuf,
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long)]
        grammar: Option<PathBuf>,
        /// Structure whose signature orders component values (tr1 order directives).
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Run the checker and the brute-force oracle and compare.
    Oracle {
        structure: PathBuf,
        formula: PathBuf,
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Re-print any artifact in canonical form.
    Format { file: PathBuf },
}

/// An error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn structure(path: &Path) -> Result<MmppfStructure, Failure> {
    load_structure(&read(path)?).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn profile(path: Option<&Path>) -> Result<AbstractionProfile, Failure> {
    match path {
        None => Ok(AbstractionProfile::Default),
        Some(p) => {
            serde_json::from_str(&read(p)?).map_err(|e| fail(1, format!("{}: {e}", p.display())))
        }
    }
}

fn grammar(path: Option<&Path>) -> Result<Option<RgtcGrammar>, Failure> {
    path.map(|p| {
        RgtcGrammar::parse(&read(p)?).map_err(|e| fail(1, format!("{}: {e}", p.display())))
    })
    .transpose()
}

fn layer_of(path: &Path) -> Layer {
    match path.extension().and_then(|e| e.to_str()) {
        Some("pls") => Layer::PlStar,
        Some("cl") => Layer::Cl,
        _ => Layer::Pl,
    }
}

fn anchor_of(m: &MmppfStructure, anchor: Option<usize>) -> usize {
    anchor.unwrap_or_else(|| m.time_count())
}

fn check_failure(e: CheckError) -> Failure {
    match e {
        CheckError::NotWff(_) => fail(5, e),
        CheckError::OracleLimitExceeded { .. } => fail(8, e),
        _ => fail(1, e),
    }
}

fn parse_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    fail(1, format!("{}: {e}", path.display()))
}

fn validate(path: &Path, as_json: bool) -> Result<u8, Failure> {
    let m = structure(path)?;
    let reports = validate_all(&m);
    let totality = check_transition_totality(&m);
    let ok = reports.iter().all(|r| r.passed());
    if as_json {
        let doc = json!({
            "structure": path.display().to_string(),
            "reports": reports,
            "transition_totality": totality,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("reports serialize")
        );
    } else {
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            println!("axiom {:>2}: {status}", r.axiom);
            for w in &r.witnesses {
                println!(
                    "    {}",
                    serde_json::to_string(w).expect("witnesses serialize")
                );
            }
        }
        if !totality.is_empty() {
            println!("transition function is not total:");
            for w in &totality {
                println!(
                    "    {}",
                    serde_json::to_string(w).expect("witnesses serialize")
                );
            }
        }
    }
    Ok(if ok { 0 } else { 2 })
}

fn print_verdict(holds: bool, traces: serde_json::Value, extra: serde_json::Value, as_json: bool) {
    if as_json {
        let mut doc = json!({ "verdict": holds });
        if holds {
            doc["traces"] = traces;
        }
        if let (Some(d), Some(x)) = (doc.as_object_mut(), extra.as_object()) {
            d.extend(x.clone());
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("verdict serializes")
        );
    } else {
        println!("{holds}");
        if let Some(x) = extra.as_object() {
            for (k, v) in x {
                match v {
                    serde_json::Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
        if holds {
            println!(
                "{}",
                serde_json::to_string_pretty(&traces).expect("traces serialize")
            );
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    structure_path: &Path,
    formula_path: &Path,
    anchor: Option<usize>,
    layer: Option<Layer>,
    witness: Option<&Path>,
    bound: usize,
    profile_path: Option<&Path>,
    grammar_path: Option<&Path>,
    as_json: bool,
) -> Result<u8, Failure> {
    let m = structure(structure_path)?;
    let anchor = anchor_of(&m, anchor);
    let text = read(formula_path)?;
    let layer = layer.unwrap_or_else(|| layer_of(formula_path));
    let lifted = match layer {
        Layer::Pl => {
            let f = parse_pl(&text).map_err(|e| parse_failure(formula_path, e))?;
            let outcome = check(&m, anchor, &f).map_err(check_failure)?;
            print_verdict(outcome.holds, outcome.traces_json(&m), json!({}), as_json);
            return Ok(if outcome.holds { 0 } else { 3 });
        }
        Layer::PlStar => {
            let f = parse_pl_star(&text).map_err(|e| parse_failure(formula_path, e))?;
            let w = witness
                .map(|p| parse_pl(&read(p)?).map_err(|e| parse_failure(p, e)))
                .transpose()?;
            let prof = profile(profile_path)?;
            check_star(&m, anchor, &f, w.as_ref(), bound, &prof).map_err(check_failure)?
        }
        Layer::Cl => {
            let f = parse_cl(&text).map_err(|e| parse_failure(formula_path, e))?;
            let w = witness
                .map(|p| parse_pl_star(&read(p)?).map_err(|e| parse_failure(p, e)))
                .transpose()?;
            let prof = profile(profile_path)?;
            let g = grammar(grammar_path)?;
            check_cl(&m, anchor, &f, w.as_ref(), bound, g.as_ref(), &prof).map_err(check_failure)?
        }
    };
    match lifted {
        LiftedVerdict::Holds { witness, outcome } => {
            let extra = json!({ "witness": print_formula(&witness) });
            print_verdict(true, outcome.traces_json(&m), extra, as_json);
            Ok(0)
        }
        LiftedVerdict::Fails { detail } => {
            let extra = match detail {
                Some(d) => json!({ "detail": d }),
                None => json!({}),
            };
            print_verdict(false, json!([]), extra, as_json);
            Ok(3)
        }
        LiftedVerdict::BudgetExhausted { explored } => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(
                        &json!({ "verdict": "BUDGET_EXHAUSTED", "explored": explored })
                    )
                    .expect("verdict serializes")
                );
            } else {
                println!("BUDGET_EXHAUSTED after {explored} candidates");
            }
            Ok(4)
        }
    }
}

fn translate(
    direction: Direction,
    formula_path: &Path,
    profile_path: Option<&Path>,
    grammar_path: Option<&Path>,
    structure_path: Option<&Path>,
) -> Result<u8, Failure> {
    let text = read(formula_path)?;
    match direction {
        Direction::Tr1 => {
            let f = parse_pl(&text).map_err(|e| parse_failure(formula_path, e))?;
            let prof = profile(profile_path)?;
            let m = structure_path.map(structure).transpose()?;
            let out = translate_tr1(&f, &prof, m.as_ref().map(|m| m.signature()))
                .map_err(|e| fail(6, e))?;
            println!("{}", print_formula(&out));
        }
        Direction::Tr2 => {
            let f = parse_pl_star(&text).map_err(|e| parse_failure(formula_path, e))?;
            let g = grammar(grammar_path)?;
            let out = translate_tr2(&f, g.as_ref()).map_err(|e| fail(6, e))?;
            println!("{}", print_cl(&out));
        }
    }
    Ok(0)
}

fn oracle(
    structure_path: &Path,
    formula_path: &Path,
    anchor: Option<usize>,
    as_json: bool,
) -> Result<u8, Failure> {
    let m = structure(structure_path)?;
    let anchor = anchor_of(&m, anchor);
    let f = parse_pl(&read(formula_path)?).map_err(|e| parse_failure(formula_path, e))?;
    let reference = oracle_check(&m, anchor, &f).map_err(check_failure)?;
    let mut checked = check(&m, anchor, &f).map_err(check_failure)?.holds;
    if std::env::var("MMPPF_FAULT_INJECT").as_deref() == Ok("invert-check") {
        checked = !checked;
    }
    if as_json {
        let doc = json!({ "check": checked, "oracle": reference, "agree": checked == reference });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("verdicts serialize")
        );
    } else {
        println!("check: {checked}");
        println!("oracle: {reference}");
    }
    Ok(if checked == reference { 0 } else { 7 })
}

fn format(path: &Path) -> Result<u8, Failure> {
    let text = read(path)?;
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or_default();
    let out = if name.ends_with(".mmppf.json") {
        save_structure(&structure(path)?)
    } else if name.ends_with(".rgtc") {
        RgtcGrammar::parse(&text)
            .map_err(|e| parse_failure(path, e))?
            .to_string()
    } else if name.ends_with(".json") {
        let p: AbstractionProfile =
            serde_json::from_str(&text).map_err(|e| parse_failure(path, e))?;
        format!(
            "{}\n",
            serde_json::to_string_pretty(&p).expect("profiles serialize")
        )
    } else {
        let printed = match layer_of(path) {
            Layer::Pl => print_formula(&parse_pl(&text).map_err(|e| parse_failure(path, e))?),
            Layer::PlStar => {
                print_formula(&parse_pl_star(&text).map_err(|e| parse_failure(path, e))?)
            }
            Layer::Cl => print_cl(&parse_cl(&text).map_err(|e| parse_failure(path, e))?),
        };
        printed + "\n"
    };
    print!("{out}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { structure, json } => validate(structure, *json),
        Command::Check {
            structure,
            formula,
            anchor,
            layer,
            witness,
            bound,
            profile,
            grammar,
            json,
        } => run_check(
            structure,
            formula,
            *anchor,
            *layer,
            witness.as_deref(),
            *bound,
            profile.as_deref(),
            grammar.as_deref(),
            *json,
        ),
        Command::Translate {
            direction,
            formula,
            profile,
            grammar,
            structure,
        } => translate(
            *direction,
            formula,
            profile.as_deref(),
            grammar.as_deref(),
            structure.as_deref(),
        ),
        Command::Oracle {
            structure,
            formula,
            anchor,
            json,
        } => oracle(structure, formula, *anchor, *json),
        Command::Format { file } => format(file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
