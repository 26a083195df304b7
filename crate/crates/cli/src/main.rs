//! Batch interface: algebra documents in, structured verdict reports out.
//!
//! Every run prints one JSON report to standard output. Exit code 0 means
//! the verdict is true (or the command simply succeeded), 1 means the
//! verdict is false and the report carries a witness, 2 means the input
//! could not be used at all. Reports are deterministic except for the
//! `timing_ms` field.

mod doc;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use mvalg::finclass::{self, LeafLabel};
use mvalg::komori;
use mvalg::morita;
use mvalg::radical;
use mvalg::sequent::{check_sequent, parse_sequent, CheckOutcome};
use mvalg::AlgebraRef;

#[derive(Parser)]
#[command(
    name = "mvalg",
    version,
    about = "Exact computations in local MV-algebras and their varieties"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide membership of a finite algebra in the variety of a pair.
    CheckVariety {
        /// Path to an algebra document.
        #[arg(long)]
        algebra: PathBuf,
        /// Variety pair, e.g. "I=[4];J=[6]".
        #[arg(long)]
        pair: String,
    },
    /// List the radical of a finite algebra at an invariant.
    Radical {
        #[arg(long)]
        algebra: PathBuf,
        /// Variety invariant.
        #[arg(long)]
        n: u64,
    },
    /// Locate an element in the finite-class partition at an invariant.
    Classify {
        #[arg(long)]
        algebra: PathBuf,
        /// Element document, e.g. "[2,1]" or "3".
        #[arg(long)]
        elem: String,
        /// Variety invariant.
        #[arg(long)]
        n: u64,
    },
    /// Split a finite algebra along Boolean elements made from generators.
    Decompose {
        #[arg(long)]
        algebra: PathBuf,
        /// Comma-separated element documents, e.g. "[1,0],[0,1]".
        #[arg(long)]
        gens: String,
        /// Variety invariant; required unless --booleans is set.
        #[arg(long)]
        n: Option<u64>,
        /// Treat the generators as Boolean splitters directly.
        #[arg(long)]
        booleans: bool,
    },
    /// Translate between group triples and algebras over a pair.
    Morita {
        #[command(subcommand)]
        dir: MoritaCmd,
    },
    /// Check a sequent file against a finite algebra.
    Sequent {
        /// Path to a sequent in the term grammar.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        /// Assignment budget for the exhaustive scan.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Count homomorphisms between two finite algebras.
    Homcount {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Subcommand)]
enum MoritaCmd {
    /// Triple document to algebra document.
    ToMv {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        pair: String,
    },
    /// Algebra document to triple document.
    FromMv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        pair: String,
    },
    /// Both directions, checking the same triple comes back.
    Roundtrip {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        pair: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.cmd) {
        Ok((mut report, code)) => {
            report.insert(
                "timing_ms".into(),
                json!(started.elapsed().as_secs_f64() * 1000.0),
            );
            let text =
                serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes");
            println!("{}", text);
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

type Report = Result<(Map<String, Value>, u8), String>;

fn core_err(e: mvalg::Error) -> String {
    e.to_string()
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| format!("{} is not valid JSON: {}", path.display(), e))
}

fn read_algebra(path: &Path) -> Result<(Value, AlgebraRef), String> {
    let raw = read_json(path)?;
    let alg = doc::algebra_from_json(&raw)?;
    Ok((raw, alg))
}

fn report(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m
}

fn run(cmd: Cmd) -> Report {
    match cmd {
        Cmd::CheckVariety { algebra, pair } => check_variety(&algebra, &pair),
        Cmd::Radical { algebra, n } => radical_report(&algebra, n),
        Cmd::Classify { algebra, elem, n } => classify(&algebra, &elem, n),
        Cmd::Decompose {
            algebra,
            gens,
            n,
            booleans,
        } => decompose(&algebra, &gens, n, booleans),
        Cmd::Morita { dir } => match dir {
            MoritaCmd::ToMv { triple, pair } => morita_to_mv(&triple, &pair),
            MoritaCmd::FromMv { algebra, pair } => morita_from_mv(&algebra, &pair),
            MoritaCmd::Roundtrip { triple, pair } => morita_roundtrip(&triple, &pair),
        },
        Cmd::Sequent {
            file,
            algebra,
            bound,
        } => sequent(&file, &algebra, bound),
        Cmd::Homcount { from, to } => homcount(&from, &to),
    }
}

fn check_variety(algebra: &Path, pair: &str) -> Report {
    let (raw, alg) = read_algebra(algebra)?;
    let pair = doc::pair_from_str(pair)?;
    let outcome = komori::is_member_finite(&alg, &pair).map_err(core_err)?;
    let mut m = report("check-variety");
    m.insert("algebra".into(), raw);
    m.insert("pair".into(), json!(pair.to_string()));
    match outcome {
        None => {
            m.insert("verdict".into(), json!(true));
            m.insert("witness".into(), Value::Null);
            Ok((m, 0))
        }
        Some(v) => {
            m.insert("verdict".into(), json!(false));
            m.insert(
                "witness".into(),
                json!({
                    "equation": v.equation.name,
                    "lhs": v.equation.lhs.to_string(),
                    "rhs": v.equation.rhs.to_string(),
                    "element": doc::elem_to_json(&v.witness),
                }),
            );
            Ok((m, 1))
        }
    }
}

fn radical_report(algebra: &Path, n: u64) -> Report {
    let (raw, alg) = read_algebra(algebra)?;
    let rad = radical::radical_set(&alg, n).map_err(core_err)?;
    let local = radical::is_local(&alg).map_err(core_err)?;
    let mut m = report("radical");
    m.insert("algebra".into(), raw);
    m.insert("invariant".into(), json!(n));
    m.insert(
        "members".into(),
        Value::Array(rad.members.iter().map(doc::elem_to_json).collect()),
    );
    m.insert("size".into(), json!(rad.members.len()));
    m.insert("is_local".into(), json!(local));
    m.insert(
        "rank".into(),
        if local {
            json!(radical::rank(&alg).map_err(core_err)?)
        } else {
            Value::Null
        },
    );
    m.insert("verdict".into(), json!(true));
    Ok((m, 0))
}

fn classify(algebra: &Path, elem: &str, n: u64) -> Report {
    let (raw, alg) = read_algebra(algebra)?;
    let elem_doc: Value =
        serde_json::from_str(elem).map_err(|e| format!("element is not valid JSON: {}", e))?;
    let x = doc::elem_from_json(&alg, &elem_doc)?;
    alg.check_member(&x).map_err(core_err)?;
    let class = finclass::classify(&alg, &x, n).map_err(core_err)?;
    let mut m = report("classify");
    m.insert("algebra".into(), raw);
    m.insert("element".into(), elem_doc.clone());
    m.insert("invariant".into(), json!(n));
    match class {
        Some(d) => {
            m.insert("class".into(), json!(d));
            m.insert("verdict".into(), json!(true));
            m.insert("witness".into(), Value::Null);
            Ok((m, 0))
        }
        None => {
            m.insert("class".into(), Value::Null);
            m.insert("verdict".into(), json!(false));
            m.insert("witness".into(), elem_doc);
            Ok((m, 1))
        }
    }
}

fn leaf_json(leaf: &finclass::Leaf) -> Value {
    let (label, rank) = match leaf.label {
        LeafLabel::Trivial => ("trivial", Value::Null),
        LeafLabel::Local { rank } => ("local", json!(rank)),
        LeafLabel::NonLocal => ("nonlocal", Value::Null),
    };
    json!({
        "label": label,
        "rank": rank,
        "size": leaf.algebra.size(),
    })
}

fn decompose(algebra: &Path, gens: &str, n: Option<u64>, booleans: bool) -> Report {
    let (raw, alg) = read_algebra(algebra)?;
    let mut parsed = Vec::new();
    let mut echo = Vec::new();
    for part in doc::split_elements(gens)? {
        let v: Value = serde_json::from_str(&part)
            .map_err(|e| format!("generator `{}` is not valid JSON: {}", part, e))?;
        let x = doc::elem_from_json(&alg, &v)?;
        alg.check_member(&x).map_err(core_err)?;
        parsed.push(x);
        echo.push(v);
    }
    let d = if booleans {
        finclass::decompose_by_booleans(&alg, &parsed).map_err(core_err)?
    } else {
        let n = n.ok_or("--n is required unless --booleans is set")?;
        finclass::decompose_by_generators(&alg, &parsed, n).map_err(core_err)?
    };
    let mut m = report("decompose");
    m.insert("algebra".into(), raw);
    m.insert("generators".into(), Value::Array(echo));
    m.insert(
        "mode".into(),
        json!(if booleans { "booleans" } else { "generators" }),
    );
    m.insert("invariant".into(), n.map(|v| json!(v)).unwrap_or(Value::Null));
    m.insert(
        "leaves".into(),
        Value::Array(d.leaves.iter().map(leaf_json).collect()),
    );
    m.insert("product_size".into(), json!(d.product.size()));
    m.insert("verdict".into(), json!(d.verdict));
    let witness = d
        .leaves
        .iter()
        .position(|l| matches!(l.label, LeafLabel::NonLocal));
    m.insert(
        "witness".into(),
        witness.map(|i| json!({ "nonlocal_leaf": i })).unwrap_or(Value::Null),
    );
    Ok((m, u8::from(!d.verdict)))
}

fn morita_to_mv(triple: &Path, pair: &str) -> Report {
    let raw = read_json(triple)?;
    let pair = doc::pair_from_str(pair)?;
    let t = doc::triple_from_json(&raw, &pair)?;
    let mut m = report("morita");
    m.insert("mode".into(), json!("to-mv"));
    m.insert("triple".into(), raw);
    m.insert("pair".into(), json!(pair.to_string()));
    let violations = morita::validate_triple(&t);
    if !violations.is_empty() {
        m.insert("verdict".into(), json!(false));
        m.insert("witness".into(), json!({ "violated_axioms": violations }));
        return Ok((m, 1));
    }
    let alg = morita::to_mv(&t).map_err(core_err)?;
    m.insert("algebra".into(), doc::algebra_to_json(&alg)?);
    m.insert("verdict".into(), json!(true));
    m.insert("witness".into(), Value::Null);
    Ok((m, 0))
}

fn morita_from_mv(algebra: &Path, pair: &str) -> Report {
    let (raw, alg) = read_algebra(algebra)?;
    let pair = doc::pair_from_str(pair)?;
    let mut m = report("morita");
    m.insert("mode".into(), json!("from-mv"));
    m.insert("algebra".into(), raw);
    m.insert("pair".into(), json!(pair.to_string()));
    match morita::from_mv(&alg, &pair) {
        Ok(t) => {
            m.insert("triple".into(), doc::triple_to_json(&t));
            m.insert("verdict".into(), json!(true));
            m.insert("witness".into(), Value::Null);
            Ok((m, 0))
        }
        Err(e) => {
            m.insert("verdict".into(), json!(false));
            m.insert("witness".into(), json!({ "reason": e.to_string() }));
            Ok((m, 1))
        }
    }
}

fn morita_roundtrip(triple: &Path, pair: &str) -> Report {
    let raw = read_json(triple)?;
    let pair = doc::pair_from_str(pair)?;
    let t = doc::triple_from_json(&raw, &pair)?;
    let mut m = report("morita");
    m.insert("mode".into(), json!("roundtrip"));
    m.insert("triple".into(), raw);
    m.insert("pair".into(), json!(pair.to_string()));
    let violations = morita::validate_triple(&t);
    if !violations.is_empty() {
        m.insert("verdict".into(), json!(false));
        m.insert("witness".into(), json!({ "violated_axioms": violations }));
        return Ok((m, 1));
    }
    let alg = morita::to_mv(&t).map_err(core_err)?;
    let back = morita::from_mv(&alg, &pair).map_err(core_err)?;
    m.insert("algebra".into(), doc::algebra_to_json(&alg)?);
    m.insert("triple_back".into(), doc::triple_to_json(&back));
    let identical = back == t;
    m.insert("verdict".into(), json!(identical));
    m.insert("witness".into(), Value::Null);
    Ok((m, u8::from(!identical)))
}

fn sequent(file: &Path, algebra: &Path, bound: Option<u64>) -> Report {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {}", file.display(), e))?;
    let seq = parse_sequent(text.trim()).map_err(core_err)?;
    let (raw, alg) = read_algebra(algebra)?;
    let outcome = check_sequent(&alg, &seq, bound).map_err(core_err)?;
    let mut m = report("sequent");
    m.insert("algebra".into(), raw);
    m.insert("sequent".into(), json!(seq.to_string()));
    m.insert("budget".into(), bound.map(|b| json!(b)).unwrap_or(Value::Null));
    match outcome {
        CheckOutcome::Holds => {
            m.insert("verdict".into(), json!(true));
            m.insert("witness".into(), Value::Null);
            m.insert("bounded_failure".into(), json!(false));
            Ok((m, 0))
        }
        CheckOutcome::Counterexample {
            assignment,
            bounded,
        } => {
            let env: Map<String, Value> = assignment
                .iter()
                .map(|(v, e)| (v.clone(), doc::elem_to_json(e)))
                .collect();
            m.insert("verdict".into(), json!(false));
            m.insert("witness".into(), Value::Object(env));
            m.insert("bounded_failure".into(), json!(bounded));
            Ok((m, 1))
        }
    }
}

fn homcount(from: &Path, to: &Path) -> Report {
    let (raw_from, alg_from) = read_algebra(from)?;
    let (raw_to, alg_to) = read_algebra(to)?;
    let count = radical::hom_count(&alg_from, &alg_to, None).map_err(core_err)?;
    let mut m = report("homcount");
    m.insert("from".into(), raw_from);
    m.insert("to".into(), raw_to);
    m.insert("count".into(), json!(count));
    m.insert("verdict".into(), json!(true));
    Ok((m, 0))
}
