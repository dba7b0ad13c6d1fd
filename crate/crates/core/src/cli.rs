//! Command-line front end.
//!
//! Exit codes: 0 success or `equal`, 1 `distinct` (or a fuzz
//! disagreement), 2 usage or input error, 3 presentation not weakly C(4),
//! 4 oracle budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bench::{bench_equals, doubling_ratios};
use crate::differential::{fuzz, FuzzConfig};
use crate::error::Error;
use crate::oracle::{oracle_normal_form, OracleAnswer, OracleBudget, Rewriter};
use crate::pieces::{classify, compute_pieces};
use crate::presentation::{parse_presentation, Presentation};
use crate::word::Word;
use crate::word_problem::{Solver, Trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_C4: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "small-overlap", version, about = "Word problem for weakly C(4) monoid presentations")]
pub struct CliConfig {
    /// Presentation file.
    #[arg(short = 'p', long = "presentation", global = true)]
    pub presentation: Option<PathBuf>,

    /// Print the branches taken by the decision procedure.
    #[arg(long, global = true)]
    pub trace: bool,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[arg(long, global = true)]
    pub max_word_len: Option<usize>,

    #[arg(long, global = true)]
    pub max_class_size: Option<usize>,

    #[arg(long, global = true)]
    pub max_steps: Option<usize>,

    /// First fuzz seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report weak_n and whether the presentation is strongly C(4).
    Check,
    /// List the pieces in shortlex order.
    Pieces,
    /// Show the shortest relation prefix of a word and its overlap-prefix factorization.
    Analyze { word: String },
    /// Decide whether two words are equal in the monoid.
    Eq { u: String, v: String },
    /// Decide u ≡ v and whether piece p is a possible prefix of u.
    PrefixEq { u: String, v: String, p: String },
    /// Decide equality by brute-force class enumeration.
    OracleEq { u: String, v: String },
    /// Shortlex-least equivalent word, by brute force.
    NormalForm { word: String },
    /// Differential test of the solver against the oracle on random presentations.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Time `eq` on (lhs^k, rhs^k) of the first relation at doubling lengths.
    Bench {
        #[arg(long, default_value_t = 10_000)]
        base_len: usize,
        #[arg(long, default_value_t = 7)]
        doublings: u32,
    },
}

impl CliConfig {
    fn budget(&self) -> OracleBudget {
        let d = OracleBudget::default();
        OracleBudget {
            max_word_len: self.max_word_len.unwrap_or(d.max_word_len),
            max_class_size: self.max_class_size.unwrap_or(d.max_class_size),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
        }
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Check => "check",
            Command::Pieces => "pieces",
            Command::Analyze { .. } => "analyze",
            Command::Eq { .. } => "eq",
            Command::PrefixEq { .. } => "prefix-eq",
            Command::OracleEq { .. } => "oracle-eq",
            Command::NormalForm { .. } => "normal-form",
            Command::Fuzz { .. } => "fuzz",
            Command::Bench { .. } => "bench",
        }
    }
}

/// SHA-256 of the canonical text of a presentation.
pub fn presentation_hash(pres: &Presentation) -> String {
    hex::encode(Sha256::digest(pres.to_string().as_bytes()))
}

struct Outcome {
    code: i32,
    text: String,
    result: Value,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>, result: Value) -> Self {
        Outcome { code, text: text.into(), result }
    }
}

enum Failure {
    Usage(String),
    NotC4(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotWeaklyC4(_) | Error::NotWeaklyC3(_) => Failure::NotC4(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let (pres, outcome) = match load(&config).and_then(|pres| {
        let o = dispatch(&config, pres.as_ref(), out)?;
        Ok((pres, o))
    }) {
        Ok(v) => v,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::NotC4(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_NOT_C4;
        }
    };
    let elapsed = start.elapsed();
    if config.json {
        let report = json!({
            "command": config.command_name(),
            "presentation_hash": pres.as_ref().map(presentation_hash),
            "result": outcome.result,
            "timings": { "total_ns": elapsed.as_nanos() as u64 },
        });
        let _ = writeln!(out, "{report}");
    } else if !outcome.text.is_empty() {
        let _ = writeln!(out, "{}", outcome.text.trim_end());
    }
    outcome.code
}

fn load(config: &CliConfig) -> Result<Option<Presentation>, Failure> {
    let Some(path) = &config.presentation else {
        return match config.command {
            Command::Fuzz { .. } => Ok(None),
            _ => Err(Failure::Usage("this command needs a presentation (-p FILE)".into())),
        };
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Some(parse_presentation(&text)?))
}

fn word(pres: &Presentation, text: &str) -> Result<Word, Failure> {
    Ok(pres.parse_word(text)?)
}

fn dispatch(config: &CliConfig, pres: Option<&Presentation>, out: &mut dyn Write) -> Result<Outcome, Failure> {
    if let Command::Fuzz { seeds, pairs } = config.command {
        return Ok(run_fuzz(config, seeds, pairs));
    }
    let pres = pres.expect("checked in load");
    let fmt = |w: &[u32]| pres.format_word(w);
    match &config.command {
        Command::Check => {
            let report = classify(pres);
            let code = if report.weakly(4) { EXIT_OK } else { EXIT_NOT_C4 };
            let per_word: Vec<Value> = report
                .per_word
                .iter()
                .map(|(w, k)| json!({ "word": fmt(w), "min_pieces": k }))
                .collect();
            Ok(Outcome::new(
                code,
                report.to_string(),
                json!({
                    "weak_n": report.weak_n.to_string(),
                    "strong_c4": report.strongly(4),
                    "repeated_relation_words": report.repeated_words,
                    "per_word": per_word,
                }),
            ))
        }
        Command::Pieces => {
            let pieces: Vec<String> = compute_pieces(pres).pieces().iter().map(|p| fmt(p)).collect();
            Ok(Outcome::new(EXIT_OK, pieces.join("\n"), json!(pieces)))
        }
        Command::Analyze { word: text } => {
            let solver = Solver::new(pres.clone())?;
            let u = word(pres, text)?;
            Ok(analyze(&solver, &u))
        }
        Command::Eq { u, v } => {
            let solver = Solver::new(pres.clone())?;
            let (u, v) = (word(pres, u)?, word(pres, v)?);
            decide(config, &solver, &u, &v, &Word::empty(), out)
        }
        Command::PrefixEq { u, v, p } => {
            let solver = Solver::new(pres.clone())?;
            let (u, v, p) = (word(pres, u)?, word(pres, v)?, word(pres, p)?);
            decide(config, &solver, &u, &v, &p, out)
        }
        Command::OracleEq { u, v } => {
            let (u, v) = (word(pres, u)?, word(pres, v)?);
            let answer = Rewriter::new(pres).equals(&u, &v, config.budget());
            let (code, text) = match answer {
                OracleAnswer::Equal => (EXIT_OK, "equal"),
                OracleAnswer::Distinct => (EXIT_DISTINCT, "distinct"),
                OracleAnswer::Exhausted => (EXIT_EXHAUSTED, "exhausted"),
            };
            Ok(Outcome::new(code, text, json!(text)))
        }
        Command::NormalForm { word: text } => {
            let w = word(pres, text)?;
            match oracle_normal_form(pres, &w, config.budget()) {
                Ok(nf) => Ok(Outcome::new(EXIT_OK, fmt(&nf), json!(fmt(&nf)))),
                Err(Error::BudgetExhausted) => Ok(Outcome::new(EXIT_EXHAUSTED, "exhausted", json!("exhausted"))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Bench { base_len, doublings } => {
            let solver = Solver::new(pres.clone())?;
            let samples = bench_equals(&solver, *base_len, *doublings);
            let mut text = String::from("length\tns_per_query\n");
            for s in &samples {
                text.push_str(&format!("{}\t{:.0}\n", s.length, s.ns_per_query));
            }
            let rows: Vec<Value> = samples.iter().map(|s| json!({ "length": s.length, "ns_per_query": s.ns_per_query })).collect();
            Ok(Outcome::new(EXIT_OK, text, json!({ "samples": rows, "doubling_ratios": doubling_ratios(&samples) })))
        }
        Command::Fuzz { .. } => unreachable!("handled above"),
    }
}

fn decide(config: &CliConfig, solver: &Solver, u: &Word, v: &Word, p: &Word, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let mut trace = Trace::default();
    let equal = solver.wp_prefix_observed(u, v, p, &mut trace)?;
    if config.trace && !config.json {
        let _ = writeln!(out, "trace: {trace}");
    }
    let text = if equal { "equal" } else { "distinct" };
    let mut result = json!({ "answer": text });
    if config.trace {
        result["trace"] = json!(trace.steps.iter().map(|s| s.label()).collect::<Vec<_>>());
    }
    Ok(Outcome::new(if equal { EXIT_OK } else { EXIT_DISTINCT }, text, result))
}

fn analyze(solver: &Solver, u: &Word) -> Outcome {
    let pres = solver.presentation();
    let idx = solver.index();
    let fmt = |w: &[u32]| pres.format_word(w);
    let Some(rp) = idx.find_shortest_relation_prefix(u) else {
        return Outcome::new(
            EXIT_OK,
            format!("{} has no relation prefix\nrelprefix=none clean=false", fmt(u)),
            json!({ "relation_prefix": null }),
        );
    };
    let info = idx.info(rp.word_id);
    let a = &u[..rp.start];
    let clean = idx.is_clean(u, rp);
    let mut text = format!(
        "shortest relation prefix of {}: a={} X={} Y={} (relation word {})\n",
        fmt(u),
        fmt(a),
        fmt(info.x()),
        fmt(info.y()),
        fmt(&info.word)
    );
    let mut record_json = Value::Null;
    if let Some(rec) = idx.overlap_prefix_record(u, rp) {
        let mut parts = vec![format!("b={}", fmt(&rec.b))];
        for seg in &rec.segments {
            parts.push(format!("[X={} Y'={}]", fmt(&seg.x), fmt(&seg.y_prime)));
        }
        parts.push(format!("[X={} Y={}]", fmt(&rec.terminal_x), fmt(&rec.terminal_y)));
        text.push_str(&format!("overlap prefix (length {}): {}\n", rec.segments.len() + 1, parts.join(" ")));
        record_json = json!({
            "b": fmt(&rec.b),
            "segments": rec.segments.iter().map(|s| json!({ "x": fmt(&s.x), "y_prime": fmt(&s.y_prime) })).collect::<Vec<_>>(),
            "terminal": { "x": fmt(&rec.terminal_x), "y": fmt(&rec.terminal_y) },
            "total_len": rec.total_len,
        });
    }
    text.push_str(&format!("clean: {clean}\n"));
    text.push_str(&format!("relprefix={}|{}|{} clean={clean}", fmt(a), fmt(info.x()), fmt(info.y())));
    Outcome::new(
        EXIT_OK,
        text,
        json!({
            "relation_prefix": { "a": fmt(a), "x": fmt(info.x()), "y": fmt(info.y()), "relation_word": fmt(&info.word) },
            "overlap_prefix": record_json,
            "clean": clean,
        }),
    )
}

fn run_fuzz(config: &CliConfig, seeds: u64, pairs: usize) -> Outcome {
    let fuzz_config = FuzzConfig { pairs_per_seed: pairs, budget: config.budget(), ..FuzzConfig::default() };
    match fuzz(config.seed..config.seed + seeds, fuzz_config) {
        Ok(report) => {
            let code = if report.audit_violations.is_empty() { EXIT_OK } else { EXIT_DISTINCT };
            let mut text = format!(
                "seeds={} skipped={} queries={} dispatches={} audit_violations={}",
                report.seeds,
                report.skipped_seeds,
                report.queries,
                report.dispatches,
                report.audit_violations.len()
            );
            for v in &report.audit_violations {
                text.push_str(&format!("\n{v}"));
            }
            Outcome::new(
                code,
                text,
                json!({
                    "seeds": report.seeds,
                    "skipped": report.skipped_seeds,
                    "queries": report.queries,
                    "audit_violations": report.audit_violations,
                }),
            )
        }
        Err(cex) => Outcome::new(
            EXIT_DISTINCT,
            format!("disagreement found; minimized counterexample:\n{cex}"),
            json!({ "counterexample": cex.to_string() }),
        ),
    }
}
