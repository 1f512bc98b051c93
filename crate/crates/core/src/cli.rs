//! Command-line front end.
//!
//! Exit codes: 0 found / check passed / agreement, 1 no d.i.m., 2 input
//! error, 3 hypothesis violated, oracle budget exhausted, or disagreement.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::graph::{DimCertificate, Edge, Graph};
use crate::io::{parse_edge_lists, write_edge_list};
use crate::oracle::{brute_force_dim, OracleError};
use crate::patterns::{find_induced, random_s115_free, PatternKind, PatternWitness};
use crate::solver::{NoneReason, SolveResult, SolveStats, Solver, SolverOptions};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    Oracle,
    Compare,
    #[value(name = "check-s115")]
    #[serde(rename = "check-s115")]
    CheckS115,
    Generate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Clone, Debug)]
#[command(name = "dim", version, about = "Dominating induced matchings in S_{1,1,5}-free graphs")]
pub struct RunConfig {
    pub mode: Mode,
    /// Edge-list file; `-` or nothing reads stdin.
    pub input: Option<PathBuf>,
    /// Graph text given on the command line; `;` separates lines.
    #[arg(long, conflicts_with = "input")]
    pub inline: Option<String>,
    /// Print the S_{1,1,5} witness when the hypothesis is violated.
    #[arg(long)]
    pub strict: bool,
    /// Ask the oracle when the solver cannot decide.
    #[arg(long)]
    pub fallback: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Only look for d.i.m.s containing the edge `u v`.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pub xy: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

/// Parses `args` (including the program name) and runs.
pub fn main_with(args: &[String], stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, stdin, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_FOUND };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(cfg: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(cfg, stdin, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn run_inner(cfg: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, String> {
    if cfg.mode == Mode::Generate {
        return generate(cfg, out);
    }
    let text = read_input(cfg, stdin)?;
    let graphs = parse_edge_lists(&text).map_err(|e| format!("input {e}"))?;
    if graphs.is_empty() {
        return Err("input contains no graph".into());
    }
    let xy = match &cfg.xy {
        Some(v) => {
            let e = Edge::try_new(v[0], v[1]).ok_or("--xy needs two distinct vertices")?;
            Some(e)
        }
        None => None,
    };
    let mut code = EXIT_FOUND;
    for g in &graphs {
        if let Some(e) = xy {
            if e.v() >= g.n() || !g.has_edge(e.u(), e.v()) {
                return Err(format!("--xy {e} is not an edge of the input graph"));
            }
        }
        let report = match cfg.mode {
            Mode::Solve => solve_mode(cfg, g, xy),
            Mode::Oracle => oracle_mode(g, xy),
            Mode::Compare => compare_mode(cfg, g, xy),
            Mode::CheckS115 => check_mode(g),
            Mode::Generate => unreachable!("handled above"),
        };
        emit(cfg, g, &report, out).map_err(|e| e.to_string())?;
        code = code.max(report.code);
    }
    Ok(code)
}

fn read_input(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<String, String> {
    if let Some(text) = &cfg.inline {
        return Ok(text.replace(';', "\n"));
    }
    match &cfg.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn generate(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, String> {
    let (Some(n), Some(p), Some(seed)) = (cfg.n, cfg.p, cfg.seed) else {
        return Err("generate requires --n, --p and --seed".into());
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("--p must lie in [0, 1], got {p}"));
    }
    for i in 0..cfg.count {
        let g = random_s115_free(n, p, seed.wrapping_add(i as u64));
        let written = match cfg.format {
            Format::Text => write!(out, "{}", write_edge_list(&g)),
            Format::Json => writeln!(
                out,
                "{}",
                json!({"mode": "generate", "n": g.n(), "m": g.m(), "result": "GRAPH", "edges": edge_pairs(g.edges()), "stats": Value::Null})
            ),
        };
        written.map_err(|e| e.to_string())?;
    }
    Ok(EXIT_FOUND)
}

/// What one mode produced for one graph.
struct Report {
    code: i32,
    result: &'static str,
    lines: Vec<String>,
    edges: Vec<Edge>,
    extra: serde_json::Map<String, Value>,
    stats: Option<SolveStats>,
}

impl Report {
    fn new(code: i32, result: &'static str) -> Self {
        Report { code, result, lines: Vec::new(), edges: Vec::new(), extra: serde_json::Map::new(), stats: None }
    }

    fn dim(m: &DimCertificate) -> Self {
        let mut r = Report::new(EXIT_FOUND, "DIM");
        r.lines.push(format!("DIM {}", m.len()));
        r.lines.extend(m.edges().iter().map(|e| e.to_string()));
        r.edges = m.edges().to_vec();
        r
    }

    fn none(reason: &str) -> Self {
        let mut r = Report::new(EXIT_NONE, "NONE");
        r.lines.push("NONE".into());
        r.lines.push(format!("reason: {reason}"));
        r.extra.insert("reason".into(), json!(reason));
        r
    }
}

fn none_reason(r: &NoneReason) -> String {
    match r {
        NoneReason::K4(_) => "K4 found".into(),
        NoneReason::Preprocessing(c) => format!("preprocessing contradiction: {c}"),
        NoneReason::Exhausted => "no edge extends to a d.i.m.".into(),
    }
}

fn witness_line(w: &PatternWitness) -> String {
    w.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn solve_mode(cfg: &RunConfig, g: &Graph, xy: Option<Edge>) -> Report {
    let solver = Solver::new(SolverOptions { jobs: cfg.jobs.max(1), ..SolverOptions::default() });
    let outcome = match xy {
        Some(e) => solver.solve_with_xy(g, e),
        None => solver.solve(g),
    };
    let mut report = match &outcome.result {
        SolveResult::Found(m) => Report::dim(m),
        SolveResult::None(r) => Report::none(&none_reason(r)),
        SolveResult::HypothesisViolated(w) => {
            if cfg.fallback {
                let mut r = oracle_mode(g, xy);
                r.lines.push("# decided by the oracle".into());
                r.extra.insert("fallback".into(), json!(true));
                r
            } else {
                let mut r = Report::new(EXIT_UNDECIDED, "UNKNOWN");
                r.lines.push("UNKNOWN (hypothesis violated)".into());
                if cfg.strict {
                    r.lines.push(format!("witness: {}", witness_line(w)));
                    r.extra.insert("witness".into(), json!(w.vertices));
                }
                r
            }
        }
    };
    report.stats = Some(outcome.stats);
    report
}

fn oracle_mode(g: &Graph, xy: Option<Edge>) -> Report {
    let found = match xy {
        None => brute_force_dim(g).map(|r| r.witness),
        Some(e) => crate::oracle::enumerate_dims(g).map(|all| all.into_iter().find(|m| m.edges().contains(&e))),
    };
    match found {
        Ok(Some(m)) => Report::dim(&m),
        Ok(None) => Report::none("exhaustive search found no d.i.m."),
        Err(e @ OracleError::BudgetExceeded { .. }) => {
            let mut r = Report::new(EXIT_UNDECIDED, "UNKNOWN");
            r.lines.push(format!("UNKNOWN ({e})"));
            r
        }
    }
}

fn compare_mode(cfg: &RunConfig, g: &Graph, xy: Option<Edge>) -> Report {
    let s = solve_mode(&RunConfig { strict: true, fallback: false, ..cfg.clone() }, g, xy);
    let o = oracle_mode(g, xy);
    let decided = |r: &Report| matches!(r.result, "DIM" | "NONE");
    let agree = decided(&s) && decided(&o) && s.result == o.result;
    let mut r = Report::new(if agree { EXIT_FOUND } else { EXIT_UNDECIDED }, if agree { "AGREE" } else { "DISAGREE" });
    r.lines.push(r.result.to_string());
    for (who, part) in [("solver", &s), ("oracle", &o)] {
        let head = part.lines.first().cloned().unwrap_or_default();
        let tail: Vec<String> = part.lines.iter().skip(1).cloned().collect();
        r.lines.push(if tail.is_empty() { format!("{who}: {head}") } else { format!("{who}: {head}; {}", tail.join(", ")) });
        r.extra.insert(who.into(), json!({"result": part.result, "edges": edge_pairs(&part.edges)}));
    }
    r.edges = s.edges.clone();
    r.stats = s.stats;
    r
}

fn check_mode(g: &Graph) -> Report {
    match find_induced(g, PatternKind::S115) {
        None => {
            let mut r = Report::new(EXIT_FOUND, "S115-FREE");
            r.lines.push("S115-FREE".into());
            r
        }
        Some(w) => {
            let mut r = Report::new(EXIT_UNDECIDED, "S115");
            r.lines.push(format!("S115 {}", witness_line(&w)));
            r.extra.insert("witness".into(), json!(w.vertices));
            r
        }
    }
}

fn edge_pairs(edges: &[Edge]) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.u(), e.v()]).collect()
}

fn emit(cfg: &RunConfig, g: &Graph, r: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    match cfg.format {
        Format::Text => {
            for l in &r.lines {
                writeln!(out, "{l}")?;
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("mode".into(), json!(cfg.mode));
            obj.insert("n".into(), json!(g.n()));
            obj.insert("m".into(), json!(g.m()));
            obj.insert("result".into(), json!(r.result));
            obj.insert("edges".into(), json!(edge_pairs(&r.edges)));
            obj.insert("stats".into(), r.stats.as_ref().map_or(Value::Null, |s| json!(s)));
            obj.extend(r.extra.clone());
            writeln!(out, "{}", Value::Object(obj))?;
        }
    }
    Ok(())
}
