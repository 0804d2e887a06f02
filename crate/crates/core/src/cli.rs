//! Command-line front end. [`run`] parses arguments, writes text or JSON to
//! the given writer and returns the exit code: 0 on success, 1 when a
//! verification fails, 2 on usage or parse errors.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::circulant::{circ_dim, commutator_vectors, stab_rank_t, theta_b, theta_c, w_codim};
use crate::error::{Error, Result};
use crate::formulas::{derived_index_log, exact_power, stabilizer_index_log};
use crate::tuples::{are_isomorphic, classify, first_difference, parse_residues, second_difference, DefiningTuple};
use crate::treeauto::{TreeWord, Vertex};
use crate::verify::{self, Check, VerificationPlan, VerificationReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_PORTRAIT_DEPTH: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "ggs", version, about = "Derived series and level stabilizers of GGS-groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct TupleArgs {
    /// Odd prime p.
    #[arg(long)]
    p: u32,
    /// Defining tuple e_1,…,e_{p−1}.
    #[arg(long, allow_hyphen_values = true)]
    e: String,
}

impl TupleArgs {
    fn tuple(&self) -> Result<DefiningTuple> {
        parse_tuple(self.p, &self.e)
    }
}

fn parse_tuple(p: u32, text: &str) -> Result<DefiningTuple> {
    DefiningTuple::new(p, &parse_residues(text, 0)?)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Series {
    Derived,
    Stabilizer,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Difference tuples, symmetry bits, circulant data.
    Invariants(TupleArgs),
    /// Closed-form index of a derived term or level stabilizer.
    Index {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, value_enum, default_value = "derived")]
        series: Series,
        #[arg(long)]
        n: u32,
    },
    /// Search for (λ, μ) with e_i = μ·d_{λi}.
    Isomorphic {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Sections of a word down to a given depth.
    Portrait {
        #[command(flatten)]
        tuple: TupleArgs,
        /// A word such as "b a^2 b^-1 a".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Start at this vertex, given as a digit string.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Brute-force checks for one tuple.
    Verify {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, default_value_t = 3)]
        level: usize,
        /// Comma-separated subset of derived, stabilizers, branching,
        /// small_quotients, local_laws, g2_structure, lattice, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        /// Only check the n-th derived term.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Brute-force checks over all tuples for a prime, a seeded sample or a
    /// corpus file.
    Sweep {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value = "all")]
        checks: String,
        /// Number of random tuples instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// File with one `p=…, e=…` line per tuple.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

struct Output {
    command: &'static str,
    input: Value,
    results: Vec<Value>,
    text: String,
    verdict: Verdict,
}

impl Output {
    fn new(command: &'static str, input: Value) -> Self {
        Output {
            command,
            input,
            results: Vec::new(),
            text: String::new(),
            verdict: Verdict::Pass,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn tuple_input(e: &DefiningTuple) -> Value {
    json!({ "p": e.p(), "e": e.entries() })
}

/// `p^k (=decimal)` when the decimal fits in 64 bits, else `p^k`.
fn power_text(p: u32, k: u64) -> String {
    let n = exact_power(p, k);
    if n.bits() <= 64 {
        format!("{p}^{k} (={n})")
    } else {
        format!("{p}^{k}")
    }
}

fn cmd_invariants(args: &TupleArgs) -> Result<Output> {
    let e = args.tuple()?;
    let mut out = Output::new("invariants", tuple_input(&e));
    let class = classify(&e);
    let t = stab_rank_t(&e)?;
    let ds = commutator_vectors(&e);
    let (e1, e2) = (first_difference(&e), second_difference(&e));
    let (tb, tc) = (theta_b(&e), theta_c(&e));
    out.line(format!("e   = ({})", e.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
    out.line(format!("e'  = {e1}"));
    out.line(format!("e'' = {e2}"));
    out.line(format!(
        "class (sym(e), con(e'), sym(e'')) = ({},{},{}), class value {}",
        class.sym_e, class.con_eprime, class.sym_esecond, class.class_value
    ));
    out.line(format!("t = {t}"));
    out.line(format!("w_codim = {}", w_codim(&e)));
    out.line(format!("theta(b) = {tb} (circulant dim {})", circ_dim(&tb)));
    out.line(format!("theta(c) = {tc} (circulant dim {})", circ_dim(&tc)));
    for (i, d) in ds.iter().enumerate() {
        out.line(format!("d_{} = {d} (circulant dim {})", i + 1, circ_dim(d)));
    }
    out.results.push(json!({
        "e_prime": e1.entries(),
        "e_second": e2.entries(),
        "sym_e": class.sym_e,
        "con_eprime": class.con_eprime,
        "sym_esecond": class.sym_esecond,
        "class_value": class.class_value,
        "t": t,
        "w_codim": w_codim(&e),
        "theta_b": { "coords": tb.coords(), "circ_dim": circ_dim(&tb) },
        "theta_c": { "coords": tc.coords(), "circ_dim": circ_dim(&tc) },
        "d": ds.iter().map(|d| json!({ "coords": d.coords(), "circ_dim": circ_dim(d) })).collect::<Vec<_>>(),
    }));
    Ok(out)
}

fn cmd_index(args: &TupleArgs, series: Series, n: u32) -> Result<Output> {
    let e = args.tuple()?;
    let mut input = tuple_input(&e);
    input["n"] = json!(n);
    let (name, log, label) = match series {
        Series::Derived => ("derived", derived_index_log(&e, n)?, format!("|G : G^({n})|")),
        Series::Stabilizer => ("stabilizer", stabilizer_index_log(&e, n)?, format!("|G : Stab({n})|")),
    };
    input["series"] = json!(name);
    let mut out = Output::new("index", input);
    let p = e.p();
    out.line(format!("log_{p} {label} = {log}"));
    out.line(format!("index {}", power_text(p, log)));
    out.results.push(json!({
        "series": name,
        "n": n,
        "log": log,
        "index": exact_power(p, log).to_string(),
    }));
    Ok(out)
}

fn cmd_isomorphic(args: &TupleArgs, d: &str) -> Result<Output> {
    let e = args.tuple()?;
    let d = parse_tuple(args.p, d)?;
    let mut input = tuple_input(&e);
    input["d"] = json!(d.entries());
    let mut out = Output::new("isomorphic", input);
    match are_isomorphic(&e, &d)? {
        Some(w) => {
            out.line(format!("λ={} μ={}", w.lambda, w.mu));
            out.results.push(json!({ "isomorphic": true, "lambda": w.lambda, "mu": w.mu }));
        }
        None => {
            out.line("not isomorphic");
            out.results.push(json!({ "isomorphic": false }));
        }
    }
    Ok(out)
}

fn cmd_portrait(args: &TupleArgs, word: &str, vertex: Option<&str>, depth: usize) -> Result<Output> {
    if depth > MAX_PORTRAIT_DEPTH {
        return Err(Error::Usage(format!("depth must be at most {MAX_PORTRAIT_DEPTH}")));
    }
    let e = Arc::new(args.tuple()?);
    let p = e.p();
    let w = TreeWord::parse(&e, word)?;
    let start = match vertex {
        Some(v) => Vertex::parse(v, p)?,
        None => Vertex::root(),
    };
    let mut input = tuple_input(&e);
    input["word"] = json!(word);
    input["depth"] = json!(depth);
    let mut out = Output::new("portrait", input);
    let top = w.section(&start);
    out.line(format!("word {w}, root action a^{}", w.root_action()));
    if start.level() > 0 {
        out.line(format!("section at {start}: {top}"));
    }
    let contraction = top.contract(top.default_depth_budget());
    out.line(format!("contraction: {contraction:?}"));
    let mut nodes = Vec::new();
    let mut stack = vec![(Vertex::root(), top.clone())];
    while let Some((v, s)) = stack.pop() {
        let nucleus = s.nucleus_element();
        if v.level() > 0 {
            let indent = "  ".repeat(v.level() - 1);
            let tag = nucleus.map(|n| format!("  [{n}]")).unwrap_or_default();
            out.line(format!("{indent}{v}: {s}{tag}"));
        }
        nodes.push(json!({
            "vertex": v.digits,
            "word": s.to_string(),
            "root_action": s.root_action().value(),
            "nucleus": nucleus.map(|n| n.to_string()),
        }));
        if v.level() < depth && !(v.level() > 0 && s.is_identity()) {
            for x in (0..p).rev() {
                let mut child = v.digits.clone();
                child.push(x);
                stack.push((Vertex { digits: child }, s.section_at(x)));
            }
        }
    }
    out.results.push(json!({
        "word": w.to_string(),
        "root_action": w.root_action().value(),
        "contraction": format!("{contraction:?}"),
        "nodes": nodes,
    }));
    Ok(out)
}

fn report_lines(out: &mut Output, report: &VerificationReport) {
    for r in &report.records {
        out.line(format!(
            "{:<4} {:<52} predicted {}  computed {}",
            r.verdict, r.statement, r.predicted, r.computed
        ));
        if let Some(note) = &r.note {
            out.line(format!("     note: {note}"));
        }
    }
}

fn cmd_verify(args: &TupleArgs, level: usize, checks: &str, n: Option<u32>) -> Result<Output> {
    let e = args.tuple()?;
    let mut plan = VerificationPlan::new(e.clone(), level, Check::parse_list(checks)?);
    plan.derived_n = n;
    let report = verify::run_plan(&plan)?;
    let mut input = tuple_input(&e);
    input["level"] = json!(level);
    input["checks"] = json!(plan.checks);
    let mut out = Output::new("verify", input);
    report_lines(&mut out, &report);
    out.verdict = report.verdict();
    out.line(format!("verdict: {}", out.verdict));
    out.results = report
        .records
        .iter()
        .map(|r| serde_json::to_value(r).expect("serializable"))
        .collect();
    Ok(out)
}

fn cmd_sweep(
    p: Option<u32>,
    level: usize,
    checks: &str,
    sample: Option<usize>,
    seed: u64,
    corpus: Option<&PathBuf>,
) -> Result<Output> {
    let checks = Check::parse_list(checks)?;
    let report = match corpus {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|err| Error::Usage(format!("cannot read {}: {err}", path.display())))?;
            let tuples = verify::parse_corpus(&text)?;
            if let Some(p) = p {
                if tuples.iter().any(|t| t.p() != p) {
                    return Err(Error::Usage(format!("corpus contains tuples not over p = {p}")));
                }
            }
            verify::sweep_tuples(&tuples, level, &checks, None)?
        }
        None => {
            let p = p.ok_or_else(|| Error::Usage("sweep needs --p or --corpus".into()))?;
            verify::sweep(p, level, &checks, sample, seed)?
        }
    };
    let input = json!({ "p": report.p, "e": Value::Null, "level": level, "checks": checks, "seed": report.seed });
    let mut out = Output::new("sweep", input);
    for r in &report.reports {
        if r.verdict() == Verdict::Fail {
            let e = r.e.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            out.line(format!("e={e}: fail"));
            for rec in r.records.iter().filter(|x| x.verdict == Verdict::Fail) {
                out.line(format!("  {}: predicted {} computed {}", rec.statement, rec.predicted, rec.computed));
            }
        }
    }
    out.line(format!("{}/{} pass", report.passed, report.tuples));
    out.verdict = report.verdict();
    out.results = report
        .reports
        .iter()
        .map(|r| json!({ "e": r.e, "verdict": r.verdict(), "records": r.records }))
        .collect();
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Invariants(t) => cmd_invariants(t),
        Command::Index { tuple, series, n } => cmd_index(tuple, *series, *n),
        Command::Isomorphic { tuple, d } => cmd_isomorphic(tuple, d),
        Command::Portrait {
            tuple,
            word,
            vertex,
            depth,
        } => cmd_portrait(tuple, word, vertex.as_deref(), *depth),
        Command::Verify { tuple, level, checks, n } => cmd_verify(tuple, *level, checks, *n),
        Command::Sweep {
            p,
            level,
            checks,
            sample,
            seed,
            corpus,
        } => cmd_sweep(*p, *level, checks, *sample, *seed, corpus.as_ref()),
    }
}

/// Runs the command line `args` (including the program name), writing
/// normal output to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let code = if o.verdict == Verdict::Fail { EXIT_MISMATCH } else { EXIT_OK };
            let written = if cli.json {
                let doc = json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": o.command,
                    "input": o.input,
                    "results": o.results,
                    "verdict": o.verdict,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
