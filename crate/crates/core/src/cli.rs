//! The `leavitt` command line.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::corpus::{corpus, CorpusEntry, LADDER_ENTRIES};
use crate::grading::{
    strong_grading_verdict, verify_decomposition, vertex_in_sm1s1, AnalysisReport, GradingError,
    Verdict, DEFAULT_DEPTH_CAP,
};
use crate::graph::{export_dot, parse_graph, GraphSpec, Vertex};
use crate::lpa::{algebra_graph, Lpa};
use crate::path::YStatus;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_CAP: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Strong Z-grading of Leavitt path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the algebra of a graph is strongly graded.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the S_-1 S_1 decomposition of one vertex.
    Witness {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in corpus and compare with the expected verdicts.
    Corpus {
        #[arg(long)]
        json: bool,
    },
    /// Export a graph (or a window of a ladder) as DOT.
    Dot {
        file: PathBuf,
        #[arg(long)]
        window: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Multiply two algebra elements and print the normal form.
    Mult {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Window size used for ladder graphs.
        #[arg(long, default_value_t = 4)]
        window: u64,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn new(code: i32, msg: impl Into<String>) -> Self {
        Failure {
            code,
            msg: msg.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `argv` (program name first) against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit output and error streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text);
            let _ = write!(err, "error: {text}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Analyze { file, json } => analyze(&file, json, out),
        Command::Witness {
            file,
            vertex,
            verify,
            depth_cap,
            json,
        } => witness(&file, &vertex, verify, depth_cap, json, out),
        Command::Corpus { json } => run_corpus(json, out),
        Command::Dot { file, window, out: dest } => dot(&file, window, dest.as_deref(), out),
        Command::Mult {
            file,
            lhs,
            rhs,
            window,
        } => mult(&file, &lhs, &rhs, window, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure::new(EXIT_USAGE, format!("write failed: {e}"))
}

fn load(file: &FsPath) -> Result<GraphSpec, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", file.display())))?;
    parse_graph(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}:{e}", file.display())))
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn analyze(file: &FsPath, json: bool, out: &mut dyn Write) -> Outcome {
    let g = load(file)?;
    let report = strong_grading_verdict(&g);
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).unwrap())
    } else {
        write!(out, "{}", report.render_text())
    }
    .map_err(io_fail)?;
    if !report.all_verified() {
        return Err(Failure::new(EXIT_CAP, "a vertex witness failed verification"));
    }
    Ok(verdict_exit_code(report.strongly_graded))
}

fn witness(
    file: &FsPath,
    vertex: &str,
    verify: bool,
    depth_cap: usize,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let g = load(file)?;
    let v = Vertex::parse_label(vertex)
        .filter(|v| g.contains(v))
        .ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown vertex `{vertex}`")))?;
    let dec = vertex_in_sm1s1(&g, &v, depth_cap).map_err(|e| match e {
        GradingError::DepthCap { .. } => Failure::new(EXIT_CAP, e.to_string()),
        GradingError::Sink(_) | GradingError::InfiniteEmitter(_) => Failure::new(EXIT_NO, e.to_string()),
        GradingError::Graph(_) => Failure::new(EXIT_USAGE, e.to_string()),
    })?;
    let verified = verify.then(|| verify_decomposition(&g, &dec));
    if json {
        let mut j = serde_json::to_value(&dec).unwrap();
        if let Some(ok) = verified {
            j["verified"] = json!(ok);
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&j).unwrap()).map_err(io_fail)?;
    } else {
        let mut text = format!("vertex {} (k = {})\n", dec.vertex, dec.k);
        for p in &dec.pairs {
            text += &format!("  alpha = {:<16} beta = {}\n", p.alpha.to_string(), p.beta);
        }
        if let Some(ok) = verified {
            text += &format!("verified: {ok}\n");
        }
        write!(out, "{text}").map_err(io_fail)?;
    }
    match verified {
        Some(false) => Err(Failure::new(EXIT_CAP, "decomposition failed verification")),
        _ => Ok(0),
    }
}

/// One corpus row: the entry and its report.
pub struct CorpusRow {
    pub entry: CorpusEntry,
    pub report: AnalysisReport,
}

impl CorpusRow {
    pub fn matches(&self) -> bool {
        let holds = self.report.condition_y.status == YStatus::Holds;
        holds == self.entry.expected_y
    }
}

/// Analyzes every corpus entry on its own thread; rows keep corpus order.
pub fn corpus_rows() -> Vec<CorpusRow> {
    std::thread::scope(|s| {
        let handles: Vec<_> = corpus()
            .into_iter()
            .map(|entry| {
                s.spawn(move || {
                    let report = strong_grading_verdict(&entry.spec);
                    CorpusRow { entry, report }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    })
}

fn run_corpus(json: bool, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let rows = corpus_rows();
    let elapsed = started.elapsed();
    let ladder_ok = rows[..LADDER_ENTRIES].iter().filter(|r| r.matches()).count();
    let all_ok = rows.iter().all(CorpusRow::matches);
    if json {
        let entries: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.entry.name,
                    "expected_Y": r.entry.expected_y,
                    "match": r.matches(),
                    "report": r.report.to_json(),
                })
            })
            .collect();
        let doc = json!({
            "entries": entries,
            "matches": rows.iter().filter(|r| r.matches()).count(),
            "total": rows.len(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(io_fail)?;
    } else {
        let mut text = format!(
            "{:<10} {:<9} {:<14} {:<20} {:<12} {:<16} {}\n",
            "graph", "expected", "condition (Y)", "reason", "start", "strongly graded", "match"
        );
        for r in &rows {
            let y = &r.report.condition_y;
            let start = y
                .counterexample
                .as_ref()
                .map_or("-".to_string(), |c| format!("{} k={}", c.start, c.k));
            text += &format!(
                "{:<10} {:<9} {:<14} {:<20} {:<12} {:<16} {}\n",
                r.entry.name,
                if r.entry.expected_y { "holds" } else { "fails" },
                y.status.to_string(),
                y.reason.to_string(),
                start,
                r.report.strongly_graded.to_string(),
                if r.matches() { "ok" } else { "MISMATCH" }
            );
        }
        text += &format!(
            "{ladder_ok}/{LADDER_ENTRIES} matches on A-K; {}/{} overall; {:.2?}\n",
            rows.iter().filter(|r| r.matches()).count(),
            rows.len(),
            elapsed
        );
        write!(out, "{text}").map_err(io_fail)?;
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn dot(file: &FsPath, window: u64, dest: Option<&FsPath>, out: &mut dyn Write) -> Outcome {
    if window == 0 {
        return Err(Failure::new(EXIT_USAGE, "--window must be at least 1"));
    }
    let g = load(file)?;
    let text = export_dot(&g, window);
    match dest {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", p.display())))?,
        None => write!(out, "{text}").map_err(io_fail)?,
    }
    Ok(0)
}

fn mult(
    file: &FsPath,
    lhs: &str,
    rhs: &str,
    window: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if window == 0 {
        return Err(Failure::new(EXIT_USAGE, "--window must be at least 1"));
    }
    let g = load(file)?;
    let fg = algebra_graph(&g, window);
    let lpa = Lpa::new(&fg);
    let parse = |label: &str, text: &str| {
        lpa.parse_element(text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{label}: {e}")))
    };
    let x = parse("--lhs", lhs)?;
    let y = parse("--rhs", rhs)?;
    for w in x.warnings.iter().chain(&y.warnings) {
        let _ = writeln!(err, "warning: {w}");
    }
    let product = lpa.multiply(&x.element, &y.element);
    writeln!(out, "{}", lpa.render(&product)).map_err(io_fail)?;
    Ok(0)
}
