//! `defcol`: reproducible command-line runs of the defective colouring
//! algorithms in `defcol-core`.
//!
//! Every subcommand prints a human-readable summary and, with `--json PATH`,
//! writes a versioned run record. Exit status is 0 on success, 1 when a
//! result fails validation and 2 on a usage or input error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

mod bench;
mod commands;
pub mod format;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const MODE_NAMES: [&str; 5] = [
    "theorem",
    "adaptive",
    "naive-lll",
    "graph-maxcut",
    "greedy-proper",
];

#[derive(Parser)]
#[command(
    name = "defcol",
    version,
    about = "Defective colouring of uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Decompose the edges into a-petal sunflowers plus a small leftover.
    Sunflower(SunflowerArgs),
    /// Local-search partition minimising same-part codegree.
    Maxcut(MaxcutArgs),
    /// Colour an instance and verify the result.
    Color(ColorArgs),
    /// Check an assignment file against a defect bound.
    Verify(VerifyArgs),
    /// Exact minimum number of colours by backtracking (small instances).
    Exact(ExactArgs),
    /// Monte Carlo estimates under uniform random colourings.
    Probe(ProbeArgs),
    /// Run a built-in ensemble across the colouring modes.
    Bench(BenchArgs),
}

#[derive(Args, Default)]
struct RecordArg {
    /// Write a machine-readable run record to PATH.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Complete,
    Grid,
    Random,
    RandomLinear,
}

#[derive(Args, Serialize)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (complete, random) or side length (grid).
    #[arg(long)]
    n: usize,
    /// Edge size for complete and random families.
    #[arg(long)]
    u: Option<usize>,
    /// Grid dimension; edges have r + 1 vertices.
    #[arg(long)]
    r: Option<usize>,
    /// Maximum degree for random families (default: unbounded).
    #[arg(long)]
    cap: Option<usize>,
    /// Target edge count for random families.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the instance here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Args, Serialize)]
struct SunflowerArgs {
    instance: PathBuf,
    #[arg(long)]
    petals: usize,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Args, Serialize)]
struct MaxcutArgs {
    instance: PathBuf,
    #[arg(long)]
    parts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Args, Serialize)]
struct ColorArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    defect: usize,
    #[arg(long, default_value = "adaptive", value_parser = clap::builder::PossibleValuesParser::new(MODE_NAMES))]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resamples per nibble attempt (default 1000·n; adaptive probes 10·n).
    #[arg(long)]
    budget: Option<u64>,
    /// Override the terrible-vertex threshold of every round.
    #[arg(long)]
    threshold: Option<usize>,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    instance: PathBuf,
    assignment: PathBuf,
    #[arg(long, default_value_t = 0)]
    defect: usize,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Args, Serialize)]
struct ExactArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    defect: usize,
    /// Largest palette tried.
    #[arg(long)]
    limit: usize,
    /// Run even above the vertex-count guard.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ProbeKind {
    MonoEdge,
    BadVertex,
}

#[derive(Args, Serialize)]
struct ProbeArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    what: ProbeKind,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    vertex: usize,
    #[arg(long, default_value_t = 0)]
    defect: usize,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
#[allow(clippy::enum_variant_names)]
enum Suite {
    GraphsSmall,
    Uniform3Small,
    Linear3Small,
    GridSmall,
}

#[derive(Args, Serialize)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 8)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    record: RecordArg,
}

/// Why a command stopped early.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m,
        }
    }
}

impl From<defcol_core::Error> for Failure {
    fn from(e: defcol_core::Error) -> Self {
        match e {
            defcol_core::Error::BudgetExhausted { .. } => Failure::Invalid(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command produced.
struct Report {
    stdout: String,
    outcome: Value,
    valid: bool,
    digest: Option<String>,
    /// Per-item timings, kept apart from the deterministic outcome.
    timings_ms: Vec<f64>,
}

impl Report {
    fn new(stdout: String, outcome: Value, valid: bool, digest: Option<String>) -> Self {
        Report {
            stdout,
            outcome,
            valid,
            digest,
            timings_ms: Vec::new(),
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    let read = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        std::fs::read(path)
    };
    read.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(defcol_core::Hypergraph, String), Failure> {
    let bytes = read_input(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let h = format::parse_instance(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok((h, digest(&bytes)))
}

fn record_value<P: Serialize>(
    command: &str,
    params: &P,
    seed: Option<u64>,
    report: &Report,
    status: i32,
    total_ms: f64,
) -> Value {
    let mut wall_clock = json!({ "total_ms": total_ms });
    if !report.timings_ms.is_empty() {
        wall_clock["items_ms"] = json!(report.timings_ms);
    }
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "params": serde_json::to_value(params).unwrap_or(Value::Null),
        "seed": seed,
        "instance_digest": report.digest,
        "outcome": report.outcome,
        "status": status,
        "wall_clock": wall_clock,
    })
}

fn execute<P: Serialize>(
    command: &str,
    params: &P,
    seed: Option<u64>,
    record: &RecordArg,
    body: impl FnOnce() -> Result<Report, Failure>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let start = Instant::now();
    let (report, status) = match body() {
        Ok(r) => {
            let status = if r.valid { EXIT_OK } else { EXIT_INVALID };
            (r, status)
        }
        Err(f) => {
            let _ = writeln!(err, "defcol {command}: {}", f.message());
            let status = f.status();
            (
                Report::new(String::new(), json!({ "error": f.message() }), false, None),
                status,
            )
        }
    };
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    if out.write_all(report.stdout.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    if let Some(path) = &record.json {
        let value = record_value(command, params, seed, &report, status, total_ms);
        let mut text = serde_json::to_string_pretty(&value).unwrap_or_default();
        text.push('\n');
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "defcol {command}: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    status
}

/// Runs one command line (including the program name) and returns its exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match &cli.command {
        Command::Generate(a) => execute(
            "generate",
            a,
            Some(a.seed),
            &a.record,
            || commands::generate(a),
            out,
            err,
        ),
        Command::Sunflower(a) => execute(
            "sunflower",
            a,
            None,
            &a.record,
            || commands::sunflower(a),
            out,
            err,
        ),
        Command::Maxcut(a) => execute(
            "maxcut",
            a,
            Some(a.seed),
            &a.record,
            || commands::maxcut(a),
            out,
            err,
        ),
        Command::Color(a) => execute(
            "color",
            a,
            Some(a.seed),
            &a.record,
            || commands::color(a),
            out,
            err,
        ),
        Command::Verify(a) => execute(
            "verify",
            a,
            None,
            &a.record,
            || commands::verify(a),
            out,
            err,
        ),
        Command::Exact(a) => execute("exact", a, None, &a.record, || commands::exact(a), out, err),
        Command::Probe(a) => execute(
            "probe",
            a,
            Some(a.seed),
            &a.record,
            || commands::probe(a),
            out,
            err,
        ),
        Command::Bench(a) => execute(
            "bench",
            a,
            Some(a.seed),
            &a.record,
            || bench::bench(a),
            out,
            err,
        ),
    }
}
