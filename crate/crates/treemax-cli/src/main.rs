//! Command-line front end: evaluate sharp bounds, build extremizers, run
//! the verification suites, sweep parameter grids, and apply the maximal
//! operator to leaf functions.
//!
//! Exit codes: 0 on success, 1 when verification finds a violation, 2 for
//! parse, constraint, or I/O errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use treemax::{
    audit_bounds, bound_full_space, bound_on_set, extremal_large_set, extremal_small_set,
    extremizer_g0, integrate_over, maximize_hardy_integral, staircase_extremizer, AdmissibleTriple,
    AuditConfig, LeafFunction, SetBoundQuery, Tree,
};

#[derive(Parser)]
#[command(
    name = "treemax",
    about = "Sharp L1 bounds for the maximal operator on trees: bounds, extremizers, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sharp bound value.
    Bound(BoundArgs),
    /// Build an extremal function and report achieved value vs bound.
    Extremize(ExtremizeArgs),
    /// Run the invariant audit; exit 1 on any violation.
    Verify(VerifyArgs),
    /// Evaluate bound and construction over a parameter grid.
    Sweep(SweepArgs),
    /// Apply the maximal operator to a leaf function read from JSON.
    Maximal(MaximalArgs),
    /// Locally maximize the running-average functional and write the trace.
    Search(SearchArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Which bound: 1 = full space (f, m1, m2), 2 = set bound (f, m, k).
    #[arg(long)]
    theorem: u8,
    #[arg(long)]
    f: f64,
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Two-valued extremizer of the full-space bound.
    G0,
    /// Tree staircase approaching the full-space bound.
    Staircase,
    /// Set construction for k <= f/M (exact value kM).
    SmallSet,
    /// Set construction for f/M <= k <= 1 (approaches f + f log(Mk/f)).
    LargeSet,
}

#[derive(Args)]
struct ExtremizeArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long)]
    f: f64,
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long, default_value_t = 2)]
    arity: u32,
    #[arg(long, default_value_t = 16)]
    depth: u32,
    #[arg(long, default_value_t = 4)]
    levels: u32,
    /// Write the JSON artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Preset {
    Quick,
    Default,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Preset::Default)]
    preset: Preset,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the per-tree leaf-function sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Write the JSON report here as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Which bound family to sweep: 1 or 2.
    #[arg(long)]
    theorem: u8,
    /// Values for f (comma separated).
    #[arg(long, value_delimiter = ',')]
    f: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    m1: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    m2: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    m: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    arity: u32,
    #[arg(long, default_value_t = 12)]
    depth: u32,
    #[arg(long, default_value_t = 4)]
    levels: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaximalArgs {
    /// Path to a leaf-function JSON document.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    f: f64,
    #[arg(long)]
    m1: f64,
    #[arg(long)]
    m2: f64,
    #[arg(long, default_value_t = 64)]
    pieces: usize,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the trace CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Lib(treemax::Error),
    Io(std::io::Error),
    Json(serde_json::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Lib(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "{e}"),
            Self::Json(e) => write!(f, "{e}"),
            Self::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<treemax::Error> for CliError {
    fn from(e: treemax::Error) -> Self {
        Self::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Json(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Bound(args) => bound_cmd(args),
        Command::Extremize(args) => extremize_cmd(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Maximal(args) => maximal_cmd(args),
        Command::Search(args) => search_cmd(args),
    }
}

fn require(opt: Option<f64>, name: &str, theorem: u8) -> Result<f64, CliError> {
    opt.ok_or_else(|| CliError::Usage(format!("--{name} is required for --theorem {theorem}")))
}

/// The output directory can be overridden through TREEMAX_OUT_DIR; only the
/// directory, never the file name.
fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os("TREEMAX_OUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let path = resolve_out(path);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

/// Full-precision decimal: 17 significant digits survive a f64 round trip.
fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

fn bound_cmd(args: BoundArgs) -> Result<ExitCode, CliError> {
    let value = match args.theorem {
        1 => {
            let m1 = require(args.m1, "m1", 1)?;
            let m2 = require(args.m2, "m2", 1)?;
            bound_full_space(&AdmissibleTriple::new(m1, args.f, m2)?)
        }
        2 => {
            let m = require(args.m, "m", 2)?;
            let k = require(args.k, "k", 2)?;
            bound_on_set(&SetBoundQuery::new(args.f, m, k)?)
        }
        other => return Err(CliError::Usage(format!("--theorem must be 1 or 2, got {other}"))),
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn extremize_cmd(args: ExtremizeArgs) -> Result<ExitCode, CliError> {
    let artifact = match args.construction {
        Construction::G0 => {
            let m1 = require(args.m1, "m1", 1)?;
            let m2 = require(args.m2, "m2", 1)?;
            let triple = AdmissibleTriple::new(m1, args.f, m2)?;
            let g = extremizer_g0(&triple);
            let achieved = g.hardy_integral();
            let bound = bound_full_space(&triple);
            serde_json::json!({
                "construction": "g0",
                "params": {"f": args.f, "m1": m1, "m2": m2},
                "achieved": achieved,
                "bound": bound,
                "ratio": achieved / bound,
                "function": g,
            })
        }
        Construction::Staircase => {
            let m1 = require(args.m1, "m1", 1)?;
            let m2 = require(args.m2, "m2", 1)?;
            let triple = AdmissibleTriple::new(m1, args.f, m2)?;
            let tree = Tree::uniform(args.arity, args.depth)?;
            let phi = staircase_extremizer(tree, &triple, args.levels)?;
            let achieved = phi.maximal_function().integral();
            let bound = bound_full_space(&triple);
            serde_json::json!({
                "construction": "staircase",
                "params": {"f": args.f, "m1": m1, "m2": m2,
                           "arity": args.arity, "depth": args.depth, "levels": args.levels},
                "achieved": achieved,
                "bound": bound,
                "ratio": achieved / bound,
                "integral": phi.integral(),
                "function": phi,
            })
        }
        Construction::SmallSet | Construction::LargeSet => {
            let m = require(args.m, "m", 2)?;
            let k = require(args.k, "k", 2)?;
            let query = SetBoundQuery::new(args.f, m, k)?;
            let tree = Tree::uniform(args.arity, args.depth)?;
            let (name, (phi, set)) = match args.construction {
                Construction::SmallSet => ("small-set", extremal_small_set(tree, &query)?),
                _ => ("large-set", extremal_large_set(tree, &query, args.levels)?),
            };
            let achieved = integrate_over(&phi.maximal_function(), &set)?;
            let bound = bound_on_set(&query);
            serde_json::json!({
                "construction": name,
                "params": {"f": args.f, "m": m, "k": k,
                           "arity": args.arity, "depth": args.depth, "levels": args.levels},
                "achieved": achieved,
                "bound": bound,
                "ratio": achieved / bound,
                "integral": phi.integral(),
                "set_measure": set.measure(),
                "function": phi,
                "set": set,
            })
        }
    };
    let mut doc = serde_json::to_string_pretty(&artifact)?;
    doc.push('\n');
    emit(args.out.as_ref(), &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let mut config = match args.preset {
        Preset::Quick => AuditConfig::quick(args.seed),
        Preset::Default => AuditConfig::default_preset(args.seed),
    };
    if let Some(samples) = args.samples {
        config.leaf_samples = samples;
    }
    let report = audit_bounds(&config);
    for suite in &report.suites {
        println!(
            "suite {:<28} cases {:>7} violations {:>3} worst margin {:+.3e}",
            suite.suite, suite.cases, suite.violations, suite.worst_margin
        );
    }
    if !report.complete {
        println!("report incomplete; skipped: {}", report.skipped.join("; "));
    }
    if let Some(out) = &args.out {
        let mut doc = serde_json::to_string_pretty(&report)?;
        doc.push('\n');
        emit(Some(out), &doc)?;
    }
    if report.passed() {
        println!("verification passed: no violations");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification FAILED: {} violations", report.total_violations());
        Ok(ExitCode::from(1))
    }
}

struct SweepRow {
    params: Vec<(&'static str, f64)>,
    bound: f64,
    achieved: f64,
}

fn sweep_cmd(args: SweepArgs) -> Result<ExitCode, CliError> {
    let mut rows = Vec::new();
    match args.theorem {
        1 => {
            if args.f.is_empty() || args.m1.is_empty() || args.m2.is_empty() {
                return Err(CliError::Usage(
                    "--theorem 1 sweeps need --f, --m1 and --m2 lists".into(),
                ));
            }
            for &m1 in &args.m1 {
                for &f in &args.f {
                    for &m2 in &args.m2 {
                        let Ok(triple) = AdmissibleTriple::new(m1, f, m2) else {
                            continue; // grid point outside the constraint set
                        };
                        rows.push(SweepRow {
                            params: vec![("m1", m1), ("f", f), ("m2", m2)],
                            bound: bound_full_space(&triple),
                            achieved: extremizer_g0(&triple).hardy_integral(),
                        });
                    }
                }
            }
        }
        2 => {
            if args.f.is_empty() || args.m.is_empty() || args.k.is_empty() {
                return Err(CliError::Usage(
                    "--theorem 2 sweeps need --f, --m and --k lists".into(),
                ));
            }
            let tree = Tree::uniform(args.arity, args.depth)?;
            for &m in &args.m {
                for &f in &args.f {
                    for &k in &args.k {
                        let Ok(query) = SetBoundQuery::new(f, m, k) else {
                            continue;
                        };
                        let (phi, set) = if k * m <= f {
                            extremal_small_set(tree, &query)?
                        } else {
                            extremal_large_set(tree, &query, args.levels)?
                        };
                        let achieved = integrate_over(&phi.maximal_function(), &set)?;
                        rows.push(SweepRow {
                            params: vec![("f", f), ("m", m), ("k", k)],
                            bound: bound_on_set(&query),
                            achieved,
                        });
                    }
                }
            }
        }
        other => return Err(CliError::Usage(format!("--theorem must be 1 or 2, got {other}"))),
    }
    if rows.is_empty() {
        return Err(CliError::Usage("sweep grid contains no admissible points".into()));
    }

    let content = match args.format {
        Format::Csv => {
            let mut csv = String::new();
            let header: Vec<&str> = rows[0].params.iter().map(|(n, _)| *n).collect();
            let _ = writeln!(csv, "{},bound,achieved,ratio", header.join(","));
            for row in &rows {
                for (_, v) in &row.params {
                    let _ = write!(csv, "{},", full_precision(*v));
                }
                let _ = writeln!(
                    csv,
                    "{},{},{}",
                    full_precision(row.bound),
                    full_precision(row.achieved),
                    full_precision(row.achieved / row.bound)
                );
            }
            csv
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (n, v) in &row.params {
                        obj.insert((*n).to_string(), serde_json::json!(v));
                    }
                    obj.insert("bound".into(), serde_json::json!(row.bound));
                    obj.insert("achieved".into(), serde_json::json!(row.achieved));
                    obj.insert("ratio".into(), serde_json::json!(row.achieved / row.bound));
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut doc = serde_json::to_string_pretty(&objects)?;
            doc.push('\n');
            doc
        }
    };
    emit(args.out.as_ref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn maximal_cmd(args: MaximalArgs) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(&args.input)?;
    let phi: LeafFunction = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("invalid leaf function in {}: {e}", args.input.display()))
    })?;
    let maximal = phi.maximal_function();
    let doc = serde_json::json!({
        "maximal": maximal,
        "integral": maximal.integral(),
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    emit(args.out.as_ref(), &text)?;
    if args.out.is_some() {
        println!("{}", maximal.integral());
    }
    Ok(ExitCode::SUCCESS)
}

fn search_cmd(args: SearchArgs) -> Result<ExitCode, CliError> {
    let triple = AdmissibleTriple::new(args.m1, args.f, args.m2)?;
    let trace = maximize_hardy_integral(&triple, args.pieces, args.budget, args.seed)?;
    let mut csv = String::from("iteration,value,gap,l1_to_extremizer\n");
    for rec in &trace.records {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            rec.iteration,
            full_precision(rec.value),
            full_precision(rec.gap),
            full_precision(rec.distance_to_extremizer)
        );
    }
    emit(args.out.as_ref(), &csv)?;
    let last = trace.records.last().expect("trace is nonempty");
    eprintln!(
        "search finished: value {} gap {:.3e} distance {:.4e} ({} improvements, seed {})",
        last.value,
        last.gap,
        last.distance_to_extremizer,
        trace.records.len(),
        trace.seed
    );
    Ok(ExitCode::SUCCESS)
}

