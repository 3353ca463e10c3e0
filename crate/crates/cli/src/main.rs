mod classify;
mod config;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use ssp_core::families::{family_witness, fixture_matrices, FamilyError};
use ssp_core::matrix::{in_pattern_s, in_pattern_s0bar, is_ssp_witness, MatrixError};
use ssp_core::registry::{self, RegistryError, RunOptions};
use ssp_core::rules::RuleError;
use ssp_core::verifier::VerifierError;
use ssp_core::{certify, check_ssp, FamilySpec, Graph, GraphError, Mode, SymMatrix};
use thiserror::Error;

use crate::classify::Class;
use crate::config::Config;

pub const DEFAULT_MAX_ROUNDS: usize = 100;
const DEFAULT_SAMPLES: usize = 10;
const DEFAULT_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Verifier(#[from] VerifierError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "ssp-lab", version, about = "Check, certify and refute the strong spectral property")]
struct Cli {
    /// Base seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Settings file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the graph of a family spec as JSON.
    Gen {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact (or floating point) rank test on sampled or given matrices.
    Check(CheckArgs),
    /// Run the forcing rules to a fixpoint and print the trace.
    Certify {
        graph: String,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a verified (G, A, X) bundle.
    Witness {
        spec: Option<String>,
        #[arg(long, requires = "matrix", conflicts_with = "spec")]
        graph: Option<String>,
        #[arg(long, requires = "graph")]
        matrix: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Census of labelled trees or unicyclic graphs.
    Classify(ClassifyArgs),
    /// Run reproduction scenarios.
    Repro {
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    graph: String,
    #[arg(long, conflicts_with = "matrix")]
    samples: Option<usize>,
    /// Matrix JSON, a witness bundle, or `fixture:<name>`.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Table path; format follows the extension unless --format is given.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    artifacts: Option<PathBuf>,
    /// Largest vertex count accepted for --max-n.
    #[arg(long)]
    limit: Option<usize>,
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| if text.ends_with('\n') { Ok(()) } else { stdout.write_all(b"\n") })
                .map_err(|e| CliError::Io("stdout".into(), e))
        }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))
}

/// A graph file, or a family spec when no such file exists.
fn load_graph(arg: &str) -> Result<Graph, CliError> {
    if Path::new(arg).exists() {
        return Ok(Graph::parse_any(&read(arg)?)?);
    }
    match arg.parse::<FamilySpec>() {
        Ok(spec) => Ok(spec.generate()?),
        Err(_) => read(arg).map(|_| unreachable!("file vanished")),
    }
}

fn load_matrix(arg: &str) -> Result<SymMatrix, CliError> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return Ok(fixture_matrices(name)?.1);
    }
    let text = read(arg)?;
    match SymMatrix::from_json(&text) {
        Ok(m) => Ok(m),
        Err(first) => {
            let value: serde_json::Value = serde_json::from_str(&text)?;
            match value.get("a") {
                Some(a) => Ok(SymMatrix::from_json(&a.to_string())?),
                None => Err(first.into()),
            }
        }
    }
}

pub fn bundle_json(spec: Option<&str>, g: &Graph, a: &SymMatrix, x: &SymMatrix) -> serde_json::Value {
    serde_json::json!({
        "spec": spec,
        "graph": g,
        "a": a.to_json(),
        "x": x.to_json(),
        "verified": {
            "a_in_pattern": true,
            "x_in_complement_pattern": true,
            "commutator_zero": true,
        },
    })
}

fn verified_bundle(spec: Option<&str>, g: &Graph, a: &SymMatrix, x: &SymMatrix) -> Result<serde_json::Value, CliError> {
    let checks = [
        ("A does not have the pattern of G", in_pattern_s(a, g)?),
        ("X is not a nonzero matrix supported off G and the diagonal", in_pattern_s0bar(x, g)?),
        ("AX - XA is not zero", is_ssp_witness(a, x)?),
    ];
    if let Some((why, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(CliError::Internal(format!("witness re-verification failed: {why}")));
    }
    Ok(bundle_json(spec, g, a, x))
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cmd_gen(spec: &str, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let g = spec.parse::<FamilySpec>()?.generate()?;
    emit(out, &pretty(&g.to_json())?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: &CheckArgs, cfg: &Config, seed: u64) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph)?;
    let mode: Mode = cfg.pick(args.mode.clone(), "mode", "exact".into())?.parse().map_err(CliError::Usage)?;
    let reports = match &args.matrix {
        Some(path) => {
            let a = load_matrix(path)?;
            vec![check_ssp(&a, &g, mode)?.with_source(path.clone())]
        }
        None => {
            let samples = cfg.pick(args.samples, "samples", DEFAULT_SAMPLES)?;
            (0..samples as u64)
                .into_par_iter()
                .map(|k| {
                    let s = seed.wrapping_add(k);
                    let a = registry::rational_sample(&g, s);
                    check_ssp(&a, &g, mode).map(|r| r.with_seed(s))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r)?);
        text.push('\n');
    }
    emit(None, &text)?;
    // Only an exact rank deficiency is a refutation.
    let refuted = reports.iter().any(|r| !r.has_ssp && r.certifying);
    if refuted {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_certify(graph: &str, max_rounds: Option<usize>, out: Option<&Path>, cfg: &Config) -> Result<ExitCode, CliError> {
    let g = load_graph(graph)?;
    let rounds = cfg.pick(max_rounds, "max_rounds", DEFAULT_MAX_ROUNDS)?;
    let outcome = certify(&g, rounds)?;
    let body = serde_json::json!({
        "graph": g,
        "status": outcome.status,
        "rounds": outcome.rounds,
        "final_known": outcome.final_known,
        "trace": outcome.trace,
    });
    emit(out, &pretty(&body)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(spec: Option<&str>, graph: Option<&str>, matrix: Option<&str>, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let bundle = match (spec, graph, matrix) {
        (Some(s), None, None) => {
            let fam: FamilySpec = s.parse()?;
            let (g, a, x) = family_witness(&fam)
                .ok_or_else(|| CliError::Usage(format!("no witness construction for {fam}")))??;
            verified_bundle(Some(&fam.to_string()), &g, &a, &x)?
        }
        (None, Some(gp), Some(mp)) => {
            let g = load_graph(gp)?;
            let a = load_matrix(mp)?;
            let report = check_ssp(&a, &g, Mode::Exact)?;
            let x = match report.witness {
                Some(x) if !report.has_ssp => x,
                _ => return Err(CliError::Usage("the matrix has the SSP; there is no witness".into())),
            };
            verified_bundle(None, &g, &a, &x)?
        }
        _ => return Err(CliError::Usage("give a family spec, or both --graph and --matrix".into())),
    };
    emit(out, &pretty(&bundle)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: &ClassifyArgs, cfg: &Config, seed: u64) -> Result<ExitCode, CliError> {
    let class: Class = cfg.pick(args.class.clone(), "class", String::new())?.parse().map_err(CliError::Usage)?;
    let max_n = cfg.pick(args.max_n, "max_n", 6)?;
    let limit = cfg.pick(args.limit, "limit", DEFAULT_LIMIT)?;
    if max_n > limit {
        return Err(CliError::Usage(format!("--max-n {max_n} exceeds the enumeration limit {limit}")));
    }
    let samples = cfg.pick(args.samples, "samples", 3)?;
    let format = match cfg.pick(args.format.clone(), "format", String::new())?.as_str() {
        "" => match args.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => "json",
            _ => "csv",
        },
        "csv" => "csv",
        "json" => "json",
        other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
    };
    let (artifacts, link_prefix) = classify::artifact_location(args.out.as_deref(), args.artifacts.as_deref());
    let opts = classify::Options { class, max_n, samples, seed, artifacts, link_prefix };
    let records = classify::run(&opts)?;
    let text = if format == "json" { pretty(&records)? } else { classify::to_csv(&records) };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_repro(
    id: Option<&str>,
    all: bool,
    list: bool,
    samples: Option<usize>,
    points: Option<usize>,
    out: Option<&Path>,
    cfg: &Config,
) -> Result<ExitCode, CliError> {
    if list {
        let lines: Vec<String> = registry::list_scenarios().iter().map(|s| format!("{}\t{}", s.id, s.description)).collect();
        emit(out, &(lines.join("\n") + "\n"))?;
        return Ok(ExitCode::SUCCESS);
    }
    let defaults = RunOptions::default();
    let opts = RunOptions {
        samples: cfg.pick(samples, "samples", defaults.samples)?,
        points: cfg.pick(points, "points", defaults.points)?,
    };
    let ids: Vec<String> = match (id, all) {
        (Some(id), false) => vec![id.to_string()],
        (None, true) => registry::list_scenarios().iter().map(|s| s.id.to_string()).collect(),
        _ => return Err(CliError::Usage("give a scenario id or --all".into())),
    };
    let reports = ids
        .iter()
        .map(|id| registry::run_scenario_with(id, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = registry::summarize(&reports);
    let body = serde_json::json!({ "reports": reports, "summary": summary });
    emit(out, &pretty(&body)?)?;
    if reports.iter().all(|r| r.passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SSP_LAB_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("SSP_LAB_THREADS={raw:?} is not a number")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    init_threads()?;
    let cfg = Config::load(cli.config.as_deref())?;
    let seed = cfg.pick(cli.seed, "seed", 0)?;
    match &cli.command {
        Command::Gen { spec, out } => cmd_gen(spec, out.as_deref()),
        Command::Check(args) => cmd_check(args, &cfg, seed),
        Command::Certify { graph, max_rounds, out } => cmd_certify(graph, *max_rounds, out.as_deref(), &cfg),
        Command::Witness { spec, graph, matrix, out } => {
            cmd_witness(spec.as_deref(), graph.as_deref(), matrix.as_deref(), out.as_deref())
        }
        Command::Classify(args) => cmd_classify(args, &cfg, seed),
        Command::Repro { id, all, list, samples, points, out } => {
            cmd_repro(id.as_deref(), *all, *list, *samples, *points, out.as_deref(), &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; 2 is reserved for refutations here.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ssp-lab: {e}");
            ExitCode::from(1)
        }
    }
}
