//! Named reproduction scenarios. Each one builds its graphs and matrices, runs
//! exact checks, and labels every check with the kind of evidence it gives.

pub mod fixtures;

use std::collections::{BTreeMap, BTreeSet};
use std::error::Error as StdError;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::FieldScalar;
use crate::families::{self, FamilySpec};
use crate::graph::{pair, Graph, Pair};
use crate::linalg;
use crate::matrix::{self, DenseMatrix, SymMatrix, DEFAULT_SAMPLE_RANGE};
use crate::rules::{self, ForcingState, RuleKind, TraceStep};
use crate::verifier::{self, build_verification_matrix, check_ssp, Mode};

use fixtures::Printed;

type R<T> = Result<T, Box<dyn StdError>>;

/// Round limit used by every scenario that calls `certify`.
pub const MAX_ROUNDS: usize = 100;

/// Operations of the verifier, rule engine and families that the scenarios
/// must exercise between them.
pub const TRACKED_OPS: &[&str] = &[
    "build_verification_matrix",
    "exact_rank",
    "nullspace",
    "check_ssp",
    "leaf_extension_blocks",
    "submatrix",
    "rule_neighborhood",
    "rule_pendant_clique",
    "rule_path_power",
    "rule_z",
    "find_z_embeddings",
    "certify",
    "necessary_condition_unicyclic",
    "tree_ssp_predicate",
    "generate",
    "witness_cycle",
    "witness_pending_extension",
    "witness_D",
    "fixture_matrices",
];

/// `certify` runs every rule each round.
const CERTIFY_OPS: &[&str] = &["certify", "rule_pendant_clique", "rule_z", "rule_neighborhood", "rule_path_power", "find_z_embeddings"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown scenario {0:?}")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// A printed matrix or construction matches the computation exactly.
    ExactReproduction,
    /// An explicit nonzero `X` re-verified against the defining conditions.
    Witness,
    /// The forcing rules closed to `K_n`.
    RuleCertification,
    /// A polynomial identity checked at random rational points.
    DeterminantIdentity,
    /// Exact rank of seeded samples. Not a proof for the whole class.
    Sampling,
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub evidence: Evidence,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub evidence: BTreeSet<Evidence>,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub ops_touched: BTreeSet<&'static str>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryLine {
    pub id: &'static str,
    pub passed: bool,
    pub assertions: usize,
    pub failed_assertions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub scenarios: Vec<SummaryLine>,
}

pub fn summarize(reports: &[ScenarioReport]) -> Summary {
    let scenarios: Vec<SummaryLine> = reports
        .iter()
        .map(|r| SummaryLine {
            id: r.id,
            passed: r.passed,
            assertions: r.assertions.len(),
            failed_assertions: r.assertions.iter().filter(|a| !a.passed).map(|a| a.name.clone()).collect(),
        })
        .collect();
    let passed = scenarios.iter().filter(|s| s.passed).count();
    Summary { total: scenarios.len(), passed, failed: scenarios.len() - passed, scenarios }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Seeded exact-rank samples per sampled graph.
    pub samples: usize,
    /// Random points per identity or printed-matrix comparison.
    pub points: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { samples: 100, points: 50 }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScenarioInfo {
    pub id: &'static str,
    pub description: &'static str,
}

struct Entry {
    id: &'static str,
    description: &'static str,
    run: fn(&mut Ctx, &RunOptions) -> R<()>,
}

const SCENARIOS: &[Entry] = &[
    Entry { id: "ex-t51", description: "T_{5,1}: printed verification matrices, the 9x9 determinant identity, sampled full rank", run: ex_t51 },
    Entry { id: "ex-c4", description: "Cycles C_4..C_8: all-ones witness on the non-edges", run: ex_c4 },
    Entry { id: "ex-Unm", description: "U_{n,m}: pendant-path extension of the cycle witness", run: ex_unm },
    Entry { id: "ex-h7", description: "H_7: printed pair over Q(sqrt 2)", run: ex_h7 },
    Entry { id: "ex-D", description: "D_{2n,m,m}: block witness, block and canonical labelings", run: ex_d },
    Entry { id: "ex-t61", description: "T_{6,1}: printed pair, rank-deficient verification matrix", run: ex_t61 },
    Entry { id: "lem-leaf", description: "Verification matrix block form when a leaf is added", run: lem_leaf },
    Entry { id: "lem-z", description: "Z_h rule: system matrix with two perfect matchings, sound additions", run: lem_z },
    Entry { id: "lem-degree", description: "Degree obstructions for trees and unicyclic graphs are never certified", run: lem_degree },
    Entry { id: "thm-girth3", description: "Girth-3 unicyclic graphs with bridges from distinct vertices: rule closure to K_n", run: thm_girth3 },
    Entry { id: "thm-t3n", description: "T_{3,n}: rule certification and sampling", run: thm_t3n },
    Entry { id: "thm-t4n", description: "T_{4,n}: Psi_5, Psi_10, Psi'_10 identities, rules from the forced zeros, sampling", run: thm_t4n },
    Entry { id: "thm-t5n", description: "T_{5,n}: Psi_0 and the diagonal system S, sampling", run: thm_t5n },
];

pub fn list_scenarios() -> Vec<ScenarioInfo> {
    SCENARIOS.iter().map(|e| ScenarioInfo { id: e.id, description: e.description }).collect()
}

pub fn run_scenario(id: &str) -> Result<ScenarioReport, RegistryError> {
    run_scenario_with(id, &RunOptions::default())
}

/// Runs one scenario. Internal failures become a failed `build` assertion,
/// so a report is always produced for a registered id.
pub fn run_scenario_with(id: &str, opts: &RunOptions) -> Result<ScenarioReport, RegistryError> {
    let entry = SCENARIOS.iter().find(|e| e.id == id).ok_or_else(|| RegistryError::Unknown(id.to_string()))?;
    let mut ctx = Ctx::default();
    if let Err(e) = (entry.run)(&mut ctx, opts) {
        ctx.assert("build", Evidence::ExactReproduction, false, e.to_string());
    }
    let passed = !ctx.assertions.is_empty() && ctx.assertions.iter().all(|a| a.passed);
    Ok(ScenarioReport {
        id: entry.id,
        description: entry.description,
        passed,
        evidence: ctx.assertions.iter().map(|a| a.evidence).collect(),
        assertions: ctx.assertions,
        notes: ctx.notes,
        ops_touched: ctx.ops,
    })
}

#[derive(Default)]
struct Ctx {
    assertions: Vec<Assertion>,
    notes: Vec<String>,
    ops: BTreeSet<&'static str>,
}

const MAX_DIFFS: usize = 12;

impl Ctx {
    fn touch(&mut self, ops: &[&'static str]) {
        self.ops.extend(ops.iter().copied());
    }

    fn assert(&mut self, name: impl Into<String>, evidence: Evidence, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), evidence, passed, detail: detail.into(), diffs: Vec::new() });
    }

    fn assert_diffs(&mut self, name: impl Into<String>, evidence: Evidence, mut diffs: Vec<String>, detail: impl Into<String>) {
        let total = diffs.len();
        diffs.truncate(MAX_DIFFS);
        if total > MAX_DIFFS {
            diffs.push(format!("... {} more", total - MAX_DIFFS));
        }
        self.assertions.push(Assertion { name: name.into(), evidence, passed: total == 0, detail: detail.into(), diffs });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

// ---------------------------------------------------------------------------
// shared helpers

/// A matrix in `S(G)` with rational entries `p/q`, `|p| <= 30`, `1 <= q <= 12`;
/// the diagonal may be zero.
pub fn rational_sample(g: &Graph, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut a = SymMatrix::zeros(n);
    for i in 1..=n {
        for j in i..=n {
            let p = if i == j {
                rng.random_range(-30..=30)
            } else if g.has_edge(i, j) {
                matrix::nonzero(&mut rng, 30)
            } else {
                continue;
            };
            let q = rng.random_range(1..=12);
            a.set(i, j, FieldScalar::from_ratio(p, q).expect("q >= 1"));
        }
    }
    a
}

/// Conditions violated by `(A, X)` as a claimed witness on `G`.
pub fn witness_failures(a: &SymMatrix, x: &SymMatrix, g: &Graph) -> R<Vec<String>> {
    let mut out = Vec::new();
    if !matrix::in_pattern_s(a, g)? {
        out.push("A is not in S(G)".to_string());
    }
    if !matrix::in_pattern_s0bar(x, g)? {
        out.push("X is not in the zero pattern".to_string());
    }
    if x.is_zero() {
        out.push("X = O".to_string());
    }
    if !matrix::hadamard(a, x)?.is_zero() {
        out.push("A o X != O".to_string());
    }
    if !matrix::hadamard(&SymMatrix::identity(a.n()), x)?.is_zero() {
        out.push("I o X != O".to_string());
    }
    if !matrix::commutator(a, x)?.is_zero() {
        out.push("[A, X] != O".to_string());
    }
    Ok(out)
}

/// Exact check that refutes SSP for `A` with a re-verified witness.
fn refutes(a: &SymMatrix, g: &Graph) -> R<(bool, usize, usize)> {
    let report = check_ssp(a, g, Mode::Exact)?;
    let ok = match &report.witness {
        Some(x) => !report.has_ssp && witness_failures(a, x, g)?.is_empty(),
        None => false,
    };
    Ok((ok, report.rank, report.columns))
}

/// Number of seeded integer samples whose verification matrix has full
/// column rank.
pub fn full_rank_samples(g: &Graph, seed: u64, samples: usize) -> R<usize> {
    let mut ok = 0;
    for k in 0..samples as u64 {
        let a = matrix::sample_pattern_matrix(g, seed.wrapping_add(k), DEFAULT_SAMPLE_RANGE)?;
        let psi = build_verification_matrix(&a, g)?;
        if psi.rank()? == psi.shape().1 {
            ok += 1;
        }
    }
    Ok(ok)
}

fn show(p: Pair) -> String {
    format!("{{{},{}}}", p.0, p.1)
}

/// Differences between a printed matrix and the computed submatrix.
pub fn printed_diffs(f: &Printed, points: usize, seed: u64) -> R<Vec<String>> {
    let g = f.graph.generate()?;
    let rows = f.row_labels();
    let cols = f.col_labels();
    let mut diffs = Vec::new();
    for k in 0..points as u64 {
        let mut a = rational_sample(&g, seed + k);
        if f.on_t4n_surface {
            a = fixtures::onto_t4n_surface(&a);
        }
        let got = build_verification_matrix(&a, &g)?.submatrix(&rows, &cols)?;
        let want = f.evaluate(&a)?;
        for r in 0..rows.len() {
            for c in 0..cols.len() {
                if got.at(r, c) != want.at(r, c) {
                    diffs.push(format!(
                        "point {k}: row {} col {}: printed {} computed {}",
                        show(rows[r]),
                        show(cols[c]),
                        want.at(r, c),
                        got.at(r, c)
                    ));
                }
            }
        }
    }
    Ok(diffs)
}

/// Checks `det Psi[rows, cols] = rhs(A)` at random points.
pub fn identity_diffs(
    g: &Graph,
    rows: &[Pair],
    cols: &[Pair],
    on_surface: bool,
    rhs: fn(&SymMatrix) -> FieldScalar,
    points: usize,
    seed: u64,
) -> R<Vec<String>> {
    let mut diffs = Vec::new();
    for k in 0..points as u64 {
        let mut a = rational_sample(g, seed + k);
        if on_surface {
            a = fixtures::onto_t4n_surface(&a);
        }
        let sub = build_verification_matrix(&a, g)?.submatrix(rows, cols)?;
        let det = linalg::determinant(&sub)?;
        let want = rhs(&a);
        if det != want || det.is_zero() {
            diffs.push(format!("point {k}: det {det}, expected nonzero {want}"));
        }
    }
    Ok(diffs)
}

/// Replays each step against sampled matrices: every nullspace vector of the
/// verification matrix restricted to the still-unknown positions must vanish
/// on the positions the step adds.
pub fn spot_check_trace(g: &Graph, trace: &[TraceStep], seeds: std::ops::Range<u64>) -> R<Vec<String>> {
    let mut diffs = Vec::new();
    for seed in seeds {
        let a = matrix::sample_pattern_matrix(g, seed, DEFAULT_SAMPLE_RANGE)?;
        let mut known = g.clone();
        for (idx, step) in trace.iter().enumerate() {
            let (cols, basis) = rules::restricted_nullspace(&a, g, &known)?;
            for &p in &step.added {
                let Some(pos) = cols.iter().position(|&c| c == p) else {
                    diffs.push(format!("seed {seed} step {idx}: {} already known", show(p)));
                    continue;
                };
                if basis.iter().any(|v| !v[pos].is_zero()) {
                    diffs.push(format!("seed {seed} step {idx} ({:?}): {} not forced", step.rule, show(p)));
                }
            }
            for &(u, v) in &step.added {
                known.add_edge(u, v)?;
            }
        }
    }
    Ok(diffs)
}

/// Runs rule rounds from `known` to a fixpoint.
fn close_from(g: &Graph, known: &Graph) -> Option<ForcingState> {
    let mut state = ForcingState::with_known(g, known)?;
    while !state.is_complete() && state.round() > 0 {}
    Some(state)
}

fn certify_expect(ctx: &mut Ctx, spec: &FamilySpec, want_certified: bool) -> R<()> {
    let g = spec.generate()?;
    let out = rules::certify(&g, MAX_ROUNDS)?;
    ctx.touch(CERTIFY_OPS);
    let status = serde_json::to_value(out.status)?;
    if want_certified {
        let replayed = rules::replay(&g, &out.trace)?;
        let ok = out.certified() && replayed.is_complete() && out.final_known.is_complete();
        ctx.assert(format!("certify {spec}"), Evidence::RuleCertification, ok, format!("status {status}, {} steps replayed", out.trace.len()));
    } else {
        ctx.assert(format!("not certified {spec}"), Evidence::RuleCertification, !out.certified(), format!("status {status}"));
    }
    Ok(())
}

fn sampling(ctx: &mut Ctx, spec: &FamilySpec, seed: u64, samples: usize) -> R<()> {
    let g = spec.generate()?;
    let ok = full_rank_samples(&g, seed, samples)?;
    ctx.touch(&["generate", "build_verification_matrix", "exact_rank"]);
    ctx.assert(
        format!("samples full rank {spec}"),
        Evidence::Sampling,
        ok == samples,
        format!("{ok}/{samples} seeded samples have full column rank"),
    );
    Ok(())
}

fn printed(ctx: &mut Ctx, f: &Printed, points: usize, seed: u64) -> R<()> {
    let diffs = printed_diffs(f, points, seed)?;
    ctx.touch(&["generate", "build_verification_matrix", "submatrix"]);
    ctx.assert_diffs(format!("printed {}", f.name), Evidence::ExactReproduction, diffs, format!("{points} random rational points"));
    Ok(())
}

// ---------------------------------------------------------------------------
// scenarios

fn ex_t51(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    let spec = FamilySpec::Tadpole(5, 1);
    let g = spec.generate()?;
    let mut shapes = Vec::new();
    for k in 0..opts.samples as u64 {
        let a = matrix::sample_pattern_matrix(&g, 5100 + k, DEFAULT_SAMPLE_RANGE)?;
        let shape = build_verification_matrix(&a, &g)?.shape();
        if shape != (15, 9) {
            shapes.push(format!("sample {k}: {shape:?}"));
        }
    }
    ctx.assert_diffs("shape 15x9", Evidence::ExactReproduction, shapes, "every sample");
    for f in [fixtures::PSI_T51, fixtures::PSI_T51_REORDERED, fixtures::PSI_ALPHA_T51] {
        printed(ctx, &f, opts.points, 5200)?;
    }
    let diffs = identity_diffs(
        &g,
        &fixtures::pairs(fixtures::ALPHA_T51),
        &fixtures::PSI_ALPHA_T51.col_labels(),
        false,
        fixtures::det_alpha_t51,
        opts.points,
        5300,
    )?;
    ctx.assert_diffs("det psi_alpha", Evidence::DeterminantIdentity, diffs, "rows in the listed order");
    sampling(ctx, &spec, 5400, opts.samples)?;

    let (g51, a, _) = families::fixture_matrices("t51")?;
    let report = check_ssp(&a, &g51, Mode::Exact)?;
    ctx.touch(&["fixture_matrices", "check_ssp"]);
    ctx.assert("t51 fixture has SSP", Evidence::Sampling, report.has_ssp && report.rank == 9, format!("rank {}", report.rank));
    let out = rules::certify(&g, MAX_ROUNDS)?;
    ctx.touch(CERTIFY_OPS);
    ctx.note(format!("rule engine on {spec}: {:?}; the determinant identity carries the class", out.status));
    Ok(())
}

fn ex_c4(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    for n in 4..=8 {
        let (a, x) = families::witness_cycle(n)?;
        let spec = FamilySpec::Cycle(n);
        let g = spec.generate()?;
        ctx.touch(&["witness_cycle", "generate", "check_ssp", "nullspace", "exact_rank"]);
        let fails = witness_failures(&a, &x, &g)?;
        ctx.assert_diffs(format!("witness C_{n}"), Evidence::Witness, fails, "adjacency matrix, ones on non-edges");
        let (ok, rank, cols) = refutes(&a, &g)?;
        ctx.assert(format!("check_ssp refutes C_{n}"), Evidence::Witness, ok, format!("rank {rank} of {cols}"));
        certify_expect(ctx, &spec, false)?;
    }
    Ok(())
}

fn ex_unm(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    for n in 4..=8 {
        let (a, x) = families::witness_cycle(n)?;
        let c = FamilySpec::Cycle(n).generate()?;
        for m in 1..=3 {
            let (h, b, y) = families::witness_pending_extension(&c, &a, &x, m)?;
            ctx.touch(&["witness_cycle", "witness_pending_extension", "generate"]);
            let spec = FamilySpec::U(n, m);
            let mut fails = witness_failures(&b, &y, &h)?;
            if h != spec.generate()? {
                fails.push("extension graph differs from the generator".into());
            }
            ctx.assert_diffs(format!("witness {spec}"), Evidence::Witness, fails, format!("{} vertices", h.n()));
        }
    }
    for n in 4..=6 {
        let spec = FamilySpec::U(n, 1);
        let (g, a, _) = families::family_witness(&spec).expect("covered")?;
        let (ok, rank, cols) = refutes(&a, &g)?;
        ctx.touch(&["check_ssp", "nullspace"]);
        ctx.assert(format!("check_ssp refutes {spec}"), Evidence::Witness, ok, format!("rank {rank} of {cols}"));
        certify_expect(ctx, &spec, false)?;
        let nec = rules::necessary_condition_unicyclic(&g)?;
        ctx.touch(&["necessary_condition_unicyclic"]);
        ctx.note(format!("degree condition on {spec}: {nec} (passing it carries no claim)"));
    }
    Ok(())
}

fn ex_h7(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    let (g, a, x) = families::fixture_matrices("h7")?;
    let x = x.ok_or("h7 fixture lacks X")?;
    ctx.touch(&["fixture_matrices", "generate", "check_ssp", "nullspace", "exact_rank"]);
    let mut fails = witness_failures(&a, &x, &g)?;
    if a.radicand() != Some(2) || x.radicand() != Some(2) {
        fails.push("entries are not in Q(sqrt 2)".into());
    }
    if g != FamilySpec::H7.generate()? {
        fails.push("fixture graph differs from the generator".into());
    }
    ctx.assert_diffs("printed pair", Evidence::Witness, fails, "exact arithmetic in Q(sqrt 2)");
    let (ok, rank, cols) = refutes(&a, &g)?;
    ctx.assert("check_ssp refutes H_7", Evidence::Witness, ok, format!("rank {rank} of {cols}"));
    certify_expect(ctx, &FamilySpec::H7, false)?;
    Ok(())
}

fn ex_d(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    for n in 2..=3 {
        for m in 0..=3 {
            let spec = FamilySpec::D(n, m);
            let (pg, pa, px) = families::d_block_pair(n, m)?;
            let (g, a, x) = families::witness_d(n, m)?;
            ctx.touch(&["witness_D", "generate"]);
            let mut fails: Vec<String> = witness_failures(&pa, &px, &pg)?.into_iter().map(|f| format!("block labeling: {f}")).collect();
            fails.extend(witness_failures(&a, &x, &g)?);
            if g != spec.generate()? {
                fails.push("witness graph differs from the generator".into());
            }
            if g.structure().girth != Some(2 * n) {
                fails.push(format!("girth {:?}", g.structure().girth));
            }
            ctx.assert_diffs(format!("witness {spec}"), Evidence::Witness, fails, "adjacency matrix with the block witness");
        }
    }
    for n in 2..=3 {
        let spec = FamilySpec::D(n, 1);
        let (g, a, _) = families::witness_d(n, 1)?;
        let (ok, rank, cols) = refutes(&a, &g)?;
        ctx.touch(&["check_ssp", "nullspace"]);
        ctx.assert(format!("check_ssp refutes {spec}"), Evidence::Witness, ok, format!("rank {rank} of {cols}"));
        certify_expect(ctx, &spec, false)?;
    }
    Ok(())
}

fn ex_t61(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    let (g, a, x) = families::fixture_matrices("t61")?;
    let x = x.ok_or("t61 fixture lacks X")?;
    ctx.touch(&["fixture_matrices", "check_ssp", "nullspace", "exact_rank"]);
    let mut fails = witness_failures(&a, &x, &g)?;
    if g != FamilySpec::Tadpole(6, 1).generate()? {
        fails.push("fixture graph differs from the generator".into());
    }
    ctx.assert_diffs("printed pair", Evidence::Witness, fails, "integer matrices");
    let (ok, rank, cols) = refutes(&a, &g)?;
    ctx.assert("check_ssp refutes T_{6,1}", Evidence::Witness, ok, format!("rank {rank} of {cols}"));
    ctx.note(format!("nullity of the verification matrix: {}", cols - rank));
    certify_expect(ctx, &FamilySpec::Tadpole(6, 1), false)?;
    Ok(())
}

/// A seeded tree or unicyclic graph on at most 7 vertices with a leaf `w`.
/// Odd seeds are relabelled so that `w = n` and its neighbour is `n - 1`.
pub fn leaf_case(seed: u64) -> R<(Graph, SymMatrix, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(3..=7usize);
        let mut g = Graph::empty(n);
        for v in 2..=n {
            let u = rng.random_range(1..v);
            g.add_edge(u, v)?;
        }
        if n >= 4 && rng.random_bool(0.5) {
            let non = g.non_edges();
            let (u, v) = non[rng.random_range(0..non.len())];
            g.add_edge(u, v)?;
        }
        let leaves: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 1).collect();
        if leaves.is_empty() {
            continue;
        }
        let mut w = leaves[rng.random_range(0..leaves.len())];
        if seed % 2 == 1 {
            let v = *g.neighbors(w).iter().next().expect("leaf");
            let rest: Vec<usize> = g.vertices().filter(|&x| x != v && x != w).collect();
            let mut perm = vec![0; n];
            for (k, &x) in rest.iter().enumerate() {
                perm[x - 1] = k + 1;
            }
            perm[v - 1] = n - 1;
            perm[w - 1] = n;
            g = g.relabel(&perm)?;
            w = n;
        }
        let a = rational_sample(&g, seed ^ 0x1eaf);
        return Ok((g, a, w));
    }
}

/// Checks the block decomposition around leaf `w`; returns failures.
pub fn leaf_failures(b: &SymMatrix, h: &Graph, w: usize) -> R<Vec<String>> {
    let mut out = Vec::new();
    let blocks = verifier::leaf_extension_blocks(b, h, w)?;
    if !blocks.check()? {
        out.push("top-left block or B_1 differs from prediction".into());
    }
    let psi = build_verification_matrix(b, h)?.to_dense();
    let (rp, cp) = blocks.permutations(h.n());
    if linalg::submatrix(&psi, &rp, &cp)? != blocks.assemble() {
        out.push("permuted matrix differs from the block form".into());
    }
    let v = blocks.neighbor;
    if w == h.n() && v == h.n() - 1 {
        let minus = -b.get(v, w);
        if blocks.predicted_b1.iter().any(|(_, _, val)| *val != minus) {
            out.push("B_1 is not -a_vw times an identity block".into());
        }
        let rows: BTreeSet<usize> = blocks.predicted_b1.iter().map(|t| t.0).collect();
        if rows.len() != blocks.new_cols.len() || blocks.new_cols.len() != h.n() - 2 {
            out.push("B_1 rows are not distinct".into());
        }
    }
    Ok(out)
}

fn lem_leaf(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    let mut fails = Vec::new();
    let mut kinds = BTreeMap::new();
    for seed in 0..50 {
        let (g, a, w) = leaf_case(seed)?;
        let s = g.structure();
        *kinds.entry(if s.is_tree { "tree" } else { "unicyclic" }).or_insert(0) += 1;
        fails.extend(leaf_failures(&a, &g, w)?.into_iter().map(|f| format!("seed {seed}: {f}")));
    }
    ctx.touch(&["leaf_extension_blocks", "build_verification_matrix", "submatrix"]);
    ctx.assert_diffs("block form", Evidence::ExactReproduction, fails, format!("50 seeded graphs {kinds:?}"));
    Ok(())
}

/// All perfect matchings of the nonzero pattern, as the column of each row.
pub fn perfect_matchings(m: &DenseMatrix) -> Vec<Vec<usize>> {
    fn go(m: &DenseMatrix, r: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == m.rows() {
            out.push(cur.clone());
            return;
        }
        for c in 0..m.cols() {
            if !used[c] && !m.at(r, c).is_zero() {
                used[c] = true;
                cur.push(c);
                go(m, r + 1, used, cur, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    if m.rows() == m.cols() {
        go(m, 0, &mut vec![false; m.cols()], &mut Vec::new(), &mut out);
    }
    out
}

/// With columns ordered along the first perfect matching, checks that the
/// pattern has exactly two matchings and `|det M| = 2 |prod diag M|`.
pub fn z_matrix_failures(m: &DenseMatrix) -> R<Vec<String>> {
    let matchings = perfect_matchings(m);
    if matchings.len() != 2 {
        return Ok(vec![format!("{} perfect matchings", matchings.len())]);
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    let aligned = linalg::submatrix(m, &rows, &matchings[0])?;
    let diag = (0..aligned.rows()).fold(FieldScalar::one(), |acc, i| acc * aligned.at(i, i));
    let det = linalg::determinant(&aligned)?;
    let twice = FieldScalar::from_int(2) * &diag;
    if diag.is_zero() || (det != twice && det != -&twice) {
        return Ok(vec![format!("det {det}, twice the diagonal {twice}")]);
    }
    Ok(Vec::new())
}

fn lem_z(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    let hosts = [(FamilySpec::Z(1), 1), (FamilySpec::Z(2), 2), (FamilySpec::Z(3), 3), (FamilySpec::Girth3(2, 3, 4), 2)];
    for (spec, h) in hosts {
        let g = spec.generate()?;
        let embs = rules::find_z_embeddings(&g, h);
        ctx.touch(&["find_z_embeddings", "generate", "build_verification_matrix", "submatrix"]);
        let Some(emb) = embs.first() else {
            ctx.assert(format!("embedding Z_{h} in {spec}"), Evidence::ExactReproduction, false, "none found");
            continue;
        };
        let sizes_ok = emb.alpha().len() == 3 * h + 3 && emb.beta().len() == 3 * h + 3;
        ctx.assert(format!("system size Z_{h} in {spec}"), Evidence::ExactReproduction, sizes_ok, format!("{} embeddings", embs.len()));
        let mut fails = Vec::new();
        for k in 0..opts.points as u64 {
            let a = rational_sample(&g, 7000 + 100 * h as u64 + k);
            let (_, _, m) = rules::z_rule_system(&a, &g, emb)?;
            fails.extend(z_matrix_failures(&m)?.into_iter().map(|f| format!("point {k}: {f}")));
        }
        ctx.assert_diffs(format!("det M for Z_{h} in {spec}"), Evidence::DeterminantIdentity, fails, "twice the product along a perfect matching");
    }

    for h in 1..=3 {
        let g = FamilySpec::Z(h).generate()?;
        let mut state = ForcingState::new(&g);
        state.rule_pendant_clique();
        let mut fired = 0;
        for _ in 0..3 * h + 3 {
            for hh in 1..=h {
                fired += state.rule_z(hh)?;
            }
            fired += state.rule_neighborhood();
        }
        ctx.touch(&["rule_pendant_clique", "rule_z", "rule_neighborhood"]);
        let z_steps: Vec<TraceStep> = state.trace().iter().filter(|s| s.rule == RuleKind::Z).cloned().collect();
        ctx.assert(
            format!("Z_{h} closes with pendant, Z and neighbourhood rules"),
            Evidence::RuleCertification,
            state.is_complete() && !z_steps.is_empty() && rules::replay(&g, state.trace())?.is_complete(),
            format!("{fired} firings, {} Z steps", z_steps.len()),
        );
        let diffs = spot_check_trace(&g, state.trace(), 7500..7503)?;
        ctx.touch(&["nullspace"]);
        ctx.assert_diffs(format!("Z_{h} additions forced"), Evidence::Sampling, diffs, "restricted nullspaces of 3 samples vanish on every added pair");
    }
    Ok(())
}

/// All labelled trees on `n` vertices from Pruefer sequences.
pub fn labelled_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    if n == 2 {
        return vec![Graph::from_edges(2, [(1, 2)]).expect("edge")];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n + 1);
            c /= n;
        }
        let mut degree = vec![1; n + 1];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut g = Graph::empty(n);
        for &s in &seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf remains");
            g.add_edge(leaf, s).expect("valid");
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let last: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
        g.add_edge(last[0], last[1]).expect("valid");
        out.push(g);
    }
    out
}

fn lem_degree(ctx: &mut Ctx, _: &RunOptions) -> R<()> {
    let mut bad = Vec::new();
    let (mut checked, mut good, mut good_certified) = (0, 0, 0);
    for n in 2..=6 {
        for t in labelled_trees(n) {
            checked += 1;
            let pred = rules::tree_ssp_predicate(&t)?;
            let cert = rules::certify(&t, MAX_ROUNDS)?.certified();
            if pred {
                good += 1;
                good_certified += cert as usize;
            } else if cert {
                bad.push(format!("{:?} certified but fails the degree test", t.edges()));
            }
        }
    }
    ctx.touch(&["tree_ssp_predicate"]);
    ctx.touch(CERTIFY_OPS);
    ctx.assert_diffs("trees failing the degree test are not certified", Evidence::RuleCertification, bad, format!("{checked} labelled trees on 2..6 vertices"));
    ctx.note(format!("trees passing the degree test: {good}, certified by the rules: {good_certified}"));

    let cases = [
        ("triangle with two leaves on one vertex", Graph::from_edges(5, [(1, 2), (2, 3), (1, 3), (1, 4), (1, 5)])?),
        ("tadpole with a branching path", Graph::from_edges(6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6)])?),
        ("C_4 with two leaves on one vertex", Graph::from_edges(6, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (1, 6)])?),
    ];
    for (name, g) in cases {
        let nec = rules::necessary_condition_unicyclic(&g)?;
        let cert = rules::certify(&g, MAX_ROUNDS)?.certified();
        ctx.assert(format!("{name}: fails the degree condition, not certified"), Evidence::RuleCertification, !nec && !cert, format!("condition {nec}, certified {cert}"));
    }
    ctx.touch(&["necessary_condition_unicyclic"]);
    let star = FamilySpec::Star(4).generate()?;
    let pred = rules::tree_ssp_predicate(&star)?;
    ctx.assert("K_{1,4} fails the degree test", Evidence::ExactReproduction, !pred, "");
    certify_expect(ctx, &FamilySpec::Star(4), false)?;
    Ok(())
}

/// Expected stages of the girth-3 closure for legs `(2, 3, 4)`. Token `ip`
/// is vertex `i` of leg `p`, leg 1 the longest; stage 1 holds the in-leg
/// pairs, stage `d` the remaining pairs at distance `d`.
const GIRTH3_STAGES: [&str; 8] = [
    "01-21 21-41 11-31 01-31 11-41 01-41 02-22 12-32 02-32 03-23",
    "01-12 12-03 03-11 11-02 02-13 13-01",
    "01-22 22-03 03-21 21-02 02-23 23-01 11-12 12-13 13-11",
    "12-21 21-13 13-22 22-11 11-23 23-12 01-32 32-03 03-31 31-02",
    "03-41 41-02 32-13 13-31 31-12 22-23 23-21 21-22 11-32",
    "21-32 32-23 23-31 31-22 13-41 41-12",
    "32-31 23-41 41-22",
    "41-32",
];

/// Vertex `i` of leg `p` in `girth3:2,3,4`.
fn girth3_vertex(i: usize, p: usize) -> usize {
    const LEGS: [&[usize]; 3] = [&[3, 9, 10, 11, 12], &[2, 6, 7, 8], &[1, 4, 5]];
    LEGS[p - 1][i]
}

pub fn girth3_expected_stages() -> Vec<BTreeSet<Pair>> {
    GIRTH3_STAGES
        .iter()
        .map(|s| {
            s.split_whitespace()
                .map(|tok| {
                    let d: Vec<usize> = tok.chars().filter_map(|c| c.to_digit(10).map(|x| x as usize)).collect();
                    pair(girth3_vertex(d[0], d[1]), girth3_vertex(d[2], d[3]))
                })
                .collect()
        })
        .collect()
}

/// Groups a trace into stages: pendant-clique additions first, then the rest
/// by distance in `g`.
pub fn trace_stages(g: &Graph, trace: &[TraceStep]) -> Vec<BTreeSet<Pair>> {
    let dist = g.distances();
    let mut stages: Vec<BTreeSet<Pair>> = vec![BTreeSet::new(); dist.diameter().max(1)];
    for step in trace {
        for &(u, v) in &step.added {
            let idx = if step.rule == RuleKind::PendantClique { 0 } else { dist.get(u, v).unwrap_or(1) - 1 };
            if idx >= stages.len() {
                stages.resize(idx + 1, BTreeSet::new());
            }
            stages[idx].insert((u, v));
        }
    }
    stages
}

fn thm_girth3(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    let spec = FamilySpec::Girth3(2, 3, 4);
    let g = spec.generate()?;
    let out = rules::certify(&g, MAX_ROUNDS)?;
    ctx.touch(CERTIFY_OPS);
    ctx.touch(&["generate"]);
    let replayed = rules::replay(&g, &out.trace)?;
    ctx.assert(
        "closure of girth3:2,3,4 is K_12",
        Evidence::RuleCertification,
        out.certified() && out.final_known == Graph::complete(12) && replayed == out.final_known,
        format!("{} rounds, {} steps", out.rounds, out.trace.len()),
    );
    let got = trace_stages(&g, &out.trace);
    let want = girth3_expected_stages();
    let mut diffs = Vec::new();
    for (idx, w) in want.iter().enumerate() {
        let empty = BTreeSet::new();
        let gset = got.get(idx).unwrap_or(&empty);
        for p in w.difference(gset) {
            diffs.push(format!("stage {}: missing {}", idx + 1, show(*p)));
        }
        for p in gset.difference(w) {
            diffs.push(format!("stage {}: unexpected {}", idx + 1, show(*p)));
        }
    }
    if got.len() > want.len() && got[want.len()..].iter().any(|s| !s.is_empty()) {
        diffs.push("stages beyond 8".into());
    }
    ctx.assert_diffs("stages match the reference", Evidence::ExactReproduction, diffs, "added pairs grouped by distance");

    let mut failed = Vec::new();
    let mut count = 0;
    for a in 1..=4 {
        for b in a..=4 {
            for c in b..=4 {
                count += 1;
                let s = FamilySpec::Girth3(a, b, c);
                let g = s.generate()?;
                let o = rules::certify(&g, MAX_ROUNDS)?;
                if !o.certified() || !rules::replay(&g, &o.trace)?.is_complete() {
                    failed.push(format!("{s}: {:?}", o.status));
                }
                if !rules::necessary_condition_unicyclic(&g)? {
                    failed.push(format!("{s}: degree condition fails"));
                }
            }
        }
    }
    ctx.touch(&["necessary_condition_unicyclic"]);
    ctx.assert_diffs("certify girth3:a,b,c for 1 <= a <= b <= c <= 4", Evidence::RuleCertification, failed, format!("{count} graphs"));

    let diffs = spot_check_trace(&g, &out.trace, 9000..9002)?;
    ctx.touch(&["nullspace"]);
    ctx.assert_diffs("girth3:2,3,4 additions forced", Evidence::Sampling, diffs, "restricted nullspaces of 2 samples vanish on every added pair");
    sampling(ctx, &spec, 9100, opts.samples)?;
    Ok(())
}

fn thm_t3n(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    for n in 1..=6 {
        let spec = FamilySpec::Tadpole(3, n);
        certify_expect(ctx, &spec, true)?;
        sampling(ctx, &spec, 3000 + 1000 * n as u64, opts.samples)?;
    }
    Ok(())
}

fn thm_t4n(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    printed(ctx, &fixtures::PSI_5, opts.points, 4100)?;
    printed(ctx, &fixtures::PSI_10, opts.points, 4200)?;
    printed(ctx, &fixtures::PSI_10_PRIME, opts.points, 4300)?;
    let cases: [(&Printed, fn(&SymMatrix) -> FieldScalar, u64); 3] = [
        (&fixtures::PSI_5, fixtures::det_psi_5, 4400),
        (&fixtures::PSI_10, fixtures::det_psi_10, 4500),
        (&fixtures::PSI_10_PRIME, fixtures::det_psi_10_prime, 4600),
    ];
    for (f, rhs, seed) in cases {
        let g = f.graph.generate()?;
        let diffs = identity_diffs(&g, &f.row_labels(), &f.col_labels(), f.on_t4n_surface, rhs, opts.points, seed)?;
        ctx.touch(&["exact_rank"]);
        ctx.assert_diffs(format!("det {}", f.name), Evidence::DeterminantIdentity, diffs, format!("{} random points", opts.points));
    }

    // for n >= 2 the identities force x13, x15, x24, x25, x35 to zero for
    // every A; the rules then take over
    let forced = fixtures::pairs("13 15 24 25 35");
    sampling(ctx, &FamilySpec::Tadpole(4, 1), 41_000, opts.samples)?;
    for n in 2..=6 {
        let spec = FamilySpec::Tadpole(4, n);
        let g = spec.generate()?;
        let known = g.union_edges(forced.iter().copied())?;
        let state = close_from(&g, &known).ok_or("known must contain G")?;
        ctx.touch(&["rule_pendant_clique", "rule_z", "rule_neighborhood", "rule_path_power"]);
        let closes = state.is_complete() && rules::replay_from(&g, &known, state.trace())?.is_complete();
        ctx.assert(
            format!("rules close {spec} from the forced zeros"),
            Evidence::RuleCertification,
            closes,
            format!("{} steps", state.trace().len()),
        );
        sampling(ctx, &spec, 40_000 + 1000 * n as u64, opts.samples)?;
    }
    let out = rules::certify(&FamilySpec::Tadpole(4, 2).generate()?, MAX_ROUNDS)?;
    ctx.touch(CERTIFY_OPS);
    ctx.note(format!("rules alone on tadpole:4,2: {:?}", out.status));
    Ok(())
}

/// `[A, X]` on the `S` equations for `x13 = 1` and `x1 = -Psi_0^{-1} v`.
fn s_equations(a: &SymMatrix, g: &Graph) -> R<Vec<FieldScalar>> {
    let alpha1 = fixtures::PSI_0.row_labels();
    let beta1 = fixtures::PSI_0.col_labels();
    let psi = build_verification_matrix(a, g)?;
    let mut cols = beta1.clone();
    cols.push((1, 3));
    let aug = psi.submatrix(&alpha1, &cols)?;
    let basis = linalg::nullspace(&aug)?;
    if basis.len() != 1 || basis[0][beta1.len()].is_zero() {
        return Err("Psi_0 is singular".into());
    }
    let scale = basis[0][beta1.len()].clone();
    let mut x = SymMatrix::zeros(g.n());
    x.set(1, 3, FieldScalar::one());
    for (k, &(i, j)) in beta1.iter().enumerate() {
        x.set(i, j, &basis[0][k] / &scale);
    }
    let comm = matrix::commutator(a, &x)?;
    Ok(fixtures::pairs(fixtures::S_ROWS).iter().map(|&(i, j)| comm.at(i - 1, j - 1).clone()).collect())
}

/// Failures of the claim that the `S` equations are affine in the four
/// diagonal entries with coefficient matrix `-S`, and that `S` is invertible.
pub fn s_matrix_failures(a: &SymMatrix, g: &Graph) -> R<Vec<String>> {
    let mut out = Vec::new();
    let base = s_equations(a, g)?;
    let printed = fixtures::evaluate_table(fixtures::S_MATRIX, a)?;
    for (c, &k) in fixtures::S_VARIABLES.iter().enumerate() {
        let shifted = |t: i64| -> R<Vec<FieldScalar>> {
            let mut b = a.clone();
            b.set(k, k, a.get(k, k) + &FieldScalar::from_int(t));
            s_equations(&b, g)
        };
        let one = shifted(1)?;
        let two = shifted(2)?;
        for r in 0..4 {
            let d1 = &one[r] - &base[r];
            let d2 = &two[r] - &one[r];
            if d1 != d2 {
                out.push(format!("equation {r} not affine in a{k}{k}"));
            }
            if d1 != -printed.at(r, c) {
                out.push(format!("S[{r}][{c}]: printed {} derivative {}", printed.at(r, c), d1));
            }
        }
    }
    if linalg::determinant(&printed)?.is_zero() {
        out.push("S is singular".into());
    }
    Ok(out)
}

fn thm_t5n(ctx: &mut Ctx, opts: &RunOptions) -> R<()> {
    printed(ctx, &fixtures::PSI_0, opts.points, 5500)?;
    let g = FamilySpec::Tadpole(5, 2).generate()?;
    let f = fixtures::PSI_0;
    let diffs = identity_diffs(&g, &f.row_labels(), &f.col_labels(), false, fixtures::det_psi_0, opts.points, 5600)?;
    ctx.assert_diffs("det psi_0", Evidence::DeterminantIdentity, diffs, "nonzero; lower triangular in the printed order");
    let mut fails = Vec::new();
    for k in 0..opts.points as u64 {
        let a = rational_sample(&g, 5700 + k);
        fails.extend(s_matrix_failures(&a, &g)?.into_iter().map(|f| format!("point {k}: {f}")));
    }
    ctx.touch(&["nullspace"]);
    ctx.assert_diffs("diagonal system S", Evidence::DeterminantIdentity, fails, "coefficients of a33, a44, a22, a55 equal -S, S invertible");
    for n in 1..=6 {
        sampling(ctx, &FamilySpec::Tadpole(5, n), 50_000 + 1000 * n as u64, opts.samples)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_stable_and_unique() {
        let ids: Vec<&str> = list_scenarios().iter().map(|s| s.id).collect();
        assert!(ids.len() >= 9);
        let uniq: BTreeSet<_> = ids.iter().collect();
        assert_eq!(uniq.len(), ids.len());
        assert_eq!(ids, list_scenarios().iter().map(|s| s.id).collect::<Vec<_>>());
        for id in ["ex-h7", "thm-t5n", "ex-t61", "thm-girth3"] {
            assert!(ids.contains(&id));
        }
    }

    #[test]
    fn unknown_id() {
        assert_eq!(run_scenario("nonexistent").unwrap_err(), RegistryError::Unknown("nonexistent".into()));
    }

    #[test]
    fn pruefer_counts() {
        for n in 2..=6 {
            let trees = labelled_trees(n);
            assert_eq!(trees.len(), n.pow(n as u32 - 2));
            assert!(trees.iter().all(|t| t.structure().is_tree));
            let uniq: BTreeSet<_> = trees.iter().map(|t| t.edges().clone()).collect();
            assert_eq!(uniq.len(), trees.len());
        }
    }

    #[test]
    fn stage_fixture_partitions_the_non_edges() {
        let g = FamilySpec::Girth3(2, 3, 4).generate().unwrap();
        let stages = girth3_expected_stages();
        let all: BTreeSet<Pair> = stages.iter().flatten().copied().collect();
        assert_eq!(all.len(), stages.iter().map(|s| s.len()).sum::<usize>());
        assert_eq!(all, g.non_edges().into_iter().collect());
        let dist = g.distances();
        for (idx, s) in stages.iter().enumerate().skip(1) {
            assert!(s.iter().all(|&(u, v)| dist.get(u, v) == Some(idx + 1)));
        }
    }

    #[test]
    fn perfect_matching_counter() {
        let m = DenseMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(perfect_matchings(&m).len(), 2);
        let m = DenseMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(perfect_matchings(&m), vec![vec![0, 1]]);
        let m = DenseMatrix::from_i64_rows(&[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(z_matrix_failures(&m).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn leaf_cases_have_the_designated_leaf() {
        for seed in 0..20 {
            let (g, a, w) = leaf_case(seed).unwrap();
            assert!(g.n() <= 7 && g.is_connected());
            assert_eq!(g.degree(w), 1);
            assert!(matrix::in_pattern_s(&a, &g).unwrap());
            if seed % 2 == 1 {
                assert_eq!(w, g.n());
                assert!(g.has_edge(g.n() - 1, g.n()));
            }
        }
    }
}
