//! Labelled census of small trees and unicyclic graphs.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use ssp_core::families::family_witness;
use ssp_core::matrix::{in_pattern_s, in_pattern_s0bar, is_ssp_witness};
use ssp_core::registry::rational_sample;
use ssp_core::rules::{necessary_condition_unicyclic, tree_ssp_predicate};
use ssp_core::verifier::all_pairs;
use ssp_core::{certify, check_ssp, CertifyStatus, FamilySpec, Graph, Mode, SymMatrix};

use crate::{bundle_json, write_file, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Unicyclic,
    Tree,
}

impl std::str::FromStr for Class {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unicyclic" => Ok(Class::Unicyclic),
            "tree" | "trees" => Ok(Class::Tree),
            other => Err(format!("unknown class {other:?} (expected unicyclic or tree)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    RefutedByWitness,
    Inconclusive,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::RefutedByWitness => "refuted-by-witness",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleStats {
    pub ok: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub spec: String,
    pub n: usize,
    pub girth: Option<usize>,
    pub necessary: bool,
    pub status: Status,
    pub rank_samples_ok: SampleStats,
    pub witness_file: Option<String>,
    pub trace_file: Option<String>,
    /// Family the graph was matched to when the witness came from a construction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip)]
    key: (usize, Vec<(usize, usize)>),
}

pub struct Options {
    pub class: Class,
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Directory the trace and witness files go into.
    pub artifacts: PathBuf,
    /// Prefix used for file references in the table.
    pub link_prefix: String,
}

pub const CSV_HEADER: &str = "spec,n,girth,necessary,status,rank_samples_ok,witness_file,trace_file";

pub fn graph_id(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{u}-{v}")).collect();
    format!("g{}_{}", g.n(), edges.join("."))
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn graph_seed(seed: u64, id: &str) -> u64 {
    seed ^ fnv1a(id)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected labelled graphs on `n` vertices of the class, in lexicographic
/// order of their sorted edge lists.
pub fn enumerate(class: Class, n: usize) -> Vec<Graph> {
    let e = match class {
        Class::Unicyclic if n < 3 => return Vec::new(),
        Class::Unicyclic => n,
        Class::Tree if n == 0 => return Vec::new(),
        Class::Tree => n - 1,
    };
    let pairs = all_pairs(n);
    let m = pairs.len();
    if e > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..e).collect();
    loop {
        let mut parent: Vec<usize> = (0..=n).collect();
        let mut components = n;
        for &k in &idx {
            let (u, v) = pairs[k];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        if components == 1 {
            let g = Graph::from_edges(n, idx.iter().map(|&k| pairs[k])).expect("pairs are in range");
            out.push(g);
        }
        let mut i = e;
        while i > 0 && idx[i - 1] == i - 1 + m - e {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..e {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Maps `f` onto `g`: returns `perm` with `perm[v - 1]` the image of `v`.
pub fn find_isomorphism(f: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let n = f.n();
    if n != g.n() || f.edge_count() != g.edge_count() {
        return None;
    }
    let mut df = f.degrees();
    let mut dg = g.degrees();
    df.sort_unstable();
    dg.sort_unstable();
    if df != dg {
        return None;
    }
    // BFS order so every vertex after the first has a mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in f.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut map = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    if extend(f, g, &order, 0, &mut map, &mut used) {
        Some(map[1..].to_vec())
    } else {
        None
    }
}

fn extend(f: &Graph, g: &Graph, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for w in 1..=g.n() {
        if used[w] || g.degree(w) != f.degree(v) {
            continue;
        }
        let consistent = order[..k].iter().all(|&u| f.has_edge(u, v) == g.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(f, g, order, k + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// A family graph with a verified witness pair on its own labelling.
pub struct Known {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub a: SymMatrix,
    pub x: SymMatrix,
    degrees: Vec<usize>,
}

pub fn known_witnesses(max_n: usize) -> Result<Vec<Known>, CliError> {
    let mut specs = Vec::new();
    for k in 4..=max_n {
        specs.push(FamilySpec::Cycle(k));
        for m in 1..=max_n {
            if k * (m + 1) <= max_n {
                specs.push(FamilySpec::U(k, m));
            }
        }
    }
    for k in 2..=max_n {
        for m in 0..=max_n {
            if 2 * k + 2 * m <= max_n {
                specs.push(FamilySpec::D(k, m));
            }
        }
    }
    if max_n >= 7 {
        specs.push(FamilySpec::H7);
        specs.push(FamilySpec::Tadpole(6, 1));
    }
    let mut out = Vec::new();
    for spec in specs {
        let Some(built) = family_witness(&spec) else { continue };
        let (graph, a, x) = built?;
        if graph.n() > max_n {
            continue;
        }
        let mut degrees = graph.degrees();
        degrees.sort_unstable();
        out.push(Known { spec, graph, a, x, degrees });
    }
    Ok(out)
}

fn match_known<'a>(g: &Graph, known: &'a [Known]) -> Option<(&'a Known, SymMatrix, SymMatrix)> {
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    for k in known {
        if k.graph.n() != g.n() || k.graph.edge_count() != g.edge_count() || k.degrees != degrees {
            continue;
        }
        if let Some(perm) = find_isomorphism(&k.graph, g) {
            return Some((k, k.a.relabel(&perm), k.x.relabel(&perm)));
        }
    }
    None
}

fn witness_verifies(g: &Graph, a: &SymMatrix, x: &SymMatrix) -> Result<bool, CliError> {
    Ok(in_pattern_s(a, g)? && in_pattern_s0bar(x, g)? && is_ssp_witness(a, x)?)
}

fn classify_one(g: &Graph, opts: &Options, known: &[Known]) -> Result<Record, CliError> {
    let id = graph_id(g);
    let structure = g.structure();
    let necessary = match opts.class {
        Class::Unicyclic => necessary_condition_unicyclic(g)?,
        Class::Tree => tree_ssp_predicate(g)?,
    };
    let base_seed = graph_seed(opts.seed, &id);
    let mut ok = 0;
    let mut sampled_witness = None;
    for s in 0..opts.samples {
        let a = rational_sample(g, base_seed.wrapping_add(s as u64));
        let report = check_ssp(&a, g, Mode::Exact)?;
        if report.has_ssp {
            ok += 1;
        } else if sampled_witness.is_none() {
            if let Some(x) = report.witness {
                sampled_witness = Some((a, x));
            }
        }
    }
    let outcome = certify(g, crate::DEFAULT_MAX_ROUNDS)?;
    let mut record = Record {
        spec: id.clone(),
        n: g.n(),
        girth: structure.girth,
        necessary,
        status: Status::Inconclusive,
        rank_samples_ok: SampleStats { ok, total: opts.samples },
        witness_file: None,
        trace_file: None,
        family: None,
        key: (g.n(), g.edges().iter().copied().collect()),
    };
    if outcome.status == CertifyStatus::Certified {
        let name = format!("{id}.trace.json");
        let body = serde_json::json!({
            "graph": g,
            "status": outcome.status,
            "rounds": outcome.rounds,
            "trace": outcome.trace,
        });
        write_file(&opts.artifacts.join(&name), &serde_json::to_string_pretty(&body)?)?;
        record.status = Status::Certified;
        record.trace_file = Some(format!("{}{name}", opts.link_prefix));
        return Ok(record);
    }
    let found = match match_known(g, known) {
        Some((k, a, x)) => Some((Some(k.spec.to_string()), a, x)),
        None => sampled_witness.map(|(a, x)| (None, a, x)),
    };
    if let Some((family, a, x)) = found {
        if !witness_verifies(g, &a, &x)? {
            return Err(CliError::Internal(format!("witness for {id} failed re-verification")));
        }
        let name = format!("{id}.witness.json");
        let body = bundle_json(family.as_deref(), g, &a, &x);
        write_file(&opts.artifacts.join(&name), &serde_json::to_string_pretty(&body)?)?;
        record.status = Status::RefutedByWitness;
        record.witness_file = Some(format!("{}{name}", opts.link_prefix));
        record.family = family;
    }
    Ok(record)
}

pub fn run(opts: &Options) -> Result<Vec<Record>, CliError> {
    let known = match opts.class {
        Class::Unicyclic => known_witnesses(opts.max_n)?,
        Class::Tree => Vec::new(),
    };
    std::fs::create_dir_all(&opts.artifacts).map_err(|e| CliError::Io(opts.artifacts.display().to_string(), e))?;
    let graphs: Vec<Graph> = (1..=opts.max_n).flat_map(|n| enumerate(opts.class, n)).collect();
    let mut records = graphs
        .par_iter()
        .map(|g| classify_one(g, opts, &known))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(records)
}

pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let girth = r.girth.map_or_else(|| "inf".to_string(), |g| g.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{}/{},{},{}\n",
            r.spec,
            r.n,
            girth,
            r.necessary,
            r.status.as_str(),
            r.rank_samples_ok.ok,
            r.rank_samples_ok.total,
            r.witness_file.as_deref().unwrap_or(""),
            r.trace_file.as_deref().unwrap_or(""),
        ));
    }
    out
}

/// Where artifacts go and how the table refers to them.
pub fn artifact_location(out: Option<&Path>, artifacts: Option<&Path>) -> (PathBuf, String) {
    match (out, artifacts) {
        (_, Some(dir)) => (dir.to_path_buf(), format!("{}/", dir.display())),
        (Some(out), None) => {
            let name = format!(
                "{}.artifacts",
                out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "classify".into())
            );
            let dir = out.parent().unwrap_or(Path::new("")).join(&name);
            (dir, format!("{name}/"))
        }
        (None, None) => (PathBuf::from("ssp-artifacts"), "ssp-artifacts/".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_counts() {
        // n^(n-2) labelled trees
        let trees: Vec<usize> = (1..=6).map(|n| enumerate(Class::Tree, n).len()).collect();
        assert_eq!(trees, vec![1, 1, 3, 16, 125, 1296]);
        // connected unicyclic labelled graphs
        let uni: Vec<usize> = (3..=6).map(|n| enumerate(Class::Unicyclic, n).len()).collect();
        assert_eq!(uni, vec![1, 15, 222, 3660]);
    }

    #[test]
    fn isomorphism_transports_edges() {
        let f = FamilySpec::Tadpole(4, 2).generate().unwrap();
        let perm = [3, 6, 1, 5, 2, 4];
        let g = f.relabel(&perm).unwrap();
        let found = find_isomorphism(&f, &g).unwrap();
        assert_eq!(f.relabel(&found).unwrap(), g);
        let other = FamilySpec::U(3, 1).generate().unwrap();
        assert!(find_isomorphism(&f, &other).is_none());
    }

    #[test]
    fn ids_are_stable() {
        let g = FamilySpec::Cycle(4).generate().unwrap();
        assert_eq!(graph_id(&g), "g4_1-2.1-4.2-3.3-4");
        assert_eq!(graph_seed(0, "x"), graph_seed(0, "x"));
        assert_ne!(graph_seed(0, "x"), graph_seed(1, "x"));
    }
}
