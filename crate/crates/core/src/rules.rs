//! Zero-forcing closure for graph-level SSP certification.
//!
//! A [`ForcingState`] tracks the supergraph `G_l` of `G` whose edges are the
//! positions where every admissible `X` must vanish. Each rule adds pairs to
//! `G_l` only when its precondition holds at that moment, and every firing is
//! recorded so the whole closure can be replayed and re-checked.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{pair, Graph, Pair};
use crate::linalg;
use crate::matrix::{DenseMatrix, SymMatrix};
use crate::verifier::{build_verification_matrix, VerifierError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("path power parameter must be at least 1")]
    BadDistance,
    #[error("Z_h needs h >= 1")]
    BadHeight,
    #[error("max_rounds must be at least 1")]
    BadRounds,
    #[error("graph is not unicyclic")]
    NotUnicyclic,
    #[error("graph is not a tree")]
    NotTree,
    #[error("trace step {0} does not replay: {1}")]
    Replay(usize, String),
    #[error(transparent)]
    Verifier(#[from] VerifierError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    PendantClique,
    Z,
    Neighborhood,
    PathPower,
}

/// The substructure a rule fired on. `vertices` is `[i, j, k]` for the
/// neighbourhood rule, the path (in orientation used) for the path rules, and
/// the flattened legs `v_0^1..v_h^1, v_0^2.., v_0^3..` for the Z rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStructure {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: RuleKind,
    pub witness_structure: WitnessStructure,
    pub added: Vec<Pair>,
}

#[derive(Debug, Clone)]
pub struct ForcingState {
    base: Graph,
    known: Graph,
    trace: Vec<TraceStep>,
}

fn closed_contains(g: &Graph, v: usize, u: usize) -> bool {
    g.in_closed_neighborhood(v, u)
}

/// `N_G[u] \ N_{G_l}[v]`.
fn escape_set(g: &Graph, known: &Graph, u: usize, v: usize) -> Vec<usize> {
    std::iter::once(u)
        .chain(g.neighbors(u).iter().copied())
        .filter(|&w| !closed_contains(known, v, w))
        .collect()
}

/// Preconditions of the neighbourhood rule for `(i, j)`; returns `k`.
pub fn neighborhood_target(g: &Graph, known: &Graph, i: usize, j: usize) -> Option<usize> {
    if i == j {
        return None;
    }
    let first = escape_set(g, known, i, j);
    if first.len() != 1 || !escape_set(g, known, j, i).is_empty() {
        return None;
    }
    Some(first[0])
}

/// Whether `path` is a leaf-first pendant path of `g`.
pub fn is_pendant_path(g: &Graph, path: &[usize]) -> bool {
    let m = path.len();
    if m < 2 || path.iter().collect::<BTreeSet<_>>().len() != m {
        return false;
    }
    if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return false;
    }
    let inner = &path[..m - 1];
    let inner_set: BTreeSet<usize> = path.iter().copied().collect();
    // only v_m may have neighbours outside the path, and the path is induced
    inner.iter().enumerate().all(|(idx, &v)| {
        g.neighbors(v).iter().all(|w| inner_set.contains(w))
            && g.degree(v) == if idx == 0 { 1 } else { 2 }
    })
}

fn all_pairs_of(vs: &[usize]) -> Vec<Pair> {
    let mut out = Vec::new();
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            out.push(pair(u, v));
        }
    }
    out
}

fn is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let n = path.len();
    if path.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    (0..n).all(|a| (a + 1..n).all(|b| g.has_edge(path[a], path[b]) == (b == a + 1)))
}

/// Pairs added by the path power rule on `path` with parameter `d`, or `None`
/// when a precondition fails.
pub fn path_power_additions(g: &Graph, known: &Graph, path: &[usize], d: usize) -> Option<Vec<Pair>> {
    let n = path.len();
    if d < 1 || n < d + 2 || !is_induced_path(g, path) {
        return None;
    }
    let in_path: BTreeSet<usize> = path.iter().copied().collect();
    for a in 0..n {
        for b in a + 1..=(a + d).min(n - 1) {
            if !known.has_edge(path[a], path[b]) {
                return None;
            }
        }
    }
    for i in 0..n - d - 1 {
        let (p, q) = (path[i], path[i + d]);
        let ok = escape_set(g, known, p, q).iter().all(|w| in_path.contains(w))
            && escape_set(g, known, q, p).iter().all(|w| in_path.contains(w));
        if !ok {
            return None;
        }
    }
    Some((0..n - d - 1).map(|i| pair(path[i], path[i + d + 1])).collect())
}

/// A labelled copy of `Z_h`: `legs[p][i]` is `v_i^{p+1}`, with `legs[p][0]`
/// on the triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZEmbedding {
    pub h: usize,
    pub legs: [Vec<usize>; 3],
}

impl ZEmbedding {
    pub fn vertices(&self) -> Vec<usize> {
        self.legs.iter().flatten().copied().collect()
    }

    fn from_flat(h: usize, flat: &[usize]) -> Option<Self> {
        if h == 0 || flat.len() != 3 * (h + 1) {
            return None;
        }
        let leg = |p: usize| flat[p * (h + 1)..(p + 1) * (h + 1)].to_vec();
        Some(ZEmbedding { h, legs: [leg(0), leg(1), leg(2)] })
    }

    /// Distance inside `Z_h` between `v_i^p` and `v_j^q`.
    pub fn distance(&self, (p, i): (usize, usize), (q, j): (usize, usize)) -> usize {
        if p == q {
            i.abs_diff(j)
        } else {
            i + j + 1
        }
    }

    /// Pairs of `Z_h` at internal distance exactly `r`.
    pub fn pairs_at(&self, r: usize) -> Vec<Pair> {
        self.pairs_where(|d| d == r)
    }

    pub fn pairs_within(&self, r: usize) -> Vec<Pair> {
        self.pairs_where(|d| d >= 1 && d <= r)
    }

    fn pairs_where(&self, keep: impl Fn(usize) -> bool) -> Vec<Pair> {
        let labels: Vec<(usize, usize)> = (0..3).flat_map(|p| (0..=self.h).map(move |i| (p, i))).collect();
        let mut out = Vec::new();
        for (a, &x) in labels.iter().enumerate() {
            for &y in &labels[a + 1..] {
                if keep(self.distance(x, y)) {
                    out.push(pair(self.legs[x.0][x.1], self.legs[y.0][y.1]));
                }
            }
        }
        out.sort();
        out
    }

    fn v(&self, p: usize, i: usize) -> usize {
        self.legs[p][i]
    }

    /// Row labels `alpha` of the Z rule system.
    pub fn alpha(&self) -> Vec<Pair> {
        let h = self.h;
        let mut out: Vec<Pair> = (0..3).map(|p| pair(self.v(p, 0), self.v(p, h))).collect();
        for i in 0..=(h - 1) / 2 {
            for p in 0..3 {
                for q in 0..3 {
                    if p == q {
                        continue;
                    }
                    if 2 * i < h - 1 {
                        out.push(pair(self.v(p, i), self.v(q, h - 1 - i)));
                    } else if p < q {
                        out.push(pair(self.v(p, i), self.v(q, i)));
                    }
                }
            }
        }
        out
    }

    /// Column labels `beta`, the pairs of `Z_h^{(h+1)}`.
    pub fn beta(&self) -> Vec<Pair> {
        let h = self.h;
        let mut out = Vec::new();
        for j in 0..=h / 2 {
            for p in 0..3 {
                for q in 0..3 {
                    if p != q {
                        let e = pair(self.v(p, j), self.v(q, h - j));
                        if !out.contains(&e) {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Outward paths `[c, v_1, .., v_h]` from cycle vertex `c` avoiding the cycle.
fn outward_paths(g: &Graph, c: usize, h: usize, cycle: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![c];
    fn walk(g: &Graph, path: &mut Vec<usize>, h: usize, cycle: &[usize], out: &mut Vec<Vec<usize>>) {
        if path.len() == h + 1 {
            out.push(path.clone());
            return;
        }
        let last = *path.last().unwrap();
        let prev = if path.len() >= 2 { path[path.len() - 2] } else { 0 };
        for &w in g.neighbors(last) {
            if w != prev && !cycle.contains(&w) {
                path.push(w);
                walk(g, path, h, cycle, out);
                path.pop();
            }
        }
    }
    walk(g, &mut path, h, cycle, &mut out);
    out
}

/// Embeddings of `Z_h` in a girth-3 unicyclic graph, legs in cycle order.
/// Empty for any other graph.
pub fn find_z_embeddings(g: &Graph, h: usize) -> Vec<ZEmbedding> {
    if h == 0 {
        return Vec::new();
    }
    let cycle = g.unicyclic_cycle();
    if cycle.len() != 3 {
        return Vec::new();
    }
    let legs: Vec<Vec<Vec<usize>>> = cycle.iter().map(|&c| outward_paths(g, c, h, &cycle)).collect();
    let mut out = Vec::new();
    for a in &legs[0] {
        for b in &legs[1] {
            for c in &legs[2] {
                out.push(ZEmbedding { h, legs: [a.clone(), b.clone(), c.clone()] });
            }
        }
    }
    out
}

/// Pairs added by the Z rule for `emb`, or `None` when a precondition fails.
pub fn z_additions(g: &Graph, known: &Graph, emb: &ZEmbedding) -> Option<Vec<Pair>> {
    let h = emb.h;
    let verts: BTreeSet<usize> = emb.vertices().into_iter().collect();
    if verts.len() != 3 * (h + 1) {
        return None;
    }
    // induced copy of Z_h
    let all: Vec<usize> = emb.vertices();
    let z_edges: BTreeSet<Pair> = emb.pairs_at(1).into_iter().collect();
    for (a, &u) in all.iter().enumerate() {
        for &v in &all[a + 1..] {
            if g.has_edge(u, v) != z_edges.contains(&pair(u, v)) {
                return None;
            }
        }
    }
    if !emb.pairs_within(h).iter().all(|&(u, v)| known.has_edge(u, v)) {
        return None;
    }
    let target = emb.pairs_at(h + 1);
    if target.iter().any(|&(u, v)| known.has_edge(u, v)) {
        return None;
    }
    for (u, v) in emb.pairs_at(h) {
        let ok = escape_set(g, known, u, v).iter().all(|w| verts.contains(w))
            && escape_set(g, known, v, u).iter().all(|w| verts.contains(w));
        if !ok {
            return None;
        }
    }
    Some(target)
}

/// `Psi[alpha, beta]` for one embedding; the coefficient matrix of the
/// equations the Z rule solves.
pub fn z_rule_system(a: &SymMatrix, g: &Graph, emb: &ZEmbedding) -> Result<(Vec<Pair>, Vec<Pair>, DenseMatrix), RuleError> {
    let psi = build_verification_matrix(a, g)?;
    let rows = emb.alpha();
    let cols = emb.beta();
    let m = psi.submatrix(&rows, &cols)?;
    Ok((rows, cols, m))
}

impl ForcingState {
    pub fn new(base: &Graph) -> Self {
        Self {
            base: base.clone(),
            known: base.clone(),
            trace: Vec::new(),
        }
    }

    /// Starts from a `G_l` established elsewhere (for instance by a
    /// determinant argument). `known` must contain every edge of `base`.
    pub fn with_known(base: &Graph, known: &Graph) -> Option<Self> {
        let ok = known.n() == base.n() && base.edges().iter().all(|&(u, v)| known.has_edge(u, v));
        ok.then(|| Self {
            base: base.clone(),
            known: known.clone(),
            trace: Vec::new(),
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn known(&self) -> &Graph {
        &self.known
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn is_complete(&self) -> bool {
        self.known.is_complete()
    }

    fn record(&mut self, rule: RuleKind, vertices: Vec<usize>, param: Option<usize>, pairs: Vec<Pair>) -> bool {
        let mut added: Vec<Pair> = pairs
            .into_iter()
            .filter(|&(u, v)| !self.known.has_edge(u, v))
            .collect();
        added.sort();
        added.dedup();
        if added.is_empty() {
            return false;
        }
        for &(u, v) in &added {
            self.known.add_edge(u, v).expect("pairs come from the graph");
        }
        self.trace.push(TraceStep {
            rule,
            witness_structure: WitnessStructure { vertices, param },
            added,
        });
        true
    }

    /// Applies the neighbourhood rule until it no longer fires. Returns the
    /// number of firings.
    pub fn rule_neighborhood(&mut self) -> usize {
        let n = self.base.n();
        let mut fired = 0;
        loop {
            let mut any = false;
            for i in 1..=n {
                for j in 1..=n {
                    if let Some(k) = neighborhood_target(&self.base, &self.known, i, j) {
                        if self.record(RuleKind::Neighborhood, vec![i, j, k], None, vec![pair(j, k)]) {
                            fired += 1;
                            any = true;
                        }
                    }
                }
            }
            if !any {
                return fired;
            }
        }
    }

    pub fn rule_pendant_clique(&mut self) -> usize {
        let mut fired = 0;
        for path in self.base.pendant_paths() {
            let pairs = all_pairs_of(&path);
            if self.record(RuleKind::PendantClique, path, None, pairs) {
                fired += 1;
            }
        }
        fired
    }

    pub fn rule_path_power(&mut self, d: usize) -> Result<usize, RuleError> {
        if d < 1 {
            return Err(RuleError::BadDistance);
        }
        let mut fired = 0;
        for path in self.base.induced_paths(self.base.n()) {
            if path.len() < d + 2 {
                continue;
            }
            let reversed: Vec<usize> = path.iter().rev().copied().collect();
            for p in [path, reversed] {
                if let Some(pairs) = path_power_additions(&self.base, &self.known, &p, d) {
                    if self.record(RuleKind::PathPower, p, Some(d), pairs) {
                        fired += 1;
                    }
                }
            }
        }
        Ok(fired)
    }

    pub fn rule_z(&mut self, h: usize) -> Result<usize, RuleError> {
        if h < 1 {
            return Err(RuleError::BadHeight);
        }
        let mut fired = 0;
        for emb in find_z_embeddings(&self.base, h) {
            if let Some(pairs) = z_additions(&self.base, &self.known, &emb) {
                if self.record(RuleKind::Z, emb.vertices(), Some(h), pairs) {
                    fired += 1;
                }
            }
        }
        Ok(fired)
    }

    /// One round in the fixed order: pendant clique, Z by increasing `h`,
    /// neighbourhood, path power by increasing `d`.
    pub fn round(&mut self) -> usize {
        let n = self.base.n();
        let mut fired = self.rule_pendant_clique();
        for h in 1..=n / 3 {
            fired += self.rule_z(h).expect("h >= 1");
        }
        fired += self.rule_neighborhood();
        for d in 1..n.saturating_sub(1) {
            fired += self.rule_path_power(d).expect("d >= 1");
        }
        fired
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifyStatus {
    /// Closure reached `K_n`; the graph is an SSP graph.
    Certified,
    /// The rules reached a fixpoint short of `K_n`. Not a refutation.
    NotCertified,
    /// The round limit was hit before a fixpoint.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyOutcome {
    pub status: CertifyStatus,
    pub rounds: usize,
    pub final_known: Graph,
    pub trace: Vec<TraceStep>,
}

impl CertifyOutcome {
    pub fn certified(&self) -> bool {
        self.status == CertifyStatus::Certified
    }
}

pub fn certify(g: &Graph, max_rounds: usize) -> Result<CertifyOutcome, RuleError> {
    if max_rounds < 1 {
        return Err(RuleError::BadRounds);
    }
    let mut state = ForcingState::new(g);
    let mut rounds = 0;
    let status = loop {
        if state.is_complete() {
            break CertifyStatus::Certified;
        }
        if rounds == max_rounds {
            break CertifyStatus::Inconclusive;
        }
        rounds += 1;
        if state.round() == 0 {
            break if state.is_complete() {
                CertifyStatus::Certified
            } else {
                CertifyStatus::NotCertified
            };
        }
    };
    Ok(CertifyOutcome {
        status,
        rounds,
        final_known: state.known,
        trace: state.trace,
    })
}

/// Re-checks every step's precondition in order and returns the final `G_l`.
pub fn replay(g: &Graph, trace: &[TraceStep]) -> Result<Graph, RuleError> {
    replay_from(g, g, trace)
}

/// Like [`replay`], starting from a `G_l` established elsewhere.
pub fn replay_from(g: &Graph, start: &Graph, trace: &[TraceStep]) -> Result<Graph, RuleError> {
    let mut known = start.clone();
    for (idx, step) in trace.iter().enumerate() {
        let fail = |why: &str| RuleError::Replay(idx, why.to_string());
        let vs = &step.witness_structure.vertices;
        let pairs = match step.rule {
            RuleKind::Neighborhood => {
                let [i, j, k] = vs[..] else { return Err(fail("expected [i, j, k]")) };
                if neighborhood_target(g, &known, i, j) != Some(k) {
                    return Err(fail("neighbourhood precondition"));
                }
                vec![pair(j, k)]
            }
            RuleKind::PendantClique => {
                if !is_pendant_path(g, vs) {
                    return Err(fail("not a pendant path"));
                }
                all_pairs_of(vs)
            }
            RuleKind::PathPower => {
                let d = step.witness_structure.param.ok_or_else(|| fail("missing d"))?;
                path_power_additions(g, &known, vs, d).ok_or_else(|| fail("path power precondition"))?
            }
            RuleKind::Z => {
                let h = step.witness_structure.param.ok_or_else(|| fail("missing h"))?;
                let emb = ZEmbedding::from_flat(h, vs).ok_or_else(|| fail("bad embedding"))?;
                z_additions(g, &known, &emb).ok_or_else(|| fail("Z precondition"))?
            }
        };
        let mut fresh: Vec<Pair> = pairs.into_iter().filter(|&(u, v)| !known.has_edge(u, v)).collect();
        fresh.sort();
        fresh.dedup();
        if fresh != step.added {
            return Err(fail("added set differs"));
        }
        for (u, v) in fresh {
            known.add_edge(u, v).map_err(|e| fail(&e.to_string()))?;
        }
    }
    Ok(known)
}

/// False when the graph has a vertex of degree at least 4 or an off-cycle
/// vertex of degree at least 3; such graphs are not SSP graphs. True carries
/// no claim.
pub fn necessary_condition_unicyclic(g: &Graph) -> Result<bool, RuleError> {
    let s = g.structure();
    if !s.is_unicyclic {
        return Err(RuleError::NotUnicyclic);
    }
    Ok(g.vertices().all(|v| {
        let d = g.degree(v);
        d <= 3 && (d <= 2 || s.cycle_vertices.contains(&v))
    }))
}

/// Degree characterization of SSP trees: maximum degree at most 3 and at
/// most one vertex of degree 3.
pub fn tree_ssp_predicate(t: &Graph) -> Result<bool, RuleError> {
    if !t.structure().is_tree {
        return Err(RuleError::NotTree);
    }
    let degs = t.degrees();
    Ok(degs.iter().all(|&d| d <= 3) && degs.iter().filter(|&&d| d == 3).count() <= 1)
}

/// Nullspace of `Psi_S(A)` restricted to the columns still unknown in `known`.
/// Each basis vector is indexed like `known.non_edges()`.
pub fn restricted_nullspace(a: &SymMatrix, g: &Graph, known: &Graph) -> Result<(Vec<Pair>, Vec<Vec<crate::FieldScalar>>), RuleError> {
    let psi = build_verification_matrix(a, g)?;
    let cols = known.non_edges();
    let rows = psi.row_labels().to_vec();
    let m = psi.submatrix(&rows, &cols)?;
    let basis = linalg::nullspace(&m).map_err(VerifierError::from)?;
    Ok((cols, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)])).unwrap()
    }

    fn tadpole4(n: usize) -> Graph {
        Graph::from_edges(n + 4, (1..n + 4).map(|i| (i, i + 1)).chain([(1, 4)])).unwrap()
    }

    /// Triangle 1, 2, 3 with legs of the given lengths numbered consecutively.
    fn girth3(legs: [usize; 3]) -> Graph {
        let n = 3 + legs.iter().sum::<usize>();
        let mut g = Graph::from_edges(n, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let mut next = 4;
        for (p, &len) in legs.iter().enumerate() {
            let mut prev = p + 1;
            for _ in 0..len {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
        }
        g
    }

    #[test]
    fn neighborhood_rule_on_t4n() {
        let g = tadpole4(3);
        // G_5: all pairs within 1..5 and within 4..7
        let mut g5 = g.clone();
        for (u, v) in crate::verifier::all_pairs(5) {
            g5.add_edge(u, v).unwrap();
        }
        let mut s = ForcingState::with_known(&g, &g5).unwrap();
        s.rule_pendant_clique();
        // x_{j,6} = 0 for j in 1..=3 via i = 5, k = 6
        for j in 1..=3 {
            assert_eq!(neighborhood_target(&g, s.known(), 5, j), Some(6));
        }
        s.rule_neighborhood();
        for j in 1..=3 {
            assert!(s.known().has_edge(j, 6));
            assert!(s.known().has_edge(j, 7));
        }
    }

    #[test]
    fn complete_graph_is_a_fixpoint() {
        let mut s = ForcingState::new(&Graph::complete(5));
        assert_eq!(s.rule_neighborhood(), 0);
        assert_eq!(s.round(), 0);
        assert!(certify(&Graph::complete(5), 1).unwrap().certified());
    }

    #[test]
    fn pendant_clique_on_t5n() {
        let n = 3;
        let g = Graph::from_edges(n + 5, (1..n + 5).map(|i| (i, i + 1)).chain([(1, 5)])).unwrap();
        let mut s = ForcingState::new(&g);
        s.rule_pendant_clique();
        for i in 5..=n + 5 {
            for j in i + 1..=n + 5 {
                assert!(s.known().has_edge(i, j));
            }
        }
        let mut c = ForcingState::new(&cycle(6));
        assert_eq!(c.rule_pendant_clique(), 0);
    }

    #[test]
    fn z_embeddings() {
        let g = girth3([2, 3, 4]);
        assert_eq!(find_z_embeddings(&g, 1).len(), 1);
        assert_eq!(find_z_embeddings(&g, 2).len(), 1);
        assert!(find_z_embeddings(&g, 3).is_empty());
        assert_eq!(find_z_embeddings(&girth3([3, 3, 3]), 3).len(), 1);
        let t3 = Graph::from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5)]).unwrap();
        assert!((1..4).all(|h| find_z_embeddings(&t3, h).is_empty()));
        assert!(find_z_embeddings(&cycle(5), 1).is_empty());
    }

    #[test]
    fn z_rule_system_sizes() {
        for h in 1..=3 {
            let emb = &find_z_embeddings(&girth3([h, h, h]), h)[0];
            assert_eq!(emb.alpha().len(), 3 * h + 3);
            assert_eq!(emb.beta().len(), 3 * h + 3);
            assert_eq!(emb.beta().iter().collect::<BTreeSet<_>>(), emb.pairs_at(h + 1).iter().collect());
        }
    }

    #[test]
    fn z1_rule_adds_skew_edges() {
        let g = girth3([2, 3, 4]);
        let mut s = ForcingState::new(&g);
        s.rule_pendant_clique();
        assert_eq!(s.rule_z(1).unwrap(), 1);
        let added = &s.trace().last().unwrap().added;
        // v_0^p - v_1^q with v_1 = 4, 6, 9
        assert_eq!(added, &vec![(1, 6), (1, 9), (2, 4), (2, 9), (3, 4), (3, 6)]);
        assert!(s.rule_z(1).unwrap() == 0);
        assert_eq!(s.rule_z(0), Err(RuleError::BadHeight));
    }

    #[test]
    fn path_power_idempotent_when_already_known() {
        let mut s = ForcingState::new(&path(5));
        s.rule_pendant_clique();
        assert!(s.is_complete());
        assert_eq!(s.rule_path_power(2).unwrap(), 0);
        assert_eq!(s.rule_path_power(0), Err(RuleError::BadDistance));
    }

    #[test]
    fn certify_examples() {
        let out = certify(&girth3([2, 3, 4]), 50).unwrap();
        assert!(out.certified());
        assert!(out.final_known.is_complete());
        assert_eq!(replay(&girth3([2, 3, 4]), &out.trace).unwrap(), out.final_known);

        let c4 = certify(&cycle(4), 50).unwrap();
        assert!(!c4.certified());
        assert_eq!(c4.status, CertifyStatus::NotCertified);
        assert_eq!(certify(&cycle(4), 0).unwrap_err(), RuleError::BadRounds);
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = girth3([1, 1, 2]);
        let mut out = certify(&g, 50).unwrap();
        assert!(out.certified());
        let last = out.trace.len() - 1;
        out.trace[last].added.push((1, 2));
        assert!(replay(&g, &out.trace).is_err());
        out.trace.swap(0, last);
        assert!(replay(&g, &out.trace).is_err());
    }

    #[test]
    fn necessary_condition() {
        // degree-4 cycle vertex
        let g = cycle(4).union_edges([]).unwrap();
        let mut g6 = Graph::empty(6);
        for &(u, v) in g.edges().iter().chain(&[(1, 5), (1, 6)]) {
            g6.add_edge(u, v).unwrap();
        }
        assert!(!necessary_condition_unicyclic(&g6).unwrap());
        // off-cycle vertex of degree 3
        let off = Graph::from_edges(7, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6), (6, 7)]).unwrap();
        assert!(!necessary_condition_unicyclic(&off).unwrap());
        assert!(necessary_condition_unicyclic(&tadpole4(3)).unwrap());
        // U_{4,1}: passes, yet not an SSP graph
        let u41 = Graph::from_edges(8, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8)]).unwrap();
        assert!(necessary_condition_unicyclic(&u41).unwrap());
        assert_eq!(necessary_condition_unicyclic(&path(4)), Err(RuleError::NotUnicyclic));
    }

    #[test]
    fn tree_predicate() {
        assert!(tree_ssp_predicate(&path(6)).unwrap());
        let k14 = Graph::from_edges(5, [(1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
        assert!(!tree_ssp_predicate(&k14).unwrap());
        // two degree-3 vertices joined by an edge
        let spider = Graph::from_edges(6, [(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)]).unwrap();
        assert!(!tree_ssp_predicate(&spider).unwrap());
        assert_eq!(tree_ssp_predicate(&cycle(4)), Err(RuleError::NotTree));
    }

    #[test]
    fn trace_json_shape() {
        let out = certify(&girth3([2, 3, 4]), 10).unwrap();
        let v = serde_json::to_value(&out.trace).unwrap();
        let first = &v[0];
        assert_eq!(first["rule"], "pendant_clique");
        assert!(first["witness_structure"]["vertices"].is_array());
        assert!(first["added"][0].is_array());
        let back: Vec<TraceStep> = serde_json::from_value(v).unwrap();
        assert_eq!(back, out.trace);
    }
}
