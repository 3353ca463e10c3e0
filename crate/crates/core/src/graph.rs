//! Simple undirected graphs on vertices `1..=n`.
//!
//! Vertices are 1-indexed throughout the crate so that fixtures can be
//! compared directly against hand-labelled drawings.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Unordered vertex pair stored as `(min, max)`.
pub type Pair = (usize, usize);

/// Canonical `(min, max)` form of `{u, v}`.
pub fn pair(u: usize, v: usize) -> Pair {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("power exponent must be at least 1, got {0}")]
    BadPower(usize),
    #[error("malformed graph text: {0}")]
    Parse(String),
    #[error("graph JSON: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Pair>,
    // adj[v] for v in 1..=n; adj[0] unused
    adj: Vec<BTreeSet<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// Adds `{u, v}`; returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(self.insert_unchecked(u, v))
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        let fresh = self.edges.insert(pair(u, v));
        if fresh {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
        fresh
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&pair(u, v))
    }

    /// Open neighbourhood. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertices().map(|v| self.degree(v)).collect()
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<BTreeSet<usize>, GraphError> {
        self.check(v)?;
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    /// Whether `u ∈ N[v]`, i.e. `u = v` or `{u, v}` is an edge.
    pub fn in_closed_neighborhood(&self, v: usize, u: usize) -> bool {
        u == v || self.adj[v].contains(&u)
    }

    /// All pairs `{u, v}`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if !self.adj[u].contains(&v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.non_edges() {
            g.insert_unchecked(u, v);
        }
        g
    }

    /// Union of edge sets on the same vertex set.
    pub fn union_edges<I: IntoIterator<Item = Pair>>(&self, extra: I) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (u, v) in extra {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Induced subgraph on `keep` (sorted ascending), relabelled `1..=keep.len()`
    /// in that order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph, GraphError> {
        let mut index = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            index[v] = i + 1;
        }
        let mut g = Graph::empty(keep.len());
        for &(u, v) in &self.edges {
            if index[u] != 0 && index[v] != 0 {
                g.insert_unchecked(index[u], index[v]);
            }
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::Parse(format!(
                "permutation has length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        Graph::from_edges(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }

    pub fn distances(&self) -> Distances {
        let n = self.n;
        let mut d = vec![None; (n + 1) * (n + 1)];
        for s in 1..=n {
            d[s * (n + 1) + s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = d[s * (n + 1) + u].unwrap();
                for &w in &self.adj[u] {
                    let slot = &mut d[s * (n + 1) + w];
                    if slot.is_none() {
                        *slot = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        Distances { n, d }
    }

    /// `G^r`: vertices at distance at most `r` become adjacent.
    pub fn power(&self, r: usize) -> Result<Graph, GraphError> {
        self.distance_filter(r, |dist| dist <= r)
    }

    /// `G^(r)`: vertices at distance exactly `r` become adjacent.
    pub fn strong_power(&self, r: usize) -> Result<Graph, GraphError> {
        self.distance_filter(r, |dist| dist == r)
    }

    fn distance_filter(&self, r: usize, keep: impl Fn(usize) -> bool) -> Result<Graph, GraphError> {
        if r < 1 {
            return Err(GraphError::BadPower(r));
        }
        let dist = self.distances();
        let mut g = Graph::empty(self.n);
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if matches!(dist.get(u, v), Some(x) if keep(x)) {
                    g.insert_unchecked(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n;
        let mut best: Option<usize> = None;
        for s in 1..=n {
            let mut dist = vec![usize::MAX; n + 1];
            let mut parent = vec![0usize; n + 1];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertices of the unique cycle of a unicyclic graph, in cyclic order,
    /// starting from the smallest label and stepping to its smaller cycle
    /// neighbour. Empty if the graph is not unicyclic.
    pub fn unicyclic_cycle(&self) -> Vec<usize> {
        if !(self.is_connected() && self.edges.len() == self.n && self.n >= 3) {
            return Vec::new();
        }
        let mut deg: Vec<usize> = (0..=self.n).map(|v| if v == 0 { 0 } else { self.degree(v) }).collect();
        let mut alive = vec![true; self.n + 1];
        alive[0] = false;
        let mut leaves: Vec<usize> = (1..=self.n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = leaves.pop() {
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        let on_cycle: Vec<usize> = (1..=self.n).filter(|&v| alive[v]).collect();
        let start = on_cycle[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *self.adj[start].iter().find(|&&w| alive[w]).unwrap();
        while cur != start {
            order.push(cur);
            let next = *self.adj[cur]
                .iter()
                .find(|&&w| alive[w] && w != prev)
                .unwrap();
            prev = cur;
            cur = next;
        }
        order
    }

    pub fn structure(&self) -> Structure {
        let connected = self.is_connected();
        let is_tree = connected && self.edges.len() + 1 == self.n;
        let is_unicyclic = connected && self.edges.len() == self.n;
        Structure {
            connected,
            girth: self.girth(),
            is_unicyclic,
            is_tree,
            cycle_vertices: if is_unicyclic { self.unicyclic_cycle() } else { Vec::new() },
            degrees: self.degrees(),
        }
    }

    /// Maximal pendant paths, leaf first: `v_1` is a leaf, `v_2..v_{m-1}` have
    /// degree 2 and only `v_m` may have further neighbours.
    pub fn pendant_paths(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for leaf in self.vertices().filter(|&v| self.degree(v) == 1) {
            let mut path = vec![leaf];
            let mut prev = leaf;
            let mut cur = *self.adj[leaf].iter().next().unwrap();
            loop {
                path.push(cur);
                if self.degree(cur) != 2 {
                    break;
                }
                let next = *self.adj[cur].iter().find(|&&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
            let last = *path.last().unwrap();
            // a whole path graph is found from both ends
            if self.degree(last) == 1 && last < leaf {
                continue;
            }
            out.push(path);
        }
        out
    }

    /// Induced paths with 2 to `max_len` vertices, each listed once with its
    /// first vertex smaller than its last.
    pub fn induced_paths(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.n + 1];
        for s in self.vertices() {
            let mut path = vec![s];
            on_path[s] = true;
            self.extend_induced(&mut path, &mut on_path, max_len, &mut out);
            on_path[s] = false;
        }
        out
    }

    fn extend_induced(
        &self,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() >= 2 && path[0] < *path.last().unwrap() {
            out.push(path.clone());
        }
        if path.len() >= max_len {
            return;
        }
        let last = *path.last().unwrap();
        let k = path.len() - 1;
        for &w in &self.adj[last] {
            if on_path[w] || path[..k].iter().any(|&p| self.adj[p].contains(&w)) {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            self.extend_induced(path, on_path, max_len, out);
            path.pop();
            on_path[w] = false;
        }
    }

    /// `"n <count>"` header followed by one `"u v"` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing header".into()))?;
        let n = header
            .strip_prefix('n')
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header {header:?}")))?;
        let mut g = Graph::empty(n);
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => {
                    g.add_edge(u, v)?;
                }
                _ => return Err(GraphError::Parse(format!("bad edge line {line:?}"))),
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::try_from(file)
    }

    /// Sniffs JSON versus edge-list text.
    pub fn parse_any(text: &str) -> Result<Graph, GraphError> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_edge_list(text)
        }
    }
}

/// Wire form `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = GraphError;
    fn try_from(f: GraphFile) -> Result<Self, Self::Error> {
        Graph::from_edges(f.n, f.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        Graph::try_from(f).map_err(serde::de::Error::custom)
    }
}

/// All-pairs hop distances; `None` means unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    n: usize,
    d: Vec<Option<usize>>,
}

impl Distances {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.d[u * (self.n + 1) + v]
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.d.iter().flatten().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub connected: bool,
    pub girth: Option<usize>,
    pub is_unicyclic: bool,
    pub is_tree: bool,
    pub cycle_vertices: Vec<usize>,
    pub degrees: Vec<usize>,
}
