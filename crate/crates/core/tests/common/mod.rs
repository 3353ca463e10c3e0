//! Independent oracles shared by the integration tests. Nothing here calls
//! the elimination or verification-matrix code under test.

#![allow(dead_code)]

use ssp_core::{FieldScalar, Graph, SymMatrix};

pub fn mul(a: &SymMatrix, b: &SymMatrix) -> Vec<Vec<FieldScalar>> {
    let n = a.n();
    let mut out = vec![vec![FieldScalar::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let mut acc = FieldScalar::zero();
            for k in 1..=n {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if !x.is_zero() && !y.is_zero() {
                    acc = acc + x * y;
                }
            }
            out[i - 1][j - 1] = acc;
        }
    }
    out
}

/// `AX - XA` by plain products, 0-indexed.
pub fn commutator(a: &SymMatrix, x: &SymMatrix) -> Vec<Vec<FieldScalar>> {
    let ax = mul(a, x);
    let xa = mul(x, a);
    ax.iter().zip(&xa).map(|(r, s)| r.iter().zip(s).map(|(p, q)| p - q).collect()).collect()
}

pub fn is_zero(m: &[Vec<FieldScalar>]) -> bool {
    m.iter().flatten().all(|v| v.is_zero())
}

/// Every defining condition of a witness, checked entry by entry.
pub fn witness_ok(a: &SymMatrix, x: &SymMatrix, g: &Graph) -> bool {
    let n = a.n();
    if n != g.n() || x.n() != n {
        return false;
    }
    let mut nonzero = false;
    for i in 1..=n {
        if !x.get(i, i).is_zero() {
            return false;
        }
        for j in 1..=n {
            if i == j {
                continue;
            }
            if g.has_edge(i, j) == a.get(i, j).is_zero() {
                return false;
            }
            if g.has_edge(i, j) && !x.get(i, j).is_zero() {
                return false;
            }
            nonzero |= !x.get(i, j).is_zero();
        }
    }
    nonzero && is_zero(&commutator(a, x))
}

/// Symmetric basis matrix with ones at `(k, l)` and `(l, k)`.
pub fn basis(n: usize, k: usize, l: usize) -> SymMatrix {
    let mut e = SymMatrix::zeros(n);
    e.set(k, l, FieldScalar::one());
    e
}

/// Matrix of `X -> [A, X]` on the non-edges of `g`: rows are the strict
/// upper triangle in lexicographic order, columns the non-edges in
/// lexicographic order.
pub fn brute_force_psi(a: &SymMatrix, g: &Graph) -> Vec<Vec<FieldScalar>> {
    let n = g.n();
    let rows: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let cols: Vec<(usize, usize)> = rows.iter().copied().filter(|&(k, l)| !g.has_edge(k, l)).collect();
    let mut out = vec![vec![FieldScalar::zero(); cols.len()]; rows.len()];
    for (c, &(k, l)) in cols.iter().enumerate() {
        let comm = commutator(a, &basis(n, k, l));
        for (r, &(i, j)) in rows.iter().enumerate() {
            out[r][c] = comm[i - 1][j - 1].clone();
        }
    }
    out
}

/// Laplace expansion along the first row, skipping zeros.
pub fn laplace_det(m: &[Vec<FieldScalar>]) -> FieldScalar {
    let n = m.len();
    if n == 0 {
        return FieldScalar::one();
    }
    let mut acc = FieldScalar::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<FieldScalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * &laplace_det(&minor);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Rank by plain Gaussian elimination over the field.
pub fn gauss_rank(m: &[Vec<FieldScalar>]) -> usize {
    let mut m: Vec<Vec<FieldScalar>> = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                for k in c..cols {
                    let v = &m[r][k] - &(&f * &m[rank][k]);
                    m[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Entry `(r, c)` for labelled rows and columns of the brute-force matrix.
pub fn select(m: &[Vec<FieldScalar>], g: &Graph, rows: &[(usize, usize)], cols: &[(usize, usize)]) -> Vec<Vec<FieldScalar>> {
    let n = g.n();
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let non: Vec<(usize, usize)> = all.iter().copied().filter(|&(k, l)| !g.has_edge(k, l)).collect();
    rows.iter()
        .map(|r| {
            let ri = all.iter().position(|p| p == r).expect("row label");
            cols.iter().map(|c| m[ri][non.iter().position(|p| p == c).expect("column label")].clone()).collect()
        })
        .collect()
}

/// Every connected labelled graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
        let g = Graph::from_edges(n, edges).unwrap();
        if connected(&g) {
            out.push(g);
        }
    }
    out
}

fn connected(g: &Graph) -> bool {
    let n = g.n();
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for u in 1..=n {
            if !seen[u] && g.has_edge(u, v) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Product of the given entries of `A`, each `(i, j, power)`.
pub fn mono(a: &SymMatrix, terms: &[(usize, usize, u32)]) -> FieldScalar {
    terms.iter().fold(FieldScalar::one(), |acc, &(i, j, e)| (0..e).fold(acc, |x, _| x * a.get(i, j)))
}
