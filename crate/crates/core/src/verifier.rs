//! The verification matrix `Psi` of the linear system `[A, X] = O` and the
//! per-matrix SSP decision built on it.
//!
//! Columns are the non-edges of `G` in ascending lexicographic order. Rows are
//! all vertex pairs, also in lexicographic order; printed layouts elsewhere are
//! reached by explicit row/column index lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::FieldScalar;
use crate::graph::{pair, Graph, GraphError, Pair};
use crate::linalg;
use crate::matrix::{self, DenseMatrix, MatrixError, SymMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("matrix does not have the pattern of the graph")]
    PatternMismatch,
    #[error("vertex {0} is not a leaf")]
    NotLeaf(usize),
    #[error("pair {0:?} is not a row or column label")]
    UnknownPair(Pair),
    #[error("extracted witness failed re-verification")]
    WitnessRejected,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Coefficient of `x_{kl}` in `[A, X]_{ij}`, for `i != j`, `k != l`.
pub fn coefficient(a: &SymMatrix, (i, j): Pair, (k, l): Pair) -> FieldScalar {
    let mut acc = FieldScalar::zero();
    if j == l {
        acc = &acc + a.get(i, k);
    }
    if j == k {
        acc = &acc + a.get(i, l);
    }
    if i == l {
        acc = &acc - a.get(k, j);
    }
    if i == k {
        acc = &acc - a.get(l, j);
    }
    acc
}

/// All pairs `{i, j}`, `i < j`, in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<Pair> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationMatrix {
    rows: Vec<Pair>,
    cols: Vec<Pair>,
    entries: BTreeMap<(usize, usize), FieldScalar>,
}

impl VerificationMatrix {
    pub fn row_labels(&self) -> &[Pair] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Pair] {
        &self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Nonzero entries keyed by `(row position, column position)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), FieldScalar> {
        &self.entries
    }

    pub fn row_position(&self, p: Pair) -> Option<usize> {
        let p = pair(p.0, p.1);
        self.rows.iter().position(|&r| r == p)
    }

    pub fn col_position(&self, p: Pair) -> Option<usize> {
        let p = pair(p.0, p.1);
        self.cols.binary_search(&p).ok()
    }

    pub fn get(&self, row: Pair, col: Pair) -> Option<FieldScalar> {
        let r = self.row_position(row)?;
        let c = self.col_position(col)?;
        Some(self.entries.get(&(r, c)).cloned().unwrap_or_default())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows.len(), self.cols.len());
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        m
    }

    /// Dense submatrix addressed by pair labels, in the given order.
    pub fn submatrix(&self, rows: &[Pair], cols: &[Pair]) -> Result<DenseMatrix, VerifierError> {
        let r = rows
            .iter()
            .map(|&p| self.row_position(p).ok_or(VerifierError::UnknownPair(p)))
            .collect::<Result<Vec<_>, _>>()?;
        let c = cols
            .iter()
            .map(|&p| self.col_position(p).ok_or(VerifierError::UnknownPair(p)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(linalg::submatrix(&self.to_dense(), &r, &c)?)
    }

    pub fn rank(&self) -> Result<usize, MatrixError> {
        linalg::rank(&self.to_dense())
    }
}

/// `Psi_S(A)` with canonical row and column order.
pub fn build_verification_matrix(a: &SymMatrix, g: &Graph) -> Result<VerificationMatrix, VerifierError> {
    if !matrix::in_pattern_s(a, g)? {
        return Err(VerifierError::PatternMismatch);
    }
    Ok(build_unchecked(a, g))
}

fn build_unchecked(a: &SymMatrix, g: &Graph) -> VerificationMatrix {
    let n = g.n();
    let rows = all_pairs(n);
    let cols = g.non_edges();
    // row index of (i, j) in lexicographic order
    let row_of = |i: usize, j: usize| (i - 1) * (2 * n - i) / 2 + (j - i - 1);
    let mut entries = BTreeMap::new();
    for (c, &(k, l)) in cols.iter().enumerate() {
        // only rows meeting {k, l} can involve x_{kl}
        for end in [k, l] {
            for m in 1..=n {
                if m == end {
                    continue;
                }
                let row = pair(end, m);
                let r = row_of(row.0, row.1);
                if entries.contains_key(&(r, c)) {
                    continue;
                }
                let v = coefficient(a, row, (k, l));
                if !v.is_zero() {
                    entries.insert((r, c), v);
                }
            }
        }
    }
    VerificationMatrix { rows, cols, entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Approx,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "approx" => Ok(Mode::Approx),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SspReport {
    pub graph: Graph,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub columns: usize,
    pub rank: usize,
    pub has_ssp: bool,
    pub witness: Option<SymMatrix>,
    pub mode: Mode,
    /// False for floating point results.
    pub certifying: bool,
}

impl SspReport {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

/// Places `v[c]` at both `(k, l)` and `(l, k)` for the `c`-th non-edge.
pub fn vector_to_matrix(n: usize, cols: &[Pair], v: &[FieldScalar]) -> SymMatrix {
    let mut x = SymMatrix::zeros(n);
    for (&(k, l), val) in cols.iter().zip(v) {
        x.set(k, l, val.clone());
    }
    x
}

/// Decides SSP for one matrix. Exact mode re-verifies any witness against the
/// defining conditions before returning it.
pub fn check_ssp(a: &SymMatrix, g: &Graph, mode: Mode) -> Result<SspReport, VerifierError> {
    let psi = build_verification_matrix(a, g)?;
    let dense = psi.to_dense();
    let columns = psi.cols.len();
    let (rank, witness) = match mode {
        Mode::Approx => (linalg::approx_rank(&dense, linalg::APPROX_EPS), None),
        Mode::Exact => {
            let rank = linalg::rank(&dense)?;
            let witness = if rank < columns {
                let basis = linalg::nullspace(&dense)?;
                let v = linalg::primitive(&basis[0])?;
                let x = vector_to_matrix(g.n(), &psi.cols, &v);
                if !matrix::is_ssp_witness(a, &x)? || !matrix::in_pattern_s0bar(&x, g)? {
                    return Err(VerifierError::WitnessRejected);
                }
                Some(x)
            } else {
                None
            };
            (rank, witness)
        }
    };
    Ok(SspReport {
        graph: g.clone(),
        seed: None,
        source: None,
        columns,
        rank,
        has_ssp: rank == columns,
        witness,
        mode,
        certifying: mode == Mode::Exact,
    })
}

/// `Psi_S(B)` split around a leaf `w` with neighbour `v`.
///
/// Old rows/columns avoid `w`; new ones contain it. `a1` is indexed like
/// `Psi_S(A)` for `A = B` with `w` deleted (vertices above `w` shift down by
/// one).
#[derive(Debug, Clone)]
pub struct LeafBlocks {
    pub leaf: usize,
    pub neighbor: usize,
    pub old_rows: Vec<Pair>,
    pub new_rows: Vec<Pair>,
    pub old_cols: Vec<Pair>,
    pub new_cols: Vec<Pair>,
    pub a1: DenseMatrix,
    pub b1: DenseMatrix,
    pub b2: DenseMatrix,
    pub a2: DenseMatrix,
    /// `(row in old_rows, column in new_cols, value)` for the nonzeros of `b1`:
    /// row `{i, v}` for column `{i, w}`, value `-a_vw` when `i < v` and
    /// `+a_vw` otherwise (the sign follows the row orientation).
    pub predicted_b1: Vec<(usize, usize, FieldScalar)>,
    /// Matrix on `H - w`.
    pub reduced: SymMatrix,
    pub reduced_graph: Graph,
}

pub fn leaf_extension_blocks(b: &SymMatrix, h: &Graph, w: usize) -> Result<LeafBlocks, VerifierError> {
    if w == 0 || w > h.n() || h.degree(w) != 1 {
        return Err(VerifierError::NotLeaf(w));
    }
    let psi = build_verification_matrix(b, h)?;
    let v = *h.neighbors(w).iter().next().unwrap();
    let keep: Vec<usize> = h.vertices().filter(|&x| x != w).collect();
    let reduced = b.principal(&keep);
    let reduced_graph = h.induced_subgraph(&keep)?;

    let touches = |p: &Pair| p.0 == w || p.1 == w;
    let (new_rows, old_rows): (Vec<Pair>, Vec<Pair>) = psi.rows.iter().partition(|p| touches(p));
    let (new_cols, old_cols): (Vec<Pair>, Vec<Pair>) = psi.cols.iter().partition(|p| touches(p));

    let a_vw = b.get(v, w).clone();
    let mut predicted_b1 = Vec::new();
    for (c, &col) in new_cols.iter().enumerate() {
        let i = if col.0 == w { col.1 } else { col.0 };
        let row = pair(i, v);
        let r = old_rows.iter().position(|&p| p == row).unwrap();
        let val = if i < v { -&a_vw } else { a_vw.clone() };
        predicted_b1.push((r, c, val));
    }

    Ok(LeafBlocks {
        leaf: w,
        neighbor: v,
        a1: psi.submatrix(&old_rows, &old_cols)?,
        b1: psi.submatrix(&old_rows, &new_cols)?,
        b2: psi.submatrix(&new_rows, &old_cols)?,
        a2: psi.submatrix(&new_rows, &new_cols)?,
        old_rows,
        new_rows,
        old_cols,
        new_cols,
        predicted_b1,
        reduced,
        reduced_graph,
    })
}

impl LeafBlocks {
    /// `a1` equals `Psi_S` of the reduced matrix, and `b1` has exactly the
    /// predicted nonzeros.
    pub fn check(&self) -> Result<bool, VerifierError> {
        let psi_a = build_verification_matrix(&self.reduced, &self.reduced_graph)?;
        if psi_a.to_dense() != self.a1 {
            return Ok(false);
        }
        let mut expect = DenseMatrix::zeros(self.b1.rows(), self.b1.cols());
        for (r, c, v) in &self.predicted_b1 {
            expect.set(*r, *c, v.clone());
        }
        Ok(expect == self.b1)
    }

    /// Reassembles `[[a1, b1], [b2, a2]]`.
    pub fn assemble(&self) -> DenseMatrix {
        let (r1, c1) = (self.a1.rows(), self.a1.cols());
        let rows = r1 + self.b2.rows();
        let cols = c1 + self.b1.cols();
        let mut m = DenseMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = match (r < r1, c < c1) {
                    (true, true) => self.a1.at(r, c),
                    (true, false) => self.b1.at(r, c - c1),
                    (false, true) => self.b2.at(r - r1, c),
                    (false, false) => self.a2.at(r - r1, c - c1),
                };
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Row and column permutations taking `Psi_S(B)` to the block form:
    /// block row `r` is canonical row `row_perm[r]`.
    pub fn permutations(&self, n: usize) -> (Vec<usize>, Vec<usize>) {
        let rows = all_pairs(n);
        let row_perm = self
            .old_rows
            .iter()
            .chain(&self.new_rows)
            .map(|p| rows.binary_search(p).unwrap())
            .collect();
        let mut cols: Vec<Pair> = self.old_cols.iter().chain(&self.new_cols).copied().collect();
        cols.sort();
        let col_perm = self
            .old_cols
            .iter()
            .chain(&self.new_cols)
            .map(|p| cols.binary_search(p).unwrap())
            .collect();
        (row_perm, col_perm)
    }
}
