//! Dense matrices over [`FieldScalar`], pattern membership tests, and seeded
//! sampling of matrices in `S(G)`.
//!
//! [`SymMatrix`] is addressed with 1-indexed vertices like [`Graph`];
//! [`DenseMatrix`] is a plain 0-indexed rectangular array used by the linear
//! algebra routines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, FieldScalar};
use crate::graph::Graph;

pub const DEFAULT_SAMPLE_RANGE: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("index ({0}, {1}) out of range")]
    Index(usize, usize),
    #[error("sampling range must be at least 1")]
    BadRange,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("matrix JSON: {0}")]
    Json(String),
}

/// Rectangular matrix, row-major, 0-indexed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldScalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(MatrixError::Index(bad, rows[bad].len()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldScalar::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    /// Common radicand of all entries, or an error if two differ.
    pub fn radicand(&self) -> Result<Option<u64>, MatrixError> {
        common_radicand(&self.data)
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::OrderMismatch(self.cols, other.rows));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::OrderMismatch(self.rows, other.rows));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(DenseMatrix { data, ..*self })
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::OrderMismatch(self.cols, v.len()));
        }
        (0..self.rows)
            .map(|r| {
                let mut acc = FieldScalar::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(x)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }
}

pub(crate) fn common_radicand<'a, I>(entries: I) -> Result<Option<u64>, MatrixError>
where
    I: IntoIterator<Item = &'a FieldScalar>,
{
    let mut seen = None;
    for x in entries {
        if let Some(d) = x.radicand() {
            match seen {
                None => seen = Some(d),
                Some(e) if e != d => return Err(ArithError::RadicandMismatch(e, d).into()),
                _ => {}
            }
        }
    }
    Ok(seen)
}

/// Dense symmetric matrix with 1-indexed access.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    inner: DenseMatrix,
}

impl std::fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sym{:?}", self.inner)
    }
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            inner: DenseMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, FieldScalar::one());
        }
        m
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = Self::zeros(g.n());
        for &(u, v) in g.edges() {
            m.set(u, v, FieldScalar::one());
        }
        m
    }

    /// Checks symmetry of a square dense matrix.
    pub fn from_dense(m: DenseMatrix) -> Result<Self, MatrixError> {
        if m.rows != m.cols {
            return Err(MatrixError::OrderMismatch(m.rows, m.cols));
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if m.at(i, j) != m.at(j, i) {
                    return Err(MatrixError::NotSymmetric(i + 1, j + 1));
                }
            }
        }
        m.radicand()?;
        Ok(Self { inner: m })
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Result<Self, MatrixError> {
        Self::from_dense(DenseMatrix::from_rows(rows)?)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_dense(DenseMatrix::from_i64_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.inner.rows
    }

    /// Entry `a_{ij}`, 1-indexed.
    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        self.inner.at(i - 1, j - 1)
    }

    /// Sets `a_{ij}` and `a_{ji}`.
    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        self.inner.set(j - 1, i - 1, v.clone());
        self.inner.set(i - 1, j - 1, v);
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.inner
    }

    pub fn into_dense(self) -> DenseMatrix {
        self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn radicand(&self) -> Option<u64> {
        // construction guarantees agreement
        common_radicand(&self.inner.data).ok().flatten()
    }

    /// Principal submatrix on the given 1-indexed vertices, in that order.
    pub fn principal(&self, keep: &[usize]) -> SymMatrix {
        let mut m = SymMatrix::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a) {
                m.set(a + 1, b + 1, self.get(i, j).clone());
            }
        }
        m
    }

    /// Simultaneous row/column relabelling: vertex `v` moves to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> SymMatrix {
        let n = self.n();
        let mut m = SymMatrix::zeros(n);
        for i in 1..=n {
            for j in i..=n {
                m.set(perm[i - 1], perm[j - 1], self.get(i, j).clone());
            }
        }
        m
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            n: self.n(),
            radicand: self.radicand(),
            entries: (0..self.n())
                .map(|r| self.inner.row(r).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<SymMatrix, MatrixError> {
        let f: MatrixFile = serde_json::from_str(text).map_err(|e| MatrixError::Json(e.to_string()))?;
        SymMatrix::try_from(f)
    }
}

/// Wire form `{"n": .., "radicand": d|null, "entries": [["p/q", ..], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub radicand: Option<u64>,
    pub entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixFile> for SymMatrix {
    type Error = MatrixError;
    fn try_from(f: MatrixFile) -> Result<Self, Self::Error> {
        if f.entries.len() != f.n {
            return Err(MatrixError::OrderMismatch(f.n, f.entries.len()));
        }
        let rows = f
            .entries
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<FieldScalar>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = SymMatrix::from_rows(rows)?;
        if m.n() != f.n {
            return Err(MatrixError::OrderMismatch(f.n, m.n()));
        }
        if let (Some(declared), Some(found)) = (f.radicand, m.radicand()) {
            if declared != found {
                return Err(ArithError::RadicandMismatch(declared, found).into());
            }
        }
        Ok(m)
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SymMatrix::try_from(MatrixFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn same_order(a: usize, b: usize) -> Result<(), MatrixError> {
    if a == b {
        Ok(())
    } else {
        Err(MatrixError::OrderMismatch(a, b))
    }
}

/// Off-diagonal support of `a` is exactly `E(g)`.
pub fn in_pattern_s(a: &SymMatrix, g: &Graph) -> Result<bool, MatrixError> {
    same_order(a.n(), g.n())?;
    for i in 1..=g.n() {
        for j in i + 1..=g.n() {
            if a.get(i, j).is_zero() == g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Zero diagonal and zero on `E(h)`.
pub fn in_pattern_s0bar(x: &SymMatrix, h: &Graph) -> Result<bool, MatrixError> {
    same_order(x.n(), h.n())?;
    let diag_ok = (1..=h.n()).all(|i| x.get(i, i).is_zero());
    Ok(diag_ok && h.edges().iter().all(|&(u, v)| x.get(u, v).is_zero()))
}

/// `AX - XA`. Panics in debug builds if the result is not skew-symmetric.
pub fn commutator(a: &SymMatrix, x: &SymMatrix) -> Result<DenseMatrix, MatrixError> {
    same_order(a.n(), x.n())?;
    let ax = a.inner.mul(&x.inner)?;
    // (AX)^T = XA for symmetric inputs
    let c = ax.sub(&ax.transpose())?;
    debug_assert!((0..c.rows).all(|i| (0..c.cols).all(|j| *c.at(i, j) == -c.at(j, i))));
    Ok(c)
}

pub fn hadamard(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix, MatrixError> {
    same_order(a.n(), b.n())?;
    let data = a
        .inner
        .data
        .iter()
        .zip(&b.inner.data)
        .map(|(x, y)| x.checked_mul(y))
        .collect::<Result<_, _>>()?;
    Ok(SymMatrix {
        inner: DenseMatrix { data, ..a.inner },
    })
}

/// The three conditions under which `x` shows that `a` lacks the SSP:
/// `A∘X = O`, `I∘X = O`, `[A,X] = O`, and `X ≠ O`.
pub fn is_ssp_witness(a: &SymMatrix, x: &SymMatrix) -> Result<bool, MatrixError> {
    same_order(a.n(), x.n())?;
    if x.is_zero() {
        return Ok(false);
    }
    if !hadamard(a, x)?.is_zero() || !hadamard(&SymMatrix::identity(a.n()), x)?.is_zero() {
        return Ok(false);
    }
    Ok(commutator(a, x)?.is_zero())
}

/// Seeded integer matrix in `S(g)`: edge entries uniform in
/// `[-range, range] \ {0}`, diagonal uniform in `[-range, range]`.
pub fn sample_pattern_matrix(g: &Graph, seed: u64, range: i64) -> Result<SymMatrix, MatrixError> {
    if range < 1 {
        return Err(MatrixError::BadRange);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = SymMatrix::zeros(g.n());
    for i in 1..=g.n() {
        m.set(i, i, FieldScalar::from_int(rng.random_range(-range..=range)));
    }
    for &(u, v) in g.edges() {
        m.set(u, v, FieldScalar::from_int(nonzero(&mut rng, range)));
    }
    Ok(m)
}

/// Uniform on `[-range, range] \ {0}`.
pub fn nonzero<R: Rng>(rng: &mut R, range: i64) -> i64 {
    let k = rng.random_range(1..=2 * range);
    if k <= range {
        k - range - 1
    } else {
        k - range
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)])).unwrap()
    }

    fn t61() -> Graph {
        Graph::from_edges(7, (1..6).map(|i| (i, i + 1)).chain([(1, 6), (6, 7)])).unwrap()
    }

    #[rustfmt::skip]
    fn t61_pair() -> (SymMatrix, SymMatrix) {
        let a = SymMatrix::from_i64_rows(&[
            &[1, -1, 0, 0, 0, 1, 0],
            &[-1, 2, 1, 0, 0, 0, 0],
            &[0, 1, 0, 1, 0, 0, 0],
            &[0, 0, 1, 2, -1, 0, 0],
            &[0, 0, 0, -1, 1, 1, 0],
            &[1, 0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 0, 0, 1, 1],
        ]).unwrap();
        let x = SymMatrix::from_i64_rows(&[
            &[0, 0, 1, 0, -1, 0, 0],
            &[0, 0, 0, -1, 0, 1, 0],
            &[1, 0, 0, 0, 1, -1, 1],
            &[0, -1, 0, 0, 0, 1, 0],
            &[-1, 0, 1, 0, 0, 0, 0],
            &[0, 1, -1, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0, 0],
        ]).unwrap();
        (a, x)
    }

    #[test]
    fn rejects_asymmetric() {
        let e = SymMatrix::from_i64_rows(&[&[0, 1], &[2, 0]]);
        assert_eq!(e, Err(MatrixError::NotSymmetric(1, 2)));
    }

    #[test]
    fn pattern_membership() {
        let g = cycle(5);
        assert!(in_pattern_s(&SymMatrix::adjacency(&g), &g).unwrap());
        assert!(!in_pattern_s(&SymMatrix::zeros(5), &g).unwrap());
        assert!(in_pattern_s0bar(&SymMatrix::zeros(5), &g).unwrap());
        let mut d = SymMatrix::zeros(5);
        d.set(2, 2, FieldScalar::one());
        assert!(!in_pattern_s0bar(&d, &g).unwrap());
        assert!(in_pattern_s(&SymMatrix::zeros(4), &g).is_err());

        let (a, x) = t61_pair();
        assert!(in_pattern_s(&a, &t61()).unwrap());
        assert!(in_pattern_s0bar(&x, &t61()).unwrap());
    }

    #[test]
    fn t61_pair_commutes() {
        let (a, x) = t61_pair();
        assert!(commutator(&a, &x).unwrap().is_zero());
        assert!(hadamard(&a, &x).unwrap().is_zero());
        assert!(is_ssp_witness(&a, &x).unwrap());
        assert!(!is_ssp_witness(&a, &SymMatrix::zeros(7)).unwrap());
    }

    #[test]
    fn c4_commutes_with_complement() {
        let g = cycle(4);
        let a = SymMatrix::adjacency(&g);
        let x = SymMatrix::adjacency(&g.complement());
        assert!(commutator(&a, &x).unwrap().is_zero());
        assert!(commutator(&a, &SymMatrix::identity(4)).unwrap().is_zero());
    }

    #[test]
    fn hadamard_identities() {
        let a = sample_pattern_matrix(&cycle(6), 3, 10).unwrap();
        assert!(hadamard(&a, &SymMatrix::zeros(6)).unwrap().is_zero());
        let j = SymMatrix::from_rows(vec![vec![FieldScalar::one(); 6]; 6]).unwrap();
        assert_eq!(hadamard(&a, &j).unwrap(), a);
    }

    #[test]
    fn sampling_is_deterministic_and_in_pattern() {
        let g = Graph::from_edges(2, [(1, 2)]).unwrap();
        for seed in 0..20 {
            let a = sample_pattern_matrix(&g, seed, 1).unwrap();
            assert!(!a.get(1, 2).is_zero());
        }
        let t = t61();
        assert_eq!(
            sample_pattern_matrix(&t, 9, 10).unwrap(),
            sample_pattern_matrix(&t, 9, 10).unwrap()
        );
        assert_eq!(sample_pattern_matrix(&t, 9, 0), Err(MatrixError::BadRange));
    }

    #[test]
    fn json_round_trip() {
        let s = FieldScalar::sqrt_multiple(-1, 2).unwrap();
        let mut m = SymMatrix::zeros(3);
        m.set(1, 2, s);
        m.set(3, 3, FieldScalar::from_ratio(1, 2).unwrap());
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"radicand\":2"));
        assert_eq!(SymMatrix::from_json(&text).unwrap(), m);
        let bad = r#"{"n":2,"radicand":3,"entries":[["0","sqrt(2)"],["sqrt(2)","0"]]}"#;
        assert!(SymMatrix::from_json(bad).is_err());
    }

    proptest! {
        #[test]
        fn commutator_is_skew_with_zero_diagonal(seed_a in 0u64..1000, seed_x in 0u64..1000) {
            let g = cycle(5);
            let a = sample_pattern_matrix(&g, seed_a, 10).unwrap();
            let x = sample_pattern_matrix(&g.complement(), seed_x, 10).unwrap();
            let c = commutator(&a, &x).unwrap();
            let ct = c.transpose();
            for i in 0..5 {
                prop_assert!(c.at(i, i).is_zero());
                for j in 0..5 {
                    prop_assert_eq!(c.at(i, j), &-ct.at(i, j));
                }
            }
        }

        #[test]
        fn nonzero_draw_in_range(seed in 0u64..10_000, range in 1i64..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = nonzero(&mut rng, range);
            prop_assert!(k != 0 && k.abs() <= range);
        }
    }
}
