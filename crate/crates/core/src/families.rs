//! Named graph families and explicit non-SSP witnesses.
//!
//! Labelings:
//! - `tadpole:m,n`: cycle `1..m` closed by `{1, m}`, path `m+1..m+n` hanging off `m`.
//! - `girth3:a,b,c`: triangle `1, 2, 3`; legs sorted ascending, leg of vertex
//!   `p` numbered consecutively outward after the previous leg.
//! - `Z:h`: `girth3:h,h,h`.
//! - `U:n,m`: vertex `l*n + i` is copy `l` of cycle vertex `i`, `l = 0..=m`.
//! - `D:n,m`: cycle `1..2n`, path `2n+1..2n+m` off vertex 1, path
//!   `2n+m+1..2n+2m` off vertex `n+1`.
//! - `star:k`: `K_{1,k}` with centre `k+1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::FieldScalar;
use crate::graph::{Graph, GraphError};
use crate::matrix::{self, sample_pattern_matrix, MatrixError, SymMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error("invalid parameters for {0}: {1}")]
    BadParams(&'static str, String),
    #[error("unknown matrix fixture {0:?}")]
    UnknownFixture(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Tadpole(usize, usize),
    Z(usize),
    Girth3(usize, usize, usize),
    U(usize, usize),
    D(usize, usize),
    H7,
    Star(usize),
    Complete(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        use FamilySpec::*;
        let bad = |name, why: &str| Err(FamilyError::BadParams(name, why.to_string()));
        match *self {
            Path(n) if n < 1 => bad("path", "n >= 1"),
            Cycle(n) if n < 3 => bad("cycle", "n >= 3"),
            Tadpole(m, _) if m < 3 => bad("tadpole", "m >= 3"),
            Z(h) if h < 1 => bad("Z", "h >= 1"),
            U(n, _) if n < 3 => bad("U", "n >= 3"),
            D(n, _) if n < 2 => bad("D", "n >= 2"),
            Star(k) if k < 1 => bad("star", "k >= 1"),
            Complete(n) if n < 1 => bad("complete", "n >= 1"),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        use FamilySpec::*;
        let g = match *self {
            Path(n) => Graph::from_edges(n, (1..n).map(|i| (i, i + 1)))?,
            Cycle(n) => tadpole(n, 0)?,
            Tadpole(m, n) => tadpole(m, n)?,
            Z(h) => girth3([h, h, h])?,
            Girth3(a, b, c) => {
                let mut legs = [a, b, c];
                legs.sort_unstable();
                girth3(legs)?
            }
            U(n, m) => u_graph(n, m)?,
            D(n, m) => d_canonical(n, m)?.0,
            H7 => h7_graph(),
            Star(k) => Graph::from_edges(k + 1, (1..=k).map(|i| (i, k + 1)))?,
            Complete(n) => Graph::complete(n),
        };
        Ok(g)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match *self {
            Path(n) => write!(f, "path:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Tadpole(m, n) => write!(f, "tadpole:{m},{n}"),
            Z(h) => write!(f, "Z:{h}"),
            Girth3(a, b, c) => write!(f, "girth3:{a},{b},{c}"),
            U(n, m) => write!(f, "U:{n},{m}"),
            D(n, m) => write!(f, "D:{n},{m}"),
            H7 => write!(f, "H7"),
            Star(k) => write!(f, "star:{k}"),
            Complete(n) => write!(f, "complete:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FamilyError::Parse(s.to_string());
        let s = s.trim();
        if s.eq_ignore_ascii_case("h7") {
            return Ok(FamilySpec::H7);
        }
        let (tag, args) = s.split_once(':').ok_or_else(err)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        use FamilySpec::*;
        let spec = match (tag, nums.as_slice()) {
            ("path", &[n]) => Path(n),
            ("cycle", &[n]) => Cycle(n),
            ("tadpole", &[m, n]) => Tadpole(m, n),
            ("Z", &[h]) => Z(h),
            ("girth3", &[a, b, c]) => {
                let mut legs = [a, b, c];
                legs.sort_unstable();
                Girth3(legs[0], legs[1], legs[2])
            }
            ("U", &[n, m]) => U(n, m),
            ("D", &[n, m]) => D(n, m),
            ("star", &[k]) => Star(k),
            ("complete", &[n]) => Complete(n),
            _ => return Err(err()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn tadpole(m: usize, n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::from_edges(m + n, (1..m + n).map(|i| (i, i + 1)))?;
    g.add_edge(1, m)?;
    Ok(g)
}

fn girth3(legs: [usize; 3]) -> Result<Graph, GraphError> {
    let n = 3 + legs.iter().sum::<usize>();
    let mut g = Graph::from_edges(n, [(1, 2), (2, 3), (1, 3)])?;
    let mut next = 4;
    for (p, &len) in legs.iter().enumerate() {
        let mut prev = p + 1;
        for _ in 0..len {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}

fn u_graph(n: usize, m: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty((m + 1) * n);
    for i in 1..=n {
        g.add_edge(i, i % n + 1)?;
        for l in 0..m {
            g.add_edge(l * n + i, (l + 1) * n + i)?;
        }
    }
    Ok(g)
}

fn h7_graph() -> Graph {
    Graph::from_edges(7, [(1, 2), (1, 4), (2, 3), (3, 4), (2, 5), (3, 6), (4, 7)]).expect("fixed edges")
}

/// `D_{2n,m,m}` in the block labeling: odd and even vertices pair up into
/// blocks of two.
pub fn d_block_graph(n: usize, m: usize) -> Result<Graph, FamilyError> {
    FamilySpec::D(n, m).validate()?;
    let total = 2 * n + 2 * m;
    let mut g = Graph::from_edges(total, [(1, 2 * n - 1), (2, 2 * n - 1), (2 * n - 3, 2 * n)])?;
    for i in 1..=total - 2 {
        if i != 2 * n - 3 {
            g.add_edge(i, i + 2)?;
        }
    }
    Ok(g)
}

/// Adjacency matrix and block witness of `D_{2n,m,m}` in the block labeling.
pub fn d_block_pair(n: usize, m: usize) -> Result<(Graph, SymMatrix, SymMatrix), FamilyError> {
    let g = d_block_graph(n, m)?;
    let a = SymMatrix::adjacency(&g);
    let blocks = n + m;
    let mut x = SymMatrix::zeros(2 * blocks);
    // block (i, j) covers vertices 2i-1, 2i and 2j-1, 2j
    for i in 1..=blocks {
        for j in 1..=blocks {
            if (j == i && j > n - 1) || i + j == n {
                x.set(2 * i - 1, 2 * j, FieldScalar::one());
                x.set(2 * i, 2 * j - 1, FieldScalar::one());
            }
        }
    }
    Ok((g, a, x))
}

/// Permutation from the block labeling to the canonical one: entry `v - 1`
/// is the canonical label of block-labelled vertex `v`.
pub fn d_block_to_canonical(n: usize, m: usize) -> Result<Vec<usize>, FamilyError> {
    let g = d_block_graph(n, m)?;
    let total = g.n();
    let mut perm = vec![0; total];
    // walk the cycle from 2n-1, which becomes 1; the opposite vertex 2n lands on n+1
    let cycle: Vec<usize> = (1..=2 * n).collect();
    let mut prev = 0;
    let mut cur = 2 * n - 1;
    for label in 1..=2 * n {
        perm[cur - 1] = label;
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| w != prev && cycle.contains(&w) && perm[w - 1] == 0)
            .min();
        prev = cur;
        match next {
            Some(w) => cur = w,
            None => break,
        }
    }
    if perm[2 * n - 1] != n + 1 {
        return Err(FamilyError::Precondition("attachment vertices not opposite".into()));
    }
    for k in 0..m {
        perm[2 * n + 2 * k] = 2 * n + 1 + k;
        perm[2 * n + 2 * k + 1] = 2 * n + m + 1 + k;
    }
    Ok(perm)
}

fn d_canonical(n: usize, m: usize) -> Result<(Graph, Vec<usize>), FamilyError> {
    let perm = d_block_to_canonical(n, m)?;
    Ok((d_block_graph(n, m)?.relabel(&perm)?, perm))
}

/// `D_{2n,m,m}` with its adjacency matrix and block witness, relabelled to the
/// canonical labeling.
pub fn witness_d(n: usize, m: usize) -> Result<(Graph, SymMatrix, SymMatrix), FamilyError> {
    let (_, a, x) = d_block_pair(n, m)?;
    let (g, perm) = d_canonical(n, m)?;
    Ok((g, a.relabel(&perm), x.relabel(&perm)))
}

/// Adjacency matrix of `C_n` and the all-ones matrix on its non-edges.
pub fn witness_cycle(n: usize) -> Result<(SymMatrix, SymMatrix), FamilyError> {
    if n < 4 {
        return Err(FamilyError::BadParams("witness_cycle", "n >= 4".into()));
    }
    let g = tadpole(n, 0)?;
    Ok((SymMatrix::adjacency(&g), SymMatrix::adjacency(&g.complement())))
}

/// Hangs a path of `m` new vertices from every vertex of `g` and extends the
/// witness: `B` is block tridiagonal with `A` in the corner and identity
/// blocks beside the diagonal, `Y` repeats `X` on every layer.
pub fn witness_pending_extension(
    g: &Graph,
    a: &SymMatrix,
    x: &SymMatrix,
    m: usize,
) -> Result<(Graph, SymMatrix, SymMatrix), FamilyError> {
    if m < 1 {
        return Err(FamilyError::BadParams("witness_pending_extension", "m >= 1".into()));
    }
    if !matrix::in_pattern_s(a, g)? {
        return Err(FamilyError::Precondition("A is not in S(G)".into()));
    }
    if !matrix::in_pattern_s0bar(x, g)? || !matrix::is_ssp_witness(a, x)? {
        return Err(FamilyError::Precondition("X is not a nonzero commuting witness".into()));
    }
    let n = g.n();
    let mut h = Graph::empty((m + 1) * n);
    for &(u, v) in g.edges() {
        h.add_edge(u, v)?;
    }
    let mut b = SymMatrix::zeros((m + 1) * n);
    let mut y = SymMatrix::zeros((m + 1) * n);
    for i in 1..=n {
        for j in i..=n {
            b.set(i, j, a.get(i, j).clone());
            for l in 0..=m {
                y.set(l * n + i, l * n + j, x.get(i, j).clone());
            }
        }
        for l in 0..m {
            h.add_edge(l * n + i, (l + 1) * n + i)?;
            b.set(l * n + i, (l + 1) * n + i, FieldScalar::one());
        }
    }
    Ok((h, b, y))
}

fn sqrt2(k: i64) -> FieldScalar {
    FieldScalar::sqrt_multiple(k, 2).expect("2 is squarefree")
}

fn int(k: i64) -> FieldScalar {
    FieldScalar::from_int(k)
}

#[rustfmt::skip]
fn h7_pair() -> (SymMatrix, SymMatrix) {
    let a = vec![
        vec![int(0), int(-1), int(0), int(1), int(0), int(0), int(0)],
        vec![int(-1), int(0), int(-1), int(0), sqrt2(-1), int(0), int(0)],
        vec![int(0), int(-1), int(0), int(-1), int(0), int(2), int(0)],
        vec![int(1), int(0), int(-1), int(0), int(0), int(0), sqrt2(-1)],
        vec![int(0), sqrt2(-1), int(0), int(0), sqrt2(1), int(0), int(0)],
        vec![int(0), int(0), int(2), int(0), int(0), int(0), int(0)],
        vec![int(0), int(0), int(0), sqrt2(-1), int(0), int(0), sqrt2(-1)],
    ];
    let x = vec![
        vec![int(0), int(0), sqrt2(1), int(0), int(-1), int(0), int(-1)],
        vec![int(0), int(0), int(0), int(0), int(0), sqrt2(-1), sqrt2(-1)],
        vec![sqrt2(1), int(0), int(0), int(0), int(1), int(0), int(-1)],
        vec![int(0), int(0), int(0), int(0), sqrt2(-1), sqrt2(1), int(0)],
        vec![int(-1), int(0), int(1), sqrt2(-1), int(0), int(0), int(0)],
        vec![int(0), sqrt2(-1), int(0), sqrt2(1), int(0), int(0), int(0)],
        vec![int(-1), sqrt2(-1), int(-1), int(0), int(0), int(0), int(0)],
    ];
    (SymMatrix::from_rows(a).unwrap(), SymMatrix::from_rows(x).unwrap())
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

/// Seed used for the generic `t51` fixture.
pub const T51_FIXTURE_SEED: u64 = 51;

/// Fixed matrices: `"t51"` (a seeded generic matrix on `T_{5,1}`), `"h7"` and
/// `"t61"` (printed pairs).
pub fn fixture_matrices(id: &str) -> Result<(Graph, SymMatrix, Option<SymMatrix>), FamilyError> {
    match id {
        "t51" => {
            let g = tadpole(5, 1)?;
            let a = sample_pattern_matrix(&g, T51_FIXTURE_SEED, 10)?;
            Ok((g, a, None))
        }
        "h7" => {
            let (a, x) = h7_pair();
            Ok((h7_graph(), a, Some(x)))
        }
        "t61" => {
            let (a, x) = t61_pair();
            Ok((tadpole(6, 1)?, a, Some(x)))
        }
        other => Err(FamilyError::UnknownFixture(other.to_string())),
    }
}

/// A known witness for families the constructions cover, re-verified.
pub fn family_witness(spec: &FamilySpec) -> Option<Result<(Graph, SymMatrix, SymMatrix), FamilyError>> {
    let build = || -> Result<(Graph, SymMatrix, SymMatrix), FamilyError> {
        let out = match *spec {
            FamilySpec::Cycle(n) if n >= 4 => {
                let (a, x) = witness_cycle(n)?;
                (spec.generate()?, a, x)
            }
            FamilySpec::U(n, 0) if n >= 4 => {
                let (a, x) = witness_cycle(n)?;
                (spec.generate()?, a, x)
            }
            FamilySpec::U(n, m) if n >= 4 => {
                let (a, x) = witness_cycle(n)?;
                witness_pending_extension(&tadpole(n, 0)?, &a, &x, m)?
            }
            FamilySpec::D(n, m) => witness_d(n, m)?,
            FamilySpec::H7 => {
                let (g, a, x) = fixture_matrices("h7")?;
                (g, a, x.expect("h7 has X"))
            }
            FamilySpec::Tadpole(6, 1) => {
                let (g, a, x) = fixture_matrices("t61")?;
                (g, a, x.expect("t61 has X"))
            }
            _ => unreachable!(),
        };
        if !matrix::in_pattern_s(&out.1, &out.0)? || !matrix::in_pattern_s0bar(&out.2, &out.0)? || !matrix::is_ssp_witness(&out.1, &out.2)? {
            return Err(FamilyError::Precondition(format!("witness for {spec} failed verification")));
        }
        Ok(out)
    };
    let covered = matches!(
        *spec,
        FamilySpec::Cycle(4..) | FamilySpec::U(4.., _) | FamilySpec::D(..) | FamilySpec::H7 | FamilySpec::Tadpole(6, 1)
    );
    covered.then(build)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar() {
        for s in ["tadpole:5,1", "girth3:2,3,4", "U:4,2", "D:4,3", "Z:3", "H7", "cycle:6", "path:7", "star:4", "complete:5"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("girth3:4,2,3".parse::<FamilySpec>().unwrap(), FamilySpec::Girth3(2, 3, 4));
        assert!(matches!("tadpole:2,1".parse::<FamilySpec>(), Err(FamilyError::BadParams(..))));
        assert!("tadpole:5".parse::<FamilySpec>().is_err());
        assert!("blob:3".parse::<FamilySpec>().is_err());
        assert!("D:1,0".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn tadpole_51_edges() {
        let g = FamilySpec::Tadpole(5, 1).generate().unwrap();
        let e: Vec<_> = g.edges().iter().copied().collect();
        assert_eq!(e, vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5), (5, 6)]);
    }

    #[test]
    fn structures() {
        for m in 3..7 {
            for n in 0..4 {
                let s = FamilySpec::Tadpole(m, n).generate().unwrap().structure();
                assert!(s.is_unicyclic);
                assert_eq!(s.girth, Some(m));
                assert_eq!(s.degrees.len(), m + n);
            }
        }
        for h in 1..4 {
            let g = FamilySpec::Z(h).generate().unwrap();
            assert_eq!(g.n(), 3 * h + 3);
            assert_eq!(g.girth(), Some(3));
        }
        let d = FamilySpec::D(3, 2).generate().unwrap();
        let s = d.structure();
        assert!(s.is_unicyclic);
        assert_eq!(s.girth, Some(6));
        assert_eq!(d.degree(1), 3);
        assert_eq!(d.degree(4), 3);
        assert_eq!(d.distances().get(1, 4), Some(3));
        assert_eq!(FamilySpec::U(4, 2).generate().unwrap().n(), 12);
        assert_eq!(FamilySpec::U(5, 0).generate().unwrap(), FamilySpec::Cycle(5).generate().unwrap());
    }

    #[test]
    fn d_block_labeling_matches_block_graph() {
        for n in 2..=4 {
            for m in 0..=3 {
                let g = d_block_graph(n, m).unwrap();
                assert!(g.structure().is_unicyclic, "n={n} m={m}");
                assert_eq!(g.girth(), Some(2 * n));
                let (gp, a, x) = d_block_pair(n, m).unwrap();
                assert!(matrix::is_ssp_witness(&a, &x).unwrap(), "n={n} m={m}");
                assert!(matrix::in_pattern_s0bar(&x, &gp).unwrap());
            }
        }
    }

    #[test]
    fn d_n2_corner_block() {
        // B1 and B2 share the corner block when n = 2
        let (_, a, _) = d_block_pair(2, 1).unwrap();
        for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
            assert!(a.get(i, j).is_one());
        }
    }

    #[test]
    fn fixtures() {
        let (g, a, x) = fixture_matrices("t61").unwrap();
        assert!(a.get(1, 1).is_one() && *a.get(1, 2) == int(-1));
        assert!(x.as_ref().unwrap().get(1, 3).is_one());
        assert!(matrix::in_pattern_s(&a, &g).unwrap());
        let (g, a, x) = fixture_matrices("h7").unwrap();
        assert_eq!(a.radicand(), Some(2));
        assert!(matrix::in_pattern_s(&a, &g).unwrap());
        assert!(matrix::is_ssp_witness(&a, &x.unwrap()).unwrap());
        assert!(matches!(fixture_matrices("nope"), Err(FamilyError::UnknownFixture(_))));
        let (g, a, x) = fixture_matrices("t51").unwrap();
        assert!(x.is_none() && matrix::in_pattern_s(&a, &g).unwrap());
    }

    #[test]
    fn cycle_witness_rejects_small() {
        assert!(witness_cycle(3).is_err());
        let (a, x) = witness_cycle(4).unwrap();
        assert!(matrix::is_ssp_witness(&a, &x).unwrap());
        let diag: Vec<_> = FamilySpec::Cycle(4).generate().unwrap().complement().edges().iter().copied().collect();
        assert_eq!(diag, vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn pending_extension_preconditions() {
        let g = tadpole(4, 0).unwrap();
        let (a, x) = witness_cycle(4).unwrap();
        assert!(witness_pending_extension(&g, &a, &x, 0).is_err());
        assert!(witness_pending_extension(&g, &a, &SymMatrix::zeros(4), 1).is_err());
        let (h, b, y) = witness_pending_extension(&g, &a, &x, 2).unwrap();
        assert_eq!(h, FamilySpec::U(4, 2).generate().unwrap());
        assert!(matrix::in_pattern_s(&b, &h).unwrap());
        assert!(matrix::is_ssp_witness(&b, &y).unwrap());
    }

    #[test]
    fn witness_lookup() {
        for s in ["U:6,1", "D:3,2", "H7", "cycle:5", "tadpole:6,1", "U:4,0"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert!(family_witness(&spec).unwrap().is_ok(), "{s}");
        }
        assert!(family_witness(&"tadpole:5,1".parse().unwrap()).is_none());
        assert!(family_witness(&"cycle:3".parse().unwrap()).is_none());
    }
}
