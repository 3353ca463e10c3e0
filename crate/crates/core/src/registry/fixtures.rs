//! Printed matrices transcribed as entry expressions over the entries of `A`.
//!
//! Entry grammar: signed sum of terms, each term a `*`/`/` chain of integers
//! and symbols `aIJ` (single-digit indices), e.g. `a11-a44`, `-a45`,
//! `a23*a34/a14`, `2*a12*a23/a56/a67`.

use thiserror::Error;

use crate::arith::{ArithError, FieldScalar};
use crate::families::FamilySpec;
use crate::graph::{pair, Pair};
use crate::matrix::{DenseMatrix, SymMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("bad entry expression {0:?}")]
    Parse(String),
    #[error("symbol {0:?} outside the matrix")]
    Index(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Parses `"14 23 15"` into `[(1,4), (2,3), (1,5)]`.
pub fn pairs(s: &str) -> Vec<Pair> {
    s.split_whitespace()
        .map(|t| {
            let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).expect("digit label") as usize).collect();
            assert_eq!(d.len(), 2, "pair label {t:?}");
            pair(d[0], d[1])
        })
        .collect()
}

fn factor(tok: &str, a: &SymMatrix) -> Result<FieldScalar, FixtureError> {
    if let Some(idx) = tok.strip_prefix('a') {
        let d: Vec<usize> = idx.chars().filter_map(|c| c.to_digit(10).map(|x| x as usize)).collect();
        if d.len() != 2 || idx.len() != 2 {
            return Err(FixtureError::Parse(tok.to_string()));
        }
        let (i, j) = (d[0], d[1]);
        if i == 0 || j == 0 || i > a.n() || j > a.n() {
            return Err(FixtureError::Index(tok.to_string()));
        }
        return Ok(a.get(i, j).clone());
    }
    tok.parse::<i64>().map(FieldScalar::from_int).map_err(|_| FixtureError::Parse(tok.to_string()))
}

fn term(t: &str, a: &SymMatrix) -> Result<FieldScalar, FixtureError> {
    let mut acc: Option<FieldScalar> = None;
    let mut op = '*';
    let mut start = 0;
    let bytes: Vec<char> = t.chars().collect();
    for idx in 0..=bytes.len() {
        if idx == bytes.len() || bytes[idx] == '*' || bytes[idx] == '/' {
            let tok: String = bytes[start..idx].iter().collect();
            let f = factor(tok.trim(), a)?;
            acc = Some(match (acc, op) {
                (None, _) => f,
                (Some(x), '*') => x.checked_mul(&f)?,
                (Some(x), _) => x.checked_div(&f)?,
            });
            if idx < bytes.len() {
                op = bytes[idx];
            }
            start = idx + 1;
        }
    }
    acc.ok_or_else(|| FixtureError::Parse(t.to_string()))
}

/// Evaluates one printed entry at `A`.
pub fn eval_entry(expr: &str, a: &SymMatrix) -> Result<FieldScalar, FixtureError> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(FixtureError::Parse(expr.to_string()));
    }
    let mut total = FieldScalar::zero();
    let mut sign = 1;
    let mut cur = String::new();
    let chars: Vec<char> = s.chars().collect();
    for (idx, &c) in chars.iter().enumerate() {
        if (c == '+' || c == '-') && idx > 0 {
            let v = term(&cur, a)?;
            total = if sign > 0 { total.checked_add(&v)? } else { total.checked_sub(&v)? };
            sign = if c == '+' { 1 } else { -1 };
            cur.clear();
        } else if c == '-' {
            sign = -1;
        } else if c != '+' {
            cur.push(c);
        }
    }
    let v = term(&cur, a)?;
    Ok(if sign > 0 { total.checked_add(&v)? } else { total.checked_sub(&v)? })
}

/// A matrix printed as a submatrix of `Psi_S(A)` with explicit row and column
/// labels.
#[derive(Debug, Clone, Copy)]
pub struct Printed {
    pub name: &'static str,
    pub graph: FamilySpec,
    pub rows: &'static str,
    pub cols: &'static str,
    pub entries: &'static [&'static str],
    /// Entries assume `a12 = a23*a34/a14`.
    pub on_t4n_surface: bool,
}

impl Printed {
    pub fn row_labels(&self) -> Vec<Pair> {
        pairs(self.rows)
    }

    pub fn col_labels(&self) -> Vec<Pair> {
        pairs(self.cols)
    }

    pub fn evaluate(&self, a: &SymMatrix) -> Result<DenseMatrix, FixtureError> {
        evaluate_table(self.entries, a)
    }
}

/// Evaluates a table given as comma-separated rows.
pub fn evaluate_table(entries: &[&str], a: &SymMatrix) -> Result<DenseMatrix, FixtureError> {
    let rows = entries
        .iter()
        .map(|row| row.split(',').map(|e| eval_entry(e, a)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::from_rows(rows).map_err(|_| FixtureError::Parse("ragged table".into()))
}

/// Moves `A` onto the surface `a12*a14 = a23*a34` by resetting `a12`.
pub fn onto_t4n_surface(a: &SymMatrix) -> SymMatrix {
    let mut b = a.clone();
    let v = a.get(2, 3) * a.get(3, 4) / a.get(1, 4);
    b.set(1, 2, v);
    b
}

/// Rows of the invertible `9 x 9` block for `T_{5,1}`, in the order listed.
pub const ALPHA_T51: &str = "23 15 12 34 56 16 26 46 45";

#[rustfmt::skip]
pub const PSI_T51: Printed = Printed {
    name: "psi_t51",
    graph: FamilySpec::Tadpole(5, 1),
    rows: "14 23 15 12 24 16 13 25 34 26 35 36 56 45 46",
    cols: "13 14 16 24 25 26 35 36 46",
    entries: &[
        "-a34, a11-a44, 0, a12, 0, 0, 0, 0, 0",
        "a12, 0, 0, -a34, 0, 0, 0, 0, 0",
        "0, -a45, -a56, 0, a12, 0, 0, 0, 0",
        "-a23, 0, 0, 0, a15, 0, 0, 0, 0",
        "0, a12, 0, a22-a44, -a45, 0, 0, 0, 0",
        "0, 0, a11-a66, 0, 0, a12, 0, 0, 0",
        "a11-a33, -a34, 0, 0, 0, 0, a15, 0, 0",
        "0, 0, 0, -a45, a22-a55, -a56, a23, 0, 0",
        "0, 0, 0, a23, 0, 0, -a45, 0, 0",
        "0, 0, a12, 0, -a56, a22-a66, 0, a23, 0",
        "-a15, 0, 0, 0, a23, 0, a33-a55, -a56, 0",
        "0, 0, 0, 0, 0, a23, -a56, a33-a66, a34",
        "0, 0, a15, 0, 0, 0, 0, 0, a45",
        "0, -a15, 0, 0, 0, 0, a34, 0, -a56",
        "0, 0, 0, 0, 0, 0, 0, a34, a44-a66",
    ],
    on_t4n_surface: false,
};

#[rustfmt::skip]
pub const PSI_T51_REORDERED: Printed = Printed {
    name: "psi_t51_reordered",
    graph: FamilySpec::Tadpole(5, 1),
    rows: "14 23 12 24 13 34 15 25 35 45 16 26 36 46 56",
    cols: "13 14 24 25 35 16 26 36 46",
    entries: &[
        "-a34, a11-a44, a12, 0, 0, 0, 0, 0, 0",
        "a12, 0, -a34, 0, 0, 0, 0, 0, 0",
        "-a23, 0, 0, a15, 0, 0, 0, 0, 0",
        "0, a12, a22-a44, -a45, 0, 0, 0, 0, 0",
        "a11-a33, -a34, 0, 0, a15, 0, 0, 0, 0",
        "0, 0, a23, 0, -a45, 0, 0, 0, 0",
        "0, -a45, 0, a12, 0, -a56, 0, 0, 0",
        "0, 0, -a45, a22-a55, a23, 0, -a56, 0, 0",
        "-a15, 0, 0, a23, a33-a55, 0, 0, -a56, 0",
        "0, -a15, 0, 0, a34, 0, 0, 0, -a56",
        "0, 0, 0, 0, 0, a11-a66, a12, 0, 0",
        "0, 0, 0, -a56, 0, a12, a22-a66, a23, 0",
        "0, 0, 0, 0, -a56, 0, a23, a33-a66, a34",
        "0, 0, 0, 0, 0, 0, 0, a34, a44-a66",
        "0, 0, 0, 0, 0, a15, 0, 0, a45",
    ],
    on_t4n_surface: false,
};

/// The printed `9 x 9` block. Its rows appear in the order below, which
/// differs from `ALPHA_T51` by swapping `{4,5}` and `{5,6}`.
#[rustfmt::skip]
pub const PSI_ALPHA_T51: Printed = Printed {
    name: "psi_alpha_t51",
    graph: FamilySpec::Tadpole(5, 1),
    rows: "23 15 12 34 45 16 26 46 56",
    cols: "13 14 24 25 35 16 26 36 46",
    entries: &[
        "a12, 0, -a34, 0, 0, 0, 0, 0, 0",
        "0, -a45, 0, a12, 0, -a56, 0, 0, 0",
        "-a23, 0, 0, a15, 0, 0, 0, 0, 0",
        "0, 0, a23, 0, -a45, 0, 0, 0, 0",
        "0, -a15, 0, 0, a34, 0, 0, 0, -a56",
        "0, 0, 0, 0, 0, a11-a66, a12, 0, 0",
        "0, 0, 0, -a56, 0, a12, a22-a66, a23, 0",
        "0, 0, 0, 0, 0, 0, 0, a34, a44-a66",
        "0, 0, 0, 0, 0, a15, 0, 0, a45",
    ],
    on_t4n_surface: false,
};

#[rustfmt::skip]
pub const PSI_5: Printed = Printed {
    name: "psi_5",
    graph: FamilySpec::Tadpole(4, 1),
    rows: "14 12 23 24 45",
    cols: "13 15 24 25 35",
    entries: &[
        "-a34, -a45, a12, 0, 0",
        "-a23, 0, a14, 0, 0",
        "a12, 0, -a34, 0, 0",
        "0, 0, a22-a44, -a45, 0",
        "0, a14, 0, 0, a34",
    ],
    on_t4n_surface: false,
};

#[rustfmt::skip]
pub const PSI_10: Printed = Printed {
    name: "psi_10",
    graph: FamilySpec::Tadpole(4, 3),
    rows: "14 15 16 25 45 34 46 35 47 36",
    cols: "13 15 16 17 24 25 26 35 36 37",
    entries: &[
        "-a34, -a45, 0, 0, a23*a34/a14, 0, 0, 0, 0, 0",
        "0, a11-a55, -a56, 0, 0, a23*a34/a14, 0, 0, 0, 0",
        "0, -a56, a11-a66, -a67, 0, 0, a23*a34/a14, 0, 0, 0",
        "0, a23*a34/a14, 0, 0, -a45, a22-a55, -a56, a23, 0, 0",
        "0, a14, 0, 0, 0, 0, 0, a34, 0, 0",
        "-a14, 0, 0, 0, a23, 0, 0, -a45, 0, 0",
        "0, 0, a14, 0, 0, 0, 0, 0, a34, 0",
        "0, 0, 0, 0, 0, a23, 0, a33-a55, -a56, 0",
        "0, 0, 0, a14, 0, 0, 0, 0, 0, a34",
        "0, 0, 0, 0, 0, 0, a23, -a56, a33-a66, -a67",
    ],
    on_t4n_surface: true,
};

#[rustfmt::skip]
pub const PSI_10_PRIME: Printed = Printed {
    name: "psi_10_prime",
    graph: FamilySpec::Tadpole(4, 2),
    rows: "14 15 16 25 45 34 46 35",
    cols: "13 15 16 24 25 26 35 36",
    entries: &[
        "-a34, -a45, 0, a23*a34/a14, 0, 0, 0, 0",
        "0, a11-a55, -a56, 0, a23*a34/a14, 0, 0, 0",
        "0, -a56, a11-a66, 0, 0, a23*a34/a14, 0, 0",
        "0, a23*a34/a14, 0, -a45, a22-a55, -a56, a23, 0",
        "0, a14, 0, 0, 0, 0, a34, 0",
        "-a14, 0, 0, a23, 0, 0, -a45, 0",
        "0, 0, a14, 0, 0, 0, 0, a34",
        "0, 0, 0, 0, a23, 0, a33-a55, -a56",
    ],
    on_t4n_surface: true,
};

#[rustfmt::skip]
pub const PSI_0: Printed = Printed {
    name: "psi_0",
    graph: FamilySpec::Tadpole(5, 2),
    rows: "12 23 34 45 25 35 16 26 36 46",
    cols: "25 24 35 14 26 36 17 27 37 47",
    entries: &[
        "a15, 0, 0, 0, 0, 0, 0, 0, 0, 0",
        "0, -a34, 0, 0, 0, 0, 0, 0, 0, 0",
        "0, a23, -a45, 0, 0, 0, 0, 0, 0, 0",
        "0, 0, a34, -a15, 0, 0, 0, 0, 0, 0",
        "a22-a55, -a45, a23, 0, -a56, 0, 0, 0, 0, 0",
        "a23, 0, a33-a55, 0, 0, -a56, 0, 0, 0, 0",
        "0, 0, 0, 0, a12, 0, -a67, 0, 0, 0",
        "-a56, 0, 0, 0, a22-a66, a23, 0, -a67, 0, 0",
        "0, 0, -a56, 0, a23, a33-a66, 0, 0, -a67, 0",
        "0, 0, 0, 0, 0, a34, 0, 0, 0, -a67",
    ],
    on_t4n_surface: false,
};

/// Equations of the diagonal solve for `T_{5,n}` (`n >= 2`).
pub const S_ROWS: &str = "13 14 24 57";
/// Diagonal entries the `S` system is linear in, in column order.
pub const S_VARIABLES: [usize; 4] = [3, 4, 2, 5];

#[rustfmt::skip]
pub const S_MATRIX: &[&str] = &[
    "1, 0, 0, 0",
    "0, a12*a23/a15/a45, 0, 0",
    "0, a12/a34, -a12/a34, 0",
    "-a12*a23/a56/a67, 0, -a12*a23/a56/a67, 2*a12*a23/a56/a67",
];

fn p(a: &SymMatrix, terms: &[(usize, usize, u32)]) -> FieldScalar {
    let mut acc = FieldScalar::one();
    for &(i, j, e) in terms {
        for _ in 0..e {
            acc = acc * a.get(i, j);
        }
    }
    acc
}

/// `2 a12 a15 a23 a34^2 a45^2 a56^2`.
pub fn det_alpha_t51(a: &SymMatrix) -> FieldScalar {
    FieldScalar::from_int(2) * p(a, &[(1, 2, 1), (1, 5, 1), (2, 3, 1), (3, 4, 2), (4, 5, 2), (5, 6, 2)])
}

/// `(a12 a14 - a23 a34) a45^2 a34`.
pub fn det_psi_5(a: &SymMatrix) -> FieldScalar {
    let lead = p(a, &[(1, 2, 1), (1, 4, 1)]) - p(a, &[(2, 3, 1), (3, 4, 1)]);
    lead * p(a, &[(4, 5, 2), (3, 4, 1)])
}

/// `-8 a14 a23^2 a34^3 a45^2 a56 a67`.
pub fn det_psi_10(a: &SymMatrix) -> FieldScalar {
    FieldScalar::from_int(-8) * p(a, &[(1, 4, 1), (2, 3, 2), (3, 4, 3), (4, 5, 2), (5, 6, 1), (6, 7, 1)])
}

/// `-4 a23^2 a34^3 a45^2 a56`.
pub fn det_psi_10_prime(a: &SymMatrix) -> FieldScalar {
    FieldScalar::from_int(-4) * p(a, &[(2, 3, 2), (3, 4, 3), (4, 5, 2), (5, 6, 1)])
}

/// `-a15^2 a34 a45 a56^2 a67^4`; the block is lower triangular in the
/// printed order.
pub fn det_psi_0(a: &SymMatrix) -> FieldScalar {
    -p(a, &[(1, 5, 2), (3, 4, 1), (4, 5, 1), (5, 6, 2), (6, 7, 4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SymMatrix {
        let mut a = SymMatrix::zeros(4);
        for i in 1..=4 {
            for j in i..=4 {
                a.set(i, j, FieldScalar::from_int((10 * i + j) as i64));
            }
        }
        a
    }

    #[test]
    fn entry_grammar() {
        let a = sample();
        let ev = |s| eval_entry(s, &a).unwrap();
        assert_eq!(ev("a11-a44"), FieldScalar::from_int(11 - 44));
        assert_eq!(ev("-a34"), FieldScalar::from_int(-34));
        assert_eq!(ev("0"), FieldScalar::zero());
        assert_eq!(ev("a23*a34/a14"), FieldScalar::from_ratio(23 * 34, 14).unwrap());
        assert_eq!(ev("2*a12*a23/a13/a14"), FieldScalar::from_ratio(2 * 12 * 23, 13 * 14).unwrap());
        assert_eq!(ev("-a12/a34 + a11"), FieldScalar::from_ratio(-12 + 11 * 34, 34).unwrap());
        assert_eq!(ev("a21"), ev("a12"));
    }

    #[test]
    fn entry_errors() {
        let a = sample();
        assert!(matches!(eval_entry("a55", &a), Err(FixtureError::Index(_))));
        assert!(matches!(eval_entry("b12", &a), Err(FixtureError::Parse(_))));
        assert!(matches!(eval_entry("", &a), Err(FixtureError::Parse(_))));
        assert!(matches!(eval_entry("a12/0", &a), Err(FixtureError::Arith(_))));
    }

    #[test]
    fn tables_are_rectangular_and_labelled() {
        for f in [PSI_T51, PSI_T51_REORDERED, PSI_ALPHA_T51, PSI_5, PSI_10, PSI_10_PRIME, PSI_0] {
            let r = f.row_labels().len();
            let c = f.col_labels().len();
            assert_eq!(f.entries.len(), r, "{}", f.name);
            for row in f.entries {
                assert_eq!(row.split(',').count(), c, "{}", f.name);
            }
        }
        assert_eq!(pairs(ALPHA_T51).len(), 9);
        assert_eq!(pairs("14 23"), vec![(1, 4), (2, 3)]);
    }
}
