//! Exact rank, determinant and nullspace.
//!
//! Rational matrices are scaled row by row to integers and reduced with
//! fraction-free Bareiss elimination over `BigInt`. Matrices with entries in
//! `Q(sqrt d)` use ordinary Gaussian elimination over the field. A floating
//! point rank is provided separately and never used for certification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{FieldScalar, Rational};
use crate::matrix::{DenseMatrix, MatrixError};

/// Pivot threshold of the floating point path, relative to the largest entry.
pub const APPROX_EPS: f64 = 1e-9;

// 2^61 - 1
const PRIME: u64 = 2_305_843_009_213_693_951;

fn integer_rows(m: &DenseMatrix) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row: Option<Vec<&Rational>> = m.row(r).iter().map(FieldScalar::as_rational).collect();
        let row = row?;
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
    }
    Some(out)
}

fn mod_p(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    x.mod_floor(&p).to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

/// Rank modulo a large prime; a lower bound for the rational rank.
fn rank_mod_p(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_p).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], PRIME - 2);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul_mod(m[i][c], inv);
            for j in c..cols {
                let sub = mul_mod(f, m[rank][j]);
                m[i][j] = (m[i][j] + PRIME - sub) % PRIME;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free echelon reduction in place. Returns the rank and the number
/// of row swaps performed.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> (usize, usize) {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            swaps += 1;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    (r, swaps)
}

/// Gaussian elimination over the field; returns the rank and swap count and
/// leaves `m` in row echelon form.
fn field_echelon(m: &mut [Vec<FieldScalar>], cols: usize) -> Result<(usize, usize), MatrixError> {
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            swaps += 1;
        }
        let inv = m[r][c].checked_recip()?;
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].checked_mul(&inv)?;
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].checked_sub(&f.checked_mul(&pivot_row[j])?)?;
                }
            }
        }
        r += 1;
    }
    Ok((r, swaps))
}

fn field_rows(m: &DenseMatrix) -> Vec<Vec<FieldScalar>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Exact rank over `Q` or over the single `Q(sqrt d)` spanned by the entries.
pub fn rank(m: &DenseMatrix) -> Result<usize, MatrixError> {
    m.radicand()?;
    let bound = m.rows().min(m.cols());
    if bound == 0 {
        return Ok(0);
    }
    match integer_rows(m) {
        Some(mut rows) => {
            // a full modular rank certifies the rational rank
            if rank_mod_p(&rows, m.cols()) == bound {
                return Ok(bound);
            }
            Ok(bareiss(&mut rows, m.cols()).0)
        }
        None => Ok(field_echelon(&mut field_rows(m), m.cols())?.0),
    }
}

pub fn determinant(m: &DenseMatrix) -> Result<FieldScalar, MatrixError> {
    if m.rows() != m.cols() {
        return Err(MatrixError::OrderMismatch(m.rows(), m.cols()));
    }
    m.radicand()?;
    let n = m.rows();
    if n == 0 {
        return Ok(FieldScalar::one());
    }
    match integer_rows(m) {
        Some(mut rows) => {
            // undo the per-row scaling applied by integer_rows
            let mut scale = Rational::one();
            for (r, row) in rows.iter().enumerate() {
                if let Some((c, v)) = row.iter().enumerate().find(|(_, v)| !v.is_zero()) {
                    let orig = m.at(r, c).as_rational().unwrap();
                    scale *= Rational::from_integer(v.clone()) / orig;
                }
            }
            let (rank, swaps) = bareiss(&mut rows, n);
            if rank < n {
                return Ok(FieldScalar::zero());
            }
            let mut det = Rational::from_integer(rows[n - 1][n - 1].clone()) / scale;
            if swaps % 2 == 1 {
                det = -det;
            }
            Ok(FieldScalar::from(det))
        }
        None => {
            let mut rows = field_rows(m);
            let (rank, swaps) = field_echelon(&mut rows, n)?;
            if rank < n {
                return Ok(FieldScalar::zero());
            }
            let mut det = FieldScalar::one();
            for (i, row) in rows.iter().enumerate() {
                det = det.checked_mul(&row[i])?;
            }
            Ok(if swaps % 2 == 1 { -det } else { det })
        }
    }
}

/// Basis of `{v : M v = 0}` from the reduced row echelon form; one vector per
/// free column, with a 1 in that column.
pub fn nullspace(m: &DenseMatrix) -> Result<Vec<Vec<FieldScalar>>, MatrixError> {
    m.radicand()?;
    let cols = m.cols();
    let mut rows = field_rows(m);
    let (rank, _) = field_echelon(&mut rows, cols)?;
    rows.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for r in 0..rank {
        let c = (0..cols).find(|&c| !rows[r][c].is_zero()).unwrap();
        let inv = rows[r][c].checked_recip()?;
        for j in c..cols {
            rows[r][j] = rows[r][j].checked_mul(&inv)?;
        }
        pivots.push(c);
    }
    // back substitution to reduced form
    for r in (0..rank).rev() {
        let c = pivots[r];
        for above in 0..r {
            let f = rows[above][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if !rows[r][j].is_zero() {
                    let v = rows[above][j].checked_sub(&f.checked_mul(&rows[r][j])?)?;
                    rows[above][j] = v;
                }
            }
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldScalar::zero(); cols];
        v[free] = FieldScalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Floating point rank with partial pivoting. Not a certificate.
pub fn approx_rank(m: &DenseMatrix, eps: f64) -> usize {
    let cols = m.cols();
    let mut a: Vec<Vec<f64>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(FieldScalar::to_f64).collect())
        .collect();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let (p, best) = (r..a.len())
            .map(|i| (i, a[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= eps * scale {
            continue;
        }
        a.swap(r, p);
        for i in r + 1..a.len() {
            let f = a[i][c] / a[r][c];
            if f == 0.0 {
                continue;
            }
            for j in c..cols {
                a[i][j] -= f * a[r][j];
            }
        }
        r += 1;
    }
    r
}

/// Scales a vector so its first nonzero entry is 1, then to the smallest
/// integer (or integral `a + b sqrt d`) multiple with coprime parts.
pub fn primitive(v: &[FieldScalar]) -> Result<Vec<FieldScalar>, MatrixError> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return Ok(v.to_vec());
    };
    let inv = lead.checked_recip()?;
    let scaled: Vec<FieldScalar> = v.iter().map(|x| x.checked_mul(&inv)).collect::<Result<_, _>>()?;
    let mut lcm = BigInt::one();
    for x in &scaled {
        lcm = lcm.lcm(&crate::arith::denominator_lcm(x));
    }
    let factor = FieldScalar::from(lcm);
    let ints: Vec<FieldScalar> = scaled.iter().map(|x| x.checked_mul(&factor)).collect::<Result<_, _>>()?;
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(&crate::arith::numerator_gcd(x));
    }
    if g.is_zero() || g.is_one() {
        return Ok(ints);
    }
    let div = FieldScalar::from(g.abs());
    Ok(ints.iter().map(|x| x.checked_div(&div)).collect::<Result<_, _>>()?)
}

/// Rows and columns picked by position.
pub fn submatrix(m: &DenseMatrix, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix, MatrixError> {
    if let Some(&r) = rows.iter().find(|&&r| r >= m.rows()) {
        return Err(MatrixError::Index(r, 0));
    }
    if let Some(&c) = cols.iter().find(|&&c| c >= m.cols()) {
        return Err(MatrixError::Index(0, c));
    }
    DenseMatrix::from_rows(
        rows.iter()
            .map(|&r| cols.iter().map(|&c| m.at(r, c).clone()).collect())
            .collect(),
    )
    .map(|d| if rows.is_empty() { DenseMatrix::zeros(0, cols.len()) } else { d })
}
