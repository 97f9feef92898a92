//! Dense exact linear algebra over the rationals.
//!
//! Rank is computed fraction-free: rows are cleared to integers and reduced
//! with Bareiss elimination, so every intermediate value is an integer minor.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Scales each row by the lcm of its denominators.
pub fn integer_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Exact rank of a rational matrix.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rank_integer(&integer_rows(rows))
}

/// Exact rank of an integer matrix given as rows.
pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    if let Some(small) = to_small(rows) {
        if let Some(r) = bareiss_rank_i128(small) {
            return r;
        }
    }
    bareiss_rank_big(rows.to_vec())
}

fn to_small(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|row| row.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect()
}

// Returns None on overflow.
fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let m = a.len();
    let n = a[0].len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for i in rank + 1..m {
            let lead = a[i][col];
            for j in col + 1..n {
                let v = pivot
                    .checked_mul(a[i][j])?
                    .checked_sub(lead.checked_mul(a[rank][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..m {
            let lead = a[i][col].clone();
            for j in col + 1..n {
                let v = &pivot * &a[i][j] - &lead * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return (0..ncols).map(|i| unit(ncols, i)).collect();
    }
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn transpose(a: &[Vec<Scalar>]) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Scalar::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_matrix(a: &[Vec<Scalar>]) -> bool {
    a.iter().all(|row| row.iter().all(Zero::is_zero))
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let d = &f * &m[col][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

pub fn inverse(a: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain(unit(n, i)).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let inv = inverse(a)?;
    Some(mul_vec(&inv, b))
}
