//! Dense matrices over exact scalar types, with rank backends.
//!
//! The matrix type is generic over its scalar. Three rank routes exist:
//!
//! * [`bareiss_rank`]: fraction-free elimination over an integral domain
//!   (`BigInt`, `i128`, ...). Every division performed is exact; a nonzero
//!   remainder is reported as an error rather than rounded away.
//! * [`modular_rank`]: elimination over GF(p) for a word-sized prime.
//! * [`field_rank`]: plain Gauss-Jordan over a field type such as
//!   `BigRational`.

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("inexact division during fraction-free elimination at pivot column {column}")]
    InexactDivision { column: usize },
    #[error("modulus {0} is not a prime in the supported range")]
    BadModulus(u64),
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(ExactError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_columns(columns: Vec<Vec<T>>, rows: usize) -> Result<Self, ExactError> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(ExactError::Ragged {
                    row: j,
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.into_iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.rows).map(move |i| &self.data[i * self.cols + col])
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

/// Rank by fraction-free (Bareiss) elimination.
///
/// Works for any integral domain with exact division. Columns without a
/// pivot are skipped; the running divisor is always the previous pivot, so
/// every quotient is exact.
pub fn bareiss_rank<T>(m: &Matrix<T>) -> Result<usize, ExactError>
where
    T: Clone + Integer + Signed,
{
    let mut a = m.clone().into_rows();
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let num = pivot.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone();
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(ExactError::InexactDivision { column: col });
                }
                row[j] = q;
            }
            row[col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Rank over GF(p). Entries are reduced with a floor modulus, so negative
/// integers map to their canonical residues.
pub fn modular_rank<T>(m: &Matrix<T>, p: u64) -> Result<usize, ExactError>
where
    T: Clone + Integer + FromPrimitive + ToPrimitive,
{
    if !(3..1 << 32).contains(&p) || !primal_check::miller_rabin(p) {
        return Err(ExactError::BadModulus(p));
    }
    let modulus = T::from_u64(p).ok_or(ExactError::BadModulus(p))?;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
                .collect()
        })
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for x in a[rank][col..].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..m.cols {
                let sub = mulmod(f, pivot_row[j]);
                row[j] = (row[j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Rank over a field by Gauss-Jordan elimination. `T` must be a field:
/// integer types give wrong answers because division truncates.
pub fn field_rank<T>(m: &Matrix<T>) -> usize
where
    T: Clone + Num,
{
    let mut a = m.clone().into_rows();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() / pivot_row[col].clone();
            for j in col..m.cols {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub const PRIME_LOW: u64 = 1 << 30;
pub const PRIME_HIGH: u64 = 1 << 31;

/// `count` distinct primes drawn uniformly from (2^30, 2^31).
pub fn random_primes<R: Rng>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range(PRIME_LOW + 1..PRIME_HIGH) | 1;
        if primal_check::miller_rabin(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = int(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(bareiss_rank(&m).unwrap(), 2);
        assert_eq!(modular_rank(&m, 1_000_000_007).unwrap(), 2);

        let id = int(&[&[1, 0], &[0, 1]]);
        assert_eq!(bareiss_rank(&id).unwrap(), 2);

        let z: Matrix<BigInt> = Matrix::zeros(3, 4);
        assert_eq!(bareiss_rank(&z).unwrap(), 0);
        assert_eq!(modular_rank(&z, 1_000_000_007).unwrap(), 0);
    }

    #[test]
    fn skipped_pivot_columns_keep_divisions_exact() {
        // first column zero, rank-deficient middle block
        let m = int(&[&[0, 2, 4, 1], &[0, 3, 6, 5], &[0, 5, 10, 6], &[0, 7, 1, 2]]);
        assert_eq!(bareiss_rank(&m).unwrap(), 3);
        assert_eq!(modular_rank(&m, 2_147_483_647).unwrap(), 3);
    }

    #[test]
    fn modular_rank_sees_characteristic() {
        let m = int(&[&[7, 0], &[0, 1]]);
        assert_eq!(modular_rank(&m, 7).unwrap(), 1);
        assert_eq!(bareiss_rank(&m).unwrap(), 2);
    }

    #[test]
    fn bad_modulus_rejected() {
        let m = int(&[&[1]]);
        assert_eq!(modular_rank(&m, 15), Err(ExactError::BadModulus(15)));
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = Matrix::from_rows(vec![vec![1i64, 2], vec![3]]);
        assert!(matches!(r, Err(ExactError::Ragged { row: 1, .. })));
    }

    #[test]
    fn primes_are_in_range_and_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ps = random_primes(&mut rng, 4);
        assert_eq!(ps.len(), 4);
        for (i, p) in ps.iter().enumerate() {
            assert!(*p > PRIME_LOW && *p < PRIME_HIGH);
            assert!(primal_check::miller_rabin(*p));
            assert!(!ps[i + 1..].contains(p));
        }
    }

    #[test]
    fn transpose_and_columns() {
        let m = Matrix::from_columns(vec![vec![1i64, 2], vec![3, 4], vec![5, 6]], 2).unwrap();
        assert_eq!(m.row(0), &[1, 3, 5]);
        let t = m.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.row(2), &[5, 6]);
        assert_eq!(m.column(1).copied().collect::<Vec<_>>(), vec![3, 4]);
    }
}
