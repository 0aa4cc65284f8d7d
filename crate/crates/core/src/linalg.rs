//! Exact rank of integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Rank over the rationals by fraction-free elimination: checked `i128`
/// first, arbitrary precision if an intermediate overflows.
pub fn rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let rows: Vec<Vec<i128>> = (0..m.rows).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(rows) {
        Some(r) => r,
        None => {
            let rows = (0..m.rows).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_big(rows)
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let (n, m) = (a.len(), a[0].len());
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let pivot = a[r][c];
        for i in r + 1..n {
            let factor = a[i][c];
            for j in c + 1..m {
                let x = pivot.checked_mul(a[i][j])?.checked_sub(factor.checked_mul(a[r][j])?)?;
                a[i][j] = x / prev;
            }
            a[i][c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

#[allow(clippy::needless_range_loop)]
fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let (n, m) = (a.len(), a[0].len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..n {
            let factor = a[i][c].clone();
            for j in c + 1..m {
                let x = &pivot * &a[i][j] - &factor * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(IntMatrix::from_rows(vec![vec![1, -1], vec![1, 1]]).rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(IntMatrix::zeros(0, 4).rank(), 0);
        let m = IntMatrix::from_rows(vec![vec![0, 2, 4], vec![0, 1, 2], vec![3, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn big_fallback_agrees() {
        // Entries large enough that i128 products overflow.
        let big = 1i64 << 62;
        let m = IntMatrix::from_rows(vec![
            vec![big, 3, 5, 7],
            vec![11, big, 13, 17],
            vec![19, 23, big, 29],
            vec![31, 37, 41, big],
        ]);
        let rows: Vec<Vec<i128>> = (0..4).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
        assert!(bareiss_i128(rows).is_none());
        assert_eq!(m.rank(), 4);
    }
}
