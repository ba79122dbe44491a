use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{Rational, RationalVector};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors. All rows must share a length.
    pub fn from_rows(rows: &[RationalVector]) -> Self {
        let cols = rows.first().map_or(0, RationalVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[RationalVector]) -> Self {
        let rows = columns.first().map_or(0, RationalVector::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact determinant.
    ///
    /// Each column is scaled by the lcm of its denominators so the elimination
    /// runs over the integers; Bareiss' fraction-free update keeps every
    /// intermediate entry a minor of the scaled matrix.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a {}x{} matrix", self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); n];
        for j in 0..n {
            let lcm = (0..n).fold(BigInt::one(), |acc, i| acc.lcm(self.get(i, j).denom()));
            for (i, row) in a.iter_mut().enumerate() {
                let x = self.get(i, j);
                row.push(x.numer() * (&lcm / x.denom()));
            }
            scale *= lcm;
        }
        let det = bareiss(&mut a);
        Rational::new(det, scale)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in rank + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let (top, rest) = a.split_at_mut(r);
                for (x, p) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                    *x -= &f * p;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Affine dimension of a point set (-1 for the empty set).
pub fn affine_dimension(points: &[&RationalVector]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    if rest.is_empty() {
        return 0;
    }
    let diffs: Vec<RationalVector> = rest.iter().map(|p| p.sub(first)).collect();
    RationalMatrix::from_rows(&diffs).rank() as isize
}

/// `|det|` as a nonnegative rational.
pub fn abs_det(m: &RationalMatrix) -> Rational {
    m.det().abs()
}
