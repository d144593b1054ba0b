//! Exact integer linear algebra.

mod bareiss;
pub(crate) mod bordered;
mod charpoly;
pub(crate) mod modular;
mod poly;
pub(crate) mod ring;

use std::fmt;

pub use bareiss::{det_bareiss, is_pd_sylvester, leading_principal_minors, rank};
pub(crate) use bareiss::{is_pd_fast, is_psd_elimination};
pub use bordered::BorderedScan;
pub use charpoly::{charpoly_eval_interp, charpoly_fl};
pub use poly::{poly_gcd, IntPolynomial};

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    /// Builds from nested rows; panics if not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix::from_fn(n, |i, j| rows[i][j])
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        IntMatrix::from_fn(n, |i, j| if i == j { c } else { 0 })
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        IntMatrix::from_fn(n, |_, _| 1)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `c·A`.
    pub fn scaled(&self, c: i64) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `A + c·I`.
    pub fn shifted(&self, c: i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += c;
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        IntMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> IntMatrix {
        IntMatrix::from_fn(k, |i, j| self.get(i, j))
    }

    /// Product of Euclidean row norms, squared; an upper bound for `det²`.
    pub fn hadamard_bound_squared(&self) -> num_bigint::BigInt {
        let mut acc = num_bigint::BigInt::from(1);
        for i in 0..self.n {
            let s: i128 = (0..self.n).map(|j| (self.get(i, j) as i128).pow(2)).sum();
            acc *= s;
        }
        acc
    }

    pub(crate) fn to_ring<T: ring::Ring>(&self) -> Vec<T> {
        self.data.iter().map(|&x| T::from_i64(x)).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = self.data.chunks(self.n.max(1)).collect();
        f.debug_struct("IntMatrix").field("rows", &rows).finish()
    }
}
