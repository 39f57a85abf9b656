//! Small dense square matrices over a [`Scalar`].

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n, data }
    }

    /// Row-major construction; panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        DenseMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn max_abs(&self) -> S {
        max_abs(&self.data)
    }

    /// Largest entrywise difference, relative to the larger matrix magnitude.
    pub fn max_relative_deviation(&self, other: &Self) -> f64 {
        let scale = self
            .max_abs()
            .to_f64()
            .max(other.max_abs().to_f64())
            .max(1e-300);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64() / scale)
            .fold(0.0, f64::max)
    }

    /// Inverse of a symmetric positive definite matrix via `L D Lᵀ`.
    ///
    /// A vanishing pivot is reported as [`Error::RankDeficient`]; in exact mode
    /// only an exactly zero pivot counts.
    pub fn spd_inverse(&self) -> Result<Self> {
        let n = self.n;
        let scale = self.max_abs();
        let mut lower = Self::identity(n);
        let mut diag: Vec<S> = Vec::with_capacity(n);
        for j in 0..n {
            let mut d = self[(j, j)].clone();
            for k in 0..j {
                let l = &lower[(j, k)];
                if !l.is_zero() {
                    d = d - l.sq() * diag[k].clone();
                }
            }
            if d <= S::zero() || d.is_negligible(&scale) {
                return Err(Error::RankDeficient { pivot: j });
            }
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    let (a, b) = (&lower[(i, k)], &lower[(j, k)]);
                    if !a.is_zero() && !b.is_zero() {
                        s = s - a.clone() * b.clone() * diag[k].clone();
                    }
                }
                lower[(i, j)] = s / d.clone();
            }
            diag.push(d);
        }
        // unit lower triangular inverse, column by column
        let mut lower_inv = Self::identity(n);
        for j in 0..n {
            for i in j + 1..n {
                let mut s = S::zero();
                for k in j..i {
                    let (a, b) = (&lower[(i, k)], &lower_inv[(k, j)]);
                    if !a.is_zero() && !b.is_zero() {
                        s = s + a.clone() * b.clone();
                    }
                }
                lower_inv[(i, j)] = -s;
            }
        }
        let mut inv = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = S::zero();
                for k in i..n {
                    let (a, b) = (&lower_inv[(k, i)], &lower_inv[(k, j)]);
                    if !a.is_zero() && !b.is_zero() {
                        s = s + a.clone() * b.clone() / diag[k].clone();
                    }
                }
                inv[(i, j)] = s.clone();
                inv[(j, i)] = s;
            }
        }
        Ok(inv)
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}
