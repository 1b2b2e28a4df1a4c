//! Small dense complex matrices.
//!
//! Every matrix in this crate is at most 8×8, so a flat row-major `Vec` with
//! naive loops beats any BLAS-backed type on allocation overhead alone.

use std::ops::Mul;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from row-major entries. `data.len()` must be a square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        if n * n != data.len() || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    /// Builds an `n×n` matrix from a closure over `(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// `Tr(selfᴴ · other)` without forming the product.
    pub fn inner(&self, other: &Self) -> C64 {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        Self::from_fn(n, |i, j| self.get(i / b, j / b) * other.get(i % b, j % b))
    }

    /// `‖selfᴴ·self − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.data[k * n + i].conj() * self.data[k * n + j];
                }
                if i == j {
                    s -= 1.0;
                }
                acc += s.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Index and value of the largest-magnitude entry; ties within `tol` of
    /// the maximum go to the first in row-major order.
    pub fn dominant_entry(&self, tol: f64) -> (usize, C64) {
        let max = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let idx = self
            .data
            .iter()
            .position(|z| z.norm() >= max - tol)
            .unwrap_or(0);
        (idx, self.data[idx])
    }

    /// QR factorisation by modified Gram–Schmidt on columns.
    ///
    /// `R` has a real non-negative diagonal. Rank-deficient input leaves a
    /// zero column in `Q`; Gaussian input is full rank with probability one.
    pub fn qr(&self) -> (Self, Self) {
        let n = self.n;
        let mut q = self.clone();
        let mut r = Self::zeros(n);
        for j in 0..n {
            for k in 0..j {
                let mut dot = C64::new(0.0, 0.0);
                for i in 0..n {
                    dot += q.data[i * n + k].conj() * q.data[i * n + j];
                }
                r.data[k * n + j] = dot;
                for i in 0..n {
                    let qk = q.data[i * n + k];
                    q.data[i * n + j] -= dot * qk;
                }
            }
            let norm = (0..n)
                .map(|i| q.data[i * n + j].norm_sqr())
                .sum::<f64>()
                .sqrt();
            r.data[j * n + j] = C64::new(norm, 0.0);
            if norm > 0.0 {
                for i in 0..n {
                    q.data[i * n + j] /= norm;
                }
            }
        }
        (q, r)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}
