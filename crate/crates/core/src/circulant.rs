//! Circulant matrices stored by their first row.
//!
//! `circ(a_0, …, a_{n-1})` has entry `(i, j) = a_{(j-i) mod n}`. It is the
//! polynomial `a_0 + a_1 π + … + a_{n-1} π^{n-1}` in the cyclic shift `π` and
//! is diagonalized by the Fourier matrix: `𝓕 A 𝓕* = diag(λ_0, …, λ_{n-1})`
//! with `λ_j = Σ_k a_k ω^{jk}`.

use num_complex::Complex64;

use crate::dft::{dft, dft_direct, Sign};
use crate::error::{Error, Result};
use crate::fourier::{omega_matrix, CMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    row: Vec<Complex64>,
}

impl Circulant {
    pub fn from_row(row: Vec<Complex64>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::EmptyRow);
        }
        Ok(Circulant { row })
    }

    pub fn identity(n: usize) -> Self {
        let mut row = vec![Complex64::new(0.0, 0.0); n.max(1)];
        row[0] = Complex64::new(1.0, 0.0);
        Circulant { row }
    }

    /// `π^m` as a circulant.
    pub fn shift(n: usize, m: i64) -> Self {
        let n = n.max(1);
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        row[crate::fourier::reduce_index(m, n)] = Complex64::new(1.0, 0.0);
        Circulant { row }
    }

    /// Recovers a circulant from its eigenvalues `λ_j = Σ_k a_k ω^{jk}`.
    pub fn from_eigenvalues(eigs: &[Complex64]) -> Result<Self> {
        if eigs.is_empty() {
            return Err(Error::EmptyRow);
        }
        let n = eigs.len() as f64;
        let row = dft(eigs, Sign::Negative).into_iter().map(|z| z / n).collect();
        Ok(Circulant { row })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[Complex64] {
        &self.row
    }

    pub fn into_row(self) -> Vec<Complex64> {
        self.row
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.order();
        CMatrix::from_fn(n, |i, j| self.row[(j + n - i) % n])
    }

    /// `λ_j = p(ω^j)`, where `p(z) = Σ_k a_k z^k`. `O(n log n)` for power-of-two
    /// orders and `O(n²)` otherwise.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        dft(&self.row, Sign::Positive)
    }

    /// Eigenvalues by direct summation regardless of the order.
    pub fn eigenvalues_direct(&self) -> Vec<Complex64> {
        dft_direct(&self.row, Sign::Positive)
    }

    /// Product through the eigenvalues. Circulants commute, so the order of
    /// the operands does not matter beyond rounding.
    pub fn mul(&self, other: &Circulant) -> Result<Circulant> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch { left: self.order(), right: other.order() });
        }
        let prod: Vec<_> =
            self.eigenvalues().iter().zip(other.eigenvalues()).map(|(a, b)| a * b).collect();
        Circulant::from_eigenvalues(&prod)
    }

    /// Coefficients of `p(z) = a_0 + a_1 z + … + a_{n-1} z^{n-1}` such that
    /// the matrix equals `p(π)`.
    pub fn poly_of_shift(&self) -> Vec<Complex64> {
        self.row.clone()
    }

    /// `Ω^{-m} A Ω^m`, densely.
    pub fn conjugate_omega(&self, m: i64) -> CMatrix {
        let n = self.order();
        let a = self.to_dense();
        omega_matrix(n, -m)
            .matmul(&a)
            .and_then(|t| t.matmul(&omega_matrix(n, m)))
            .expect("orders agree by construction")
    }
}
