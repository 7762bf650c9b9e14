//! Roots of unity, the unitary Fourier matrix, the shift and phase matrices
//! that it intertwines, and the small dense complex matrix kernel they live in.
//!
//! Indices are 0-based throughout. With `ω = e^{2πi/n}`:
//!
//! * `fourier_matrix(n)[j][k] = ω^{-jk} / √n`
//! * `omega_matrix(n, m) = diag[1, ω^m, …, ω^{(n-1)m}]`
//! * `permutation_matrix(n, m)` is the `m`-th power of the cyclic shift
//!   `circ(0, 1, 0, …, 0)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Order of the function algebra, `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(usize);

impl Order {
    pub const MIN: usize = 2;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN {
            return Err(Error::InvalidOrder { min: Self::MIN, got: n });
        }
        Ok(Order(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<usize> for Order {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Order::new(n)
    }
}

/// `j mod n` as a nonnegative residue.
#[inline]
pub fn reduce_index(j: i64, n: usize) -> usize {
    j.rem_euclid(n as i64) as usize
}

/// `e^{2πi·(j mod n)/n}`.
///
/// The phase is reduced before the trigonometric evaluation, so the error is
/// independent of `|j|`. Quarter turns are returned exactly.
pub fn root_of_unity(n: usize, j: i64) -> Complex64 {
    assert!(n >= 1, "root_of_unity: n must be positive");
    let r = reduce_index(j, n);
    if (4 * r).is_multiple_of(n) {
        return match 4 * r / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = std::f64::consts::TAU * (r as f64 / n as f64);
    Complex64::from_polar(1.0, angle)
}

/// All powers `ω^0, …, ω^{n-1}`.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n as i64).map(|j| root_of_unity(n, j)).collect()
}

/// Dense square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from `f(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidOrder { min: 1, got: 0 });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { left: n, right: bad.len() });
        }
        Ok(CMatrix { n, data: rows.concat() })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    fn check_same(&self, other: &CMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            let a_row = self.row(i);
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in a_row.iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn checked_sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(CMatrix { n: self.n, data })
    }

    pub fn checked_add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(CMatrix { n: self.n, data })
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Maximum absolute row sum, `max_i Σ_j |a_ij|`.
    ///
    /// This is the norm used for all residuals in the crate (conventionally
    /// written as the ∞-norm; the functional-equation literature calls it the
    /// 1-norm).
    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Unitary, symmetric Fourier matrix with entries `ω^{-jk}/√n`.
pub fn fourier_matrix(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, |j, k| root_of_unity(n, -((j * k) as i64)) * scale)
}

/// Adjoint of [`fourier_matrix`], entries `ω^{+jk}/√n`.
pub fn fourier_adjoint(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, |j, k| root_of_unity(n, (j * k) as i64) * scale)
}

/// `Ω^m = diag[1, ω^m, ω^{2m}, …]`, any integer `m`.
pub fn omega_matrix(n: usize, m: i64) -> CMatrix {
    let diag: Vec<_> = (0..n as i64).map(|j| root_of_unity(n, j * m)).collect();
    CMatrix::from_diag(&diag)
}

/// `π^m` where `π = circ(0, 1, 0, …, 0)`; entry `(i, j)` is one iff
/// `j ≡ i + m (mod n)`.
pub fn permutation_matrix(n: usize, m: i64) -> CMatrix {
    let shift = reduce_index(m, n);
    let mut p = CMatrix::zeros(n);
    for i in 0..n {
        p[(i, (i + shift) % n)] = Complex64::new(1.0, 0.0);
    }
    p
}
