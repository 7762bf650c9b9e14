//! Generalized hyperbolic functions
//!
//! ```text
//! F^{(a)}_{n,k}(x) = Σ_{l≥0} a^l x^{nl+k} / (nl+k)!,   0 ≤ k < n.
//! ```
//!
//! For `a = 1` these are the components of `e^x`,
//! `F^{(1)}_{n,k}(x) = (1/n) Σ_{j=0}^{n-1} ω^{-jk} e^{ω^j x}`; at `n = 2` they
//! are `cosh`/`sinh`, and `F^{(-1)}_{2,k}` are `cos`/`sin`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{root_of_unity, Order};

/// Relative truncation threshold used when callers do not pick one.
pub const SERIES_TOL: f64 = 1e-17;
pub const MAX_SERIES_TERMS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenHypSpec {
    n: Order,
    k: usize,
    a: Complex64,
}

impl GenHypSpec {
    pub fn new(n: Order, k: usize, a: Complex64) -> Result<Self> {
        if k >= n.get() {
            return Err(Error::IndexOutOfRange { index: k as i64, n: n.get() });
        }
        Ok(GenHypSpec { n, k, a })
    }

    pub fn hyperbolic(n: Order, k: usize) -> Result<Self> {
        Self::new(n, k, Complex64::new(1.0, 0.0))
    }

    pub fn n(&self) -> Order {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }
}

/// Sums the power series until two consecutive terms fall below
/// `tol · max(1, |partial sum|)`.
pub fn genhyp_series(spec: &GenHypSpec, x: Complex64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = spec.n.get();
    let k = spec.k;

    // x^k / k!
    let mut term = (1..=k).fold(Complex64::new(1.0, 0.0), |t, i| t * x / i as f64);
    let mut sum = term;
    let mut small_run = usize::from(term.norm() < tol);
    let xn_a = x.powu(n as u32) * spec.a;

    for l in 1..MAX_SERIES_TERMS {
        let base = n * (l - 1) + k;
        let denom: f64 = (base + 1..=base + n).map(|i| i as f64).product();
        term = term * xn_a / denom;
        sum += term;
        if term.norm() < tol * sum.norm().max(1.0) {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence { terms: MAX_SERIES_TERMS })
}

/// `(1/n) Σ_{j<n} ω^{-jk} e^{ω^j x}`.
pub fn genhyp_expsum(n: Order, k: usize, x: Complex64) -> Result<Complex64> {
    let n = n.get();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k as i64, n });
    }
    let sum: Complex64 = (0..n as i64)
        .map(|j| root_of_unity(n, -j * k as i64) * (root_of_unity(n, j) * x).exp())
        .sum();
    Ok(sum / n as f64)
}

/// The order-3 closed forms, evaluated literally.
pub fn genhyp3(k: usize, x: Complex64) -> Result<Complex64> {
    use std::f64::consts::FRAC_PI_3;
    let theta = x * (3f64.sqrt() / 2.0);
    let decay = (-x / 2.0).exp() * 2.0;
    let v = match k {
        0 => x.exp() + decay * theta.cos(),
        1 => x.exp() - decay * (theta + FRAC_PI_3).cos(),
        2 => x.exp() - decay * (theta - FRAC_PI_3).cos(),
        _ => return Err(Error::IndexOutOfRange { index: k as i64, n: 3 }),
    };
    Ok(v / 3.0)
}

/// The order-4 closed forms `(cosh ± cos)/2`, `(sinh ± sin)/2`.
pub fn genhyp4(k: usize, x: Complex64) -> Result<Complex64> {
    let v = match k {
        0 => x.cosh() + x.cos(),
        1 => x.sinh() + x.sin(),
        2 => x.cosh() - x.cos(),
        3 => x.sinh() - x.sin(),
        _ => return Err(Error::IndexOutOfRange { index: k as i64, n: 4 }),
    };
    Ok(v / 2.0)
}

/// `(F^{(1)}_{2m,r}(x), F^{(1)}_{2m,r+m}(x))` from the order-`m` functions
/// with `a = ±1`:
///
/// ```text
/// F^{(1)}_{2m,r}   = (F^{(1)}_{m,r} + F^{(-1)}_{m,r}) / 2
/// F^{(1)}_{2m,r+m} = (F^{(1)}_{m,r} − F^{(-1)}_{m,r}) / 2
/// ```
pub fn duplicate_order(m: Order, r: usize, x: Complex64) -> Result<(Complex64, Complex64)> {
    let plus = genhyp_series(&GenHypSpec::new(m, r, Complex64::new(1.0, 0.0))?, x, SERIES_TOL)?;
    let minus = genhyp_series(&GenHypSpec::new(m, r, Complex64::new(-1.0, 0.0))?, x, SERIES_TOL)?;
    Ok(((plus + minus) / 2.0, (plus - minus) / 2.0))
}
