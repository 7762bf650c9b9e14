//! Roots-of-unity components of a function and the circulant matrix function
//! built from them.
//!
//! A function `h` is of type `j` (for order `n`) when `h(ωx) = ω^j h(x)`.
//! Every `f` splits uniquely as `f = f_0 + … + f_{n-1}` with `f_j` of type `j`:
//!
//! ```text
//! f_j(x) = (1/n) Σ_k ω^{-jk} f(ω^k x)
//! ```
//!
//! The circulant matrix corresponding to `f` is `F(x) = circ(f_0(x), …, f_{n-1}(x))`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::circulant::Circulant;
use crate::dft::{dft, Sign};
use crate::error::{Error, Result};
use crate::fourier::{root_of_unity, roots_of_unity, Order};
use crate::sweep;

/// Default tolerance for identities that go through one transform round trip.
pub const TOL_ONE_TRANSFORM: f64 = 1e-11;
/// Default tolerance for identities that go through two.
pub const TOL_TWO_TRANSFORMS: f64 = 1e-10;

/// A thread-safe black-box map `C → C`.
#[derive(Clone)]
pub struct ScalarFunction(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>);

impl ScalarFunction {
    pub fn new(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        ScalarFunction(Arc::new(f))
    }

    #[inline]
    pub fn eval(&self, x: Complex64) -> Complex64 {
        (self.0)(x)
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(move |_| c)
    }

    /// `x ↦ e^{cx}`.
    pub fn exp_scaled(c: Complex64) -> Self {
        Self::new(move |x| (c * x).exp())
    }

    pub fn exp() -> Self {
        Self::exp_scaled(Complex64::new(1.0, 0.0))
    }

    /// `x ↦ self(s·x)`.
    pub fn compose_scale(&self, s: Complex64) -> Self {
        let f = self.clone();
        Self::new(move |x| f.eval(s * x))
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarFunction(..)")
    }
}

/// Anything that evaluates to a circulant matrix at each point.
pub trait CirculantFunction: Send + Sync {
    fn order(&self) -> usize;

    /// First row of `F(x)`.
    fn row_at(&self, x: Complex64) -> Vec<Complex64>;

    fn circulant_at(&self, x: Complex64) -> Circulant {
        Circulant::from_row(self.row_at(x)).expect("order is at least one")
    }
}

/// The components `(f_0, …, f_{n-1})` of some function, or any `n`-tuple of
/// functions used as the first row of a circulant.
#[derive(Clone, Debug)]
pub struct ComponentVector {
    n: Order,
    parts: Vec<ScalarFunction>,
}

impl ComponentVector {
    pub fn new(n: Order, parts: Vec<ScalarFunction>) -> Result<Self> {
        if parts.len() != n.get() {
            return Err(Error::InvalidArgument(format!(
                "expected {} component functions, got {}",
                n,
                parts.len()
            )));
        }
        Ok(ComponentVector { n, parts })
    }

    pub fn n(&self) -> Order {
        self.n
    }

    pub fn parts(&self) -> &[ScalarFunction] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &ScalarFunction {
        &self.parts[j]
    }

    /// `Σ_j f_j(x)`.
    pub fn sum_at(&self, x: Complex64) -> Complex64 {
        self.parts.iter().map(|p| p.eval(x)).sum()
    }
}

impl CirculantFunction for ComponentVector {
    fn order(&self) -> usize {
        self.n.get()
    }

    fn row_at(&self, x: Complex64) -> Vec<Complex64> {
        self.parts.iter().map(|p| p.eval(x)).collect()
    }
}

/// `x ↦ circ(f_0(x), …, f_{n-1}(x))` computed from `f(x), f(ωx), …` with one
/// transform per point.
#[derive(Clone, Debug)]
pub struct CirculantOf {
    f: ScalarFunction,
    n: Order,
}

impl CirculantOf {
    pub fn new(f: ScalarFunction, n: Order) -> Self {
        CirculantOf { f, n }
    }
}

impl CirculantFunction for CirculantOf {
    fn order(&self) -> usize {
        self.n.get()
    }

    fn row_at(&self, x: Complex64) -> Vec<Complex64> {
        circulant_of(&self.f, self.n, x).into_row()
    }
}

fn check_index(n: Order, j: usize) -> Result<()> {
    if j >= n.get() {
        return Err(Error::IndexOutOfRange { index: j as i64, n: n.get() });
    }
    Ok(())
}

/// The type-`j` component `x ↦ (1/n) Σ_k ω^{-jk} f(ω^k x)`.
///
/// Each evaluation calls `f` exactly `n` times.
pub fn component(f: &ScalarFunction, n: Order, j: usize) -> Result<ScalarFunction> {
    check_index(n, j)?;
    let n = n.get();
    let roots = roots_of_unity(n);
    let weights: Vec<Complex64> =
        (0..n).map(|k| root_of_unity(n, -((j * k) as i64)) / n as f64).collect();
    let f = f.clone();
    Ok(ScalarFunction::new(move |x| {
        roots.iter().zip(&weights).map(|(&w, &c)| c * f.eval(w * x)).sum()
    }))
}

pub fn decompose(f: &ScalarFunction, n: Order) -> ComponentVector {
    let parts = (0..n.get())
        .map(|j| component(f, n, j).expect("index in range"))
        .collect();
    ComponentVector { n, parts }
}

/// `max_x |h(ωx) − ω^j h(x)|` over `samples`.
pub fn type_defect(h: &ScalarFunction, n: Order, j: usize, samples: &[Complex64]) -> Result<f64> {
    check_index(n, j)?;
    let w = root_of_unity(n.get(), 1);
    let wj = root_of_unity(n.get(), j as i64);
    Ok(sweep::max_over(samples, |&x| (h.eval(w * x) - wj * h.eval(x)).norm()))
}

/// Whether `h` is of type `j` to within `tol` on `samples`.
pub fn is_type_j(h: &ScalarFunction, n: Order, j: usize, samples: &[Complex64], tol: f64) -> Result<bool> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("sample set is empty".into()));
    }
    Ok(type_defect(h, n, j, samples)? <= tol)
}

/// `circ(f_0(x), …, f_{n-1}(x))` for the components of `f`.
pub fn circulant_of(f: &ScalarFunction, n: Order, x: Complex64) -> Circulant {
    let n = n.get();
    let values: Vec<Complex64> = roots_of_unity(n).into_iter().map(|w| f.eval(w * x)).collect();
    let row = dft(&values, Sign::Negative).into_iter().map(|z| z / n as f64).collect();
    Circulant::from_row(row).expect("n >= 2")
}
