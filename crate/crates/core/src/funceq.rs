//! The functional-equation system of index `m`,
//!
//! ```text
//! F(x + ω^m y) = Ω^{-m} F(y) Ω^m F(x),
//! ```
//!
//! for circulant matrix functions `F`, together with the constructor of its
//! general solution.
//!
//! Writing `G(x) = 𝓕 F(x) 𝓕* = diag(g_0(x), …, g_{n-1}(x))`, the system is
//! `g_i(x + ω^m y) = g_{i+m}(y) g_i(x)` with indices mod `n`. With
//! `d = gcd(n, m)` the indices split into the `d` cosets `r + ⟨m⟩`; on each
//! coset the solution is driven by one exponential `h_r`:
//! `g_{(r + km) mod n}(x) = h_r(ω^{km} x)`.

use num_complex::Complex64;

use crate::circulant::Circulant;
use crate::components::{decompose, CirculantFunction, ComponentVector, ScalarFunction};
use crate::dft::{dft, Sign};
use crate::error::{Error, Result};
use crate::fourier::{reduce_index, root_of_unity, CMatrix, Order};
use crate::samples::Pair;
use crate::sweep;

/// Tolerance for the exponential property of generators.
pub const GENERATOR_TOL: f64 = 1e-9;

/// `gcd(a, b)` with `gcd(a, 0) = a`.
pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(n, m, d = gcd(n, m))` with `0 ≤ m < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquationIndex {
    n: Order,
    m: usize,
    d: usize,
}

impl EquationIndex {
    pub fn new(n: Order, m: i64) -> Result<Self> {
        if m < 0 || m as usize >= n.get() {
            return Err(Error::IndexOutOfRange { index: m, n: n.get() });
        }
        let m = m as usize;
        Ok(EquationIndex { n, m, d: gcd(n.get(), m) })
    }

    pub fn n(&self) -> Order {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Whether the system of index `m_test` is implied by this one, i.e.
    /// `m_test` is a multiple of `d` mod `n`.
    pub fn implies(&self, m_test: usize) -> bool {
        m_test.is_multiple_of(self.d)
    }
}

pub fn equation_index(n: Order, m: i64) -> Result<EquationIndex> {
    EquationIndex::new(n, m)
}

/// `F(x) = 𝓕* diag(g_0(x), …, g_{n-1}(x)) 𝓕`, i.e. first row
/// `f_k(x) = (1/n) Σ_i ω^{-ik} g_i(x)`.
#[derive(Clone, Debug)]
pub struct DiagonalFamily {
    n: Order,
    diag: Vec<ScalarFunction>,
}

impl DiagonalFamily {
    pub fn new(n: Order, diag: Vec<ScalarFunction>) -> Result<Self> {
        if diag.len() != n.get() {
            return Err(Error::InvalidArgument(format!(
                "expected {} diagonal functions, got {}",
                n,
                diag.len()
            )));
        }
        Ok(DiagonalFamily { n, diag })
    }

    pub fn n(&self) -> Order {
        self.n
    }

    pub fn diagonal(&self) -> &[ScalarFunction] {
        &self.diag
    }

    pub fn diag_at(&self, x: Complex64) -> Vec<Complex64> {
        self.diag.iter().map(|g| g.eval(x)).collect()
    }

    /// Component functions `f_0, …, f_{n-1}` as standalone closures.
    pub fn components(&self) -> ComponentVector {
        let n = self.n.get();
        let parts = (0..n)
            .map(|k| {
                let diag = self.diag.clone();
                ScalarFunction::new(move |x| {
                    diag.iter()
                        .enumerate()
                        .map(|(i, g)| root_of_unity(n, -((i * k) as i64)) * g.eval(x))
                        .sum::<Complex64>()
                        / n as f64
                })
            })
            .collect();
        ComponentVector::new(self.n, parts).expect("length matches")
    }

    /// `max_i |g_i(x + ω^m y) − g_{i+m}(y) g_i(x)|`, the one-norm of the
    /// diagonal residual.
    pub fn diagonal_residual(&self, m: i64, x: Complex64, y: Complex64) -> f64 {
        let n = self.n.get();
        let z = x + root_of_unity(n, m) * y;
        let gx = self.diag_at(x);
        let gy = self.diag_at(y);
        (0..n)
            .map(|i| (self.diag[i].eval(z) - gy[reduce_index(i as i64 + m, n)] * gx[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Like [`Self::diagonal_residual`] but each entry is reduced by
    /// `slack · (|g_i(x + ω^m y)| + |g_{i+m}(y) g_i(x)|)`, so large exact values
    /// are not penalized for rounding.
    pub fn diagonal_excess(&self, m: i64, x: Complex64, y: Complex64, slack: f64) -> f64 {
        let n = self.n.get();
        let z = x + root_of_unity(n, m) * y;
        let gx = self.diag_at(x);
        let gy = self.diag_at(y);
        (0..n)
            .map(|i| {
                let lhs = self.diag[i].eval(z);
                let rhs = gy[reduce_index(i as i64 + m, n)] * gx[i];
                (lhs - rhs).norm() - slack * (lhs.norm() + rhs.norm())
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl CirculantFunction for DiagonalFamily {
    fn order(&self) -> usize {
        self.n.get()
    }

    fn row_at(&self, x: Complex64) -> Vec<Complex64> {
        let n = self.n.get() as f64;
        dft(&self.diag_at(x), Sign::Negative).into_iter().map(|z| z / n).collect()
    }
}

/// Status of one generator on a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorStatus {
    Zero,
    Exponential { defect: f64 },
    NotExponential { defect: f64 },
}

/// The solution of the index-`m` system driven by `d` generators.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    index: EquationIndex,
    generators: Vec<ScalarFunction>,
    family: DiagonalFamily,
}

impl SolutionFamily {
    pub fn index(&self) -> EquationIndex {
        self.index
    }

    pub fn generators(&self) -> &[ScalarFunction] {
        &self.generators
    }

    pub fn family(&self) -> &DiagonalFamily {
        &self.family
    }

    pub fn components(&self) -> ComponentVector {
        self.family.components()
    }

    /// Checks each generator for `|h(x+y) − h(x)h(y)| ≤ tol` on `pairs`.
    pub fn generator_status(&self, pairs: &[Pair], tol: f64) -> Vec<GeneratorStatus> {
        self.generators
            .iter()
            .map(|h| {
                let scale = sweep::max_over(pairs, |&(x, y)| h.eval(x).norm().max(h.eval(y).norm()));
                let defect = exponential_defect(h, pairs);
                if scale == 0.0 && h.eval(Complex64::new(0.0, 0.0)).norm() == 0.0 {
                    GeneratorStatus::Zero
                } else if defect <= tol {
                    GeneratorStatus::Exponential { defect }
                } else {
                    GeneratorStatus::NotExponential { defect }
                }
            })
            .collect()
    }
}

impl CirculantFunction for SolutionFamily {
    fn order(&self) -> usize {
        self.family.order()
    }

    fn row_at(&self, x: Complex64) -> Vec<Complex64> {
        self.family.row_at(x)
    }
}

/// `max |h(x+y) − h(x)h(y)|` over `pairs`.
pub fn exponential_defect(h: &ScalarFunction, pairs: &[Pair]) -> f64 {
    sweep::max_over(pairs, |&(x, y)| (h.eval(x + y) - h.eval(x) * h.eval(y)).norm())
}

/// Builds `g_{(r + km) mod n}(x) = h_r(ω^{km} x)` for `r < d`, `k < n/d`, and
/// returns the circulant family `f = (1/√n) 𝓕 g`.
///
/// Generators are not required to be exponential; see
/// [`SolutionFamily::generator_status`].
pub fn construct_solution(n: Order, m: i64, generators: Vec<ScalarFunction>) -> Result<SolutionFamily> {
    let index = EquationIndex::new(n, m)?;
    let (nn, m, d) = (n.get(), index.m, index.d);
    if generators.len() != d {
        return Err(Error::GeneratorCount { expected: d, got: generators.len() });
    }
    let mut diag: Vec<Option<ScalarFunction>> = vec![None; nn];
    for (r, h) in generators.iter().enumerate() {
        for k in 0..nn / d {
            let shift = (k * m) % nn;
            let slot = (r + shift) % nn;
            debug_assert!(diag[slot].is_none(), "cosets are disjoint");
            diag[slot] = Some(h.compose_scale(root_of_unity(nn, shift as i64)));
        }
    }
    let diag = diag.into_iter().map(|g| g.expect("cosets cover all indices")).collect();
    Ok(SolutionFamily { index, generators, family: DiagonalFamily::new(n, diag)? })
}

/// `F(x + ω^m y) − Ω^{-m} F(y) Ω^m F(x)`, densely.
pub fn residual_matrix_of(family: &dyn CirculantFunction, m: i64, x: Complex64, y: Complex64) -> CMatrix {
    let n = family.order();
    let lhs = family.circulant_at(x + root_of_unity(n, m) * y).to_dense();
    let rhs = family
        .circulant_at(y)
        .conjugate_omega(m)
        .matmul(&family.circulant_at(x).to_dense())
        .expect("same order");
    lhs.checked_sub(&rhs).expect("same order")
}

/// Residual of the index-`m` system for the circulant matrix function of `f`.
pub fn residual_matrix(f: &ScalarFunction, n: Order, m: i64, x: Complex64, y: Complex64) -> Result<CMatrix> {
    EquationIndex::new(n, m)?;
    Ok(residual_matrix_of(&decompose(f, n), m, x, y))
}

/// Scalar form of row 0, entry `j`:
///
/// ```text
/// f_j(x + ω^m y) − Σ_{l≤j} ω^{(j−l)m} f_l(x) f_{j−l}(y)
///                − Σ_{l>j} ω^{(n+j−l)m} f_l(x) f_{n+j−l}(y)
/// ```
pub fn residual_scalar(parts: &ComponentVector, m: i64, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
    let n = parts.n().get();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j as i64, n });
    }
    let fx = parts.row_at(x);
    let fy = parts.row_at(y);
    let z = x + root_of_unity(n, m) * y;
    let mut acc = parts.part(j).eval(z);
    for l in 0..=j {
        acc -= root_of_unity(n, (j - l) as i64 * m) * fx[l] * fy[j - l];
    }
    for l in j + 1..n {
        acc -= root_of_unity(n, (n + j - l) as i64 * m) * fx[l] * fy[n + j - l];
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    pub n: usize,
    pub m_test: usize,
    pub d: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// `m_test` is a multiple of `d` mod `n`, so the family is guaranteed to
    /// satisfy that system when its generators are exponential.
    pub in_subgroup: bool,
    pub samples: usize,
}

/// Max one-norm residual of `family` at index `m_test` over `pairs`.
pub fn max_residual(family: &dyn CirculantFunction, m_test: i64, pairs: &[Pair]) -> f64 {
    sweep::max_over(pairs, |&(x, y)| residual_matrix_of(family, m_test, x, y).one_norm())
}

pub fn verify_family(family: &SolutionFamily, m_test: i64, pairs: &[Pair], tol: f64) -> Result<VerifyReport> {
    let test = EquationIndex::new(family.index.n, m_test)?;
    let max_residual = max_residual(family, m_test, pairs);
    Ok(VerifyReport {
        n: family.index.n.get(),
        m_test: test.m,
        d: family.index.d,
        max_residual,
        tol,
        pass: max_residual <= tol,
        in_subgroup: family.index.implies(test.m),
        samples: pairs.len(),
    })
}

/// Shortcut for circulant families given directly by their component tuple.
pub fn verify_components(parts: &ComponentVector, m_test: i64, pairs: &[Pair], tol: f64) -> Result<VerifyReport> {
    let test = EquationIndex::new(parts.n(), m_test)?;
    let max_residual = max_residual(parts, m_test, pairs);
    Ok(VerifyReport {
        n: parts.n().get(),
        m_test: test.m,
        d: test.d,
        max_residual,
        tol,
        pass: max_residual <= tol,
        in_subgroup: true,
        samples: pairs.len(),
    })
}

/// Densified `F(x)` for a family, for callers that need the matrix itself.
pub fn dense_at(family: &dyn CirculantFunction, x: Complex64) -> CMatrix {
    family.circulant_at(x).to_dense()
}

/// `√n · 𝓕* f(x)`, the eigenvalues of `F(x)`.
pub fn eigen_diagonal(family: &dyn CirculantFunction, x: Complex64) -> Vec<Complex64> {
    Circulant::from_row(family.row_at(x)).expect("nonempty").eigenvalues()
}
