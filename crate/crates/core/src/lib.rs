//! Order-`n` generalized hyperbolic functions and circulant matrix functions.
//!
//! The crate covers:
//!
//! * [`fourier`]: roots of unity, the unitary Fourier matrix, `Ω`, `π`, and a
//!   small dense complex matrix kernel;
//! * [`circulant`]: circulant matrices, their Fourier diagonalization and fast
//!   products;
//! * [`components`]: the type-`j` components of a function and the circulant
//!   matrix function `x ↦ circ(f_0(x), …, f_{n-1}(x))`;
//! * [`genhyp`]: the functions `F^{(a)}_{n,k}` by series, exponential sums and
//!   closed forms;
//! * [`funceq`]: residuals of `F(x + ω^m y) = Ω^{-m} F(y) Ω^m F(x)` and the
//!   general-solution constructor;
//! * [`stability`]: the gcd dichotomy for Hyers–Ulam stability;
//! * [`cli`]: the `circhyp` command-line front end.

// `!(x > 0.0)` is used on purpose to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circulant;
pub mod cli;
pub mod components;
pub mod dft;
pub mod error;
pub mod expr;
pub mod fourier;
pub mod funceq;
pub mod genhyp;
pub mod report;
pub mod samples;
pub mod stability;
pub mod sweep;

pub use num_complex::Complex64;

pub use circulant::Circulant;
pub use components::{circulant_of, component, decompose, is_type_j, CirculantFunction, ComponentVector, ScalarFunction};
pub use error::{Error, Result};
pub use fourier::{fourier_adjoint, fourier_matrix, omega_matrix, permutation_matrix, root_of_unity, CMatrix, Order};
pub use funceq::{construct_solution, equation_index, residual_matrix, residual_scalar, verify_family, EquationIndex, SolutionFamily};
pub use genhyp::{duplicate_order, genhyp3, genhyp4, genhyp_expsum, genhyp_series, GenHypSpec};
pub use stability::{counterexample, residual_sup, stability_experiment, superstability_probe, Classification, StabilityReport};
