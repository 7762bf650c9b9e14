//! Stability of the index-`m` system in the Hyers–Ulam sense.
//!
//! A uniformly `ε`-approximate circulant solution is either bounded or exact
//! exactly when `gcd(n, m) = 1`. For `gcd(n, m) = d > 1` the diagonal
//! `g_i(x) = e^{ω^i x}` for `d | i`, `g_i(x) = 2` otherwise, is an unbounded
//! `2n`-approximate solution that is not exact. For `d = 1` the check is
//! empirical: a corpus of exact and perturbed exponential families is probed,
//! and every member that stays `ε`-approximate along a growth probe while
//! being unbounded must be an exact solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::components::{CirculantFunction, ScalarFunction};
use crate::error::{Error, Result};
use crate::fourier::{root_of_unity, Order};
use crate::funceq::{construct_solution, gcd, max_residual, DiagonalFamily, EquationIndex};
use crate::samples::{growth_points, Pair};
use crate::sweep;

/// `‖F(t)‖` above this on the growth ray counts as unbounded.
pub const GROWTH_THRESHOLD: f64 = 1e6;
/// Residual at or below this counts as an exact solution.
pub const EXACT_TOL: f64 = 1e-10;
/// Uniform bound `ε` used for the coprime corpus.
pub const CORPUS_EPSILON: f64 = 1.0;
/// Additive perturbation applied to the diagonal of perturbed corpus members.
pub const CORPUS_PERTURBATION: f64 = 1e-3;
/// Real arguments whose pairs extend the diagonal `ε`-approximation probe.
/// Reaches as far as the growth ray, so a family is never called unbounded at
/// a scale where its approximation was not probed.
pub const PROBE_RAY: [f64; 8] = [1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 16.0, 20.0];
/// Floating-point allowance in the diagonal probe, relative to the size of
/// the terms being compared.
pub const ROUNDING_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ExactSolution,
    Bounded,
    UnstableWitness,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ExactSolution => "exact-solution",
            Classification::Bounded => "bounded",
            Classification::UnstableWitness => "unstable-witness",
        }
    }
}

/// Outcome for one family of the coprime corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberOutcome {
    pub label: String,
    /// Max one-norm residual on the sample pairs.
    pub residual: f64,
    /// Max diagonal residual over the sample pairs and the growth probe, net
    /// of the rounding allowance.
    pub diagonal_residual: f64,
    /// `residual ≤ ε` and `diagonal_residual ≤ n ε`.
    pub approximate: bool,
    pub growth: f64,
    pub unbounded: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub epsilon: f64,
    pub tol: f64,
    pub max_residual: f64,
    pub unbounded_witness: f64,
    pub satisfies_equation: bool,
    pub classification: Classification,
    pub members: Vec<MemberOutcome>,
}

impl StabilityReport {
    /// The report's fields agree with its classification.
    pub fn is_consistent(&self) -> bool {
        match self.classification {
            Classification::ExactSolution => self.max_residual <= self.tol && self.satisfies_equation,
            Classification::UnstableWitness => {
                self.max_residual <= self.epsilon
                    && !self.satisfies_equation
                    && self.unbounded_witness > GROWTH_THRESHOLD
            }
            Classification::Bounded => self.unbounded_witness <= GROWTH_THRESHOLD,
        }
    }
}

/// `sup` over `pairs` of `‖F(x + ω^m y) − Ω^{-m} F(y) Ω^m F(x)‖`.
pub fn residual_sup(family: &dyn CirculantFunction, m: i64, pairs: &[Pair]) -> Result<f64> {
    let n = Order::new(family.order())?;
    EquationIndex::new(n, m)?;
    Ok(max_residual(family, m, pairs))
}

/// Largest `‖F(t)‖` over `points`.
pub fn growth_witness(family: &dyn CirculantFunction, points: &[Complex64]) -> f64 {
    sweep::max_over(points, |&t| family.circulant_at(t).to_dense().one_norm())
}

/// The unbounded, non-exact `2n`-approximate solution for `gcd(n, m) > 1`.
pub fn counterexample(n: Order, m: i64) -> Result<DiagonalFamily> {
    let index = EquationIndex::new(n, m)?;
    let (nn, d) = (n.get(), index.d());
    if d == 1 {
        return Err(Error::CoprimeShift { n: nn, m: index.m() });
    }
    let diag = (0..nn)
        .map(|i| {
            if i % d == 0 {
                ScalarFunction::exp_scaled(root_of_unity(nn, i as i64))
            } else {
                ScalarFunction::constant(Complex64::new(2.0, 0.0))
            }
        })
        .collect();
    DiagonalFamily::new(n, diag)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub epsilon: f64,
    /// `max |g(y+z) − g(y)g(z)|` over the sample pairs.
    pub max_defect: f64,
    pub approx_exponential: bool,
    pub growth: f64,
    pub unbounded: bool,
}

/// Local superstability check for a scalar function.
pub fn superstability_probe(
    g: &ScalarFunction,
    epsilon: f64,
    pairs: &[Pair],
    growth_points: &[Complex64],
) -> Result<ProbeReport> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let max_defect = crate::funceq::exponential_defect(g, pairs);
    let growth = sweep::max_over(growth_points, |&t| g.eval(t).norm());
    Ok(ProbeReport {
        epsilon,
        max_defect,
        approx_exponential: max_defect <= epsilon,
        growth,
        unbounded: growth > GROWTH_THRESHOLD,
    })
}

fn probe_pairs(pairs: &[Pair]) -> Vec<Pair> {
    let mut out = pairs.to_vec();
    for &s in &PROBE_RAY {
        for &t in &PROBE_RAY {
            out.push((Complex64::new(s, 0.0), Complex64::new(t, 0.0)));
        }
    }
    out
}

/// Exponential rates for the coprime corpus.
pub fn corpus_rates() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(2.0, 1.0),
        Complex64::new(0.0, 1.5),
    ]
}

/// Exact, perturbed and bounded families for a coprime index.
fn coprime_corpus(n: Order, m: i64) -> Result<Vec<(String, DiagonalFamily)>> {
    let mut corpus = Vec::new();
    let delta = Complex64::new(CORPUS_PERTURBATION, 0.0);
    for c in corpus_rates() {
        let fam = construct_solution(n, m, vec![ScalarFunction::exp_scaled(c)])?;
        let exact = fam.family().clone();
        let perturbed = DiagonalFamily::new(
            n,
            exact
                .diagonal()
                .iter()
                .map(|g| {
                    let g = g.clone();
                    ScalarFunction::new(move |x| g.eval(x) + delta)
                })
                .collect(),
        )?;
        corpus.push((format!("exp({c}x)"), exact));
        corpus.push((format!("perturbed exp({c}x)"), perturbed));
    }
    let one = construct_solution(n, m, vec![ScalarFunction::constant(Complex64::new(1.0, 0.0))])?;
    corpus.push(("const(1)".into(), one.family().clone()));
    let two = DiagonalFamily::new(n, vec![ScalarFunction::constant(Complex64::new(2.0, 0.0)); n.get()])?;
    corpus.push(("const(2)".into(), two));
    Ok(corpus)
}

fn evaluate_member(label: String, fam: &DiagonalFamily, m: i64, pairs: &[Pair], extended: &[Pair], growth: &[Complex64]) -> MemberOutcome {
    let n = fam.n().get() as f64;
    let residual = max_residual(fam, m, pairs);
    let diagonal_residual = sweep::max_over(extended, |&(x, y)| fam.diagonal_excess(m, x, y, ROUNDING_SLACK));
    let growth = growth_witness(fam, growth);
    MemberOutcome {
        label,
        residual,
        diagonal_residual,
        approximate: residual <= CORPUS_EPSILON && diagonal_residual <= n * CORPUS_EPSILON,
        growth,
        unbounded: growth > GROWTH_THRESHOLD,
        exact: residual <= EXACT_TOL,
    }
}

/// Runs the counterexample (`gcd > 1`) or the coprime corpus (`gcd = 1`).
pub fn stability_experiment(n: Order, m: i64, pairs: &[Pair]) -> Result<StabilityReport> {
    let index = EquationIndex::new(n, m)?;
    let nn = n.get();
    let growth = growth_points();
    if index.d() > 1 {
        let fam = counterexample(n, m)?;
        let max_res = max_residual(&fam, m, pairs);
        let witness = growth_witness(&fam, &growth);
        let epsilon = 2.0 * nn as f64;
        let satisfies = max_res <= EXACT_TOL;
        let classification = if satisfies {
            Classification::ExactSolution
        } else if witness > GROWTH_THRESHOLD && max_res <= epsilon {
            Classification::UnstableWitness
        } else {
            Classification::Bounded
        };
        return Ok(StabilityReport {
            n: nn,
            m: index.m(),
            d: index.d(),
            epsilon,
            tol: EXACT_TOL,
            max_residual: max_res,
            unbounded_witness: witness,
            satisfies_equation: satisfies,
            classification,
            members: Vec::new(),
        });
    }

    let extended = probe_pairs(pairs);
    let members: Vec<MemberOutcome> = coprime_corpus(n, m)?
        .into_iter()
        .map(|(label, fam)| evaluate_member(label, &fam, m, pairs, &extended, &growth))
        .collect();
    let qualifying: Vec<&MemberOutcome> = members.iter().filter(|o| o.approximate && o.unbounded).collect();
    let max_res = qualifying.iter().map(|o| o.residual).fold(0.0, f64::max);
    let witness = qualifying.iter().map(|o| o.growth).fold(f64::INFINITY, f64::min);
    let all_exact = qualifying.iter().all(|o| o.exact);
    let classification = match (qualifying.is_empty(), all_exact) {
        (true, _) => Classification::Bounded,
        (false, true) => Classification::ExactSolution,
        (false, false) => Classification::UnstableWitness,
    };
    Ok(StabilityReport {
        n: nn,
        m: index.m(),
        d: 1,
        epsilon: CORPUS_EPSILON,
        tol: EXACT_TOL,
        max_residual: max_res,
        unbounded_witness: if qualifying.is_empty() { 0.0 } else { witness },
        satisfies_equation: all_exact && !qualifying.is_empty(),
        classification,
        members,
    })
}

/// Greatest common divisor of `n` and `m` as used by the dichotomy.
pub fn shift_gcd(n: Order, m: usize) -> usize {
    gcd(n.get(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::decompose;
    use crate::funceq::residual_matrix_of;
    use crate::samples::{standard_pairs, DEFAULT_PAIR_COUNT, DEFAULT_SEED};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn order(n: usize) -> Order {
        Order::new(n).unwrap()
    }

    fn pairs() -> Vec<Pair> {
        standard_pairs(DEFAULT_SEED, DEFAULT_PAIR_COUNT)
    }

    #[test]
    fn residual_sup_examples() {
        let ps = pairs();
        for m in 0..4 {
            let exp = decompose(&ScalarFunction::exp(), order(4));
            assert!(residual_sup(&exp, m, &ps).unwrap() <= 1e-9);
        }
        let zero = decompose(&ScalarFunction::zero(), order(3));
        assert_eq!(residual_sup(&zero, 1, &ps).unwrap(), 0.0);
        let cx = counterexample(order(2), 0).unwrap();
        let r = residual_sup(&cx, 0, &ps).unwrap();
        assert!(r > 0.0 && r.is_finite());
        assert!(residual_sup(&zero, 3, &ps).is_err());
    }

    #[test]
    fn counterexample_n2_m0_has_defect_two() {
        let cx = counterexample(order(2), 0).unwrap();
        for &(x, y) in &pairs() {
            assert!((cx.diagonal_residual(0, x, y) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn counterexample_n4_m2() {
        let cx = counterexample(order(4), 2).unwrap();
        let ps = pairs();
        assert!(residual_sup(&cx, 2, &ps).unwrap() <= 8.0 + 1e-9);
        assert!(residual_matrix_of(&cx, 2, c(1.0, 0.0), c(1.0, 0.0)).one_norm() >= 0.5);
        assert!(growth_witness(&cx, &[c(20.0, 0.0)]) >= 1e6);
    }

    #[test]
    fn counterexample_needs_common_factor() {
        assert!(matches!(counterexample(order(5), 2), Err(Error::CoprimeShift { n: 5, m: 2 })));
        assert!(matches!(counterexample(order(4), 1), Err(Error::CoprimeShift { .. })));
        assert!(counterexample(order(4), 4).is_err());
    }

    #[test]
    fn probe_examples() {
        let ps = pairs();
        let growth = growth_points();
        let exp = superstability_probe(&ScalarFunction::exp(), 1e-6, &ps, &growth).unwrap();
        assert!(exp.approx_exponential && exp.unbounded && exp.max_defect <= 1e-12);

        let two = superstability_probe(&ScalarFunction::constant(c(2.0, 0.0)), 2.0, &ps, &growth).unwrap();
        assert!(two.approx_exponential && !two.unbounded);
        assert!((two.max_defect - 2.0).abs() < 1e-15);

        let real_pairs: Vec<Pair> = (0..=8)
            .flat_map(|i| (0..=8).map(move |j| (c(-2.0 + 0.5 * i as f64, 0.0), c(-2.0 + 0.5 * j as f64, 0.0))))
            .collect();
        let wobble = ScalarFunction::new(|x: Complex64| x.exp() + 1e-3 * x.sin());
        let w = superstability_probe(&wobble, 0.02, &real_pairs, &growth).unwrap();
        assert!(w.approx_exponential && w.unbounded && w.max_defect > 1e-4);

        assert!(superstability_probe(&wobble, 0.0, &real_pairs, &growth).is_err());
    }

    #[test]
    fn experiment_examples() {
        let ps = pairs();
        let rep = stability_experiment(order(4), 2, &ps).unwrap();
        assert_eq!(rep.classification, Classification::UnstableWitness);
        assert!(rep.is_consistent());
        let rep = stability_experiment(order(4), 1, &ps).unwrap();
        assert_eq!(rep.classification, Classification::ExactSolution);
        assert!(rep.is_consistent());
        assert_eq!(stability_experiment(order(2), 1, &ps).unwrap().classification, Classification::ExactSolution);
        assert_eq!(stability_experiment(order(2), 0, &ps).unwrap().classification, Classification::UnstableWitness);
        assert_eq!(stability_experiment(order(6), 3, &ps).unwrap().classification, Classification::UnstableWitness);
        assert!(stability_experiment(order(6), 6, &ps).is_err());
    }

    #[test]
    fn perturbed_members_are_filtered_by_growth_probe() {
        let rep = stability_experiment(order(5), 2, &pairs()).unwrap();
        for o in &rep.members {
            if o.label.starts_with("perturbed") {
                assert!(!o.exact, "{}", o.label);
                assert!(!o.approximate, "{}", o.label);
            }
            if o.approximate && o.unbounded {
                assert!(o.exact, "{}", o.label);
            }
        }
        assert!(rep.members.iter().any(|o| o.approximate && o.unbounded));
    }

    #[test]
    fn classification_names() {
        assert_eq!(Classification::UnstableWitness.as_str(), "unstable-witness");
        assert_eq!(serde_json::to_string(&Classification::ExactSolution).unwrap(), "\"exact-solution\"");
    }
}
