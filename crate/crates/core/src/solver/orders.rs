//! Order-by-order equations for twist and R-matrix logarithms.
//!
//! At order `n` both problems read `[uₙ, Δ₀(x)] = bₙ(x)` for every
//! generator `x`, with `bₙ` collecting the target and everything already
//! fixed at lower orders.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraElement, LiePresentation};
use crate::error::{Error, Result};
use crate::hopf::{adjoint_exp, primitive_coproduct, CoproductMap, TwistSeries};
use crate::series::{series_truncate, DeformationSeries, TensorSeries};
use crate::solver::ansatz::{ansatz_basis, AnsatzConstraints};
use crate::solver::linear::{solve_linear, verify_outcome, LinearSystem, SolveOutcome, Verification};
use crate::tensor::{flip, tensor_commutator, TensorElement};

/// `[u, Δ₀(x)] = rhs(x)` for every generator `x`.
#[derive(Clone, Debug)]
pub struct OrderEquation {
    pub order: usize,
    pub labels: Vec<String>,
    pub base: Vec<TensorElement>,
    pub rhs: Vec<TensorElement>,
}

impl OrderEquation {
    fn images(&self, u: &TensorElement) -> Vec<TensorElement> {
        self.base.iter().map(|d| tensor_commutator(u, d).expect("two legs")).collect()
    }

    /// `[u, Δ₀(x)] − rhs(x)` per generator.
    pub fn residual(&self, u: &TensorElement) -> Vec<TensorElement> {
        self.images(u).iter().zip(&self.rhs).map(|(l, r)| l - r).collect()
    }

    pub fn is_solved_by(&self, u: &TensorElement) -> bool {
        self.residual(u).iter().all(TensorElement::is_zero)
    }

    pub fn system(&self, unknowns: Vec<TensorElement>) -> LinearSystem {
        let images = unknowns.iter().map(|u| self.images(u)).collect();
        LinearSystem::assemble(unknowns, self.labels.clone(), images, self.rhs.clone())
    }
}

/// A solved order: the system, its outcome and the independent re-check.
#[derive(Clone, Debug)]
pub struct OrderResult {
    pub equation: OrderEquation,
    pub constraints: AnsatzConstraints,
    pub system: LinearSystem,
    pub outcome: SolveOutcome,
    pub verification: Verification,
    /// The same system with `u + flip(u) = 0` appended, when requested.
    pub antisymmetric: Option<(LinearSystem, SolveOutcome, Verification)>,
}

impl OrderResult {
    /// The gauge-fixed particular solution when one exists, otherwise the
    /// unconstrained one.
    pub fn particular(&self) -> Option<&TensorElement> {
        if let Some((_, SolveOutcome::Solution { particular, .. }, _)) = &self.antisymmetric {
            return Some(particular);
        }
        match &self.outcome {
            SolveOutcome::Solution { particular, .. } => Some(particular),
            SolveOutcome::Obstruction { .. } => None,
        }
    }

    pub fn kernel(&self) -> &[TensorElement] {
        match &self.outcome {
            SolveOutcome::Solution { kernel_basis, .. } => kernel_basis,
            SolveOutcome::Obstruction { .. } => &[],
        }
    }

    /// True if `u` is `particular + kernel combination`, i.e. solves the
    /// order equation.
    pub fn admits(&self, u: &TensorElement) -> bool {
        self.outcome.is_solution() && self.equation.is_solved_by(u)
    }
}

/// Summary of the constraints and sizes, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct SystemShape {
    pub unknowns: usize,
    pub rows: usize,
}

impl From<&LinearSystem> for SystemShape {
    fn from(s: &LinearSystem) -> Self {
        SystemShape { unknowns: s.num_unknowns(), rows: s.num_rows() }
    }
}

fn base_images(pres: &Arc<LiePresentation>) -> Vec<TensorElement> {
    (0..pres.len()).map(|g| primitive_coproduct(&AlgebraElement::generator(pres, g))).collect()
}

fn labels(pres: &LiePresentation) -> Vec<String> {
    pres.generators().iter().map(|g| g.name.clone()).collect()
}

/// `Σ λᵏ uₖ` from `[u₁, u₂, …]`, through order `n`.
pub fn log_series(pres: &Arc<LiePresentation>, lower: &[TensorElement], n: usize) -> TensorSeries {
    let mut coeffs = vec![TensorElement::zero(pres, 2); n + 1];
    for (k, u) in lower.iter().enumerate() {
        if k < n {
            coeffs[k + 1] = u.clone();
        }
    }
    DeformationSeries::new(coeffs)
}

/// `exp(Σ λᵏ uₖ)` through order `n`.
pub fn exponential_twist(pres: &Arc<LiePresentation>, logs: &[TensorElement], n: usize) -> TwistSeries {
    TwistSeries::exponential(log_series(pres, logs, n)).expect("zero lead")
}

fn check_lower(target: &CoproductMap, lower: &[TensorElement], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPositions(vec![0]));
    }
    if target.truncation() < n {
        return Err(Error::TruncationUnderflow { needed: n, available: target.truncation() });
    }
    if lower.len() + 1 != n {
        return Err(Error::TruncationUnderflow { needed: n - 1, available: lower.len() });
    }
    Ok(())
}

/// Twist equation at order `n`: `[fₙ, Δ₀(x)] = Δₙ(x) − (exp(ad f_{<n}) Δ₀(x))ₙ`.
pub fn twist_equation(target: &CoproductMap, lower: &[TensorElement], n: usize) -> Result<OrderEquation> {
    check_lower(target, lower, n)?;
    let pres = target.presentation();
    let f = log_series(pres, lower, n);
    let base = base_images(pres);
    let mut rhs = Vec::with_capacity(base.len());
    for (g, d0) in base.iter().enumerate() {
        let conj = adjoint_exp(&f, &DeformationSeries::constant(d0.clone(), n))?;
        rhs.push(target.image(g).coeff(n)? - conj.coeff(n)?);
    }
    Ok(OrderEquation { order: n, labels: labels(pres), base, rhs })
}

/// R-matrix equation at order `n`:
/// `[rₙ, Δ₀(x)] = Δᵀₙ(x) − (exp(ad r_{<n}) Δ(x))ₙ`.
pub fn rmatrix_equation(delta: &CoproductMap, lower: &[TensorElement], n: usize) -> Result<OrderEquation> {
    check_lower(delta, lower, n)?;
    let pres = delta.presentation();
    let r = log_series(pres, lower, n);
    let base = base_images(pres);
    let mut rhs = Vec::with_capacity(base.len());
    for g in 0..pres.len() {
        let img = series_truncate(delta.image(g), n)?;
        let conj = adjoint_exp(&r, &img)?;
        rhs.push(&flip(img.coeff(n)?)? - conj.coeff(n)?);
    }
    Ok(OrderEquation { order: n, labels: labels(pres), base, rhs })
}

fn run(equation: OrderEquation, pres: &Arc<LiePresentation>, constraints: AnsatzConstraints) -> OrderResult {
    let system = equation.system(ansatz_basis(pres, &constraints));
    let outcome = solve_linear(&system);
    let verification = verify_outcome(&outcome, &system);
    OrderResult { equation, constraints, system, outcome, verification, antisymmetric: None }
}

/// Solves for `fₙ` given verified `f₁ … f_{n−1}`.
pub fn solve_twist_order(
    target: &CoproductMap,
    lower: &[TensorElement],
    n: usize,
    constraints: AnsatzConstraints,
) -> Result<OrderResult> {
    let equation = twist_equation(target, lower, n)?;
    Ok(run(equation, target.presentation(), constraints))
}

/// Solves for `rₙ` given `r₁ … r_{n−1}`. With `antisymmetric`, the
/// particular solution is taken antisymmetric when such a solution exists;
/// the kernel reported is that of the unconstrained system.
pub fn solve_rmatrix_order(
    delta: &CoproductMap,
    lower: &[TensorElement],
    n: usize,
    constraints: AnsatzConstraints,
    antisymmetric: bool,
) -> Result<OrderResult> {
    let equation = rmatrix_equation(delta, lower, n)?;
    let mut result = run(equation, delta.presentation(), constraints);
    if antisymmetric && result.outcome.is_solution() {
        let sys = &result.system;
        let mut labels = result.equation.labels.clone();
        labels.push("antisymmetry".to_string());
        let images = sys
            .unknowns
            .iter()
            .map(|u| {
                let mut col = result.equation.images(u);
                col.push(u + &flip(u).expect("two legs"));
                col
            })
            .collect();
        let mut rhs = result.equation.rhs.clone();
        rhs.push(TensorElement::zero(delta.presentation(), 2));
        let gauge = LinearSystem::assemble(sys.unknowns.clone(), labels, images, rhs);
        let outcome = solve_linear(&gauge);
        let verification = verify_outcome(&outcome, &gauge);
        result.antisymmetric = Some((gauge, outcome, verification));
    }
    Ok(result)
}

/// Solves orders `1..=n` in sequence, feeding each particular solution
/// into the next order. Stops at the first obstruction.
pub fn solve_twist_through(
    target: &CoproductMap,
    n: usize,
    constraints: impl Fn(usize) -> AnsatzConstraints,
) -> Result<Vec<OrderResult>> {
    let mut lower = Vec::new();
    let mut out = Vec::new();
    for k in 1..=n {
        let res = solve_twist_order(target, &lower, k, constraints(k))?;
        let next = res.particular().cloned();
        out.push(res);
        match next {
            Some(p) => lower.push(p),
            None => break,
        }
    }
    Ok(out)
}

/// R-matrix counterpart of [`solve_twist_through`], antisymmetric gauge.
pub fn solve_rmatrix_through(
    delta: &CoproductMap,
    n: usize,
    constraints: impl Fn(usize) -> AnsatzConstraints,
) -> Result<Vec<OrderResult>> {
    let mut lower = Vec::new();
    let mut out = Vec::new();
    for k in 1..=n {
        let res = solve_rmatrix_order(delta, &lower, k, constraints(k), true)?;
        let next = res.particular().cloned();
        out.push(res);
        match next {
            Some(p) => lower.push(p),
            None => break,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{d2_presentation, model_d2};
    use crate::scalar::GaussianRational;

    fn pure(pres: &Arc<LiePresentation>, a: &str, b: &str) -> TensorElement {
        let g = |n: &str| if n == "1" { AlgebraElement::one(pres) } else { AlgebraElement::named(pres, n) };
        TensorElement::pure(&[&g(a), &g(b)])
    }

    #[test]
    fn primitive_targets_give_zero_twist() {
        let pres = d2_presentation();
        let delta = CoproductMap::primitive(&pres, 1);
        let res = solve_twist_order(&delta, &[], 1, AnsatzConstraints::for_order(1)).unwrap();
        assert!(res.verification.passed);
        assert!(res.particular().unwrap().is_zero());
        for k in res.kernel() {
            assert!(res.equation.base.iter().all(|d| tensor_commutator(k, d).unwrap().is_zero()));
        }
    }

    #[test]
    fn d2_first_order_twist_and_rmatrix() {
        let m = model_d2(1);
        let pres = &m.presentation;
        let f1 = pure(pres, "P1", "N").scale(&-GaussianRational::i());
        let res = solve_twist_order(&m.target_coproducts, &[], 1, AnsatzConstraints::for_order(1)).unwrap();
        assert!(res.verification.passed);
        assert!(res.admits(&f1));
        let r = solve_rmatrix_order(&m.target_coproducts, &[], 1, AnsatzConstraints::for_order(1), true).unwrap();
        let r1 = (&pure(pres, "P1", "N") - &pure(pres, "N", "P1")).scale(&GaussianRational::i());
        assert!(r.admits(&r1));
        let p = r.particular().unwrap();
        assert_eq!(&flip(p).unwrap(), &-p);
    }
}
