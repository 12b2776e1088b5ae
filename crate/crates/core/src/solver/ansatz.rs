//! Finite graded ansatz spaces of two-leg tensors.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Grade, LiePresentation, PbwMonomial};
use crate::hopf::primitive_coproduct;
use crate::scalar::GaussianRational;
use crate::solver::linear::{solve_linear, LinearSystem, SolveOutcome};
use crate::tensor::{tensor_commutator, TensorElement};

/// Bounds defining a finite ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnsatzConstraints {
    /// Total number of momentum factors per tensor term.
    pub momentum_degree: usize,
    /// Cap on the number of rotation and boost factors per tensor term.
    pub lorentz_degree_max: usize,
    /// Cap on the word length of each leg.
    pub max_word_length: usize,
    /// Keep only combinations commuting with `Δ₀` of every rotation.
    pub o3_invariant: bool,
}

impl AnsatzConstraints {
    /// The defaults at order `n`: Lorentz count ≤ 1, word length ≤ n + 1.
    pub fn for_order(n: usize) -> Self {
        AnsatzConstraints { momentum_degree: n, lorentz_degree_max: 1, max_word_length: n + 1, o3_invariant: false }
    }

    pub fn with_bounds(mut self, lorentz_max: Option<usize>, word_max: Option<usize>) -> Self {
        if let Some(l) = lorentz_max {
            self.lorentz_degree_max = l;
        }
        if let Some(w) = word_max {
            self.max_word_length = w;
        }
        self
    }

    pub fn o3(mut self, on: bool) -> Self {
        self.o3_invariant = on;
        self
    }
}

/// All PBW monomials with at most `max_len` factors, `max_mom` momenta and
/// `max_lor` Lorentz generators.
pub fn leg_monomials(pres: &LiePresentation, max_len: usize, max_mom: usize, max_lor: usize) -> Vec<PbwMonomial> {
    fn grow(
        pres: &LiePresentation,
        start: usize,
        current: &mut Vec<usize>,
        budget: (usize, usize, usize),
        out: &mut Vec<PbwMonomial>,
    ) {
        out.push(PbwMonomial::from_factors(current.clone()));
        let (len, mom, lor) = budget;
        if len == 0 {
            return;
        }
        for g in start..pres.len() {
            let is_mom = pres.grade(g) == Grade::Momentum;
            if (is_mom && mom == 0) || (!is_mom && lor == 0) {
                continue;
            }
            current.push(g);
            let next = if is_mom { (len - 1, mom - 1, lor) } else { (len - 1, mom, lor - 1) };
            grow(pres, g, current, next, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    grow(pres, 0, &mut Vec::new(), (max_len, max_mom, max_lor), &mut out);
    out
}

/// Deterministic enumeration of the ansatz: tensor monomials ordered by
/// total word length, then by the PBW order of the legs. With
/// `o3_invariant`, a basis of the rotation-invariant subspace instead.
pub fn ansatz_basis(pres: &Arc<LiePresentation>, c: &AnsatzConstraints) -> Vec<TensorElement> {
    let legs = leg_monomials(pres, c.max_word_length, c.momentum_degree, c.lorentz_degree_max);
    let mut keys = Vec::new();
    for a in &legs {
        for b in &legs {
            let mom = pres.momentum_degree(a) + pres.momentum_degree(b);
            let lor = pres.lorentz_degree(a) + pres.lorentz_degree(b);
            if mom == c.momentum_degree && lor <= c.lorentz_degree_max {
                keys.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    keys.sort_by(|x, y| (x[0].len() + x[1].len()).cmp(&(y[0].len() + y[1].len())).then_with(|| x.cmp(y)));
    let basis: Vec<TensorElement> =
        keys.into_iter().map(|k| TensorElement::monomial(pres, k, GaussianRational::one())).collect();
    if c.o3_invariant {
        rotation_invariants(pres, basis)
    } else {
        basis
    }
}

/// Kernel of `u ↦ ([u, Δ₀(M_j)])_j` inside the span of `basis`.
pub fn rotation_invariants(pres: &Arc<LiePresentation>, basis: Vec<TensorElement>) -> Vec<TensorElement> {
    let rotations: Vec<usize> = (0..pres.len()).filter(|&g| pres.grade(g) == Grade::Rotation).collect();
    if rotations.is_empty() || basis.is_empty() {
        return basis;
    }
    let deltas: Vec<TensorElement> =
        rotations.iter().map(|&g| primitive_coproduct(&crate::algebra::AlgebraElement::generator(pres, g))).collect();
    let images =
        basis.iter().map(|u| deltas.iter().map(|d| tensor_commutator(u, d).expect("two legs")).collect()).collect();
    let labels = rotations.iter().map(|&g| pres.generator(g).name.clone()).collect();
    let zero = TensorElement::zero(pres, 2);
    let sys = LinearSystem::assemble(basis, labels, images, vec![zero; rotations.len()]);
    match solve_linear(&sys) {
        SolveOutcome::Solution { kernel_basis, .. } => kernel_basis,
        SolveOutcome::Obstruction { .. } => unreachable!("homogeneous systems are consistent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::models::{d2_presentation, d4_presentation};

    #[test]
    fn degree_zero_is_unit() {
        let pres = d2_presentation();
        let c =
            AnsatzConstraints { momentum_degree: 0, lorentz_degree_max: 0, max_word_length: 3, o3_invariant: false };
        assert_eq!(ansatz_basis(&pres, &c), vec![TensorElement::unit(&pres, 2)]);
    }

    #[test]
    fn d2_order_two_contains_expected_terms() {
        let pres = d2_presentation();
        let basis = ansatz_basis(&pres, &AnsatzConstraints::for_order(2));
        let g = |n| AlgebraElement::named(&pres, n);
        for (a, b) in [
            (&g("P0") * &g("P0"), g("N")),
            (&g("P1") * &g("P1"), g("N")),
            (&g("P0") * &g("P1"), g("N")),
            (g("P1"), &g("P0") * &g("N")),
            (g("P0"), &g("P1") * &g("N")),
        ] {
            assert!(basis.contains(&TensorElement::pure(&[&a, &b])), "{a} # {b}");
        }
        for u in &basis {
            assert!(u.terms().keys().all(|k| k[0].len() <= 3 && k[1].len() <= 3));
        }
    }

    #[test]
    fn d4_invariants_contain_boost_pairing() {
        let pres = d4_presentation();
        let c = AnsatzConstraints::for_order(1).o3(true);
        let basis = ansatz_basis(&pres, &c);
        let sum = (1..=3).fold(TensorElement::zero(&pres, 2), |acc, k| {
            let p = AlgebraElement::named(&pres, &format!("P{k}"));
            let n = AlgebraElement::named(&pres, &format!("N{k}"));
            &acc + &TensorElement::pure(&[&p, &n])
        });
        // The invariant Σ Pᵢ⊗Nᵢ lies in the span: adding it does not raise the rank.
        let labels = vec!["span".to_string()];
        let images = basis.iter().map(|u| vec![u.clone()]).collect();
        let sys = LinearSystem::assemble(basis.clone(), labels, images, vec![sum]);
        assert!(solve_linear(&sys).is_solution());
        let deltas: Vec<TensorElement> =
            (1..=3).map(|k| primitive_coproduct(&AlgebraElement::named(&pres, &format!("M{k}")))).collect();
        for u in &basis {
            for d in &deltas {
                assert!(tensor_commutator(u, d).unwrap().is_zero());
            }
        }
    }
}
