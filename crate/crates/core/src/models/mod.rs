//! Built-in κ-Poincaré data in the classical basis, D=2 and D=4.
//!
//! Generators are declared momenta first, then rotations, then boosts, so
//! PBW monomials print as `P0*N`, never `N*P0`.

mod maps;

use std::sync::{Arc, OnceLock};

use crate::algebra::{AlgebraElement, Grade, LiePresentation};
use crate::error::{Error, Result};
use crate::hopf::CoproductMap;
use crate::scalar::GaussianRational;
use crate::series::{
    algebra_tensor, series_add, series_inv, series_mul, series_sqrt, AlgebraSeries, DeformationSeries, TensorSeries,
};

pub use maps::{bicross_verify, casimir_centrality, deformed_casimir, inverse_map_check, quantum_map, QuantumMap};

fn i_times(k: i64) -> GaussianRational {
    GaussianRational::from_parts((0, 1), (k, 1))
}

/// Two candidate closed forms for the order-2 R-matrix logarithm of
/// d2-classical, which differ by the sign of the second wedge.
pub const D2_R2_CANDIDATES: [(&str, &str); 2] =
    [("plus", "1/2*i*(N /\\ P1*P0 + N*P0 /\\ P1)"), ("minus", "1/2*i*(N /\\ P1*P0 - N*P0 /\\ P1)")];

/// Levi-Civita symbol on `{1, 2, 3}`.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// `P0, P1, N` with `[P0,P1] = 0`, `[N,P0] = iP1`, `[N,P1] = iP0`.
pub fn d2_presentation() -> Arc<LiePresentation> {
    static PRES: OnceLock<Arc<LiePresentation>> = OnceLock::new();
    PRES.get_or_init(|| {
        let gens = vec![("P0".into(), Grade::Momentum), ("P1".into(), Grade::Momentum), ("N".into(), Grade::Boost)];
        let brackets = vec![((2, 0), vec![(1, i_times(1))]), ((2, 1), vec![(0, i_times(1))])];
        Arc::new(LiePresentation::new("d2-classical", gens, brackets).expect("static presentation"))
    })
    .clone()
}

/// D=4 Poincaré: `P0..P3`, `M1..M3`, `N1..N3`.
pub fn d4_presentation() -> Arc<LiePresentation> {
    static PRES: OnceLock<Arc<LiePresentation>> = OnceLock::new();
    PRES.get_or_init(|| {
        let mut gens: Vec<(String, Grade)> = (0..4).map(|k| (format!("P{k}"), Grade::Momentum)).collect();
        gens.extend((1..=3).map(|k| (format!("M{k}"), Grade::Rotation)));
        gens.extend((1..=3).map(|k| (format!("N{k}"), Grade::Boost)));
        let p = |k: usize| k;
        let m = |k: usize| 3 + k;
        let n = |k: usize| 6 + k;
        let eps_sum = |i: usize,
                       j: usize,
                       target: &dyn Fn(usize) -> usize,
                       sign: i64|
         -> Vec<(usize, GaussianRational)> {
            (1..=3).filter(|&k| epsilon(i, j, k) != 0).map(|k| (target(k), i_times(sign * epsilon(i, j, k)))).collect()
        };
        let mut brackets = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if i < j {
                    brackets.push(((m(i), m(j)), eps_sum(i, j, &m, 1)));
                    brackets.push(((n(i), n(j)), eps_sum(i, j, &n_as_m, -1)));
                }
                brackets.push(((m(i), n(j)), eps_sum(i, j, &n, 1)));
                // [M_j, P_k] = i ε_{jki} P_i
                brackets.push(((m(i), p(j)), eps_sum(i, j, &p, 1)));
                // [N_i, P_j] = i δ_ij P0
                if i == j {
                    brackets.push(((n(i), p(j)), vec![(p(0), i_times(1))]));
                }
            }
            brackets.push(((n(i), p(0)), vec![(p(i), i_times(1))]));
        }
        fn n_as_m(k: usize) -> usize {
            3 + k
        }
        Arc::new(LiePresentation::new("d4-classical", gens, brackets).expect("static presentation"))
    })
    .clone()
}

/// Identifier of a built-in model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    D2Classical,
    D4Classical,
}

impl ModelId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d2-classical" | "d2" => Ok(ModelId::D2Classical),
            "d4-classical" | "d4" => Ok(ModelId::D4Classical),
            other => Err(Error::Unsupported(format!("unknown model `{other}` (d2-classical, d4-classical)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::D2Classical => "d2-classical",
            ModelId::D4Classical => "d4-classical",
        }
    }

    /// Truncation used when none is requested.
    pub fn default_order(self) -> usize {
        match self {
            ModelId::D2Classical => 3,
            ModelId::D4Classical => 2,
        }
    }

    pub fn build(self, order: usize) -> KappaModel {
        match self {
            ModelId::D2Classical => model_d2(order),
            ModelId::D4Classical => model_d4(order),
        }
    }
}

/// κ-Poincaré in the classical basis, expanded through `truncation`.
#[derive(Debug, Clone)]
pub struct KappaModel {
    pub id: ModelId,
    pub presentation: Arc<LiePresentation>,
    pub truncation: usize,
    /// `P0`
    pub energy: usize,
    /// `P1` (D=2) or `P1, P2, P3`
    pub spatial: Vec<usize>,
    pub rotations: Vec<usize>,
    pub boosts: Vec<usize>,
    /// `C₀ = −P0² + P⃗²`
    pub casimir0: AlgebraElement,
    pub pi0: AlgebraSeries,
    pub pi0_inv: AlgebraSeries,
    pub target_coproducts: CoproductMap,
    /// Sign of the `P ⊗ M` term in `Δ(Nᵢ)`; `1` except for the comparison
    /// variant, irrelevant in D=2.
    pub rotation_sign: i64,
}

impl KappaModel {
    pub fn generator(&self, index: usize) -> AlgebraElement {
        AlgebraElement::generator(&self.presentation, index)
    }

    pub fn constant(&self, a: AlgebraElement) -> AlgebraSeries {
        DeformationSeries::constant(a, self.truncation)
    }

    /// `P⃗² = Σ Pᵢ²`.
    pub fn spatial_square(&self) -> AlgebraElement {
        self.spatial.iter().fold(AlgebraElement::zero(&self.presentation), |acc, &k| {
            let p = self.generator(k);
            &acc + &(&p * &p)
        })
    }

    pub fn opposite_coproducts(&self) -> CoproductMap {
        self.target_coproducts.opposite()
    }

    /// Rebuilds the same model at another truncation.
    pub fn at_order(&self, order: usize) -> KappaModel {
        match self.id {
            ModelId::D2Classical => model_d2(order),
            ModelId::D4Classical => model_d4_with_rotation_sign(order, self.rotation_sign),
        }
    }
}

fn casimir0(pres: &Arc<LiePresentation>, energy: usize, spatial: &[usize]) -> AlgebraElement {
    let p0 = AlgebraElement::generator(pres, energy);
    let mut c = -&(&p0 * &p0);
    for &k in spatial {
        let p = AlgebraElement::generator(pres, k);
        c = &c + &(&p * &p);
    }
    c
}

/// `Π₀ = λP0 + √(1 − λ²C₀)` and its series inverse, through order `n`.
pub fn pi0_series(
    pres: &Arc<LiePresentation>,
    energy: usize,
    c0: &AlgebraElement,
    n: usize,
) -> (AlgebraSeries, AlgebraSeries) {
    let one = AlgebraElement::one(pres);
    let mut under_root = DeformationSeries::one(&one, n);
    if n >= 2 {
        under_root = series_add(&under_root, &DeformationSeries::monomial(-c0, 2, n)).expect("same presentation");
    }
    let root = series_sqrt(&under_root).expect("unit lead");
    let pi0 = series_add(&root, &DeformationSeries::monomial(AlgebraElement::generator(pres, energy), 1, n))
        .expect("same presentation");
    let pi0_inv = series_inv(&pi0).expect("unit lead");
    (pi0, pi0_inv)
}

fn lam(a: AlgebraElement, n: usize) -> AlgebraSeries {
    DeformationSeries::monomial(a, 1, n)
}

fn cst(a: AlgebraElement, n: usize) -> AlgebraSeries {
    DeformationSeries::constant(a, n)
}

fn sum(parts: Vec<TensorSeries>) -> TensorSeries {
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |a, b| series_add(&a, &b).expect("same shape"))
}

pub fn model_d2(n: usize) -> KappaModel {
    let pres = d2_presentation();
    let (e, p1, nb) = (0, 1, 2);
    let c0 = casimir0(&pres, e, &[p1]);
    let (pi0, pi0_inv) = pi0_series(&pres, e, &c0, n);
    let g = |k| AlgebraElement::generator(&pres, k);
    let one = AlgebraElement::one(&pres);
    let p1_pi_inv = series_mul(&lam(g(p1), n), &pi0_inv).unwrap();
    let dp0 = sum(vec![
        algebra_tensor(&cst(g(e), n), &pi0),
        algebra_tensor(&pi0_inv, &cst(g(e), n)),
        algebra_tensor(&p1_pi_inv, &cst(g(p1), n)),
    ]);
    let dp1 = sum(vec![algebra_tensor(&cst(g(p1), n), &pi0), algebra_tensor(&cst(one.clone(), n), &cst(g(p1), n))]);
    let dn = sum(vec![algebra_tensor(&cst(g(nb), n), &cst(one, n)), algebra_tensor(&pi0_inv, &cst(g(nb), n))]);
    let target = CoproductMap::new(pres.clone(), vec![dp0, dp1, dn]).expect("three images");
    KappaModel {
        id: ModelId::D2Classical,
        presentation: pres,
        truncation: n,
        energy: e,
        spatial: vec![p1],
        rotations: vec![],
        boosts: vec![nb],
        casimir0: c0,
        pi0,
        pi0_inv,
        target_coproducts: target,
        rotation_sign: 1,
    }
}

/// D=4 with `Δ(Nᵢ) = Nᵢ⊗1 + Π₀⁻¹⊗Nᵢ + λ ε_{ikj} P_k Π₀⁻¹ ⊗ M_j`, the sign
/// for which `Δ` is a homomorphism of the bracket table above.
pub fn model_d4(n: usize) -> KappaModel {
    model_d4_with_rotation_sign(n, 1)
}

/// D=4 with the rotation term of `Δ(Nᵢ)` taken as
/// `sign · λ ε_{ikj} P_k Π₀⁻¹ ⊗ M_j`. Only `sign = 1` gives a homomorphism;
/// `sign = -1` is kept for comparison with the opposite convention.
pub fn model_d4_with_rotation_sign(n: usize, sign: i64) -> KappaModel {
    let pres = d4_presentation();
    let e = 0;
    let spatial = vec![1, 2, 3];
    let rotations = vec![4, 5, 6];
    let boosts = vec![7, 8, 9];
    let c0 = casimir0(&pres, e, &spatial);
    let (pi0, pi0_inv) = pi0_series(&pres, e, &c0, n);
    let g = |k| AlgebraElement::generator(&pres, k);
    let one = AlgebraElement::one(&pres);
    let p_pi_inv = |k: usize| series_mul(&lam(g(k), n), &pi0_inv).unwrap();

    let mut images = Vec::with_capacity(10);
    let mut dp0 = vec![algebra_tensor(&cst(g(e), n), &pi0), algebra_tensor(&pi0_inv, &cst(g(e), n))];
    for &k in &spatial {
        dp0.push(algebra_tensor(&p_pi_inv(k), &cst(g(k), n)));
    }
    images.push(sum(dp0));
    for &k in &spatial {
        images
            .push(sum(vec![algebra_tensor(&cst(g(k), n), &pi0), algebra_tensor(&cst(one.clone(), n), &cst(g(k), n))]));
    }
    for &m in &rotations {
        images.push(sum(vec![
            algebra_tensor(&cst(g(m), n), &cst(one.clone(), n)),
            algebra_tensor(&cst(one.clone(), n), &cst(g(m), n)),
        ]));
    }
    for i in 1..=3 {
        let mut parts = vec![
            algebra_tensor(&cst(g(boosts[i - 1]), n), &cst(one.clone(), n)),
            algebra_tensor(&pi0_inv, &cst(g(boosts[i - 1]), n)),
        ];
        // sign · λ ε_{ikj} P_k Π₀⁻¹ ⊗ M_j
        for k in 1..=3 {
            for j in 1..=3 {
                let eps = epsilon(i, k, j);
                if eps != 0 {
                    let t = algebra_tensor(&p_pi_inv(spatial[k - 1]), &cst(g(rotations[j - 1]), n));
                    parts.push(t.scale(&GaussianRational::integer(sign * eps)));
                }
            }
        }
        images.push(sum(parts));
    }
    let target = CoproductMap::new(pres.clone(), images).expect("ten images");
    KappaModel {
        id: ModelId::D4Classical,
        presentation: pres,
        truncation: n,
        energy: e,
        spatial,
        rotations,
        boosts,
        casimir0: c0,
        pi0,
        pi0_inv,
        target_coproducts: target,
        rotation_sign: sign,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_presentation;

    #[test]
    fn presentations_satisfy_jacobi() {
        assert!(validate_presentation(&d2_presentation()).passed());
        let report = validate_presentation(&d4_presentation());
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn casimir_is_central() {
        for m in [model_d2(0), model_d4(0)] {
            for g in 0..m.presentation.len() {
                let c = crate::algebra::commutator(&m.generator(g), &m.casimir0).unwrap();
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn pi0_inverse_property() {
        for n in 0..=4 {
            let m = model_d2(n);
            let prod = series_mul(&m.pi0, &m.pi0_inv).unwrap();
            assert_eq!(prod, DeformationSeries::one(&AlgebraElement::one(&m.presentation), n));
        }
    }

    #[test]
    fn unknown_model_rejected() {
        assert!(ModelId::parse("d3").is_err());
        assert_eq!(ModelId::parse("d4-classical").unwrap(), ModelId::D4Classical);
    }
}
