//! Quantum map to the bicrossproduct basis, its inverse, the bicrossproduct
//! relations and the deformed mass Casimir, all as λ-series.

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::hopf::{CoproductMap, Residues};
use crate::models::{epsilon, pi0_series, KappaModel, ModelId};
use crate::scalar::GaussianRational;
use crate::series::{
    algebra_tensor, kappa_times, series_add, series_exp, series_log, series_mul, series_truncate, AlgebraSeries,
    DeformationSeries, TensorSeries,
};

/// `𝒫₀ = κ log Π₀` and `𝒫ᵢ = Pᵢ Π₀⁻¹`.
#[derive(Debug, Clone)]
pub struct QuantumMap {
    /// `𝒫₀/κ = log Π₀`, known one order further than `curly_p0`.
    pub log_pi0: AlgebraSeries,
    pub curly_p0: AlgebraSeries,
    pub curly_p: Vec<AlgebraSeries>,
}

impl QuantumMap {
    pub fn truncation(&self) -> usize {
        self.curly_p0.truncation()
    }

    /// `exp(k·𝒫₀/κ)` for integer `k`, through `N + 1`.
    pub fn exp_multiple(&self, k: i64) -> AlgebraSeries {
        series_exp(&self.log_pi0.scale(&GaussianRational::integer(k))).expect("zero lead")
    }
}

/// The quantum map through order `model.truncation`.
pub fn quantum_map(model: &KappaModel) -> Result<QuantumMap> {
    let n = model.truncation;
    let (pi0, pi0_inv) = pi0_series(&model.presentation, model.energy, &model.casimir0, n + 1);
    let log_pi0 = series_log(&pi0)?;
    let curly_p0 = kappa_times(&log_pi0, 1)?;
    let curly_p = model
        .spatial
        .iter()
        .map(|&k| series_truncate(&series_mul(&model.constant_at(k, n + 1), &pi0_inv)?, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuantumMap { log_pi0, curly_p0, curly_p })
}

impl KappaModel {
    fn constant_at(&self, generator: usize, n: usize) -> AlgebraSeries {
        DeformationSeries::constant(self.generator(generator), n)
    }
}

fn record_algebra(out: &mut Residues, label: &str, residue: &AlgebraSeries) {
    out.record(label, &residue.as_tensor());
}

fn comm(a: &AlgebraSeries, b: &AlgebraSeries) -> Result<AlgebraSeries> {
    series_mul(a, b)?.sub(&series_mul(b, a)?)
}

fn trunc(s: &AlgebraSeries, n: usize) -> AlgebraSeries {
    series_truncate(s, n).expect("known through n")
}

fn i_scale(s: &AlgebraSeries, re: (i64, i64), im: (i64, i64)) -> AlgebraSeries {
    s.scale(&GaussianRational::from_parts(re, im))
}

/// Substitutes the quantum map into the inverse map and compares with the
/// classical generators: `Pᵢ = 𝒫ᵢ e^{𝒫₀/κ}` and
/// `P₀ = (κ/2)(e^{𝒫₀/κ} − e^{−𝒫₀/κ}(1 − λ² P⃗²))`.
pub fn inverse_map_check(model: &KappaModel) -> Result<Residues> {
    let n = model.truncation;
    let pres = &model.presentation;
    let (_, pi0_inv) = pi0_series(pres, model.energy, &model.casimir0, n + 1);
    let qm = quantum_map(model)?;
    let e_plus = qm.exp_multiple(1);
    let e_minus = qm.exp_multiple(-1);
    let mut out = Residues::new("inverse quantum map");
    // Pᵢ reconstructed through N + 1 from the untruncated 𝒫ᵢ.
    let mut p_sq = DeformationSeries::zero(&AlgebraElement::one(pres), n + 1);
    for (&k, _) in model.spatial.iter().zip(&qm.curly_p) {
        let curly = series_mul(&model.constant_at(k, n + 1), &pi0_inv)?;
        let rec = series_mul(&curly, &e_plus)?;
        record_algebra(&mut out, &pres.generator(k).name.clone(), &trunc(&rec, n).sub(&model.constant_at(k, n))?);
        p_sq = series_add(&p_sq, &series_mul(&rec, &rec)?)?;
    }
    let one = DeformationSeries::one(&AlgebraElement::one(pres), n + 1);
    let bracket = one.sub(&p_sq.shift_up(2))?;
    let inner = e_plus.sub(&series_mul(&e_minus, &bracket)?)?;
    let p0 = kappa_times(&inner, 1)?.scale(&GaussianRational::rational(1, 2));
    let name = &pres.generator(model.energy).name;
    record_algebra(&mut out, name, &p0.sub(&model.constant_at(model.energy, n))?);
    Ok(out)
}

/// Evaluates every bicrossproduct relation and coproduct with `𝒫` replaced by
/// the quantum map and `Δ` by the model's target coproducts.
pub fn bicross_verify(model: &KappaModel) -> Result<Residues> {
    let n = model.truncation;
    let pres = &model.presentation;
    let qm = quantum_map(model)?;
    let wide = model.at_order(n + 1);
    let g = |k: usize| model.constant_at(k, n);
    let name = |k: usize| pres.generator(k).name.clone();
    let cp = |idx: usize| qm.curly_p[idx].clone();
    let cp0 = qm.curly_p0.clone();
    let e_minus = trunc(&qm.exp_multiple(-1), n);
    // κ(1 − e^{−2𝒫₀/κ}), a genuine series through N.
    let one_wide = DeformationSeries::one(&AlgebraElement::one(pres), n + 1);
    let kappa_one_minus = kappa_times(&one_wide.sub(&qm.exp_multiple(-2))?, 1)?;
    let zero = DeformationSeries::zero(&AlgebraElement::one(pres), n);
    let curly_sq = qm.curly_p.iter().try_fold(zero.clone(), |acc, p| series_add(&acc, &series_mul(p, p)?))?;

    let mut alg = Residues::new("bicrossproduct algebra");
    let dims = model.spatial.len();
    for a in 0..dims {
        record_algebra(&mut alg, &format!("[𝒫0, 𝒫{}]", a + 1), &comm(&cp0, &cp(a))?);
        for b in a + 1..dims {
            record_algebra(&mut alg, &format!("[𝒫{}, 𝒫{}]", a + 1, b + 1), &comm(&cp(a), &cp(b))?);
        }
    }
    for (bi, &boost) in model.boosts.iter().enumerate() {
        let bn = name(boost);
        // [N_j, 𝒫₀] = i 𝒫_j
        let rhs = i_scale(&cp(bi), (0, 1), (1, 1));
        record_algebra(&mut alg, &format!("[{bn}, 𝒫0]"), &comm(&g(boost), &cp0)?.sub(&rhs)?);
        for pj in 0..dims {
            // (i/2) δ_ij [κ(1 − e^{−2𝒫₀/κ}) + λ 𝒫⃗²] − iλ 𝒫_i 𝒫_j
            let mut rhs = i_scale(&series_mul(&cp(bi), &cp(pj))?.shift_up(1), (0, 1), (-1, 1));
            if bi == pj {
                let diag = series_add(&kappa_one_minus, &curly_sq.shift_up(1))?;
                rhs = series_add(&rhs, &i_scale(&diag, (0, 1), (1, 2)))?;
            }
            let lhs = comm(&g(boost), &cp(pj))?;
            record_algebra(&mut alg, &format!("[{bn}, 𝒫{}]", pj + 1), &lhs.sub(&trunc(&rhs, n))?);
        }
    }
    for (ri, &rot) in model.rotations.iter().enumerate() {
        let rn = name(rot);
        record_algebra(&mut alg, &format!("[{rn}, 𝒫0]"), &comm(&g(rot), &cp0)?);
        for pk in 0..dims {
            // [M_j, 𝒫_k] = i ε_{jki} 𝒫_i
            let mut rhs = zero.clone();
            for pi in 0..dims {
                let eps = epsilon(ri + 1, pk + 1, pi + 1);
                if eps != 0 {
                    rhs = series_add(&rhs, &i_scale(&cp(pi), (0, 1), (eps, 1)))?;
                }
            }
            record_algebra(&mut alg, &format!("[{rn}, 𝒫{}]", pk + 1), &comm(&g(rot), &cp(pk))?.sub(&rhs)?);
        }
    }
    lorentz_relations(model, &mut alg)?;

    let mut coalg = Residues::new("bicrossproduct coalgebra");
    let delta: &CoproductMap = &wide.target_coproducts;
    let one = DeformationSeries::one(&AlgebraElement::one(pres), n);
    let prim =
        |s: &AlgebraSeries| -> Result<TensorSeries> { series_add(&algebra_tensor(s, &one), &algebra_tensor(&one, s)) };
    let d_cp0 = kappa_times(&delta.apply_series(&qm.log_pi0)?, 1)?;
    coalg.record("Δ(𝒫0)", &d_cp0.sub(&prim(&cp0)?)?);
    let wide_inv = &wide.pi0_inv;
    for (idx, &k) in model.spatial.iter().enumerate() {
        let curly_wide = series_mul(&model.constant_at(k, n + 1), wide_inv)?;
        let d = series_truncate(&delta.apply_series(&curly_wide)?, n)?;
        let rhs = series_add(&algebra_tensor(&cp(idx), &one), &algebra_tensor(&e_minus, &cp(idx)))?;
        coalg.record(&format!("Δ(𝒫{})", idx + 1), &d.sub(&rhs)?);
    }
    for &rot in &model.rotations {
        let d = series_truncate(delta.image(rot), n)?;
        coalg.record(&format!("Δ({})", name(rot)), &d.sub(&prim(&g(rot))?)?);
    }
    for (bi, &boost) in model.boosts.iter().enumerate() {
        let d = series_truncate(delta.image(boost), n)?;
        let mut rhs = series_add(&algebra_tensor(&g(boost), &one), &algebra_tensor(&e_minus, &g(boost)))?;
        // sign · λ ε_{ijk} 𝒫_j ⊗ M_k
        for j in 0..dims {
            for (k, &rot) in model.rotations.iter().enumerate() {
                let eps = epsilon(bi + 1, j + 1, k + 1);
                if eps != 0 {
                    let t = algebra_tensor(&cp(j).shift_up(1), &g(rot))
                        .scale(&GaussianRational::integer(model.rotation_sign * eps));
                    rhs = series_add(&rhs, &series_truncate(&t, n)?)?;
                }
            }
        }
        coalg.record(&format!("Δ({})", name(boost)), &d.sub(&rhs)?);
    }
    Ok(Residues::combine("bicross", [alg, coalg]))
}

/// The undeformed Lorentz brackets, shared by both bases.
fn lorentz_relations(model: &KappaModel, out: &mut Residues) -> Result<()> {
    let pres = &model.presentation;
    let n = model.truncation;
    let lorentz: Vec<usize> = model.rotations.iter().chain(&model.boosts).copied().collect();
    for (a, &x) in lorentz.iter().enumerate() {
        for &y in &lorentz[a + 1..] {
            let lhs = comm(&model.constant_at(x, n), &model.constant_at(y, n))?;
            let expect = AlgebraElement::from_terms(pres.clone(), pres.bracket(x, y));
            let rhs = DeformationSeries::constant(expect, n);
            record_algebra(out, &format!("[{}, {}]", pres.generator(x).name, pres.generator(y).name), &lhs.sub(&rhs)?);
        }
    }
    Ok(())
}

/// `C = κ²(Π₀ + Π₀⁻¹ − 2 − λ²P₁²Π₀⁻¹)`, D=2 only.
pub fn deformed_casimir(model: &KappaModel) -> Result<AlgebraSeries> {
    if model.id != ModelId::D2Classical {
        return Err(Error::Unsupported("deformed Casimir is only defined for d2-classical".into()));
    }
    let n = model.truncation;
    let pres = &model.presentation;
    let (pi0, pi0_inv) = pi0_series(pres, model.energy, &model.casimir0, n + 2);
    let two = DeformationSeries::constant(AlgebraElement::scalar(pres, GaussianRational::integer(2)), n + 2);
    let p1 = model.generator(model.spatial[0]);
    let p1_sq = DeformationSeries::monomial(&p1 * &p1, 2, n + 2);
    let inner = series_add(&pi0, &pi0_inv)?.sub(&two)?.sub(&series_mul(&p1_sq, &pi0_inv)?)?;
    kappa_times(&inner, 2)
}

/// `[x, C]` for every generator `x`.
pub fn casimir_centrality(model: &KappaModel) -> Result<Residues> {
    let c = deformed_casimir(model)?;
    let mut out = Residues::new("casimir");
    for g in 0..model.presentation.len() {
        let x = model.constant_at(g, model.truncation);
        record_algebra(&mut out, &format!("[{}, C]", model.presentation.generator(g).name), &comm(&x, &c)?);
    }
    Ok(out)
}
