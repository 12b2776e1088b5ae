//! Residue-valued checks of Hopf and quasi-Hopf identities.
//!
//! Every check returns the full left-minus-right residue per label and per
//! order, so a failure carries its own evidence.

use serde::Serialize;

use crate::algebra::{commutator, AlgebraElement};
use crate::error::Result;
use crate::hopf::coproduct::CoproductMap;
use crate::hopf::twist::embed_series;
use crate::series::{series_inv, series_mul, series_truncate, TensorSeries};
use crate::tensor::{flip, permute, LegPermutation, TensorElement};

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueEntry {
    pub label: String,
    pub order: usize,
    pub residue: TensorElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residues {
    pub check: String,
    pub truncation: usize,
    pub entries: Vec<ResidueEntry>,
}

/// Serializable summary, one line per nonzero residue.
#[derive(Debug, Clone, Serialize)]
pub struct ResidueSummary {
    pub label: String,
    pub order: usize,
    pub residue: String,
}

impl Residues {
    pub(crate) fn new(check: &str) -> Self {
        Residues { check: check.to_string(), truncation: usize::MAX, entries: Vec::new() }
    }

    pub(crate) fn record(&mut self, label: &str, residue: &TensorSeries) {
        self.truncation = self.truncation.min(residue.truncation());
        for (order, c) in residue.coeffs().iter().enumerate() {
            if !c.is_zero() {
                self.entries.push(ResidueEntry { label: label.to_string(), order, residue: c.clone() });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.is_empty()
    }

    /// Residues at one order only.
    pub fn at_order(&self, order: usize) -> impl Iterator<Item = &ResidueEntry> {
        self.entries.iter().filter(move |e| e.order == order)
    }

    pub fn passed_through(&self, order: usize) -> bool {
        self.truncation >= order && self.entries.iter().all(|e| e.order > order)
    }

    pub fn summary(&self) -> Vec<ResidueSummary> {
        self.entries
            .iter()
            .map(|e| ResidueSummary { label: e.label.clone(), order: e.order, residue: e.residue.to_string() })
            .collect()
    }

    /// Merges several residue sets under one name.
    pub fn combine(check: &str, parts: impl IntoIterator<Item = Residues>) -> Residues {
        let mut out = Residues::new(check);
        for p in parts {
            out.truncation = out.truncation.min(p.truncation);
            out.entries.extend(p.entries.into_iter().map(|mut e| {
                e.label = format!("{}: {}", p.check, e.label);
                e
            }));
        }
        out
    }
}

fn gen_name(delta: &CoproductMap, g: usize) -> String {
    delta.presentation().generator(g).name.clone()
}

fn flip_series(s: &TensorSeries) -> TensorSeries {
    s.map(|t| flip(t).expect("two legs"))
}

/// `Δᵀ(x)·R − R·Δ(x)` for every generator.
pub fn check_intertwiner(r: &TensorSeries, delta: &CoproductMap) -> Result<Residues> {
    let mut out = Residues::new("intertwiner");
    for (g, img) in delta.images().iter().enumerate() {
        let left = series_mul(&flip_series(img), r)?;
        let right = series_mul(r, img)?;
        out.record(&gen_name(delta, g), &left.sub(&right)?);
    }
    Ok(out)
}

fn iterated(delta: &CoproductMap, g: usize) -> Result<(TensorSeries, TensorSeries)> {
    let img = delta.image(g);
    Ok((delta.apply_on_leg(img, 1)?, delta.apply_on_leg(img, 0)?))
}

/// `(id⊗Δ)Δ(x) − (Δ⊗id)Δ(x)` for every generator.
pub fn check_coassociativity(delta: &CoproductMap) -> Result<Residues> {
    let mut out = Residues::new("coassociativity");
    for g in 0..delta.images().len() {
        let (right_leg, left_leg) = iterated(delta, g)?;
        out.record(&gen_name(delta, g), &right_leg.sub(&left_leg)?);
    }
    Ok(out)
}

/// `((id⊗Δ)Δ(x))·φ − φ·((Δ⊗id)Δ(x))` for every generator.
pub fn check_quasi_coassoc(delta: &CoproductMap, phi: &TensorSeries) -> Result<Residues> {
    let mut out = Residues::new("quasi-coassociativity");
    for g in 0..delta.images().len() {
        let (right_leg, left_leg) = iterated(delta, g)?;
        let residue = series_mul(&right_leg, phi)?.sub(&series_mul(phi, &left_leg)?)?;
        out.record(&gen_name(delta, g), &residue);
    }
    Ok(out)
}

/// `Δ([x, y]) − [Δ(x), Δ(y)]` for every generator pair `x < y`.
pub fn check_homomorphism(delta: &CoproductMap) -> Result<Residues> {
    let pres = delta.presentation();
    let mut out = Residues::new("homomorphism");
    for a in 0..pres.len() {
        for b in a + 1..pres.len() {
            let bracket = commutator(&AlgebraElement::generator(pres, a), &AlgebraElement::generator(pres, b))?;
            let left = delta.apply(&bracket)?;
            let (da, db) = (delta.image(a), delta.image(b));
            let right = series_mul(da, db)?.sub(&series_mul(db, da)?)?;
            out.record(&format!("[{}, {}]", gen_name(delta, a), gen_name(delta, b)), &left.sub(&right)?);
        }
    }
    Ok(out)
}

/// Subscript placement of a three-leg series, e.g. `sub(φ, [3, 1, 2])`
/// for `φ₃₁₂`.
pub fn subscript3(phi: &TensorSeries, subscripts: [usize; 3]) -> Result<TensorSeries> {
    let sigma = LegPermutation::new(subscripts.to_vec())?;
    phi.try_map(|t| permute(t, &sigma))
}

struct QuasiData {
    r12: TensorSeries,
    r13: TensorSeries,
    r23: TensorSeries,
    phi: TensorSeries,
    phi_inv: TensorSeries,
}

impl QuasiData {
    fn new(r: &TensorSeries, phi: &TensorSeries) -> Result<Self> {
        let n = r.truncation().min(phi.truncation());
        let r = series_truncate(r, n)?;
        let phi = series_truncate(phi, n)?;
        Ok(QuasiData {
            r12: embed_series(&r, &[1, 2], 3)?,
            r13: embed_series(&r, &[1, 3], 3)?,
            r23: embed_series(&r, &[2, 3], 3)?,
            phi_inv: series_inv(&phi)?,
            phi,
        })
    }

    fn phi(&self, s: [usize; 3]) -> Result<TensorSeries> {
        subscript3(&self.phi, s)
    }

    fn phi_inv(&self, s: [usize; 3]) -> Result<TensorSeries> {
        subscript3(&self.phi_inv, s)
    }
}

fn product(factors: &[&TensorSeries]) -> Result<TensorSeries> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = series_mul(&acc, f)?;
    }
    Ok(acc)
}

/// The two quasitriangularity identities
/// `(Δ⊗id)(R) = φ₃₁₂ R₁₃ φ₁₃₂⁻¹ R₂₃ φ₁₂₃` and
/// `(id⊗Δ)(R) = φ₂₃₁⁻¹ R₁₃ φ₂₁₃ R₁₂ φ₁₂₃⁻¹`.
pub fn check_quasitriangularity(r: &TensorSeries, phi: &TensorSeries, delta: &CoproductMap) -> Result<Residues> {
    let d = QuasiData::new(r, phi)?;
    let mut out = Residues::new("quasitriangularity");
    let lhs_a = delta.apply_on_leg(r, 0)?;
    let rhs_a = product(&[&d.phi([3, 1, 2])?, &d.r13, &d.phi_inv([1, 3, 2])?, &d.r23, &d.phi([1, 2, 3])?])?;
    out.record("(Δ⊗id)(R)", &lhs_a.sub(&rhs_a)?);
    let lhs_b = delta.apply_on_leg(r, 1)?;
    let rhs_b = product(&[&d.phi_inv([2, 3, 1])?, &d.r13, &d.phi([2, 1, 3])?, &d.r12, &d.phi_inv([1, 2, 3])?])?;
    out.record("(id⊗Δ)(R)", &lhs_b.sub(&rhs_b)?);
    Ok(out)
}

/// `R₁₂ φ₃₁₂ R₁₃ φ₁₃₂⁻¹ R₂₃ φ₁₂₃ − φ₃₂₁ R₂₃ φ₂₃₁⁻¹ R₁₃ φ₂₁₃ R₁₂`.
pub fn check_modified_ybe(r: &TensorSeries, phi: &TensorSeries) -> Result<Residues> {
    let d = QuasiData::new(r, phi)?;
    let lhs = product(&[&d.r12, &d.phi([3, 1, 2])?, &d.r13, &d.phi_inv([1, 3, 2])?, &d.r23, &d.phi([1, 2, 3])?])?;
    let rhs = product(&[&d.phi([3, 2, 1])?, &d.r23, &d.phi_inv([2, 3, 1])?, &d.r13, &d.phi([2, 1, 3])?, &d.r12])?;
    let mut out = Residues::new("modified-ybe");
    out.record("YBE", &lhs.sub(&rhs)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{d2_presentation, d4_presentation};
    use crate::series::DeformationSeries;

    #[test]
    fn primitive_passes_everything() {
        for pres in [d2_presentation(), d4_presentation()] {
            let delta = CoproductMap::primitive(&pres, 2);
            assert!(check_coassociativity(&delta).unwrap().passed());
            assert!(check_homomorphism(&delta).unwrap().passed());
            let r = DeformationSeries::one(&TensorElement::unit(&pres, 2), 2);
            let phi = DeformationSeries::one(&TensorElement::unit(&pres, 3), 2);
            assert!(check_intertwiner(&r, &delta).unwrap().passed());
            assert!(check_quasi_coassoc(&delta, &phi).unwrap().passed());
            assert!(check_quasitriangularity(&r, &phi, &delta).unwrap().passed());
            assert!(check_modified_ybe(&r, &phi).unwrap().passed());
        }
    }
}
