use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, LiePresentation, PbwMonomial};
use crate::error::{Error, Result};
use crate::series::{series_mul, AlgebraSeries, DeformationSeries, TensorSeries};
use crate::tensor::{flip, TensorElement};

/// A coproduct given by its values on generators, as series of two-leg
/// tensors. Values on other elements follow from `Δ(ab) = Δ(a)Δ(b)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoproductMap {
    pres: Arc<LiePresentation>,
    images: Vec<TensorSeries>,
}

impl CoproductMap {
    pub fn new(pres: Arc<LiePresentation>, images: Vec<TensorSeries>) -> Result<Self> {
        if images.len() != pres.len() {
            return Err(Error::InvalidPresentation(format!(
                "coproduct has {} images for {} generators",
                images.len(),
                pres.len()
            )));
        }
        for img in &images {
            if img.lead().legs() != 2 {
                return Err(Error::WrongLegCount { expected: 2, found: img.lead().legs() });
            }
        }
        Ok(CoproductMap { pres, images })
    }

    /// `Δ₀(x) = x⊗1 + 1⊗x` at every order through `truncation`.
    pub fn primitive(pres: &Arc<LiePresentation>, truncation: usize) -> Self {
        let images =
            (0..pres.len()).map(|g| DeformationSeries::constant(primitive_generator(pres, g), truncation)).collect();
        CoproductMap { pres: pres.clone(), images }
    }

    pub fn presentation(&self) -> &Arc<LiePresentation> {
        &self.pres
    }

    pub fn images(&self) -> &[TensorSeries] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &TensorSeries {
        &self.images[generator]
    }

    pub fn truncation(&self) -> usize {
        self.images.iter().map(DeformationSeries::truncation).min().unwrap_or(0)
    }

    pub fn truncated(&self, order: usize) -> Result<Self> {
        Ok(CoproductMap {
            pres: self.pres.clone(),
            images: self.images.iter().map(|s| crate::series::series_truncate(s, order)).collect::<Result<_>>()?,
        })
    }

    /// Flip applied coefficientwise: `Δᵀ`.
    pub fn opposite(&self) -> Self {
        CoproductMap {
            pres: self.pres.clone(),
            images: self.images.iter().map(|s| s.map(|t| flip(t).expect("two legs"))).collect(),
        }
    }

    fn unit_series(&self) -> TensorSeries {
        DeformationSeries::one(&TensorElement::unit(&self.pres, 2), self.truncation())
    }

    pub fn apply_monomial(&self, m: &PbwMonomial) -> TensorSeries {
        let mut acc = self.unit_series();
        for &g in m.factors() {
            acc = series_mul(&acc, &self.images[g]).expect("coproduct images share a presentation");
        }
        acc
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<TensorSeries> {
        if !crate::algebra::element::same_presentation(a.presentation(), &self.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut acc = DeformationSeries::zero(&TensorElement::unit(&self.pres, 2), self.truncation());
        for (m, c) in a.terms() {
            acc = acc.add(&self.apply_monomial(m).scale(c))?;
        }
        Ok(acc)
    }

    /// `Σ λⁿ Δ(aₙ)` re-collected by total order.
    pub fn apply_series(&self, a: &AlgebraSeries) -> Result<TensorSeries> {
        let n = a.truncation().min(self.truncation());
        let mut acc = DeformationSeries::zero(&TensorElement::unit(&self.pres, 2), n);
        for k in 0..=n {
            let c = a.coeff(k)?;
            if c.is_zero() {
                continue;
            }
            let img = self.apply(c)?.shift_up(k);
            acc = acc.add(&img)?;
        }
        Ok(acc)
    }

    /// `(id ⊗ … ⊗ Δ ⊗ … ⊗ id)(t)` with `Δ` acting on leg `leg`, re-collected
    /// by total order. The result has one more leg.
    pub fn apply_on_leg(&self, t: &TensorSeries, leg: usize) -> Result<TensorSeries> {
        let n = t.truncation().min(self.truncation());
        let legs = t.lead().legs();
        if leg >= legs {
            return Err(Error::InvalidPositions(vec![leg + 1]));
        }
        let mut images: HashMap<PbwMonomial, TensorSeries> = HashMap::new();
        for k in 0..=n {
            for key in t.coeff(k)?.terms().keys() {
                images.entry(key[leg].clone()).or_insert_with(|| self.apply_monomial(&key[leg]));
            }
        }
        let mut acc = DeformationSeries::zero(&TensorElement::unit(&self.pres, legs + 1), n);
        for k in 0..=n {
            let c = t.coeff(k)?;
            if c.is_zero() {
                continue;
            }
            let mut coeffs = Vec::with_capacity(n + 1);
            for j in 0..=n {
                if j < k {
                    coeffs.push(TensorElement::zero(&self.pres, legs + 1));
                } else {
                    coeffs.push(c.expand_leg(leg, |m| images[m].coeff(j - k).expect("in range").clone()));
                }
            }
            acc = acc.add(&DeformationSeries::new(coeffs))?;
        }
        Ok(acc)
    }
}

fn primitive_generator(pres: &Arc<LiePresentation>, g: usize) -> TensorElement {
    let one = AlgebraElement::one(pres);
    let x = AlgebraElement::generator(pres, g);
    &TensorElement::pure(&[&x, &one]) + &TensorElement::pure(&[&one, &x])
}

/// Homomorphic extension of `x ↦ x⊗1 + 1⊗x`.
pub fn primitive_coproduct(a: &AlgebraElement) -> TensorElement {
    CoproductMap::primitive(a.presentation(), 0).apply(a).expect("same presentation").lead().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::d2_presentation;

    #[test]
    fn primitive_examples() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p0 = AlgebraElement::named(&pres, "P0");
        let p1 = AlgebraElement::named(&pres, "P1");
        assert_eq!(primitive_coproduct(&p0), &TensorElement::pure(&[&p0, &one]) + &TensorElement::pure(&[&one, &p0]));
        assert_eq!(primitive_coproduct(&one), TensorElement::unit(&pres, 2));
        let p0p1 = &p0 * &p1;
        let expect = [
            TensorElement::pure(&[&p0p1, &one]),
            TensorElement::pure(&[&p0, &p1]),
            TensorElement::pure(&[&p1, &p0]),
            TensorElement::pure(&[&one, &p0p1]),
        ]
        .iter()
        .fold(TensorElement::zero(&pres, 2), |a, b| &a + b);
        assert_eq!(primitive_coproduct(&p0p1), expect);
    }

    #[test]
    fn apply_on_leg_of_primitive() {
        let pres = d2_presentation();
        let delta = CoproductMap::primitive(&pres, 1);
        let one = AlgebraElement::one(&pres);
        let n = AlgebraElement::named(&pres, "N");
        let t = DeformationSeries::constant(TensorElement::pure(&[&n, &one]), 1);
        let left = delta.apply_on_leg(&t, 0).unwrap();
        let expect = &TensorElement::pure(&[&n, &one, &one]) + &TensorElement::pure(&[&one, &n, &one]);
        assert_eq!(left.lead(), &expect);
        assert!(left.coeff(1).unwrap().is_zero());
    }
}
