use std::sync::Arc;

use crate::algebra::LiePresentation;
use crate::error::{Error, Result};
use crate::hopf::coproduct::CoproductMap;
use crate::series::{
    series_add, series_exp, series_inv, series_mul, series_truncate, Coefficient, DeformationSeries, TensorSeries,
};
use crate::tensor::{embed, flip, TensorElement};

/// An invertible two-leg series with unit lead, optionally remembered in
/// exponential form `F = exp(f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistSeries {
    series: TensorSeries,
    log: Option<TensorSeries>,
}

impl TwistSeries {
    pub fn from_series(series: TensorSeries) -> Result<Self> {
        if series.lead().legs() != 2 {
            return Err(Error::WrongLegCount { expected: 2, found: series.lead().legs() });
        }
        if !series.lead().is_one() {
            return Err(Error::SeriesLead { expected: "1⊗1" });
        }
        Ok(TwistSeries { series, log: None })
    }

    /// `F = exp(f)`; `f` must vanish at order 0.
    pub fn exponential(log: TensorSeries) -> Result<Self> {
        if log.lead().legs() != 2 {
            return Err(Error::WrongLegCount { expected: 2, found: log.lead().legs() });
        }
        let series = series_exp(&log)?;
        Ok(TwistSeries { series, log: Some(log) })
    }

    pub fn trivial(pres: &Arc<LiePresentation>, truncation: usize) -> Self {
        let one = TensorElement::unit(pres, 2);
        TwistSeries {
            series: DeformationSeries::one(&one, truncation),
            log: Some(DeformationSeries::zero(&one, truncation)),
        }
    }

    pub fn series(&self) -> &TensorSeries {
        &self.series
    }

    pub fn log(&self) -> Option<&TensorSeries> {
        self.log.as_ref()
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation()
    }

    pub fn inverse(&self) -> TensorSeries {
        match &self.log {
            Some(f) => series_exp(&f.neg()).expect("zero lead"),
            None => series_inv(&self.series).expect("unit lead"),
        }
    }

    /// `Fᵀ`, coefficientwise flip.
    pub fn flipped(&self) -> TwistSeries {
        let flip_series = |s: &TensorSeries| s.map(|t| flip(t).expect("two legs"));
        TwistSeries { series: flip_series(&self.series), log: self.log.as_ref().map(flip_series) }
    }
}

/// `Σ_k ad_fᵏ(X)/k!` with `ad_f(X) = fX - Xf`, for `f` without order-0 part.
pub fn adjoint_exp<C: Coefficient>(f: &DeformationSeries<C>, x: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    if !f.lead().is_zero() {
        return Err(Error::SeriesLead { expected: "zero" });
    }
    let n = f.truncation().min(x.truncation());
    let mut term = series_truncate(x, n)?;
    let mut acc = term.clone();
    for k in 1..=n {
        term = series_mul(f, &term)?.sub(&series_mul(&term, f)?)?;
        term = term.scale(&crate::scalar::GaussianRational::rational(1, k as i64));
        acc = series_add(&acc, &term)?;
    }
    Ok(acc)
}

/// `Δ_F(x) = F Δ(x) F⁻¹` through `order`.
///
/// When `F` is known in exponential form the adjoint expansion
/// `Δ + [f, Δ] + ½[f, [f, Δ]] + …` is evaluated as well and must agree with
/// the direct sandwich.
pub fn conjugate_by_twist(twist: &TwistSeries, delta: &CoproductMap, order: usize) -> Result<CoproductMap> {
    if twist.truncation() < order {
        return Err(Error::TruncationUnderflow { needed: order, available: twist.truncation() });
    }
    if delta.truncation() < order {
        return Err(Error::TruncationUnderflow { needed: order, available: delta.truncation() });
    }
    let f = series_truncate(twist.series(), order)?;
    let f_inv = series_truncate(&twist.inverse(), order)?;
    let log = twist.log().map(|l| series_truncate(l, order)).transpose()?;
    let mut images = Vec::with_capacity(delta.images().len());
    for img in delta.images() {
        let img = series_truncate(img, order)?;
        let direct = series_mul(&series_mul(&f, &img)?, &f_inv)?;
        if let Some(log) = &log {
            let nested = adjoint_exp(log, &img)?;
            if nested != direct {
                return Err(Error::CrossCheck("adjoint expansion disagrees with direct conjugation".into()));
            }
        }
        images.push(direct);
    }
    CoproductMap::new(delta.presentation().clone(), images)
}

/// `R = Fᵀ F⁻¹`.
pub fn twisted_rmatrix(twist: &TwistSeries) -> TensorSeries {
    series_mul(twist.flipped().series(), &twist.inverse()).expect("same presentation")
}

pub(crate) fn embed_series(s: &TensorSeries, positions: &[usize], total: usize) -> Result<TensorSeries> {
    s.try_map(|t| embed(t, positions, total))
}

/// `φ = (1⊗F) (id⊗Δ)(F) (Δ⊗id)(F⁻¹) (F⁻¹⊗1)`, where `Δ` is the coproduct
/// being twisted (the untwisted one, e.g. the primitive `Δ₀`).
pub fn coassociator(twist: &TwistSeries, delta: &CoproductMap) -> Result<TensorSeries> {
    let n = twist.truncation().min(delta.truncation());
    let f = series_truncate(twist.series(), n)?;
    let f_inv = series_truncate(&twist.inverse(), n)?;
    let f23 = embed_series(&f, &[2, 3], 3)?;
    let f12_inv = embed_series(&f_inv, &[1, 2], 3)?;
    let id_delta = delta.apply_on_leg(&f, 1)?;
    let delta_id_inv = delta.apply_on_leg(&f_inv, 0)?;
    let left = series_mul(&f23, &id_delta)?;
    let right = series_mul(&delta_id_inv, &f12_inv)?;
    series_mul(&left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::models::d2_presentation;
    use crate::scalar::GaussianRational;

    #[test]
    fn trivial_twist_is_identity() {
        let pres = d2_presentation();
        let delta = CoproductMap::primitive(&pres, 3);
        let twisted = conjugate_by_twist(&TwistSeries::trivial(&pres, 3), &delta, 3).unwrap();
        assert_eq!(twisted, delta);
        let r = twisted_rmatrix(&TwistSeries::trivial(&pres, 3));
        assert_eq!(r, DeformationSeries::one(&TensorElement::unit(&pres, 2), 3));
        let phi = coassociator(&TwistSeries::trivial(&pres, 3), &delta).unwrap();
        assert_eq!(phi, DeformationSeries::one(&TensorElement::unit(&pres, 3), 3));
    }

    #[test]
    fn underflow_reported() {
        let pres = d2_presentation();
        let delta = CoproductMap::primitive(&pres, 3);
        let err = conjugate_by_twist(&TwistSeries::trivial(&pres, 1), &delta, 2).unwrap_err();
        assert_eq!(err, Error::TruncationUnderflow { needed: 2, available: 1 });
    }

    #[test]
    fn abelian_rmatrix_combines_exponents() {
        let pres = d2_presentation();
        let p0 = AlgebraElement::named(&pres, "P0");
        let p1 = AlgebraElement::named(&pres, "P1");
        let x = TensorElement::pure(&[&p0, &p1]);
        let log = DeformationSeries::monomial(x.clone(), 1, 3);
        let twist = TwistSeries::exponential(log).unwrap();
        let r = twisted_rmatrix(&twist);
        let wedge = &TensorElement::pure(&[&p1, &p0]) - &x;
        let expect = series_exp(&DeformationSeries::monomial(wedge, 1, 3)).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn non_unit_lead_rejected() {
        let pres = d2_presentation();
        let z = DeformationSeries::zero(&TensorElement::unit(&pres, 2), 2);
        assert!(TwistSeries::from_series(z).is_err());
        let one = DeformationSeries::one(&TensorElement::unit(&pres, 2), 2);
        assert!(TwistSeries::exponential(one.scale(&GaussianRational::integer(2))).is_err());
    }
}
