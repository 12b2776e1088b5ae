//! Truncated formal power series in `λ = 1/κ`.
//!
//! A series known through order `N` stores exactly `N + 1` coefficients;
//! everything beyond `N` is unknown, never implicitly zero. Binary
//! operations keep the smaller truncation.

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::tensor::{tensor_multiply, TensorElement};
use std::fmt;

/// Ring-like coefficient of a series: algebra elements or tensors.
pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &GaussianRational) -> Self;

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&GaussianRational::integer(-1)))
    }

    /// True if the element is the unit of its ring.
    fn is_one(&self) -> bool {
        self == &self.one_like()
    }
}

impl Coefficient for AlgebraElement {
    fn zero_like(&self) -> Self {
        AlgebraElement::zero(self.presentation())
    }
    fn one_like(&self) -> Self {
        AlgebraElement::one(self.presentation())
    }
    fn is_zero(&self) -> bool {
        AlgebraElement::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        AlgebraElement::try_add(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        crate::algebra::multiply(self, other)
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        AlgebraElement::scale(self, c)
    }
}

impl Coefficient for TensorElement {
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.presentation(), self.legs())
    }
    fn one_like(&self) -> Self {
        TensorElement::unit(self.presentation(), self.legs())
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        TensorElement::try_add(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        tensor_multiply(self, other)
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        TensorElement::scale(self, c)
    }
}

/// `Σ_{n ≤ N} λⁿ cₙ + O(λ^{N+1})`.
#[derive(Clone, PartialEq)]
pub struct DeformationSeries<C> {
    coeffs: Vec<C>,
}

pub type AlgebraSeries = DeformationSeries<AlgebraElement>;
pub type TensorSeries = DeformationSeries<TensorElement>;

impl<C: Coefficient> DeformationSeries<C> {
    /// Series with the given coefficients `c₀, …, c_N`; truncation `N`.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its order-0 coefficient");
        DeformationSeries { coeffs }
    }

    /// `c` at order 0, zero up to `truncation`.
    pub fn constant(c: C, truncation: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![c];
        coeffs.resize(truncation + 1, zero);
        DeformationSeries { coeffs }
    }

    pub fn zero(template: &C, truncation: usize) -> Self {
        Self::constant(template.zero_like(), truncation)
    }

    pub fn one(template: &C, truncation: usize) -> Self {
        Self::constant(template.one_like(), truncation)
    }

    /// `λ^order · c`.
    pub fn monomial(c: C, order: usize, truncation: usize) -> Self {
        let mut s = Self::zero(&c, truncation);
        if order <= truncation {
            s.coeffs[order] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `λⁿ`; underflow if `n` lies beyond the truncation.
    pub fn coeff(&self, n: usize) -> Result<&C> {
        self.coeffs.get(n).ok_or(Error::TruncationUnderflow { needed: n, available: self.truncation() })
    }

    pub fn lead(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> DeformationSeries<D> {
        DeformationSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D>) -> Result<DeformationSeries<D>> {
        Ok(DeformationSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::integer(-1))
    }

    /// Multiplies by `λ^k`, keeping the known range consistent: the result
    /// is known through `N + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; k];
        coeffs.extend(self.coeffs.iter().cloned());
        DeformationSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        series_add(self, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        series_add(self, &other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    /// Orders at which the coefficient is nonzero.
    pub fn nonzero_orders(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&n| !self.coeffs[n].is_zero()).collect()
    }
}

pub fn series_add<C: Coefficient>(a: &DeformationSeries<C>, b: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    let n = a.truncation().min(b.truncation());
    let coeffs = (0..=n).map(|k| a.coeffs[k].try_add(&b.coeffs[k])).collect::<Result<_>>()?;
    Ok(DeformationSeries { coeffs })
}

/// Cauchy product through the smaller truncation; factor order is kept, so
/// noncommuting coefficients are handled correctly.
pub fn series_mul<C: Coefficient>(a: &DeformationSeries<C>, b: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    let n = a.truncation().min(b.truncation());
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = a.coeffs[0].zero_like();
        for j in 0..=k {
            if a.coeffs[j].is_zero() || b.coeffs[k - j].is_zero() {
                continue;
            }
            acc = acc.try_add(&a.coeffs[j].try_mul(&b.coeffs[k - j])?)?;
        }
        coeffs.push(acc);
    }
    Ok(DeformationSeries { coeffs })
}

/// Keeps orders `0..=n`; underflow if `n` exceeds what is known.
pub fn series_truncate<C: Coefficient>(s: &DeformationSeries<C>, n: usize) -> Result<DeformationSeries<C>> {
    if n > s.truncation() {
        return Err(Error::TruncationUnderflow { needed: n, available: s.truncation() });
    }
    Ok(DeformationSeries { coeffs: s.coeffs[..=n].to_vec() })
}

/// `Σ_k a_k u^k` for a series `u` without order-0 part; `u^k` starts at
/// order `k`, so only `k ≤ N` contribute.
fn compose_zero_lead<C: Coefficient>(
    u: &DeformationSeries<C>,
    weights: impl Fn(usize) -> GaussianRational,
) -> Result<DeformationSeries<C>> {
    let n = u.truncation();
    let mut acc = DeformationSeries::one(u.lead(), n).scale(&weights(0));
    let mut power = DeformationSeries::one(u.lead(), n);
    for k in 1..=n {
        power = series_mul(&power, u)?;
        let w = weights(k);
        if !w.is_zero() {
            acc = series_add(&acc, &power.scale(&w))?;
        }
    }
    Ok(acc)
}

fn unit_lead_tail<C: Coefficient>(s: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    if !s.lead().is_one() {
        return Err(Error::SeriesLead { expected: "the unit" });
    }
    let mut tail = s.clone();
    tail.coeffs[0] = s.lead().zero_like();
    Ok(tail)
}

/// `exp(s) = Σ sᵏ/k!`; requires a vanishing order-0 coefficient.
pub fn series_exp<C: Coefficient>(s: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    if !s.lead().is_zero() {
        return Err(Error::SeriesLead { expected: "zero" });
    }
    let mut fact = GaussianRational::one();
    let inv_fact: Vec<GaussianRational> = (0..=s.truncation())
        .map(|k| {
            if k > 0 {
                fact = &fact * &GaussianRational::integer(k as i64);
            }
            fact.inv().unwrap()
        })
        .collect();
    compose_zero_lead(s, |k| inv_fact[k].clone())
}

/// `log(1 + u) = Σ (-1)^{k+1} uᵏ/k`; requires unit lead.
pub fn series_log<C: Coefficient>(s: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    let u = unit_lead_tail(s)?;
    compose_zero_lead(&u, |k| {
        if k == 0 {
            GaussianRational::zero()
        } else {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            GaussianRational::rational(sign, k as i64)
        }
    })
}

/// `√(1 + u) = Σ binom(1/2, k) uᵏ`; requires unit lead.
pub fn series_sqrt<C: Coefficient>(s: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    let u = unit_lead_tail(s)?;
    let half = GaussianRational::rational(1, 2);
    let mut binom = vec![GaussianRational::one()];
    for k in 1..=u.truncation() {
        // binom(1/2, k) = binom(1/2, k-1) * (1/2 - (k-1)) / k
        let prev = &binom[k - 1];
        let factor = &(&half - &GaussianRational::integer(k as i64 - 1)) / &GaussianRational::integer(k as i64);
        binom.push(prev * &factor);
    }
    compose_zero_lead(&u, |k| binom[k].clone())
}

/// `(1 + u)⁻¹ = Σ (-u)ᵏ`; requires unit lead.
pub fn series_inv<C: Coefficient>(s: &DeformationSeries<C>) -> Result<DeformationSeries<C>> {
    let u = unit_lead_tail(s)?;
    compose_zero_lead(&u, |k| GaussianRational::integer(if k % 2 == 0 { 1 } else { -1 }))
}

/// `κᵏ · s` for a series whose orders below `k` cancel, e.g. `κ log Π₀`.
///
/// The orders `< k` must vanish exactly; the result is the genuine series
/// `Σ_{n ≥ k} λ^{n-k} sₙ`, known through `N - k`.
pub fn kappa_times<C: Coefficient>(s: &DeformationSeries<C>, k: usize) -> Result<DeformationSeries<C>> {
    if s.truncation() < k {
        return Err(Error::TruncationUnderflow { needed: k, available: s.truncation() });
    }
    if let Some(order) = (0..k).find(|&n| !s.coeffs[n].is_zero()) {
        return Err(Error::CancellationFailure { order });
    }
    Ok(DeformationSeries { coeffs: s.coeffs[k..].to_vec() })
}

/// `Σ λⁿ (Σ_{i+j=n} aᵢ⊗bⱼ)`.
pub fn series_tensor(a: &DeformationSeries<TensorElement>, b: &DeformationSeries<TensorElement>) -> TensorSeries {
    let n = a.truncation().min(b.truncation());
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = TensorElement::zero(a.lead().presentation(), a.lead().legs() + b.lead().legs());
        for j in 0..=k {
            acc = &acc + &a.coeffs[j].outer(&b.coeffs[k - j]);
        }
        coeffs.push(acc);
    }
    DeformationSeries { coeffs }
}

impl AlgebraSeries {
    /// Lifts to one-leg tensors, e.g. to build `A ⊗ B` with [`series_tensor`].
    pub fn as_tensor(&self) -> TensorSeries {
        self.map(TensorElement::from_algebra)
    }
}

/// `Σ λⁿ aₙ ⊗ bₙ` for algebra series.
pub fn algebra_tensor(a: &AlgebraSeries, b: &AlgebraSeries) -> TensorSeries {
    series_tensor(&a.as_tensor(), &b.as_tensor())
}

impl<C: Coefficient> fmt::Display for DeformationSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::frontend::print::write_series(f, &self.coeffs)
    }
}

impl<C: Coefficient> fmt::Debug for DeformationSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::d2_presentation;

    fn r(n: i64, d: i64) -> GaussianRational {
        GaussianRational::rational(n, d)
    }

    #[test]
    fn commuting_product() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p0 = AlgebraElement::named(&pres, "P0");
        let a = DeformationSeries::new(vec![one.clone(), p0.clone(), one.zero_like()]);
        let b = DeformationSeries::new(vec![one.clone(), -&p0, one.zero_like()]);
        let prod = series_mul(&a, &b).unwrap();
        let expect = DeformationSeries::new(vec![one.clone(), one.zero_like(), -&(&p0 * &p0)]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn truncation_is_min_and_underflow_reported() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let a = DeformationSeries::one(&one, 4);
        let b = DeformationSeries::one(&one, 2);
        assert_eq!(series_mul(&a, &b).unwrap().truncation(), 2);
        assert_eq!(series_add(&a, &b).unwrap().truncation(), 2);
        assert!(matches!(series_truncate(&b, 3), Err(Error::TruncationUnderflow { needed: 3, available: 2 })));
        assert!(b.coeff(3).is_err());
    }

    #[test]
    fn sqrt_of_binomial() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p0 = AlgebraElement::named(&pres, "P0");
        let p1 = AlgebraElement::named(&pres, "P1");
        let c0 = &(&p1 * &p1) - &(&p0 * &p0);
        let s = DeformationSeries::new(vec![one.clone(), one.zero_like(), -&c0]);
        let root = series_sqrt(&s).unwrap();
        assert_eq!(root, DeformationSeries::new(vec![one.clone(), one.zero_like(), c0.scale(&r(-1, 2))]));
        assert_eq!(series_mul(&root, &root).unwrap(), s);
    }

    #[test]
    fn lead_errors() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let s = DeformationSeries::one(&one, 2);
        assert_eq!(series_exp(&s).unwrap_err(), Error::SeriesLead { expected: "zero" });
        let z = DeformationSeries::zero(&one, 2);
        assert!(series_log(&z).is_err());
        assert!(series_sqrt(&z).is_err());
        assert!(series_inv(&z).is_err());
    }

    #[test]
    fn exp_log_inverse_noncommuting() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p1 = AlgebraElement::named(&pres, "P1");
        let n = AlgebraElement::named(&pres, "N");
        let s = DeformationSeries::new(vec![one.clone(), n.clone(), &p1 * &n, p1.scale(&GaussianRational::i())]);
        let l = series_log(&s).unwrap();
        assert_eq!(series_exp(&l).unwrap(), s);
        let inv = series_inv(&s).unwrap();
        assert_eq!(series_mul(&s, &inv).unwrap(), DeformationSeries::one(&one, 3));
        assert_eq!(series_mul(&inv, &s).unwrap(), DeformationSeries::one(&one, 3));
        assert_eq!(series_exp(&l.neg()).unwrap(), inv);
    }

    #[test]
    fn kappa_shift_checks_cancellation() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p0 = AlgebraElement::named(&pres, "P0");
        let s = DeformationSeries::new(vec![one.zero_like(), p0.clone(), one.clone()]);
        let shifted = kappa_times(&s, 1).unwrap();
        assert_eq!(shifted, DeformationSeries::new(vec![p0.clone(), one.clone()]));
        assert_eq!(kappa_times(&s, 2).unwrap_err(), Error::CancellationFailure { order: 1 });
    }
}
