use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::presentation::LiePresentation;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Raw coefficient map of an element; no zero values are kept.
pub type Terms = BTreeMap<PbwMonomial, GaussianRational>;

/// A PBW-ordered monomial: generator indices in nondecreasing order.
/// The empty monomial is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    factors: Vec<usize>,
}

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial::default()
    }

    pub fn generator(index: usize) -> Self {
        PbwMonomial { factors: vec![index] }
    }

    /// Sorts the factors. Only meaningful for commuting factors or when the
    /// caller wants the PBW basis element with this content.
    pub fn from_factors(mut factors: Vec<usize>) -> Self {
        factors.sort_unstable();
        PbwMonomial { factors }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn pushed(&self, x: usize) -> Self {
        let mut factors = self.factors.clone();
        factors.push(x);
        PbwMonomial { factors }
    }

    pub fn display<'a>(&'a self, pres: &'a LiePresentation) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, pres }
    }
}

/// Graded order: shorter words first, then lexicographic in PBW order.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors.len().cmp(&other.factors.len()).then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.factors)
    }
}

struct MonomialDisplay<'a> {
    mono: &'a PbwMonomial,
    pres: &'a LiePresentation,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.mono.factors();
        if factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < factors.len() {
            let g = factors[i];
            let mut run = 1;
            while i + run < factors.len() && factors[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.pres.generator(g).name)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

pub(crate) fn add_term(terms: &mut Terms, m: PbwMonomial, c: &GaussianRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(acc: &mut Terms, other: &Terms, scale: &GaussianRational) {
    for (m, c) in other {
        add_term(acc, m.clone(), &(c * scale));
    }
}

/// `m · X_x` straightened into the PBW basis.
///
/// Writing `m = m'·y`: if `y ≤ x` the product is already ordered; otherwise
/// `m'·y·x = (m'·x)·y + m'·[y, x]`.
pub(crate) fn monomial_times_generator(pres: &LiePresentation, m: &PbwMonomial, x: usize) -> Terms {
    match m.factors.last() {
        None => return Terms::from([(PbwMonomial::generator(x), GaussianRational::one())]),
        Some(&y) if y <= x => return Terms::from([(m.pushed(x), GaussianRational::one())]),
        _ => {}
    }
    if let Some(hit) = pres.cached_product(m, x) {
        return hit;
    }
    let y = *m.factors.last().unwrap();
    let prefix = PbwMonomial { factors: m.factors[..m.factors.len() - 1].to_vec() };
    let mut out = Terms::new();
    for (mm, c) in monomial_times_generator(pres, &prefix, x) {
        add_scaled(&mut out, &monomial_times_generator(pres, &mm, y), &c);
    }
    for (g, c) in pres.bracket(y, x) {
        for (mm, c2) in monomial_times_generator(pres, &prefix, g.factors[0]) {
            add_term(&mut out, mm, &(&c * &c2));
        }
    }
    pres.store_product(m.clone(), x, &out);
    out
}

pub(crate) fn monomial_product(pres: &LiePresentation, a: &PbwMonomial, b: &PbwMonomial) -> Terms {
    let mut acc = Terms::from([(a.clone(), GaussianRational::one())]);
    for &x in &b.factors {
        let mut next = Terms::new();
        for (m, c) in &acc {
            add_scaled(&mut next, &monomial_times_generator(pres, m, x), c);
        }
        acc = next;
    }
    acc
}

pub(crate) fn terms_product(pres: &LiePresentation, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_scaled(&mut out, &monomial_product(pres, ma, mb), &(ca * cb));
        }
    }
    out
}

/// Straightens an arbitrary word `coeff · X_{w0} X_{w1} ...` by repeatedly
/// rewriting the leftmost adjacent descent `X_j X_i` (`j > i`) into
/// `X_i X_j + [X_j, X_i]`.
///
/// Every rewrite either keeps the length and removes one inversion or
/// shortens the word, so the measure (max word length, inversion count)
/// decreases lexicographically and the loop terminates.
pub fn normal_order(pres: &Arc<LiePresentation>, word: &[usize], coeff: &GaussianRational) -> AlgebraElement {
    let mut pending: BTreeMap<Vec<usize>, GaussianRational> = BTreeMap::new();
    let mut done = Terms::new();
    if !coeff.is_zero() {
        pending.insert(word.to_vec(), coeff.clone());
    }
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => add_term(&mut done, PbwMonomial { factors: w }, &c),
            Some(p) => {
                let (j, i) = (w[p], w[p + 1]);
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                push_word(&mut pending, swapped, &c);
                for (g, bc) in pres.bracket(j, i) {
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..p]);
                    shorter.push(g.factors[0]);
                    shorter.extend_from_slice(&w[p + 2..]);
                    push_word(&mut pending, shorter, &(&c * &bc));
                }
            }
        }
    }
    AlgebraElement { pres: pres.clone(), terms: done }
}

fn push_word(pending: &mut BTreeMap<Vec<usize>, GaussianRational>, w: Vec<usize>, c: &GaussianRational) {
    let e = pending.entry(w).or_insert_with(GaussianRational::zero);
    *e += c;
}

pub(crate) fn same_presentation(a: &Arc<LiePresentation>, b: &Arc<LiePresentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of the enveloping algebra in PBW-canonical form.
#[derive(Clone)]
pub struct AlgebraElement {
    pres: Arc<LiePresentation>,
    terms: Terms,
}

impl AlgebraElement {
    pub fn from_terms(pres: Arc<LiePresentation>, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        AlgebraElement { pres, terms }
    }

    pub fn zero(pres: &Arc<LiePresentation>) -> Self {
        AlgebraElement { pres: pres.clone(), terms: Terms::new() }
    }

    pub fn one(pres: &Arc<LiePresentation>) -> Self {
        Self::scalar(pres, GaussianRational::one())
    }

    pub fn scalar(pres: &Arc<LiePresentation>, c: GaussianRational) -> Self {
        Self::monomial(pres, PbwMonomial::unit(), c)
    }

    pub fn generator(pres: &Arc<LiePresentation>, index: usize) -> Self {
        Self::monomial(pres, PbwMonomial::generator(index), GaussianRational::one())
    }

    /// Generator by display name; panics if unknown.
    pub fn named(pres: &Arc<LiePresentation>, name: &str) -> Self {
        let idx = pres.index_of(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        Self::generator(pres, idx)
    }

    pub fn monomial(pres: &Arc<LiePresentation>, m: PbwMonomial, c: GaussianRational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, m, &c);
        AlgebraElement { pres: pres.clone(), terms }
    }

    pub fn presentation(&self) -> &Arc<LiePresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Scalar part (coefficient of the unit monomial).
    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&PbwMonomial::unit())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.pres);
        }
        AlgebraElement { pres: self.pres.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn max_word_length(&self) -> usize {
        self.terms.keys().map(PbwMonomial::len).max().unwrap_or(0)
    }

    pub fn max_momentum_degree(&self) -> usize {
        self.terms.keys().map(|m| self.pres.momentum_degree(m)).max().unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.pres);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(AlgebraElement { pres: self.pres.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }
}

/// Normal-ordered product.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.check(b)?;
    Ok(AlgebraElement { pres: a.pres.clone(), terms: terms_product(&a.pres, &a.terms, &b.terms) })
}

/// `ab - ba`, normal-ordered.
pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    multiply(a, b)?.try_sub(&multiply(b, a)?)
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_presentation(&self.pres, &other.pres)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::frontend::print::write_terms(
            f,
            self.terms.iter().map(|(m, c)| (c, vec![m.display(&self.pres).to_string()])),
        )
    }
}

// Operator forms panic on mixed presentations; use `multiply`/`try_add`
// for the checked variants.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("mixed presentations")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("mixed presentations")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        multiply(self, rhs).expect("mixed presentations")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { pres: self.pres.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::d2_presentation;

    fn c(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    #[test]
    fn n_times_p1() {
        let pres = d2_presentation();
        let (p0, p1, n) = (0, 1, 2);
        let got = normal_order(&pres, &[n, p1], &GaussianRational::one());
        let expect = &AlgebraElement::monomial(&pres, PbwMonomial::from_factors(vec![p1, n]), c(1, 0))
            + &AlgebraElement::generator(&pres, p0).scale(&c(0, 1));
        assert_eq!(got, expect);
    }

    #[test]
    fn ordered_word_unchanged() {
        let pres = d2_presentation();
        let got = normal_order(&pres, &[0, 1], &GaussianRational::one());
        assert_eq!(got, AlgebraElement::monomial(&pres, PbwMonomial::from_factors(vec![0, 1]), c(1, 0)));
    }

    #[test]
    fn n_n_p0() {
        // N N P0 = P0 N^2 + 2i P1 N - P0
        let pres = d2_presentation();
        let got = normal_order(&pres, &[2, 2, 0], &GaussianRational::one());
        let mut terms = Terms::new();
        add_term(&mut terms, PbwMonomial::from_factors(vec![0, 2, 2]), &c(1, 0));
        add_term(&mut terms, PbwMonomial::from_factors(vec![1, 2]), &c(0, 2));
        add_term(&mut terms, PbwMonomial::generator(0), &c(-1, 0));
        assert_eq!(got.terms(), &terms);
        // the recursive product agrees
        let n = AlgebraElement::generator(&pres, 2);
        let p0 = AlgebraElement::generator(&pres, 0);
        assert_eq!(&(&n * &n) * &p0, got);
    }

    #[test]
    fn multiply_unit_and_commutators() {
        let pres = d2_presentation();
        let one = AlgebraElement::one(&pres);
        let p0 = AlgebraElement::generator(&pres, 0);
        let p1 = AlgebraElement::generator(&pres, 1);
        let n = AlgebraElement::generator(&pres, 2);
        assert_eq!(multiply(&one, &n).unwrap(), n);
        assert_eq!(&(&n * &p1) - &(&p1 * &n), p0.scale(&c(0, 1)));
        assert_eq!(commutator(&n, &p0).unwrap(), p1.scale(&c(0, 1)));
        assert!(commutator(&p0, &p1).unwrap().is_zero());
        let p1n = &p1 * &n;
        assert_eq!(commutator(&p1n, &p0).unwrap(), (&p1 * &p1).scale(&c(0, 1)));
    }

    #[test]
    fn mixed_presentations_rejected() {
        let a = d2_presentation();
        let b = crate::models::d4_presentation();
        let x = AlgebraElement::generator(&a, 0);
        let y = AlgebraElement::generator(&b, 0);
        assert_eq!(multiply(&x, &y).unwrap_err(), Error::PresentationMismatch);
    }

    #[test]
    fn display_uses_powers() {
        let pres = d2_presentation();
        let e = normal_order(&pres, &[2, 2, 0], &GaussianRational::one());
        assert_eq!(e.to_string(), "-P0 + 2*i*P1*N + P0*N^2");
    }
}
