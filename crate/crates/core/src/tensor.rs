//! Tensor powers `U(g)^{⊗k}` with canonical term maps, leg permutations and
//! the subscript embeddings `X_{13}`, `φ_{312}`, ...

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::element::{monomial_product, same_presentation, Terms};
use crate::algebra::{AlgebraElement, LiePresentation, PbwMonomial};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// One PBW monomial per leg.
pub type TensorKey = Vec<PbwMonomial>;

#[derive(Clone)]
pub struct TensorElement {
    pres: Arc<LiePresentation>,
    legs: usize,
    terms: BTreeMap<TensorKey, GaussianRational>,
}

fn add_term(terms: &mut BTreeMap<TensorKey, GaussianRational>, key: TensorKey, c: &GaussianRational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl TensorElement {
    pub fn zero(pres: &Arc<LiePresentation>, legs: usize) -> Self {
        TensorElement { pres: pres.clone(), legs, terms: BTreeMap::new() }
    }

    /// `1⊗…⊗1`.
    pub fn unit(pres: &Arc<LiePresentation>, legs: usize) -> Self {
        Self::monomial(pres, vec![PbwMonomial::unit(); legs], GaussianRational::one())
    }

    pub fn monomial(pres: &Arc<LiePresentation>, key: TensorKey, c: GaussianRational) -> Self {
        let mut t = Self::zero(pres, key.len());
        add_term(&mut t.terms, key, &c);
        t
    }

    pub fn from_terms(
        pres: Arc<LiePresentation>,
        legs: usize,
        terms: impl IntoIterator<Item = (TensorKey, GaussianRational)>,
    ) -> Self {
        let mut t = TensorElement { pres, legs, terms: BTreeMap::new() };
        for (k, c) in terms {
            assert_eq!(k.len(), legs, "tensor key with wrong leg count");
            add_term(&mut t.terms, k, &c);
        }
        t
    }

    /// `a₁ ⊗ a₂ ⊗ …`.
    pub fn pure(factors: &[&AlgebraElement]) -> Self {
        assert!(!factors.is_empty());
        let pres = factors[0].presentation().clone();
        let mut acc = TensorElement::unit(&pres, 0);
        for f in factors {
            acc = acc.outer(&TensorElement::from_algebra(f));
        }
        acc
    }

    /// A one-leg tensor holding `a`.
    pub fn from_algebra(a: &AlgebraElement) -> Self {
        TensorElement {
            pres: a.presentation().clone(),
            legs: 1,
            terms: a.terms().iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect(),
        }
    }

    /// Inverse of [`from_algebra`](Self::from_algebra); `None` unless one leg.
    pub fn to_algebra(&self) -> Option<AlgebraElement> {
        if self.legs != 1 {
            return None;
        }
        let terms: Terms = self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())).collect();
        Some(AlgebraElement::from_terms(self.pres.clone(), terms))
    }

    pub fn presentation(&self) -> &Arc<LiePresentation> {
        &self.pres
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[PbwMonomial]) -> GaussianRational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.pres, self.legs);
        }
        TensorElement {
            pres: self.pres.clone(),
            legs: self.legs,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Concatenation of legs: `(a⊗b).outer(c) = a⊗b⊗c`.
    pub fn outer(&self, other: &Self) -> Self {
        assert!(same_presentation(&self.pres, &other.pres), "mixed presentations");
        let mut out = TensorElement::zero(&self.pres, self.legs + other.legs);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                add_term(&mut out.terms, key, &(ca * cb));
            }
        }
        out
    }

    /// Substitutes each monomial of leg `leg` by a tensor with `k` legs,
    /// producing an element with `legs + k - 1` legs.
    pub fn expand_leg(&self, leg: usize, image: impl Fn(&PbwMonomial) -> TensorElement) -> TensorElement {
        assert!(leg < self.legs);
        let mut out: Option<TensorElement> = None;
        let mut cache: BTreeMap<&PbwMonomial, TensorElement> = BTreeMap::new();
        for (key, c) in &self.terms {
            let img = cache.entry(&key[leg]).or_insert_with(|| image(&key[leg]));
            let acc = out.get_or_insert_with(|| TensorElement::zero(&self.pres, self.legs + img.legs - 1));
            for (ik, ic) in &img.terms {
                let mut nk = Vec::with_capacity(acc.legs);
                nk.extend(key[..leg].iter().cloned());
                nk.extend(ik.iter().cloned());
                nk.extend(key[leg + 1..].iter().cloned());
                add_term(&mut acc.terms, nk, &(c * ic));
            }
        }
        out.unwrap_or_else(|| {
            let probe = image(&PbwMonomial::unit());
            TensorElement::zero(&self.pres, self.legs + probe.legs - 1)
        })
    }

    /// Applies a linear map to every leg monomial of a single-leg slot and
    /// keeps the leg count, e.g. adjoint actions on one factor.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&PbwMonomial) -> Terms) -> TensorElement {
        let mut out = TensorElement::zero(&self.pres, self.legs);
        for (key, c) in &self.terms {
            for (m, mc) in f(&key[leg]) {
                let mut nk = key.clone();
                nk[leg] = m;
                add_term(&mut out.terms, nk, &(c * &mc));
            }
        }
        out
    }
}

/// Legwise product, each leg normal-ordered.
pub fn tensor_multiply(u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
    u.check(v)?;
    let pres = &u.pres;
    let mut out = TensorElement::zero(pres, u.legs);
    for (ka, ca) in &u.terms {
        for (kb, cb) in &v.terms {
            let c = ca * cb;
            // expand the legwise products one leg at a time
            let mut partial: Vec<(TensorKey, GaussianRational)> = vec![(Vec::with_capacity(u.legs), c)];
            for leg in 0..u.legs {
                let prod = monomial_product(pres, &ka[leg], &kb[leg]);
                let mut next = Vec::with_capacity(partial.len() * prod.len());
                for (k, pc) in &partial {
                    for (m, mc) in &prod {
                        let mut nk = k.clone();
                        nk.push(m.clone());
                        next.push((nk, pc * mc));
                    }
                }
                partial = next;
            }
            for (k, pc) in partial {
                add_term(&mut out.terms, k, &pc);
            }
        }
    }
    Ok(out)
}

/// `uv - vu` legwise.
pub fn tensor_commutator(u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
    tensor_multiply(u, v)?.try_sub(&tensor_multiply(v, u)?)
}

/// `(a⊗b)ᵀ = b⊗a`.
pub fn flip(u: &TensorElement) -> Result<TensorElement> {
    if u.legs != 2 {
        return Err(Error::WrongLegCount { expected: 2, found: u.legs });
    }
    permute(u, &LegPermutation::new(vec![2, 1])?)
}

/// A permutation of tensor legs in subscript notation.
///
/// `LegPermutation::new(vec![3, 1, 2])` is the subscript `312`: the first
/// tensor factor goes to leg 3, the second to leg 1, the third to leg 2, so
/// for `φ = x⊗y⊗z` one gets `φ₃₁₂ = y⊗z⊗x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegPermutation {
    // zero-based target position of each factor
    targets: Vec<usize>,
}

impl LegPermutation {
    /// From one-based subscripts.
    pub fn new(subscripts: Vec<usize>) -> Result<Self> {
        let n = subscripts.len();
        let mut seen = vec![false; n];
        for &s in &subscripts {
            if s == 0 || s > n || seen[s - 1] {
                return Err(Error::InvalidPositions(subscripts));
            }
            seen[s - 1] = true;
        }
        Ok(LegPermutation { targets: subscripts.into_iter().map(|s| s - 1).collect() })
    }

    pub fn identity(n: usize) -> Self {
        LegPermutation { targets: (0..n).collect() }
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    pub fn subscripts(&self) -> Vec<usize> {
        self.targets.iter().map(|t| t + 1).collect()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity());
        LegPermutation { targets: other.targets.iter().map(|&t| self.targets[t]).collect() }
    }

    /// All permutations of `n` legs in lexicographic subscript order.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<LegPermutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(LegPermutation { targets: prefix.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

pub fn permute(u: &TensorElement, sigma: &LegPermutation) -> Result<TensorElement> {
    if sigma.arity() != u.legs {
        return Err(Error::WrongLegCount { expected: sigma.arity(), found: u.legs });
    }
    let mut out = TensorElement::zero(&u.pres, u.legs);
    for (k, c) in &u.terms {
        let mut nk = vec![PbwMonomial::unit(); u.legs];
        for (factor, &target) in sigma.targets.iter().enumerate() {
            nk[target] = k[factor].clone();
        }
        add_term(&mut out.terms, nk, c);
    }
    Ok(out)
}

/// Places the legs of `u` at the one-based `positions` of a `total`-leg
/// tensor, with units elsewhere: `embed(a⊗b, &[1, 3], 3) = a⊗1⊗b`.
pub fn embed(u: &TensorElement, positions: &[usize], total: usize) -> Result<TensorElement> {
    let mut seen = vec![false; total];
    if positions.len() != u.legs {
        return Err(Error::InvalidPositions(positions.to_vec()));
    }
    for &p in positions {
        if p == 0 || p > total || seen[p - 1] {
            return Err(Error::InvalidPositions(positions.to_vec()));
        }
        seen[p - 1] = true;
    }
    let mut out = TensorElement::zero(&u.pres, total);
    for (k, c) in &u.terms {
        let mut nk = vec![PbwMonomial::unit(); total];
        for (factor, &p) in positions.iter().enumerate() {
            nk[p - 1] = k[factor].clone();
        }
        add_term(&mut out.terms, nk, c);
    }
    Ok(out)
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs && self.terms == other.terms && same_presentation(&self.pres, &other.pres)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::frontend::print::write_terms(
            f,
            self.terms.iter().map(|(k, c)| (c, k.iter().map(|m| m.display(&self.pres).to_string()).collect())),
        )
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("incompatible tensors")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_sub(rhs).expect("incompatible tensors")
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        tensor_multiply(self, rhs).expect("incompatible tensors")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&GaussianRational::integer(-1))
    }
}
