use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::element::{AlgebraElement, PbwMonomial, Terms};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Generator grade. Momenta carry momentum-degree 1, everything else 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Momentum,
    Rotation,
    Boost,
}

impl Grade {
    pub fn momentum_degree(self) -> usize {
        match self {
            Grade::Momentum => 1,
            _ => 0,
        }
    }

    pub fn is_lorentz(self) -> bool {
        !matches!(self, Grade::Momentum)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Grade::Momentum => "momentum",
            Grade::Rotation => "rotation",
            Grade::Boost => "boost",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Grade> {
        match s {
            "momentum" => Some(Grade::Momentum),
            "rotation" => Some(Grade::Rotation),
            "boost" => Some(Grade::Boost),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub index: usize,
    pub name: String,
    pub grade: Grade,
}

/// A finite-dimensional Lie algebra given by generators and a bracket table.
///
/// The declaration order of the generators is the PBW order. Only pairs
/// `(i, j)` with `i < j` are stored; the rest follows from antisymmetry.
pub struct LiePresentation {
    name: String,
    generators: Vec<GeneratorId>,
    brackets: BTreeMap<(usize, usize), Terms>,
    // memo for `monomial * generator`; the values depend only on the table
    product_cache: Mutex<HashMap<(PbwMonomial, usize), Terms>>,
}

/// `((a, b), [(k, c_k), …])` for `[X_a, X_b] = Σ c_k X_k`.
pub type BracketEntry = ((usize, usize), Vec<(usize, GaussianRational)>);

impl LiePresentation {
    /// Builds a presentation. Each bracket entry `((a, b), value)` declares
    /// `[X_a, X_b] = Σ c_k X_k`; entries may be given in either order.
    pub fn new(name: impl Into<String>, generators: Vec<(String, Grade)>, brackets: Vec<BracketEntry>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for (index, (name, grade)) in generators.into_iter().enumerate() {
            if gens.iter().any(|g: &GeneratorId| g.name == name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{name}`")));
            }
            gens.push(GeneratorId { index, name, grade });
        }
        let n = gens.len();
        let mut table = BTreeMap::new();
        for ((a, b), value) in brackets {
            if a >= n || b >= n {
                return Err(Error::InvalidPresentation(format!("bracket index ({a}, {b}) out of range")));
            }
            let mut terms = Terms::new();
            for (k, c) in value {
                if k >= n {
                    return Err(Error::InvalidPresentation(format!("bracket value index {k} out of range")));
                }
                let entry = terms.entry(PbwMonomial::generator(k)).or_insert_with(GaussianRational::zero);
                *entry += &c;
            }
            terms.retain(|_, c| !c.is_zero());
            if a == b {
                if terms.is_empty() {
                    continue;
                }
                return Err(Error::InvalidPresentation(format!("[{0}, {0}] must vanish", gens[a].name)));
            }
            let (key, terms) =
                if a < b { ((a, b), terms) } else { ((b, a), terms.into_iter().map(|(m, c)| (m, -c)).collect()) };
            if table.insert(key, terms).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate bracket [{}, {}]",
                    gens[key.0].name, gens[key.1].name
                )));
            }
        }
        table.retain(|_, t: &mut Terms| !t.is_empty());
        Ok(LiePresentation {
            name: name.into(),
            generators: gens,
            brackets: table,
            product_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, index: usize) -> &GeneratorId {
        &self.generators[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn grade(&self, index: usize) -> Grade {
        self.generators[index].grade
    }

    /// Nonzero stored brackets `[X_i, X_j]`, `i < j`.
    pub fn bracket_table(&self) -> impl Iterator<Item = ((usize, usize), &Terms)> {
        self.brackets.iter().map(|(k, v)| (*k, v))
    }

    /// `[X_a, X_b]` for any pair, using antisymmetry.
    pub fn bracket(&self, a: usize, b: usize) -> Terms {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => Terms::new(),
            Less => self.brackets.get(&(a, b)).cloned().unwrap_or_default(),
            Greater => {
                self.brackets.get(&(b, a)).map(|t| t.iter().map(|(m, c)| (m.clone(), -c)).collect()).unwrap_or_default()
            }
        }
    }

    pub fn momentum_degree(&self, m: &PbwMonomial) -> usize {
        m.factors().iter().map(|&g| self.grade(g).momentum_degree()).sum()
    }

    pub fn lorentz_degree(&self, m: &PbwMonomial) -> usize {
        m.factors().iter().filter(|&&g| self.grade(g).is_lorentz()).count()
    }

    pub(crate) fn cached_product(&self, m: &PbwMonomial, x: usize) -> Option<Terms> {
        self.product_cache.lock().ok()?.get(&(m.clone(), x)).cloned()
    }

    pub(crate) fn store_product(&self, m: PbwMonomial, x: usize, value: &Terms) {
        if let Ok(mut cache) = self.product_cache.lock() {
            cache.insert((m, x), value.clone());
        }
    }
}

impl PartialEq for LiePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.generators == other.generators && self.brackets == other.brackets
    }
}

impl Eq for LiePresentation {}

impl fmt::Debug for LiePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiePresentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("brackets", &self.brackets)
            .finish()
    }
}

/// One violated Jacobi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residue: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub failures: Vec<JacobiFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `[[x,y],z] + [[y,z],x] + [[z,x],y]` with the bracket table for
/// every triple of distinct generators.
pub fn validate_presentation(pres: &Arc<LiePresentation>) -> ValidationReport {
    let n = pres.len();
    let mut failures = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut residue = Terms::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    for (m, coeff) in pres.bracket(a, b) {
                        let k = m.factors()[0];
                        for (m2, c2) in pres.bracket(k, c) {
                            let e = residue.entry(m2).or_insert_with(GaussianRational::zero);
                            *e += &(&coeff * &c2);
                        }
                    }
                }
                residue.retain(|_, c| !c.is_zero());
                if !residue.is_empty() {
                    failures.push(JacobiFailure {
                        triple: (x, y, z),
                        residue: AlgebraElement::from_terms(pres.clone(), residue),
                    });
                }
            }
        }
    }
    ValidationReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    #[test]
    fn abelian_passes() {
        let pres = Arc::new(
            LiePresentation::new(
                "abelian",
                vec![("A".into(), Grade::Momentum), ("B".into(), Grade::Momentum), ("C".into(), Grade::Boost)],
                vec![],
            )
            .unwrap(),
        );
        assert!(validate_presentation(&pres).passed());
    }

    #[test]
    fn broken_jacobi_reports_triple() {
        // [X,Y] = X, [Y,Z] = Y, [X,Z] = 0.
        // [[X,Y],Z] = [X,Z] = 0; [[Y,Z],X] = [Y,X] = -X; [[Z,X],Y] = 0  => residue -X
        let pres = Arc::new(
            LiePresentation::new(
                "bad",
                vec![("X".into(), Grade::Boost), ("Y".into(), Grade::Boost), ("Z".into(), Grade::Boost)],
                vec![((0, 1), vec![(0, gr(1, 0))]), ((1, 2), vec![(1, gr(1, 0))])],
            )
            .unwrap(),
        );
        let report = validate_presentation(&pres);
        assert_eq!(report.failures.len(), 1);
        let f = &report.failures[0];
        assert_eq!(f.triple, (0, 1, 2));
        assert_eq!(f.residue, AlgebraElement::generator(&pres, 0).scale(&gr(-1, 0)));
    }

    #[test]
    fn duplicate_bracket_rejected() {
        let err = LiePresentation::new(
            "dup",
            vec![("X".into(), Grade::Boost), ("Y".into(), Grade::Boost)],
            vec![((0, 1), vec![(0, gr(1, 0))]), ((1, 0), vec![(0, gr(-1, 0))])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
    }

    #[test]
    fn reversed_declaration_is_negated() {
        let pres = LiePresentation::new(
            "rev",
            vec![("P".into(), Grade::Momentum), ("N".into(), Grade::Boost)],
            vec![((1, 0), vec![(0, gr(0, 1))])],
        )
        .unwrap();
        let stored: Vec<_> = pres.bracket_table().collect();
        assert_eq!(stored.len(), 1);
        assert_eq!(stored[0].0, (0, 1));
        assert_eq!(stored[0].1.values().next().unwrap(), &gr(0, -1));
    }
}
