use std::collections::BTreeMap;

use super::symbol::GeneratorSymbol;
use crate::error::Result;
use crate::scalars::{Rational, RationalFunction};

/// A canonical creation word applied to the vacuum. The empty word is `vac`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PBWMonomial(pub(crate) Vec<GeneratorSymbol>);

impl PBWMonomial {
    pub fn vacuum() -> Self {
        PBWMonomial(Vec::new())
    }

    /// Sorts the symbols into canonical order. Whether they are creation
    /// symbols for a given module is checked by the module.
    pub fn from_symbols(mut word: Vec<GeneratorSymbol>) -> Self {
        word.sort_unstable();
        PBWMonomial(word)
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|s| -s.mode()).sum()
    }

    pub fn weight(&self, n: i64) -> i64 {
        self.0.iter().map(|s| s.weight(n)).sum()
    }

    pub fn j_part(&self) -> PBWMonomial {
        PBWMonomial(self.0.iter().copied().filter(|s| s.is_j()).collect())
    }

    pub fn l_part(&self) -> PBWMonomial {
        PBWMonomial(self.0.iter().copied().filter(|s| !s.is_j()).collect())
    }

    pub fn l_count(&self) -> usize {
        self.0.iter().filter(|s| !s.is_j()).count()
    }

    /// Commutative product: merge of two sorted words.
    pub fn merge(&self, other: &PBWMonomial) -> PBWMonomial {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PBWMonomial(out)
    }
}

/// Sparse combination of PBW monomials; never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleVector {
    terms: BTreeMap<PBWMonomial, RationalFunction>,
}

impl FromIterator<(PBWMonomial, RationalFunction)> for ModuleVector {
    fn from_iter<I: IntoIterator<Item = (PBWMonomial, RationalFunction)>>(iter: I) -> Self {
        let mut v = ModuleVector::zero();
        for (m, c) in iter {
            v.add_term(m, &c);
        }
        v
    }
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(PBWMonomial::vacuum())
    }

    pub fn from_monomial(m: PBWMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, RationalFunction::one());
        ModuleVector { terms }
    }

    pub fn terms(&self) -> &BTreeMap<PBWMonomial, RationalFunction> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<PBWMonomial, RationalFunction> {
        self.terms
    }

    pub fn coeff(&self, m: &PBWMonomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
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

    pub fn add_term(&mut self, m: PBWMonomial, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &ModuleVector, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (m, x) in &other.terms {
            if one {
                self.add_term(m.clone(), x);
            } else {
                self.add_term(m.clone(), &(x * c));
            }
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFunction::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFunction::from_int(-1));
        out
    }

    pub fn neg(&self) -> ModuleVector {
        self.scale_rational(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &RationalFunction) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero();
        }
        ModuleVector {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> ModuleVector {
        if r.is_zero() {
            return ModuleVector::zero();
        }
        ModuleVector {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.scale(r))).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn try_map_coeffs(
        &self,
        mut f: impl FnMut(&PBWMonomial, &RationalFunction) -> Result<RationalFunction>,
    ) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (m, c) in &self.terms {
            let v = f(m, c)?;
            out.add_term(m.clone(), &v);
        }
        Ok(out)
    }

    /// Conformal degree if every term has the same one; `None` for zero or
    /// inhomogeneous vectors.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_weight(&self, n: i64) -> Option<i64> {
        self.terms.keys().map(|m| m.weight(n)).max()
    }

    /// First monomial (in canonical order) where the two vectors differ.
    pub fn first_difference(&self, other: &ModuleVector) -> Option<(PBWMonomial, RationalFunction, RationalFunction)> {
        let mut keys: Vec<&PBWMonomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let a = self.coeff(m);
            let b = other.coeff(m);
            (a != b).then(|| (m.clone(), a, b))
        })
    }
}
