use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;

use super::symbol::{symbol_bracket, GeneratorSymbol, Regime, VacuumModuleSpec};
use super::vector::{ModuleVector, PBWMonomial};
use crate::error::{Error, Result};
use crate::lie::SimpleLieAlgebra;
use crate::scalars::RationalFunction;

type Terms = Arc<Vec<(PBWMonomial, RationalFunction)>>;

/// A vacuum module together with its rewriting memo.
///
/// `x_1 ... x_r vac` with `x_1 <= ... <= x_r` creation symbols is a basis
/// (PBW). A generator `g` acts on such a word by
/// `g x_1 X = x_1 (g X) + [g, x_1] X`, unless `g` is a creation symbol with
/// `g <= x_1`, in which case it is prepended. On `vac`, annihilators give 0.
/// Results are memoized per `(g, word)`; the memo is a pure cache.
pub struct VacuumModule {
    spec: VacuumModuleSpec,
    memo: DashMap<Vec<GeneratorSymbol>, Terms>,
    basis: DashMap<i64, Arc<Vec<PBWMonomial>>>,
}

impl std::fmt::Debug for VacuumModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VacuumModule").field("spec", &self.spec).finish()
    }
}

impl VacuumModule {
    pub fn new(spec: VacuumModuleSpec) -> Result<Self> {
        spec.validate()?;
        Ok(VacuumModule {
            spec,
            memo: DashMap::new(),
            basis: DashMap::new(),
        })
    }

    pub fn spec(&self) -> &VacuumModuleSpec {
        &self.spec
    }

    pub fn level_structure(&self) -> i64 {
        self.spec.level_structure
    }

    pub fn truncation_degree(&self) -> i64 {
        self.spec.truncation_degree
    }

    pub fn lie(&self) -> Option<&SimpleLieAlgebra> {
        self.spec.lie.as_deref()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_creation(&self, s: GeneratorSymbol) -> bool {
        s.is_creation(self.spec.level_structure)
    }

    /// Checks that `m` is a canonical creation monomial of this module.
    pub fn check_monomial(&self, m: &PBWMonomial) -> Result<()> {
        for s in m.symbols() {
            self.spec.check_symbol(*s)?;
            if !self.is_creation(*s) {
                return Err(Error::Domain(format!("{s:?} annihilates the vacuum")));
            }
        }
        if m.symbols().windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("monomial is not in canonical order".into()));
        }
        Ok(())
    }

    fn check_quantum(&self) -> Result<()> {
        if self.spec.regime != Regime::Quantum {
            return Err(Error::Domain("operation needs the quantum regime".into()));
        }
        Ok(())
    }

    pub(crate) fn check_weight(&self, weight: i64) -> Result<()> {
        if weight > self.spec.truncation_degree {
            return Err(Error::Truncation {
                weight,
                max: self.spec.truncation_degree,
            });
        }
        Ok(())
    }

    /// `[x, y]` with central scalars folded in.
    pub fn bracket(
        &self,
        x: GeneratorSymbol,
        y: GeneratorSymbol,
    ) -> Result<(Vec<(GeneratorSymbol, crate::scalars::Rational)>, RationalFunction)> {
        self.spec.check_symbol(x)?;
        self.spec.check_symbol(y)?;
        Ok(symbol_bracket(self.lie(), &self.spec.params, x, y))
    }

    /// Module action of one generator.
    pub fn apply(&self, g: GeneratorSymbol, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_quantum()?;
        self.spec.check_symbol(g)?;
        let n = self.spec.level_structure;
        if let Some(w) = v.max_weight(n) {
            self.check_weight(w + g.weight(n))?;
        }
        Ok(self.act(g, v))
    }

    /// `word . vac`, rightmost symbol acting first.
    pub fn normal_order(&self, word: &[GeneratorSymbol]) -> Result<ModuleVector> {
        self.check_quantum()?;
        for s in word {
            self.spec.check_symbol(*s)?;
        }
        let n = self.spec.level_structure;
        self.check_weight(word.iter().map(|s| s.weight(n)).sum())?;
        let mut v = ModuleVector::vacuum();
        for s in word.iter().rev() {
            v = self.act(*s, &v);
        }
        Ok(v)
    }

    /// Unchecked action used by composite operators; exact at any weight.
    pub(crate) fn act(&self, g: GeneratorSymbol, v: &ModuleVector) -> ModuleVector {
        let mut out = BTreeMap::new();
        for (m, c) in v.terms() {
            self.act_into(g, m.symbols(), c, &mut out);
        }
        finish(out)
    }

    pub(crate) fn act_word(&self, word: &[GeneratorSymbol], v: &ModuleVector) -> ModuleVector {
        let mut v = v.clone();
        for s in word.iter().rev() {
            v = self.act(*s, &v);
        }
        v
    }

    fn act_into(
        &self,
        g: GeneratorSymbol,
        word: &[GeneratorSymbol],
        coeff: &RationalFunction,
        out: &mut BTreeMap<PBWMonomial, RationalFunction>,
    ) {
        if coeff.is_zero() {
            return;
        }
        if let Some(m) = self.prepend(g, word) {
            accumulate(out, m, coeff.clone());
            return;
        }
        if word.is_empty() {
            return;
        }
        let terms = self.act_mono(g, word);
        let one = coeff.is_one();
        for (m, c) in terms.iter() {
            let x = if one { c.clone() } else { c * coeff };
            accumulate(out, m.clone(), x);
        }
    }

    /// Trivial cases that need no rewriting.
    fn prepend(&self, g: GeneratorSymbol, word: &[GeneratorSymbol]) -> Option<PBWMonomial> {
        if !self.is_creation(g) {
            return None;
        }
        match word.first() {
            Some(x) if g > *x => None,
            _ => {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(g);
                w.extend_from_slice(word);
                Some(PBWMonomial(w))
            }
        }
    }

    fn act_mono(&self, g: GeneratorSymbol, word: &[GeneratorSymbol]) -> Terms {
        let mut key = Vec::with_capacity(word.len() + 1);
        key.push(g);
        key.extend_from_slice(word);
        if let Some(t) = self.memo.get(key.as_slice()) {
            return t.clone();
        }
        let x1 = word[0];
        let rest = &word[1..];
        let mut out = BTreeMap::new();
        // x1 (g X)
        let mut inner = BTreeMap::new();
        self.act_into(g, rest, &RationalFunction::one(), &mut inner);
        for (m, c) in inner {
            if !c.is_zero() {
                self.act_into(x1, m.symbols(), &c, &mut out);
            }
        }
        // [g, x1] X
        let (lin, central) = symbol_bracket(self.lie(), &self.spec.params, g, x1);
        for (s, r) in lin {
            self.act_into(s, rest, &RationalFunction::from_rational(r), &mut out);
        }
        if !central.is_zero() {
            accumulate(&mut out, PBWMonomial(rest.to_vec()), central);
        }
        let terms: Terms = Arc::new(out.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.memo.insert(key, terms.clone());
        terms
    }

    /// Independent reduction: repeatedly swap the leftmost adjacent pair that
    /// is out of order (annihilators sort after creation symbols), until each
    /// word is canonical or ends in an annihilator.
    pub fn normal_order_bubble(&self, word: &[GeneratorSymbol]) -> Result<ModuleVector> {
        self.check_quantum()?;
        for s in word {
            self.spec.check_symbol(*s)?;
        }
        let n = self.spec.level_structure;
        self.check_weight(word.iter().map(|s| s.weight(n)).sum())?;
        let key = |s: GeneratorSymbol| (!s.is_creation(n), s);
        let mut pending: BTreeMap<Vec<GeneratorSymbol>, RationalFunction> = BTreeMap::new();
        pending.insert(word.to_vec(), RationalFunction::one());
        let mut done = BTreeMap::new();
        while let Some((w, c)) = pending.pop_first() {
            if c.is_zero() || w.last().is_some_and(|s| !s.is_creation(n)) {
                continue;
            }
            let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| key(w[i]) > key(w[i + 1])) else {
                accumulate(&mut done, PBWMonomial(w), c);
                continue;
            };
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            accumulate_word(&mut pending, swapped, c.clone());
            let (lin, central) = symbol_bracket(self.lie(), &self.spec.params, w[i], w[i + 1]);
            for (s, r) in lin {
                let mut nw = w[..i].to_vec();
                nw.push(s);
                nw.extend_from_slice(&w[i + 2..]);
                accumulate_word(&mut pending, nw, c.scale(&r));
            }
            if !central.is_zero() {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(&w[i + 2..]);
                accumulate_word(&mut pending, nw, &c * &central);
            }
        }
        Ok(finish(done))
    }

    /// Canonical monomials of filtration weight exactly `weight` (conformal
    /// degree when `n = 0`), in lexicographic symbol order.
    pub fn enumerate_basis(&self, weight: i64) -> Result<Arc<Vec<PBWMonomial>>> {
        if weight < 0 {
            return Ok(Arc::new(Vec::new()));
        }
        self.check_weight(weight)?;
        Ok(self.basis_unchecked(weight))
    }

    pub(crate) fn basis_unchecked(&self, weight: i64) -> Arc<Vec<PBWMonomial>> {
        if let Some(b) = self.basis.get(&weight) {
            return b.clone();
        }
        let syms = self.creation_symbols(weight);
        let n = self.spec.level_structure;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            syms: &[GeneratorSymbol],
            start: usize,
            left: i64,
            n: i64,
            cur: &mut Vec<GeneratorSymbol>,
            out: &mut Vec<PBWMonomial>,
        ) {
            if left == 0 {
                out.push(PBWMonomial(cur.clone()));
                return;
            }
            for i in start..syms.len() {
                let w = syms[i].weight(n);
                if w <= left {
                    cur.push(syms[i]);
                    rec(syms, i, left - w, n, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&syms, 0, weight, n, &mut cur, &mut out);
        let out = Arc::new(out);
        self.basis.insert(weight, out.clone());
        out
    }

    /// Creation symbols of weight `<= max_weight`, in canonical order.
    pub fn creation_symbols(&self, max_weight: i64) -> Vec<GeneratorSymbol> {
        let n = self.spec.level_structure;
        let mut syms = Vec::new();
        if self.spec.has_j() {
            for m in (n - max_weight)..n {
                for a in 0..self.spec.lie_dim() {
                    syms.push(GeneratorSymbol::j(a, m));
                }
            }
        }
        if self.spec.has_l() {
            for m in (2 * n - max_weight)..(2 * n - 1) {
                syms.push(GeneratorSymbol::l(m));
            }
        }
        syms.sort_unstable();
        syms
    }

    /// All canonical monomials of weight `<= max_weight`.
    pub fn basis_up_to(&self, max_weight: i64) -> Vec<PBWMonomial> {
        (0..=max_weight)
            .flat_map(|w| self.basis_unchecked(w).as_ref().clone())
            .collect()
    }

    /// Basis monomials on which a composite of the given operators stays
    /// inside the truncation: weight `<= D - sum max(|m|, w(g))`.
    pub fn admissible_basis(&self, ops: &[GeneratorSymbol]) -> Vec<PBWMonomial> {
        let n = self.spec.level_structure;
        let cost: i64 = ops.iter().map(|g| g.mode().abs().max(g.weight(n))).sum();
        let budget = self.spec.truncation_degree - cost;
        if budget < 0 {
            return Vec::new();
        }
        self.basis_up_to(budget)
    }

    /// Commutative product in the classical regime.
    pub fn classical_product(&self, v: &ModuleVector, w: &ModuleVector) -> Result<ModuleVector> {
        if self.spec.regime != Regime::Classical {
            return Err(Error::Domain("classical product needs the classical regime".into()));
        }
        let n = self.spec.level_structure;
        if let (Some(a), Some(b)) = (v.max_weight(n), w.max_weight(n)) {
            self.check_weight(a + b)?;
        }
        Ok(self.product_unchecked(v, w))
    }

    pub(crate) fn product_unchecked(&self, v: &ModuleVector, w: &ModuleVector) -> ModuleVector {
        let mut out = BTreeMap::new();
        for (m1, c1) in v.terms() {
            for (m2, c2) in w.terms() {
                accumulate(&mut out, m1.merge(m2), c1 * c2);
            }
        }
        finish(out)
    }
}

fn accumulate(out: &mut BTreeMap<PBWMonomial, RationalFunction>, m: PBWMonomial, c: RationalFunction) {
    match out.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            *e.get_mut() = s;
        }
    }
}

fn accumulate_word(
    out: &mut BTreeMap<Vec<GeneratorSymbol>, RationalFunction>,
    w: Vec<GeneratorSymbol>,
    c: RationalFunction,
) {
    let e = out.entry(w).or_insert_with(RationalFunction::zero);
    *e = &*e + &c;
}

fn finish(out: BTreeMap<PBWMonomial, RationalFunction>) -> ModuleVector {
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
