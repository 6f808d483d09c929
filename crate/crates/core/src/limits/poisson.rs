use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{symbol_bracket, GeneratorSymbol, ModuleVector, PBWMonomial, Params, Regime, VacuumModule, VacuumModuleSpec};
use crate::lie::SimpleLieAlgebra;
use crate::scalars::{Rational, RationalFunction};

/// Generator brackets of the classical limit:
/// `{J^a_p, J^b_q} = [J^a, J^b]_{p+q} + p lambda (J^a, J^b) delta`,
/// `{L_p, L_q} = (p - q) L_{p+q} + mu (p^3 - p)/12 delta`,
/// `{L_p, J_q} = -q J_{p+q}` (all symbols barred).
#[derive(Clone, Debug)]
pub struct PoissonBracketTable {
    lie: Option<Arc<SimpleLieAlgebra>>,
    /// The quantum bracket with `k -> lambda`, `c -> mu`.
    params: Params,
}

pub type SymbolBracket = (Vec<(GeneratorSymbol, Rational)>, RationalFunction);

impl PoissonBracketTable {
    pub fn new(spec: &VacuumModuleSpec) -> Self {
        let mut params = spec.params.clone();
        params.k = spec.params.lambda.clone();
        params.c = spec.params.mu.clone();
        PoissonBracketTable {
            lie: spec.lie.clone(),
            params,
        }
    }

    pub fn bracket(&self, x: GeneratorSymbol, y: GeneratorSymbol) -> SymbolBracket {
        symbol_bracket(self.lie.as_deref(), &self.params, x, y)
    }

    /// `{x, {y, z}}` expanded as symbols plus a scalar.
    fn nested(&self, x: GeneratorSymbol, y: GeneratorSymbol, z: GeneratorSymbol) -> Vec<(Option<GeneratorSymbol>, RationalFunction)> {
        let (lin, _) = self.bracket(y, z);
        let mut out = Vec::new();
        for (s, r) in lin {
            let (lin2, c2) = self.bracket(x, s);
            for (t, r2) in lin2 {
                out.push((Some(t), RationalFunction::from_rational(&r * &r2)));
            }
            out.push((None, c2.scale(&r)));
        }
        out
    }

    pub fn antisymmetry_violation(&self, syms: &[GeneratorSymbol]) -> Option<String> {
        for &x in syms {
            for &y in syms {
                let (l1, c1) = self.bracket(x, y);
                let (l2, c2) = self.bracket(y, x);
                let mut acc: std::collections::BTreeMap<GeneratorSymbol, Rational> = Default::default();
                for (s, r) in l1.into_iter().chain(l2) {
                    *acc.entry(s).or_insert_with(Rational::zero) += &r;
                }
                if acc.values().any(|r| !r.is_zero()) || !(&c1 + &c2).is_zero() {
                    return Some(format!("{{{x:?},{y:?}}} + {{{y:?},{x:?}}} != 0"));
                }
            }
        }
        None
    }

    pub fn jacobi_violation(&self, syms: &[GeneratorSymbol]) -> Option<String> {
        for &x in syms {
            for &y in syms {
                for &z in syms {
                    let mut acc: std::collections::BTreeMap<Option<GeneratorSymbol>, RationalFunction> =
                        Default::default();
                    for (s, c) in self
                        .nested(x, y, z)
                        .into_iter()
                        .chain(self.nested(y, z, x))
                        .chain(self.nested(z, x, y))
                    {
                        let e = acc.entry(s).or_insert_with(RationalFunction::zero);
                        *e = &*e + &c;
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        return Some(format!("Jacobi fails on ({x:?}, {y:?}, {z:?})"));
                    }
                }
            }
        }
        None
    }

    /// `{x, y}` as an element of the classical module: creation symbols
    /// become degree-one monomials, the central term a multiple of `vac`.
    pub fn bracket_vector(&self, x: GeneratorSymbol, y: GeneratorSymbol, n: i64) -> ModuleVector {
        let (lin, central) = self.bracket(x, y);
        let mut v = ModuleVector::zero();
        for (s, r) in lin {
            if s.is_creation(n) {
                v.add_term(PBWMonomial::from_symbols(vec![s]), &RationalFunction::from_rational(r));
            }
        }
        v.add_term(PBWMonomial::vacuum(), &central);
        v
    }
}

/// Leibniz extension of the table to polynomials in the creation symbols.
///
/// Only level structures `n <= 1` are closed: for `n >= 2` the bracket of
/// two creation symbols can produce an annihilation symbol.
pub fn classical_poisson(
    module: &VacuumModule,
    v: &ModuleVector,
    w: &ModuleVector,
    table: &PoissonBracketTable,
) -> Result<ModuleVector> {
    let spec = module.spec();
    if spec.regime != Regime::Classical {
        return Err(Error::Domain("Poisson bracket needs the classical regime".into()));
    }
    let n = spec.level_structure;
    if n >= 2 {
        return Err(Error::Domain(
            "creation symbols are not closed under the bracket for n >= 2".into(),
        ));
    }
    if let (Some(a), Some(b)) = (v.max_weight(n), w.max_weight(n)) {
        module.check_weight(a + b)?;
    }
    let mut out = ModuleVector::zero();
    for (m1, c1) in v.terms() {
        for (m2, c2) in w.terms() {
            let c = c1 * c2;
            for (i, x) in m1.symbols().iter().enumerate() {
                let r1 = remove_at(m1, i);
                for (j, y) in m2.symbols().iter().enumerate() {
                    let rest = ModuleVector::from_monomial(r1.merge(&remove_at(m2, j)));
                    let b = table.bracket_vector(*x, *y, n);
                    out.add_scaled(&module.product_unchecked(&b, &rest), &c);
                }
            }
        }
    }
    Ok(out)
}

fn remove_at(m: &PBWMonomial, i: usize) -> PBWMonomial {
    let mut s = m.symbols().to_vec();
    s.remove(i);
    PBWMonomial::from_symbols(s)
}
