//! Segal-Sugawara operators `L^S_n`, the shifted modes `S_m = L_m - L^S_m`,
//! the singular vector, the Virasoro embedding and the tensor isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::fock::{
    AlgebraKind, GeneratorSymbol, ModuleVector, PBWMonomial, Regime, VacuumModule, VacuumModuleSpec,
};
use crate::linalg::SparseMatrix;
use crate::scalars::{Param, Rational, RationalFunction};

/// Sugawara operators on a quantum Kac-Moody or semidirect vacuum module.
pub struct Sugawara {
    module: Arc<VacuumModule>,
    margin: i64,
    /// `k + h^vee`
    shift: RationalFunction,
    segal_memo: DashMap<(i64, PBWMonomial), Arc<ModuleVector>>,
}

impl Sugawara {
    pub fn new(module: Arc<VacuumModule>) -> Result<Self> {
        let spec = module.spec();
        if spec.kind == AlgebraKind::Virasoro || spec.regime != Regime::Quantum {
            return Err(Error::Domain(
                "Sugawara operators need a quantum Kac-Moody or semidirect module".into(),
            ));
        }
        let h = spec.lie.as_ref().expect("validated").dual_coxeter;
        let shift = &spec.params.k + &RationalFunction::from_int(h);
        if shift.is_zero() {
            return Err(Error::CriticalLevel(-h));
        }
        Ok(Sugawara {
            module,
            margin: 0,
            shift,
            segal_memo: DashMap::new(),
        })
    }

    /// Widens the summation window by `margin` modes on each side.
    pub fn with_margin(mut self, margin: i64) -> Self {
        self.margin = margin;
        self.segal_memo.clear();
        self
    }

    pub fn module(&self) -> &Arc<VacuumModule> {
        &self.module
    }

    pub fn spec(&self) -> &VacuumModuleSpec {
        self.module.spec()
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.spec().lie.as_ref().expect("validated").dual_coxeter
    }

    /// `k * dim g / (k + h^vee)`
    pub fn central_charge(&self) -> RationalFunction {
        let dim = self.spec().lie_dim() as i64;
        (&self.spec().params.k * &RationalFunction::from_int(dim))
            .checked_div(&self.shift)
            .expect("shift is nonzero")
    }

    /// `c_k = c - k dim g / (k + h^vee)`
    pub fn c_k(&self) -> RationalFunction {
        &self.spec().params.c - &self.central_charge()
    }

    pub fn shift(&self) -> &RationalFunction {
        &self.shift
    }

    fn check_result_weight(&self, n0: i64, v: &ModuleVector) -> Result<()> {
        let n = self.module.level_structure();
        if let Some(w) = v.max_weight(n) {
            self.module.check_weight(w + GeneratorSymbol::l(n0).weight(n))?;
        }
        Ok(())
    }

    /// `L^S_{n0} v`.
    pub fn sugawara_mode(&self, n0: i64, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_result_weight(n0, v)?;
        Ok(self.sugawara_unchecked(n0, v))
    }

    pub(crate) fn sugawara_unchecked(&self, n0: i64, v: &ModuleVector) -> ModuleVector {
        let inv = self.shift.recip().expect("shift is nonzero");
        self.segal(n0, v).scale(&inv)
    }

    /// `(1/2) sum_{a,b} kappa^{ab} :J^a J^b:_{n0} v`, i.e. `(k + h^vee) L^S_{n0} v`.
    ///
    /// On a monomial of weight `w` in a module with level structure `n`,
    /// `J_p` kills it once `p > w + n`. Both orderings of the normal-ordered
    /// product put the higher mode on the right, so only
    /// `m` in `[n0 - W, W]` with `W = w + n + |n0| + 2` can contribute.
    pub fn segal(&self, n0: i64, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            let t = self.segal_mono(n0, m);
            out.add_scaled(&t, c);
        }
        out
    }

    fn segal_mono(&self, n0: i64, mono: &PBWMonomial) -> Arc<ModuleVector> {
        let key = (n0, mono.clone());
        if let Some(t) = self.segal_memo.get(&key) {
            return t.clone();
        }
        let lie = self.spec().lie.as_ref().expect("validated").clone();
        let n = self.module.level_structure();
        let w = mono.weight(n);
        let window = w + n + n0.abs() + 2 + self.margin;
        let base = ModuleVector::from_monomial(mono.clone());
        let mut right: HashMap<GeneratorSymbol, ModuleVector> = HashMap::new();
        let mut out = ModuleVector::zero();
        let half = Rational::new(1, 2);
        for (a, b, kinv) in lie.casimir_pairs() {
            let coef = RationalFunction::from_rational(&kinv * &half);
            for m in (n0 - window)..=window {
                let (left, rsym) = if m < 0 {
                    (GeneratorSymbol::j(a, m), GeneratorSymbol::j(b, n0 - m))
                } else {
                    (GeneratorSymbol::j(b, n0 - m), GeneratorSymbol::j(a, m))
                };
                let r = right
                    .entry(rsym)
                    .or_insert_with(|| self.module.act(rsym, &base));
                if r.is_zero() {
                    continue;
                }
                let t = self.module.act(left, r);
                out.add_scaled(&t, &coef);
            }
        }
        let out = Arc::new(out);
        self.segal_memo.insert(key, out.clone());
        out
    }

    fn require_semidirect(&self) -> Result<()> {
        if self.spec().kind != AlgebraKind::Semidirect {
            return Err(Error::Domain("shifted modes need the semidirect module".into()));
        }
        Ok(())
    }

    /// `S_m v = L_m v - L^S_m v`.
    pub fn shifted_mode(&self, m: i64, v: &ModuleVector) -> Result<ModuleVector> {
        self.require_semidirect()?;
        self.check_result_weight(m, v)?;
        Ok(self.shifted_unchecked(m, v))
    }

    pub(crate) fn shifted_unchecked(&self, m: i64, v: &ModuleVector) -> ModuleVector {
        let l = self.module.act(GeneratorSymbol::l(m), v);
        l.sub(&self.sugawara_unchecked(m, v))
    }

    /// `S = S_{-2} vac`.
    pub fn singular_vector(&self) -> Result<ModuleVector> {
        self.require_semidirect()?;
        if self.module.level_structure() != 0 {
            return Err(Error::Domain("singular vector is defined for n = 0".into()));
        }
        self.shifted_mode(-2, &ModuleVector::vacuum())
    }

    /// Spec of the source `Vir_{c_k}` module: level structure `n` (same
    /// annihilation law as the target) and central charge `c_k`.
    pub fn virasoro_source_spec(&self) -> VacuumModuleSpec {
        let s = self.spec();
        VacuumModuleSpec::virasoro(s.level_structure, s.truncation_degree).with_param(Param::C, self.c_k())
    }

    /// Kac-Moody factor `V_k^n` of the tensor decomposition.
    pub fn kac_moody_source_spec(&self) -> VacuumModuleSpec {
        let s = self.spec();
        let mut km = VacuumModuleSpec::kac_moody(
            s.lie.clone().expect("validated"),
            s.level_structure,
            s.truncation_degree,
        );
        km.params = s.params.clone();
        km
    }

    fn check_source(&self, m: &PBWMonomial, want_j: bool) -> Result<()> {
        let n = self.module.level_structure();
        for s in m.symbols() {
            if s.is_j() != want_j || !s.is_creation(n) {
                return Err(Error::Domain(format!("{s:?} is not a creation symbol of the source module")));
            }
            if let GeneratorSymbol::J { a, .. } = s {
                if *a as usize >= self.spec().lie_dim() {
                    return Err(Error::AlgebraMismatch(format!("basis index {a} out of range")));
                }
            }
        }
        if m.symbols().windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("source monomial is not canonical".into()));
        }
        Ok(())
    }

    /// `L_{n_1} ... L_{n_l} vac -> S_{n_1} ... S_{n_l} vac_n`.
    pub fn embed_virasoro(&self, m: &PBWMonomial) -> Result<ModuleVector> {
        self.require_semidirect()?;
        self.check_source(m, false)?;
        self.module.check_weight(m.weight(self.module.level_structure()))?;
        Ok(self.embed_unchecked(m))
    }

    fn embed_unchecked(&self, m: &PBWMonomial) -> ModuleVector {
        let mut v = ModuleVector::vacuum();
        for s in m.symbols().iter().rev() {
            v = self.shifted_unchecked(s.mode(), &v);
        }
        v
    }

    /// `sigma(J-word vac (x) L-word vac) = J-word S-word vac_n`.
    pub fn tensor_iso(&self, jm: &PBWMonomial, vm: &PBWMonomial) -> Result<ModuleVector> {
        self.require_semidirect()?;
        self.check_source(jm, true)?;
        self.check_source(vm, false)?;
        let n = self.module.level_structure();
        self.module.check_weight(jm.weight(n) + vm.weight(n))?;
        Ok(self.tensor_unchecked(jm, vm))
    }

    fn tensor_unchecked(&self, jm: &PBWMonomial, vm: &PBWMonomial) -> ModuleVector {
        self.module.act_word(jm.symbols(), &self.embed_unchecked(vm))
    }

    /// Coefficients of `v` in the basis `{sigma(j (x) l)}`.
    ///
    /// `sigma(j (x) l) = j l vac + (terms with fewer L symbols)`, so the
    /// change of basis is unitriangular and the inverse is found by peeling
    /// off the terms with the most `L` symbols first.
    pub fn tensor_iso_inverse(&self, v: &ModuleVector) -> Result<Vec<(PBWMonomial, PBWMonomial, RationalFunction)>> {
        self.require_semidirect()?;
        let n = self.module.level_structure();
        for m in v.terms().keys() {
            self.module.check_monomial(m)?;
            self.module.check_weight(m.weight(n))?;
        }
        let mut residual = v.clone();
        let mut out = Vec::new();
        while let Some(top) = residual
            .terms()
            .keys()
            .max_by_key(|m| (m.l_count(), std::cmp::Reverse((*m).clone())))
            .cloned()
        {
            let c = residual.coeff(&top);
            let (j, l) = (top.j_part(), top.l_part());
            let image = self.tensor_unchecked(&j, &l);
            residual.add_scaled(&image, &-&c);
            out.push((j, l, c));
        }
        out.sort_by_cached_key(|(j, l, _)| j.merge(l));
        Ok(out)
    }

    /// Domain basis `(j, l)` of conformal degree `degree` and weight
    /// `<= max_weight`, ordered like the target monomial `j l`.
    pub fn tensor_block(&self, degree: i64, max_weight: i64) -> Vec<(PBWMonomial, PBWMonomial)> {
        self.module
            .basis_up_to(max_weight)
            .into_iter()
            .filter(|m| m.degree() == degree)
            .map(|m| (m.j_part(), m.l_part()))
            .collect()
    }

    /// Matrix of `sigma` on one block: column `i` is the image of the `i`-th
    /// domain pair, rows are the target monomials `j l` of the same block.
    pub fn tensor_matrix(&self, degree: i64, max_weight: i64) -> Result<(Vec<PBWMonomial>, SparseMatrix)> {
        self.require_semidirect()?;
        self.module.check_weight(max_weight)?;
        let dom = self.tensor_block(degree, max_weight);
        let rows: Vec<PBWMonomial> = dom.iter().map(|(j, l)| j.merge(l)).collect();
        let index: HashMap<&PBWMonomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = SparseMatrix::new(rows.len());
        for (col, (j, l)) in dom.iter().enumerate() {
            for (m, c) in self.tensor_unchecked(j, l).terms() {
                let r = *index.get(m).ok_or_else(|| {
                    Error::Domain("sigma leaves its degree/weight block".into())
                })?;
                mat.set(r, col, c.clone());
            }
        }
        Ok((rows, mat))
    }
}

#[cfg(test)]
mod tests;
