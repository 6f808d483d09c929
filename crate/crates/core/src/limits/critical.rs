use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule};
use crate::report::{vector_witness, Check, FirstFailure, Witness};
use crate::scalars::{Center, Param, Rational, RationalFunction};
use crate::sugawara::Sugawara;

/// `S_bar_m = (k + h^vee) S_m = (k + h^vee) L_m - (1/2) sum :J^a J_a:_m` on a
/// semidirect module with symbolic `k`, studied near `k = -h^vee`.
pub struct CriticalLevel {
    sug: Sugawara,
}

/// Laurent data of one coefficient at `k = -h^vee`.
struct Local {
    leading: Option<i64>,
    linear: RationalFunction,
}

impl CriticalLevel {
    pub fn new(module: Arc<VacuumModule>) -> Result<Self> {
        if module.spec().params.k != RationalFunction::param(Param::K) {
            return Err(Error::Domain("critical-level analysis needs symbolic k".into()));
        }
        Ok(CriticalLevel {
            sug: Sugawara::new(module)?,
        })
    }

    pub fn module(&self) -> &VacuumModule {
        self.sug.module()
    }

    pub fn critical_k(&self) -> Rational {
        Rational::from_int(-self.sug.dual_coxeter())
    }

    /// `mu_g = h^vee dim g`
    pub fn mu_g(&self) -> i64 {
        self.sug.dual_coxeter() * self.module().spec().lie_dim() as i64
    }

    pub fn sbar(&self, m: i64, v: &ModuleVector) -> ModuleVector {
        let l = self.module().act(GeneratorSymbol::l(m), v).scale(self.sug.shift());
        l.sub(&self.sug.segal(m, v))
    }

    pub fn sbar_bracket(&self, l: i64, m: i64, v: &ModuleVector) -> ModuleVector {
        self.sbar(l, &self.sbar(m, v)).sub(&self.sbar(m, &self.sbar(l, v)))
    }

    fn local(&self, f: &RationalFunction) -> Local {
        let s = f.series(Param::K, &Center::At(self.critical_k()), 1);
        Local {
            leading: s.leading,
            linear: s.coeff(1),
        }
    }

    /// Value at `k = -h^vee`; `S_bar` is polynomial in `k`, so no poles.
    pub fn at_critical(&self, v: &ModuleVector) -> Result<ModuleVector> {
        let crit = self.critical_k();
        v.try_map_coeffs(|_, c| c.eval_at(Param::K, crit.clone()))
    }

    fn admissible(&self, l: i64, m: i64) -> Vec<PBWMonomial> {
        self.module()
            .admissible_basis(&[GeneratorSymbol::l(l), GeneratorSymbol::l(m)])
    }

    /// Divisibility by `k + h^vee`, vanishing at the critical level, and the
    /// linear coefficient against `(l-m) S_bar_{l+m}|crit + (mu_g/12)(l^3-l) delta`.
    pub fn critical_bracket(&self, l: i64, m: i64) -> Vec<Check> {
        let module = self.module();
        let id = format!("critical/[Sbar_{l},Sbar_{m}]");
        let mut div = FirstFailure::default();
        let mut van = FirstFailure::default();
        let mut lin = FirstFailure::default();
        let central = Rational::new(self.mu_g() * (l * l * l - l), 12);
        for b in self.admissible(l, m) {
            let v = ModuleVector::from_monomial(b);
            let input = module.format_vector(&v);
            let br = self.sbar_bracket(l, m, &v);
            let mut linear = ModuleVector::zero();
            for (mono, c) in br.terms() {
                let loc = self.local(c);
                if loc.leading.is_some_and(|e| e < 1) {
                    div.record(Some(Witness {
                        input: input.clone(),
                        monomial: module.format_monomial(mono),
                        lhs: format!("order {} at k = {}", loc.leading.unwrap(), self.critical_k()),
                        rhs: "order >= 1".into(),
                    }));
                }
                match c.eval_at(Param::K, self.critical_k()) {
                    Ok(x) if x.is_zero() => {}
                    other => van.record(Some(Witness {
                        input: input.clone(),
                        monomial: module.format_monomial(mono),
                        lhs: other.map(|x| x.to_string()).unwrap_or_else(|e| e.to_string()),
                        rhs: "0".into(),
                    })),
                }
                linear.add_term(mono.clone(), &loc.linear);
            }
            let mut rhs = match self.at_critical(&self.sbar(l + m, &v)) {
                Ok(x) => x.scale_rational(&Rational::from_int(l - m)),
                Err(e) => {
                    lin.record(Some(Witness {
                        input: input.clone(),
                        monomial: "-".into(),
                        lhs: "-".into(),
                        rhs: e.to_string(),
                    }));
                    continue;
                }
            };
            if l + m == 0 {
                rhs.add_scaled(&v, &RationalFunction::from_rational(central.clone()));
            }
            lin.record(vector_witness(module, &input, &linear, &rhs));
        }
        vec![
            Check::new(
                format!("{id}/divisible"),
                "[Sbar_l,Sbar_m] v",
                "(k + h) * (polynomial in k)",
                div.0,
            ),
            Check::new(
                format!("{id}/vanishes-at-critical"),
                "[Sbar_l,Sbar_m] v at k = -h",
                "0",
                van.0,
            ),
            Check::new(
                format!("{id}/linear-coefficient"),
                "coefficient of (k + h)^1 in [Sbar_l,Sbar_m] v (computed central term ((k+h)c - k dim g)/12)",
                format!("(l-m) Sbar_{{l+m}}|crit v + (mu_g/12)(l^3-l) delta v, mu_g = {}", self.mu_g()),
                lin.0,
            ),
        ]
    }

    /// `[S_bar_m, J^a_l] = 0`, exactly in `k` (hence also at the critical level).
    pub fn j_commutation(&self, m: i64, a: usize, l: i64) -> Check {
        let module = self.module();
        let j = GeneratorSymbol::j(a, l);
        let id = format!("critical/[Sbar_{m},{}]", module.symbol_name(j));
        let mut fail = FirstFailure::default();
        for b in module.admissible_basis(&[GeneratorSymbol::l(m), j]) {
            let v = ModuleVector::from_monomial(b);
            let lhs = self.sbar(m, &module.act(j, &v)).sub(&module.act(j, &self.sbar(m, &v)));
            fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &ModuleVector::zero()));
            if fail.failed() {
                break;
            }
        }
        Check::new(id, "[Sbar_m,J^a_l] v", "0", fail.0)
    }

    /// `[S_bar_m, L_l] = (m-l) S_bar_{l+m} + ((k dim g - (k+h)c)/12)(l^3-l) delta`,
    /// which at `k = -h^vee` is `(m-l) S_bar_{l+m} - (mu_g/12)(l^3-l) delta`.
    pub fn l_commutation(&self, m: i64, l: i64) -> Check {
        let module = self.module();
        let id = format!("critical/[Sbar_{m},L_{l}]");
        let p = &module.spec().params;
        let dim = RationalFunction::from_int(module.spec().lie_dim() as i64);
        let central = (&(&p.k * &dim) - &(self.sug.shift() * &p.c)).scale(&Rational::new(l * l * l - l, 12));
        let mut fail = FirstFailure::default();
        let lsym = GeneratorSymbol::l(l);
        for b in module.admissible_basis(&[GeneratorSymbol::l(m), lsym]) {
            let v = ModuleVector::from_monomial(b);
            let lhs = self.sbar(m, &module.act(lsym, &v)).sub(&module.act(lsym, &self.sbar(m, &v)));
            let mut rhs = self.sbar(l + m, &v).scale_rational(&Rational::from_int(m - l));
            if l + m == 0 {
                rhs.add_scaled(&v, &central);
            }
            let input = module.format_vector(&v);
            fail.record(vector_witness(module, &input, &lhs, &rhs));
            if !fail.failed() {
                // the same identity after specializing to k = -h
                let (a, b) = (self.at_critical(&lhs), self.at_critical(&rhs));
                if let (Ok(a), Ok(b)) = (a, b) {
                    fail.record(vector_witness(module, &input, &a, &b));
                }
            }
            if fail.failed() {
                break;
            }
        }
        Check::new(
            id,
            "[Sbar_m,L_l] v",
            "(m-l) Sbar_{l+m} v + ((k dim g - (k+h)c)/12)(l^3-l) delta v",
            fail.0,
        )
    }

    /// Central function of the critical Poisson bracket: the `vac`
    /// coefficient of the linear term of `[S_bar_l, S_bar_{-l}] vac` minus
    /// `2l S_bar_0|crit vac`. `None` when `vac` is not admissible for `l`.
    pub fn central_function(&self, l: i64) -> Option<RationalFunction> {
        let ops = [GeneratorSymbol::l(l), GeneratorSymbol::l(-l)];
        if self.module().admissible_basis(&ops).is_empty() {
            return None;
        }
        let vac = ModuleVector::vacuum();
        let vm = PBWMonomial::vacuum();
        let br = self.sbar_bracket(l, -l, &vac);
        let lin = self.local(&br.coeff(&vm)).linear;
        let s0 = self.at_critical(&self.sbar(0, &vac)).ok()?.coeff(&vm);
        Some(&lin - &s0.scale(&Rational::from_int(2 * l)))
    }
}
