use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use crate::report::{vector_witness, Check, FirstFailure, Witness};
use crate::scalars::{Center, Param, Rational, RationalFunction};
use crate::sugawara::Sugawara;

use super::poisson::PoissonBracketTable;

/// The limit `k, c -> infinity` along `lambda/k = mu/c`.
///
/// Vectors are written in the rescaled generators `x_bar = eps x`,
/// `eps = lambda/k`: a coefficient `f` of a quantum monomial of length `r`
/// becomes `f eps^{-r}` in bar coordinates. Limits are the `k^0` terms of
/// the expansion at `k = infinity`, with `lambda, mu` fixed.
pub struct InfiniteLevel {
    sug: Sugawara,
    eps: RationalFunction,
    eps_inv: RationalFunction,
    /// `lambda^2 / k`
    prefactor: RationalFunction,
}

impl InfiniteLevel {
    /// Substitutes `c = k mu / lambda` into a spec with symbolic `k`.
    pub fn new(spec: VacuumModuleSpec) -> Result<Self> {
        let p = &spec.params;
        if p.k != RationalFunction::param(Param::K) {
            return Err(Error::Domain("infinite-level analysis needs symbolic k".into()));
        }
        if p.lambda.is_zero() {
            return Err(Error::Pole {
                factor: "lambda".into(),
            });
        }
        let c = (&p.k * &p.mu).checked_div(&p.lambda)?;
        let eps = p.lambda.checked_div(&p.k)?;
        let eps_inv = eps.recip()?;
        let prefactor = (&p.lambda * &p.lambda).checked_div(&p.k)?;
        let spec = spec.with_param(Param::C, c);
        let module = Arc::new(VacuumModule::new(spec)?);
        Ok(InfiniteLevel {
            sug: Sugawara::new(module)?,
            eps,
            eps_inv,
            prefactor,
        })
    }

    pub fn module(&self) -> &VacuumModule {
        self.sug.module()
    }

    pub fn lambda(&self) -> &RationalFunction {
        &self.module().spec().params.lambda
    }

    pub fn mu(&self) -> &RationalFunction {
        &self.module().spec().params.mu
    }

    fn eps_pow(&self, e: i64) -> RationalFunction {
        let base = if e >= 0 { &self.eps } else { &self.eps_inv };
        let mut out = RationalFunction::one();
        for _ in 0..e.abs() {
            out = &out * base;
        }
        out
    }

    pub fn to_bar(&self, v: &ModuleVector) -> ModuleVector {
        v.try_map_coeffs(|m, c| Ok(c * &self.eps_pow(-(m.len() as i64))))
            .expect("infallible")
    }

    pub fn from_bar(&self, v: &ModuleVector) -> ModuleVector {
        v.try_map_coeffs(|m, c| Ok(c * &self.eps_pow(m.len() as i64)))
            .expect("infallible")
    }

    /// `x_bar v_bar` in bar coordinates.
    pub fn apply_bar(&self, g: GeneratorSymbol, v: &ModuleVector) -> ModuleVector {
        self.to_bar(&self.module().act(g, &self.from_bar(v)).scale(&self.eps))
    }

    /// `S_bar_m v_bar = (lambda^2/k) S_m v_bar` in bar coordinates.
    pub fn sbar_bar(&self, m: i64, v: &ModuleVector) -> ModuleVector {
        let u = self.from_bar(v);
        self.to_bar(&self.sug.shifted_unchecked(m, &u).scale(&self.prefactor))
    }

    /// `(1/eps) [S_bar_l, S_bar_m] v_bar` in bar coordinates.
    pub fn scaled_bracket_bar(&self, l: i64, m: i64, v: &ModuleVector) -> ModuleVector {
        let u = self.from_bar(v);
        let a = self.sug.shifted_unchecked(l, &self.sug.shifted_unchecked(m, &u));
        let b = self.sug.shifted_unchecked(m, &self.sug.shifted_unchecked(l, &u));
        let scale = &(&self.prefactor * &self.prefactor) * &self.eps_inv;
        self.to_bar(&a.sub(&b).scale(&scale))
    }

    /// Term-wise `k -> infinity` limit; a coefficient growing with `k` is
    /// reported as `Err((monomial, order))`.
    pub fn limit(&self, v: &ModuleVector) -> std::result::Result<ModuleVector, (PBWMonomial, i64)> {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            let s = c.series(Param::K, &Center::Infinity, 0);
            if let Some(e) = s.leading {
                if e < 0 {
                    return Err((m.clone(), e));
                }
            }
            out.add_term(m.clone(), &s.coeff(0));
        }
        Ok(out)
    }

    fn pole_witness(&self, input: &str, (m, e): (PBWMonomial, i64)) -> Witness {
        Witness {
            input: input.to_string(),
            monomial: self.module().format_monomial(&m),
            lhs: format!("grows like k^{}", -e),
            rhs: "finite as k -> infinity".into(),
        }
    }

    fn admissible(&self, l: i64, m: i64) -> Vec<PBWMonomial> {
        self.module()
            .admissible_basis(&[GeneratorSymbol::l(l), GeneratorSymbol::l(m)])
    }

    /// `lim (1/eps)[S_bar_l, S_bar_m] v_bar` against
    /// `lambda ((l-m) lim S_bar_{l+m} v_bar + (lambda mu/12)(l^3-l) delta v_bar)`.
    pub fn classical_bracket(&self, l: i64, m: i64) -> Check {
        let module = self.module();
        let lam = self.lambda().clone();
        let central = (&(&lam * &lam) * self.mu()).scale(&Rational::new(l * l * l - l, 12));
        let mut fail = FirstFailure::default();
        for b in self.admissible(l, m) {
            let v = ModuleVector::from_monomial(b);
            let input = module.format_vector(&v);
            let lhs = match self.limit(&self.scaled_bracket_bar(l, m, &v)) {
                Ok(x) => x,
                Err(p) => {
                    fail.record(Some(self.pole_witness(&input, p)));
                    break;
                }
            };
            let mut rhs = match self.limit(&self.sbar_bar(l + m, &v)) {
                Ok(x) => x.scale(&lam.scale(&Rational::from_int(l - m))),
                Err(p) => {
                    fail.record(Some(self.pole_witness(&input, p)));
                    break;
                }
            };
            if l + m == 0 {
                rhs.add_scaled(&v, &central);
            }
            fail.record(vector_witness(module, &input, &lhs, &rhs));
            if fail.failed() {
                break;
            }
        }
        Check::new(
            format!("classical/[Sbar_{l},Sbar_{m}]"),
            "lim_{k->inf} (k/lambda)[Sbar_l,Sbar_m] vbar, c = k mu/lambda",
            "lambda((l-m) lim Sbar_{l+m} vbar + (lambda mu/12)(l^3-l) delta vbar)",
            fail.0,
        )
    }

    /// `(lambda^2/k)(k dim g/(k+h)) -> 0`.
    pub fn sugawara_charge_vanishes(&self) -> Check {
        let f = &self.prefactor * &self.sug.central_charge();
        let s = f.series(Param::K, &Center::Infinity, 0);
        let w = (!s.coeff(0).is_zero() || s.leading.is_some_and(|e| e < 0)).then(|| Witness {
            input: "-".into(),
            monomial: "-".into(),
            lhs: f.to_string(),
            rhs: "-> 0".into(),
        });
        Check::new(
            "classical/sugawara-charge-vanishes",
            "lim (lambda^2/k)(k dim g/(k+h))",
            "0",
            w,
        )
    }

    /// `lim S_bar_m vac`, bar coordinates.
    pub fn sbar_limit_on_vacuum(&self, m: i64) -> Result<ModuleVector> {
        self.limit(&self.sbar_bar(m, &ModuleVector::vacuum()))
            .map_err(|(_, e)| Error::Pole {
                factor: format!("k^{}", -e),
            })
    }

    /// At `lambda = 0` the limit of `S_bar_{-2} vac` is the symbol
    /// `-(1/2) sum J_bar^a_{-1} J_bar_{a,-1}` (commutative product), and no
    /// `lim S_bar_m vac` has `L` content.
    pub fn symbol_limit(&self, modes: &[i64]) -> Check {
        let module = self.module();
        let mut fail = FirstFailure::default();
        let at_zero = |v: &ModuleVector| v.try_map_coeffs(|_, c| c.eval_at(Param::Lambda, Rational::zero()));
        if module.level_structure() == 0 {
            let g = module.lie().expect("semidirect");
            let mut expect = ModuleVector::zero();
            for (a, b, kinv) in g.casimir_pairs() {
                let m = PBWMonomial::from_symbols(vec![GeneratorSymbol::j(a, -1), GeneratorSymbol::j(b, -1)]);
                expect.add_term(m, &RationalFunction::from_rational(&kinv * &Rational::new(-1, 2)));
            }
            match self.sbar_limit_on_vacuum(-2).and_then(|v| at_zero(&v)) {
                Ok(v) => fail.record(vector_witness(module, "Sbar_{-2} vac, lambda = 0", &v, &expect)),
                Err(e) => fail.record(Some(Witness {
                    input: "Sbar_{-2} vac".into(),
                    monomial: "-".into(),
                    lhs: e.to_string(),
                    rhs: "-".into(),
                })),
            }
        }
        for &m in modes {
            if module.admissible_basis(&[GeneratorSymbol::l(m)]).is_empty() {
                continue;
            }
            if let Ok(v) = self.sbar_limit_on_vacuum(m).and_then(|v| at_zero(&v)) {
                if let Some(mono) = v.terms().keys().find(|x| x.l_count() > 0) {
                    fail.record(Some(Witness {
                        input: format!("Sbar_{m} vac, lambda = 0"),
                        monomial: module.format_monomial(mono),
                        lhs: v.coeff(mono).to_string(),
                        rhs: "0 (pure Kac-Moody symbol)".into(),
                    }));
                }
            }
        }
        Check::new(
            "classical/symbol-at-lambda-0",
            "lim Sbar_m vac at lambda = 0",
            "-(1/2) sum Jbar^a_{-1} Jbar_{a,-1} vac for m = -2; no L content",
            fail.0,
        )
    }

    /// `lim (1/eps)[x_bar, y_bar] v_bar` against the classical table.
    pub fn poisson_limit_check(&self, table: &PoissonBracketTable, x: GeneratorSymbol, y: GeneratorSymbol) -> Check {
        let module = self.module();
        let n = module.level_structure();
        let (lin, central) = table.bracket(x, y);
        let mut fail = FirstFailure::default();
        for b in module.admissible_basis(&[x, y]) {
            let v = ModuleVector::from_monomial(b.clone());
            let input = module.format_vector(&v);
            let u = self.from_bar(&v);
            let q = self
                .module()
                .act(x, &self.module().act(y, &u))
                .sub(&self.module().act(y, &self.module().act(x, &u)))
                .scale(&self.eps);
            let lhs = match self.limit(&self.to_bar(&q)) {
                Ok(z) => z,
                Err(p) => {
                    fail.record(Some(self.pole_witness(&input, p)));
                    break;
                }
            };
            let mut rhs = v.scale(&central);
            for (s, r) in &lin {
                if s.is_creation(n) {
                    let prod = PBWMonomial::from_symbols(vec![*s]).merge(&b);
                    rhs.add_term(prod, &RationalFunction::from_rational(r.clone()));
                }
            }
            fail.record(vector_witness(module, &input, &lhs, &rhs));
            if fail.failed() {
                break;
            }
        }
        Check::new(
            format!("poisson/[{},{}]", module.symbol_name(x), module.symbol_name(y)),
            "lim (1/eps)[xbar,ybar] vbar",
            "{xbar,ybar} . vbar (classical table)",
            fail.0,
        )
    }

    /// Central function of the limit bracket: `vac` coefficient of
    /// `lim (1/eps)[S_bar_l, S_bar_{-l}] vac - 2 l lambda lim S_bar_0 vac`.
    pub fn central_function(&self, l: i64) -> Option<RationalFunction> {
        let ops = [GeneratorSymbol::l(l), GeneratorSymbol::l(-l)];
        if self.module().admissible_basis(&ops).is_empty() {
            return None;
        }
        let vac = ModuleVector::vacuum();
        let vm = PBWMonomial::vacuum();
        let br = self.limit(&self.scaled_bracket_bar(l, -l, &vac)).ok()?;
        let s0 = self.limit(&self.sbar_bar(0, &vac)).ok()?;
        let lam2l = self.lambda().scale(&Rational::from_int(2 * l));
        Some(&br.coeff(&vm) - &(&s0.coeff(&vm) * &lam2l))
    }
}
