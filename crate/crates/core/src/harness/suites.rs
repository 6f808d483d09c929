use std::collections::BTreeMap;
use std::sync::Arc;

use super::cache::{fingerprint, CacheKey, OperatorMatrix, OperatorMatrixCache};
use super::{Suite, SuiteConfig};
use crate::error::Result;
use crate::fock::{module_generating_function, GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use crate::lie::SimpleLieAlgebra;
use crate::limits::{
    central_function_check, classical_poisson, rees_relation_check, CriticalLevel, InfiniteLevel, PoissonBracketTable,
};
use crate::report::{vector_witness, Check, FirstFailure, Witness};
use crate::scalars::{Rational, RationalFunction};
use crate::sugawara::Sugawara;

pub(super) type Task = Box<dyn FnOnce() -> Vec<Check> + Send>;

fn task(f: impl FnOnce() -> Vec<Check> + Send + 'static) -> Task {
    Box::new(f)
}

fn one(f: impl FnOnce() -> Check + Send + 'static) -> Task {
    Box::new(move || vec![f()])
}

fn r(x: i64) -> Rational {
    Rational::from_int(x)
}

fn text_witness(input: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Witness {
    Witness {
        input: input.into(),
        monomial: "-".into(),
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

fn with_params(mut spec: VacuumModuleSpec, cfg: &SuiteConfig) -> VacuumModuleSpec {
    spec.params = cfg.params.clone();
    spec
}

fn module(spec: VacuumModuleSpec) -> Result<Arc<VacuumModule>> {
    Ok(Arc::new(VacuumModule::new(spec)?))
}

fn modes(cfg: &SuiteConfig) -> std::ops::RangeInclusive<i64> {
    -cfg.mode_range..=cfg.mode_range
}

/// Generators of the module with `|m| <= N`, in canonical order.
fn symbols(m: &VacuumModule, range: i64) -> Vec<GeneratorSymbol> {
    let spec = m.spec();
    let mut out = Vec::new();
    if spec.has_j() {
        for p in -range..=range {
            for a in 0..spec.lie_dim() {
                out.push(GeneratorSymbol::j(a, p));
            }
        }
    }
    if spec.has_l() {
        for p in -range..=range {
            out.push(GeneratorSymbol::l(p));
        }
    }
    out.sort();
    out
}

pub(super) fn tasks(
    suite: Suite,
    cfg: &SuiteConfig,
    lie: &Arc<SimpleLieAlgebra>,
    cache: Option<&Arc<OperatorMatrixCache>>,
) -> Result<Vec<Task>> {
    let (n, d) = (cfg.level_structure, cfg.degree);
    match suite {
        Suite::Lie => Ok(lie_tasks(lie)),
        Suite::KacMoody => module_tasks("kac-moody", module(with_params(VacuumModuleSpec::kac_moody(lie.clone(), n, d), cfg))?, cfg),
        Suite::Virasoro => module_tasks("virasoro", module(with_params(VacuumModuleSpec::virasoro(n, d), cfg))?, cfg),
        Suite::Semidirect => module_tasks("semidirect", module(with_params(VacuumModuleSpec::semidirect(lie.clone(), n, d), cfg))?, cfg),
        Suite::Sugawara => sugawara_tasks(cfg, lie, cache),
        Suite::Shifted => shifted_tasks(cfg, lie),
        Suite::Singular => singular_tasks(cfg, lie),
        Suite::TensorIso => tensor_tasks(cfg, lie),
        Suite::Rees => rees_tasks(cfg, lie),
        Suite::Critical => critical_tasks(cfg, lie),
        Suite::Classical => classical_tasks(cfg, lie),
        Suite::Poisson => poisson_tasks(cfg, lie),
        Suite::Dimensions => dimension_tasks(cfg, lie),
        Suite::All => unreachable!("expanded by SuiteConfig::suites"),
    }
}

fn lie_tasks(lie: &Arc<SimpleLieAlgebra>) -> Vec<Task> {
    let lie = lie.clone();
    vec![task(move || {
        let mut out: Vec<Check> = lie
            .invariant_violations()
            .into_iter()
            .map(|(name, v)| {
                Check::new(
                    format!("lie/{name}"),
                    name,
                    "holds on all basis elements",
                    v.map(|msg| text_witness(lie.name.clone(), msg, "0")),
                )
            })
            .collect();
        let h = lie.dual_coxeter;
        let expect = match lie.family {
            crate::lie::Family::SL(n) => n as i64,
        };
        out.push(Check::new(
            "lie/dual-coxeter",
            format!("h^vee = {h}"),
            format!("{expect}"),
            (h != expect).then(|| text_witness(lie.name.clone(), h.to_string(), expect.to_string())),
        ));
        out
    })]
}

/// `[x, y] v` against the defining relations, written out from the
/// structure constants and the form.
fn relation_check(module: &VacuumModule, prefix: &str, x: GeneratorSymbol, y: GeneratorSymbol) -> Check {
    let p = &module.spec().params;
    let (pm, qm) = (x.mode(), y.mode());
    let (lhs_desc, rhs_desc) = match (x.is_j(), y.is_j()) {
        (true, true) => ("[J^a_p,J^b_q] v", "([J^a,J^b]_{p+q} + p k (J^a,J^b) delta_{p+q,0}) v"),
        (false, false) => ("[L_p,L_q] v", "((p-q) L_{p+q} + c (p^3-p)/12 delta_{p+q,0}) v"),
        (false, true) => ("[L_p,J^a_q] v", "-q J^a_{p+q} v"),
        (true, false) => ("[J^a_p,L_q] v", "p J^a_{p+q} v"),
    };
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[x, y]) {
        let v = ModuleVector::from_monomial(b);
        let lhs = module.act(x, &module.act(y, &v)).sub(&module.act(y, &module.act(x, &v)));
        let mut rhs = ModuleVector::zero();
        match (x, y) {
            (GeneratorSymbol::J { a, .. }, GeneratorSymbol::J { a: b, .. }) => {
                let g = module.lie().expect("J symbols need g");
                for (d, c) in &g.structure_constants[a as usize][b as usize] {
                    rhs.add_scaled(&module.act(GeneratorSymbol::j(*d, pm + qm), &v), &RationalFunction::from_rational(c.clone()));
                }
                if pm + qm == 0 {
                    let f = &g.form_matrix[a as usize][b as usize] * &r(pm);
                    rhs.add_scaled(&v, &p.k.scale(&f));
                }
            }
            (GeneratorSymbol::L { .. }, GeneratorSymbol::L { .. }) => {
                rhs.add_scaled(&module.act(GeneratorSymbol::l(pm + qm), &v), &RationalFunction::from_int(pm - qm));
                if pm + qm == 0 {
                    rhs.add_scaled(&v, &p.c.scale(&Rational::new(pm * pm * pm - pm, 12)));
                }
            }
            (GeneratorSymbol::L { .. }, GeneratorSymbol::J { a, .. }) => {
                rhs.add_scaled(&module.act(GeneratorSymbol::j(a as usize, pm + qm), &v), &RationalFunction::from_int(-qm));
            }
            (GeneratorSymbol::J { a, .. }, GeneratorSymbol::L { .. }) => {
                rhs.add_scaled(&module.act(GeneratorSymbol::j(a as usize, pm + qm), &v), &RationalFunction::from_int(pm));
            }
        }
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &rhs));
        if fail.failed() {
            break;
        }
    }
    Check::new(
        format!("{prefix}/[{},{}]", module.symbol_name(x), module.symbol_name(y)),
        lhs_desc,
        rhs_desc,
        fail.0,
    )
}

fn module_tasks(prefix: &'static str, m: Arc<VacuumModule>, cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let syms = symbols(&m, cfg.mode_range);
    let mut out = Vec::new();
    for (i, &x) in syms.iter().enumerate() {
        let m = m.clone();
        let ys: Vec<_> = syms[i..].to_vec();
        out.push(task(move || ys.into_iter().map(|y| relation_check(&m, prefix, x, y)).collect()));
    }
    {
        let m = m.clone();
        let syms = syms.clone();
        out.push(one(move || grading_check(&m, prefix, &syms)));
    }
    let m2 = m.clone();
    out.push(one(move || confluence_check(&m2, prefix)));
    Ok(out)
}

/// `x` with mode `m` lowers the conformal degree by `m`.
fn grading_check(m: &VacuumModule, prefix: &str, syms: &[GeneratorSymbol]) -> Check {
    let mut fail = FirstFailure::default();
    'outer: for &s in syms {
        for b in m.admissible_basis(&[s]) {
            let v = ModuleVector::from_monomial(b.clone());
            let want = b.degree() - s.mode();
            if let Some(t) = m.act(s, &v).terms().keys().find(|t| t.degree() != want) {
                fail.record(Some(Witness {
                    input: format!("{} . {}", m.symbol_name(s), m.format_vector(&v)),
                    monomial: m.format_monomial(t),
                    lhs: format!("degree {}", t.degree()),
                    rhs: format!("degree {want}"),
                }));
                break 'outer;
            }
        }
    }
    Check::new(format!("{prefix}/grading"), "deg(x_m v)", "deg(v) - m", fail.0)
}

/// The memoized recursive rewriter against leftmost-inversion bubble sort,
/// on all words of length 2 over `|m| <= 2` and length 3 over `|m| <= 1`.
fn confluence_check(m: &VacuumModule, prefix: &str) -> Check {
    let s2 = symbols(m, 2);
    let s1 = symbols(m, 1);
    let mut words: Vec<Vec<GeneratorSymbol>> = Vec::new();
    for &x in &s2 {
        for &y in &s2 {
            words.push(vec![x, y]);
        }
    }
    for &x in &s1 {
        for &y in &s1 {
            for &z in &s1 {
                words.push(vec![x, y, z]);
            }
        }
    }
    let mut fail = FirstFailure::default();
    for w in words {
        let (Ok(a), Ok(b)) = (m.normal_order(&w), m.normal_order_bubble(&w)) else { continue };
        let input: Vec<String> = w.iter().map(|s| m.symbol_name(*s)).collect();
        fail.record(vector_witness(m, &input.join(" "), &a, &b));
        if fail.failed() {
            break;
        }
    }
    Check::new(format!("{prefix}/confluence"), "recursive normal order", "bubble-sort normal order", fail.0)
}

fn sugawara(spec: VacuumModuleSpec) -> Result<Arc<Sugawara>> {
    Ok(Arc::new(Sugawara::new(module(spec)?)?))
}

/// Matrix of `L^S_{n0}` on the weight-`weight` basis.
pub fn sugawara_matrix(sug: &Sugawara, n0: i64, weight: i64) -> Result<OperatorMatrix> {
    let m = sug.module();
    let cols = m.enumerate_basis(weight)?;
    let images = cols
        .iter()
        .map(|b| sug.sugawara_mode(n0, &ModuleVector::from_monomial(b.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix::from_images(m, &cols, &images))
}

fn sugawara_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>, cache: Option<&Arc<OperatorMatrixCache>>) -> Result<Vec<Task>> {
    let spec = with_params(VacuumModuleSpec::kac_moody(lie.clone(), cfg.level_structure, cfg.degree), cfg);
    let m = module(spec)?;
    let sug = Arc::new(Sugawara::new(m.clone())?);
    let wide = Arc::new(Sugawara::new(m)?.with_margin(5));
    let mut out = Vec::new();
    let dim = lie.dimension();
    for n0 in modes(cfg) {
        let sug = sug.clone();
        let range = cfg.mode_range;
        out.push(task(move || {
            let mut checks = Vec::new();
            for m in -range..=range {
                for a in 0..dim {
                    checks.push(lnj_check(&sug, n0, a, m));
                }
            }
            checks
        }));
    }
    for l in modes(cfg) {
        for m in l..=cfg.mode_range {
            let sug = sug.clone();
            out.push(one(move || lns_check(&sug, l, m)));
        }
    }
    {
        let sug = sug.clone();
        out.push(one(move || central_charge_check(&sug)));
    }
    {
        let (sug, wide) = (sug.clone(), wide.clone());
        let range = cfg.mode_range;
        out.push(one(move || window_check(&sug, &wide, range)));
    }
    {
        let sug = sug.clone();
        let range = cfg.mode_range;
        out.push(task(move || quadratic_level_checks(&sug, range)));
    }
    if let Some(cache) = cache {
        let sug = sug.clone();
        let cache = cache.clone();
        let (range, d) = (cfg.mode_range, cfg.degree);
        out.push(task(move || cache_checks(&sug, &cache, range, d)));
    }
    Ok(out)
}

fn lnj_check(sug: &Sugawara, n0: i64, a: usize, m: i64) -> Check {
    let module = sug.module();
    let j = GeneratorSymbol::j(a, m);
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[GeneratorSymbol::l(n0), j]) {
        let v = ModuleVector::from_monomial(b);
        let lhs = sug
            .sugawara_unchecked(n0, &module.act(j, &v))
            .sub(&module.act(j, &sug.sugawara_unchecked(n0, &v)));
        let rhs = module.act(GeneratorSymbol::j(a, n0 + m), &v).scale_rational(&r(-m));
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &rhs));
        if fail.failed() {
            break;
        }
    }
    Check::new(
        format!("sugawara/[L^S_{n0},{}]", module.symbol_name(j)),
        "[L^S_n,J^a_m] v",
        "-m J^a_{n+m} v",
        fail.0,
    )
}

fn lns_check(sug: &Sugawara, l: i64, m: i64) -> Check {
    let module = sug.module();
    let central = sug.central_charge().scale(&Rational::new(l * l * l - l, 12));
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[GeneratorSymbol::l(l), GeneratorSymbol::l(m)]) {
        let v = ModuleVector::from_monomial(b);
        let lhs = sug
            .sugawara_unchecked(l, &sug.sugawara_unchecked(m, &v))
            .sub(&sug.sugawara_unchecked(m, &sug.sugawara_unchecked(l, &v)));
        let mut rhs = sug.sugawara_unchecked(l + m, &v).scale_rational(&r(l - m));
        if l + m == 0 {
            rhs.add_scaled(&v, &central);
        }
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &rhs));
        if fail.failed() {
            break;
        }
    }
    Check::new(
        format!("sugawara/[L^S_{l},L^S_{m}]"),
        "[L^S_l,L^S_m] v",
        format!("(l-m) L^S_{{l+m}} v + (c/12)(l^3-l) delta_{{l+m,0}} v, c = {}", sug.central_charge()),
        fail.0,
    )
}

/// `[L^S_2, L^S_{-2}] vac = 4 L^S_0 vac + (c/2) vac` read off at the vacuum
/// and compared with `k dim g / (k + h^vee)`.
fn central_charge_check(sug: &Sugawara) -> Check {
    let module = sug.module();
    let id = "sugawara/central-charge";
    let expect = (&sug.spec().params.k * &RationalFunction::from_int(sug.spec().lie_dim() as i64))
        .checked_div(&(&sug.spec().params.k + &RationalFunction::from_int(sug.dual_coxeter())));
    if module.admissible_basis(&[GeneratorSymbol::l(2), GeneratorSymbol::l(-2)]).is_empty() {
        return Check::new(id, "c from [L^S_2,L^S_-2] vac", "not admissible at this D", None);
    }
    let vac = ModuleVector::vacuum();
    let br = sug
        .sugawara_unchecked(2, &sug.sugawara_unchecked(-2, &vac))
        .sub(&sug.sugawara_unchecked(-2, &sug.sugawara_unchecked(2, &vac)))
        .sub(&sug.sugawara_unchecked(0, &vac).scale_rational(&r(4)));
    let got = br.coeff(&PBWMonomial::vacuum()).scale(&r(2));
    let w = match &expect {
        Ok(e) if *e == got => None,
        Ok(e) => Some(text_witness("vac", got.to_string(), e.to_string())),
        Err(e) => Some(text_witness("vac", got.to_string(), e.to_string())),
    };
    Check::new(id, "2 x vac-coefficient of ([L^S_2,L^S_-2] - 4 L^S_0) vac", "k dim g / (k + h^vee)", w)
}

/// The finite summation window gives the same operator as a wider one.
fn window_check(sug: &Sugawara, wide: &Sugawara, range: i64) -> Check {
    let module = sug.module();
    let mut fail = FirstFailure::default();
    'outer: for n0 in -range..=range {
        for b in module.admissible_basis(&[GeneratorSymbol::l(n0)]) {
            let v = ModuleVector::from_monomial(b);
            let a = sug.segal(n0, &v);
            let w = wide.segal(n0, &v);
            fail.record(vector_witness(module, &format!("n0 = {n0}: {}", module.format_vector(&v)), &a, &w));
            if fail.failed() {
                break 'outer;
            }
        }
    }
    Check::new("sugawara/window", "normal-ordered sum over the computed window", "same sum with 5 extra modes per side", fail.0)
}

fn quadratic_level_checks(sug: &Sugawara, range: i64) -> Vec<Check> {
    let module = sug.module();
    let n = module.level_structure();
    let vac = ModuleVector::vacuum();
    let vm = PBWMonomial::vacuum();
    let admissible = |m: i64| module.admissible_basis(&[GeneratorSymbol::l(m)]).contains(&vm);
    let mut out = Vec::new();
    for m in (2 * n - 1)..=(2 * n - 1 + range) {
        if !admissible(m) {
            continue;
        }
        let v = sug.sugawara_unchecked(m, &vac);
        out.push(Check::new(
            format!("sugawara/L^S_{m} vac_{n} = 0"),
            format!("L^S_{m} vac"),
            "0",
            vector_witness(module, "vac", &v, &ModuleVector::zero()),
        ));
    }
    let m = 2 * n - 2;
    if admissible(m) {
        let v = sug.sugawara_unchecked(m, &vac);
        out.push(Check::new(
            format!("sugawara/L^S_{m} vac_{n} != 0"),
            format!("L^S_{m} vac"),
            "nonzero",
            v.is_zero().then(|| text_witness("vac", "0", "nonzero")),
        ));
    }
    out
}

/// Stored `L^S_n` matrices must equal recomputation; misses are filled.
fn cache_checks(sug: &Sugawara, cache: &OperatorMatrixCache, range: i64, d: i64) -> Vec<Check> {
    let fp = fingerprint(sug.spec());
    let n = sug.module().level_structure();
    let mut out = Vec::new();
    for n0 in -range.min(2)..=range.min(2) {
        for w in 0..=d - GeneratorSymbol::l(n0).weight(n).max(n0.abs()) {
            let key = CacheKey {
                operator: format!("L^S_{n0}"),
                degree: w,
                fingerprint: fp.clone(),
            };
            let id = format!("cache/{}@{}", key.operator, w);
            let fresh = match sugawara_matrix(sug, n0, w) {
                Ok(x) => x,
                Err(e) => {
                    out.push(Check::errored(id, "cached matrix", "recomputed matrix", &e));
                    continue;
                }
            };
            let check = match cache.load(&key) {
                Ok(Some(stored)) => Check::new(
                    id,
                    "cached matrix",
                    "recomputed matrix",
                    (stored != fresh).then(|| text_witness(format!("weight {w}"), "cached matrix differs", "recomputed")),
                ),
                Ok(None) => match cache.store(&key, &fresh) {
                    Ok(()) => Check::new(id, "stored matrix", "recomputed matrix", None),
                    Err(e) => Check::errored(id, "stored matrix", "recomputed matrix", &e),
                },
                Err(e) => Check::errored(id, "cached matrix", "recomputed matrix", &e),
            };
            out.push(check);
        }
    }
    out
}

fn shifted_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let sug = sugawara(with_params(
        VacuumModuleSpec::semidirect(lie.clone(), cfg.level_structure, cfg.degree),
        cfg,
    ))?;
    let mut out = Vec::new();
    for l in modes(cfg) {
        for m in l..=cfg.mode_range {
            let sug = sug.clone();
            out.push(one(move || shifted_bracket_check(&sug, l, m)));
        }
    }
    let dim = lie.dimension();
    for m in modes(cfg) {
        let sug = sug.clone();
        let range = cfg.mode_range;
        out.push(task(move || {
            let mut checks = Vec::new();
            for l in -range..=range {
                for a in 0..dim {
                    checks.push(shifted_commutes_check(&sug, m, a, l));
                }
            }
            checks
        }));
    }
    Ok(out)
}

fn shifted_bracket_check(sug: &Sugawara, l: i64, m: i64) -> Check {
    let module = sug.module();
    let central = sug.c_k().scale(&Rational::new(l * l * l - l, 12));
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[GeneratorSymbol::l(l), GeneratorSymbol::l(m)]) {
        let v = ModuleVector::from_monomial(b);
        let lhs = sug
            .shifted_unchecked(l, &sug.shifted_unchecked(m, &v))
            .sub(&sug.shifted_unchecked(m, &sug.shifted_unchecked(l, &v)));
        let mut rhs = sug.shifted_unchecked(l + m, &v).scale_rational(&r(l - m));
        if l + m == 0 {
            rhs.add_scaled(&v, &central);
        }
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &rhs));
        if fail.failed() {
            break;
        }
    }
    Check::new(
        format!("shifted/[S_{l},S_{m}]"),
        "[S_l,S_m] v",
        format!("(l-m) S_{{l+m}} v + (c_k/12)(l^3-l) delta_{{l+m,0}} v, c_k = {}", sug.c_k()),
        fail.0,
    )
}

fn shifted_commutes_check(sug: &Sugawara, m: i64, a: usize, l: i64) -> Check {
    let module = sug.module();
    let j = GeneratorSymbol::j(a, l);
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[GeneratorSymbol::l(m), j]) {
        let v = ModuleVector::from_monomial(b);
        let lhs = sug
            .shifted_unchecked(m, &module.act(j, &v))
            .sub(&module.act(j, &sug.shifted_unchecked(m, &v)));
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &ModuleVector::zero()));
        if fail.failed() {
            break;
        }
    }
    Check::new(format!("shifted/[S_{m},{}]", module.symbol_name(j)), "[S_m,J^a_l] v", "0", fail.0)
}

fn singular_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let sug = sugawara(with_params(VacuumModuleSpec::semidirect(lie.clone(), 0, cfg.degree), cfg))?;
    let dim = lie.dimension();
    let range = cfg.mode_range;
    Ok(vec![task(move || {
        let module = sug.module();
        let s = match sug.singular_vector() {
            Ok(s) => s,
            Err(e) => return vec![Check::errored("singular/S", "S_{-2} vac", "-", &e)],
        };
        let text = module.format_vector(&s);
        let mut out = Vec::new();
        for m in 0..=range {
            for a in 0..dim {
                let j = GeneratorSymbol::j(a, m);
                let id = format!("singular/{} S", module.symbol_name(j));
                out.push(match module.apply(j, &s) {
                    Ok(v) => Check::new(id, "J^a_m S", "0", vector_witness(module, &text, &v, &ModuleVector::zero())),
                    Err(e) => Check::errored(id, "J^a_m S", "0", &e),
                });
            }
        }
        let deg = s.degree();
        out.push(Check::new(
            "singular/degree",
            "degree of S",
            "2",
            (deg != Some(2)).then(|| text_witness(text.clone(), format!("{deg:?}"), "Some(2)")),
        ));
        match module.apply(GeneratorSymbol::l(0), &s) {
            Ok(v) => out.push(Check::new(
                "singular/L_0 S",
                "L_0 S",
                "2 S",
                vector_witness(module, &text, &v, &s.scale_rational(&r(2))),
            )),
            Err(e) => out.push(Check::errored("singular/L_0 S", "L_0 S", "2 S", &e)),
        }
        // J^a_1 L_{-2} vac = J^a_{-1} vac = J^a_1 L^S_{-2} vac
        if module.admissible_basis(&[GeneratorSymbol::j(0, 1), GeneratorSymbol::l(-2)]).contains(&PBWMonomial::vacuum()) {
            let vac = ModuleVector::vacuum();
            let l2 = module.act(GeneratorSymbol::l(-2), &vac);
            let ls2 = sug.sugawara_unchecked(-2, &vac);
            for a in 0..dim {
                let j1 = GeneratorSymbol::j(a, 1);
                let want = module.act(GeneratorSymbol::j(a, -1), &vac);
                let name = module.symbol_name(GeneratorSymbol::j(a, -1));
                out.push(Check::new(
                    format!("singular/{} L_-2 vac", module.symbol_name(j1)),
                    "J^a_1 L_{-2} vac",
                    format!("{name} vac"),
                    vector_witness(module, "L_-2 vac", &module.act(j1, &l2), &want),
                ));
                out.push(Check::new(
                    format!("singular/{} L^S_-2 vac", module.symbol_name(j1)),
                    "J^a_1 L^S_{-2} vac",
                    format!("{name} vac"),
                    vector_witness(module, "L^S_-2 vac", &module.act(j1, &ls2), &want),
                ));
            }
        }
        out
    })])
}

fn tensor_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let (n, d) = (cfg.level_structure, cfg.degree);
    let sug = sugawara(with_params(VacuumModuleSpec::semidirect(lie.clone(), n, d), cfg))?;
    let km = module(sug.kac_moody_source_spec())?;
    let vir = module(sug.virasoro_source_spec())?;
    let mut out = Vec::new();
    {
        let (sug, km, vir) = (sug.clone(), km.clone(), vir.clone());
        out.push(task(move || {
            (0..=d)
                .map(|w| {
                    let lhs = sug.module().basis_unchecked(w).len();
                    let rhs: usize = (0..=w)
                        .map(|w1| km.basis_unchecked(w1).len() * vir.basis_unchecked(w - w1).len())
                        .sum();
                    Check::new(
                        format!("tensor-iso/dimension/weight={w}"),
                        format!("dim V_k,c = {lhs}"),
                        format!("sum dim V_k * dim Vir = {rhs}"),
                        (lhs != rhs).then(|| text_witness(format!("weight {w}"), lhs.to_string(), rhs.to_string())),
                    )
                })
                .collect()
        }));
    }
    let mut degrees: Vec<i64> = sug.module().basis_up_to(d).iter().map(|m| m.degree()).collect();
    degrees.sort();
    degrees.dedup();
    for deg in degrees {
        let sug = sug.clone();
        out.push(task(move || tensor_block_checks(&sug, deg, d)));
    }
    for m in modes(cfg) {
        let (sug, vir) = (sug.clone(), vir.clone());
        out.push(one(move || embedding_check(&sug, &vir, m)));
    }
    Ok(out)
}

fn tensor_block_checks(sug: &Sugawara, deg: i64, d: i64) -> Vec<Check> {
    let module = sug.module();
    let id = format!("tensor-iso/degree={deg}");
    let (rows, mat) = match sug.tensor_matrix(deg, d) {
        Ok(x) => x,
        Err(e) => return vec![Check::errored(format!("{id}/det"), "det sigma", "nonzero", &e)],
    };
    let det = mat.determinant();
    let mut out = vec![Check::new(
        format!("{id}/det"),
        format!("det sigma on {} x {} block = {}", rows.len(), rows.len(), det),
        "nonzero in Q(k,c)",
        det.is_zero().then(|| text_witness(format!("degree {deg}, weight <= {d}"), "0", "nonzero")),
    )];
    let mut left = FirstFailure::default();
    let mut right = FirstFailure::default();
    for (j, l) in sug.tensor_block(deg, d) {
        let input = format!("{} (x) {}", module.format_monomial(&j), module.format_monomial(&l));
        let image = match sug.tensor_iso(&j, &l) {
            Ok(v) => v,
            Err(e) => {
                left.record(Some(text_witness(input, e.to_string(), "-")));
                break;
            }
        };
        match sug.tensor_iso_inverse(&image) {
            Ok(pre) => {
                let ok = pre.len() == 1 && pre[0].0 == j && pre[0].1 == l && pre[0].2.is_one();
                if !ok {
                    let got: Vec<String> = pre
                        .iter()
                        .map(|(a, b, c)| format!("{c} * {} (x) {}", module.format_monomial(a), module.format_monomial(b)))
                        .collect();
                    left.record(Some(text_witness(input.clone(), got.join(" + "), input.clone())));
                }
            }
            Err(e) => left.record(Some(text_witness(input.clone(), e.to_string(), "-"))),
        }
        // sigma of the preimage of the target basis vector j l
        let target = ModuleVector::from_monomial(j.merge(&l));
        match sug.tensor_iso_inverse(&target) {
            Ok(pre) => {
                let mut back = ModuleVector::zero();
                for (a, b, c) in &pre {
                    match sug.tensor_iso(a, b) {
                        Ok(v) => back.add_scaled(&v, c),
                        Err(e) => {
                            right.record(Some(text_witness(module.format_vector(&target), e.to_string(), "-")));
                        }
                    }
                }
                right.record(vector_witness(module, &module.format_vector(&target), &back, &target));
            }
            Err(e) => right.record(Some(text_witness(module.format_vector(&target), e.to_string(), "-"))),
        }
        if left.failed() && right.failed() {
            break;
        }
    }
    out.push(Check::new(format!("{id}/inverse-after-sigma"), "sigma^-1 sigma (j (x) l)", "j (x) l", left.0));
    out.push(Check::new(format!("{id}/sigma-after-inverse"), "sigma sigma^-1 v", "v", right.0));
    out
}

/// `S_m embed(M) = embed(L_m M)` with `M` in the `Vir_{c_k}` source module.
fn embedding_check(sug: &Sugawara, vir: &VacuumModule, m: i64) -> Check {
    let module = sug.module();
    let lm = GeneratorSymbol::l(m);
    let embed = |v: &ModuleVector| -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (mono, c) in v.terms() {
            out.add_scaled(&sug.embed_virasoro(mono)?, c);
        }
        Ok(out)
    };
    let mut fail = FirstFailure::default();
    for b in vir.admissible_basis(&[lm]) {
        let v = ModuleVector::from_monomial(b);
        let input = vir.format_vector(&v);
        match (embed(&v), embed(&vir.act(lm, &v))) {
            (Ok(ev), Ok(rhs)) => {
                let lhs = sug.shifted_unchecked(m, &ev);
                fail.record(vector_witness(module, &input, &lhs, &rhs));
            }
            (Err(e), _) | (_, Err(e)) => fail.record(Some(text_witness(input, e.to_string(), "-"))),
        }
        if fail.failed() {
            break;
        }
    }
    Check::new(format!("tensor-iso/embedding/L_{m}"), "S_m embed(v)", "embed(L_m v), c = c_k", fail.0)
}

fn rees_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let m = module(with_params(
        VacuumModuleSpec::semidirect(lie.clone(), cfg.level_structure, cfg.degree),
        cfg,
    ))?;
    let syms = symbols(&m, cfg.mode_range);
    Ok(syms
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let m = m.clone();
            let ys = syms[i..].to_vec();
            task(move || ys.into_iter().map(|y| rees_relation_check(&m, x, y)).collect())
        })
        .collect())
}

fn critical_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let m = module(with_params(
        VacuumModuleSpec::semidirect(lie.clone(), cfg.level_structure, cfg.degree),
        cfg,
    ))?;
    let crit = Arc::new(CriticalLevel::new(m)?);
    let mut out = Vec::new();
    for l in modes(cfg) {
        for m in l..=cfg.mode_range {
            let crit = crit.clone();
            out.push(task(move || crit.critical_bracket(l, m)));
        }
    }
    let dim = lie.dimension();
    for m in modes(cfg) {
        let crit = crit.clone();
        let range = cfg.mode_range;
        out.push(task(move || {
            let mut checks = Vec::new();
            for l in -range..=range {
                for a in 0..dim {
                    checks.push(crit.j_commutation(m, a, l));
                }
            }
            for l in -range..=range {
                checks.push(crit.l_commutation(m, l));
            }
            checks
        }));
    }
    {
        let crit = crit.clone();
        let range = cfg.mode_range;
        out.push(one(move || {
            let f: BTreeMap<i64, RationalFunction> =
                (-range..=range).filter_map(|l| crit.central_function(l).map(|v| (l, v))).collect();
            let mu = crit.mu_g();
            central_function_check("critical/central-function", &f, |l| {
                RationalFunction::from_rational(Rational::new(mu * (l * l * l - l), 12))
            })
        }));
    }
    Ok(out)
}

fn classical_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let inf = Arc::new(InfiniteLevel::new(with_params(
        VacuumModuleSpec::semidirect(lie.clone(), cfg.level_structure, cfg.degree),
        cfg,
    ))?);
    let mut out = Vec::new();
    for l in modes(cfg) {
        for m in l..=cfg.mode_range {
            let inf = inf.clone();
            out.push(one(move || inf.classical_bracket(l, m)));
        }
    }
    {
        let inf = inf.clone();
        out.push(one(move || inf.sugawara_charge_vanishes()));
    }
    {
        let inf = inf.clone();
        let ms: Vec<i64> = modes(cfg).collect();
        out.push(one(move || inf.symbol_limit(&ms)));
    }
    {
        let inf = inf.clone();
        let range = cfg.mode_range;
        out.push(one(move || {
            let f: BTreeMap<i64, RationalFunction> =
                (-range..=range).filter_map(|l| inf.central_function(l).map(|v| (l, v))).collect();
            let lam2mu = &(inf.lambda() * inf.lambda()) * inf.mu();
            central_function_check("classical/central-function", &f, |l| {
                lam2mu.scale(&Rational::new(l * l * l - l, 12))
            })
        }));
    }
    Ok(out)
}

fn poisson_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let (n, d) = (cfg.level_structure, cfg.degree);
    let inf = Arc::new(InfiniteLevel::new(with_params(VacuumModuleSpec::semidirect(lie.clone(), n, d), cfg))?);
    let table = Arc::new(PoissonBracketTable::new(inf.module().spec()));
    let syms = symbols(inf.module(), cfg.mode_range);
    let mut out = Vec::new();
    {
        let (table, syms) = (table.clone(), syms.clone());
        out.push(task(move || {
            vec![
                Check::new(
                    "poisson/table/antisymmetry",
                    "{x,y} + {y,x}",
                    "0",
                    table.antisymmetry_violation(&syms).map(|s| text_witness("generator pair", s, "0")),
                ),
                Check::new(
                    "poisson/table/jacobi",
                    "{x,{y,z}} + cyclic",
                    "0",
                    table.jacobi_violation(&syms).map(|s| text_witness("generator triple", s, "0")),
                ),
            ]
        }));
    }
    for (i, &x) in syms.iter().enumerate() {
        let (inf, table) = (inf.clone(), table.clone());
        let ys = syms[i..].to_vec();
        out.push(task(move || ys.into_iter().map(|y| inf.poisson_limit_check(&table, x, y)).collect()));
    }
    if n <= 1 {
        let spec = with_params(VacuumModuleSpec::semidirect(lie.clone(), n, d), cfg).classical();
        let cm = module(spec)?;
        let table = table.clone();
        out.push(task(move || classical_poisson_checks(&cm, &table)));
    }
    Ok(out)
}

/// Antisymmetry and Jacobi of the Leibniz-extended bracket on basis
/// monomials of length at most 2 and total weight at most `D`.
fn classical_poisson_checks(m: &VacuumModule, table: &PoissonBracketTable) -> Vec<Check> {
    let n = m.level_structure();
    let d = m.truncation_degree();
    let small: Vec<PBWMonomial> = m
        .basis_up_to(d)
        .into_iter()
        .filter(|b| !b.is_vacuum() && b.len() <= 2)
        .collect();
    let br = |u: &ModuleVector, v: &ModuleVector| classical_poisson(m, u, v, table);
    let mut anti = FirstFailure::default();
    let mut jac = FirstFailure::default();
    for (i, a) in small.iter().enumerate() {
        for (j, b) in small.iter().enumerate().skip(i) {
            let wa = a.weight(n) + b.weight(n);
            if wa > d {
                continue;
            }
            let (u, v) = (ModuleVector::from_monomial(a.clone()), ModuleVector::from_monomial(b.clone()));
            let input = format!("{}, {}", m.format_monomial(a), m.format_monomial(b));
            match (br(&u, &v), br(&v, &u)) {
                (Ok(x), Ok(y)) => anti.record(vector_witness(m, &input, &x, &y.neg())),
                (Err(e), _) | (_, Err(e)) => anti.record(Some(text_witness(input.clone(), e.to_string(), "-"))),
            }
            for c in small.iter().skip(j) {
                if wa + c.weight(n) > d {
                    continue;
                }
                let w = ModuleVector::from_monomial(c.clone());
                let cyc = [(&u, &v, &w), (&v, &w, &u), (&w, &u, &v)];
                let mut sum = ModuleVector::zero();
                let mut err = None;
                for (x, y, z) in cyc {
                    match br(y, z).and_then(|yz| br(x, &yz)) {
                        Ok(t) => sum = sum.add(&t),
                        Err(e) => err = Some(e),
                    }
                }
                let input = format!("{input}, {}", m.format_monomial(c));
                match err {
                    None => jac.record(vector_witness(m, &input, &sum, &ModuleVector::zero())),
                    Some(e) => jac.record(Some(text_witness(input, e.to_string(), "-"))),
                }
            }
        }
    }
    vec![
        Check::new("poisson/leibniz/antisymmetry", "{u,v}", "-{v,u}", anti.0),
        Check::new("poisson/leibniz/jacobi", "{u,{v,w}} + cyclic", "0", jac.0),
    ]
}

fn dimension_tasks(cfg: &SuiteConfig, lie: &Arc<SimpleLieAlgebra>) -> Result<Vec<Task>> {
    let (n, d) = (cfg.level_structure, cfg.degree);
    let specs = [
        ("kac-moody", VacuumModuleSpec::kac_moody(lie.clone(), n, d)),
        ("virasoro", VacuumModuleSpec::virasoro(n, d)),
        ("semidirect", VacuumModuleSpec::semidirect(lie.clone(), n, d)),
    ];
    let mut out = Vec::new();
    for (name, spec) in specs {
        let m = module(spec)?;
        out.push(task(move || {
            let gf = module_generating_function(m.spec(), d as usize);
            (0..=d)
                .map(|w| {
                    let got = m.basis_unchecked(w).len() as u64;
                    let want = gf[w as usize];
                    Check::new(
                        format!("dimensions/{name}/weight={w}"),
                        format!("basis count {got}"),
                        format!("generating function {want}"),
                        (got != want).then(|| text_witness(format!("weight {w}"), got.to_string(), want.to_string())),
                    )
                })
                .collect()
        }));
    }
    Ok(out)
}
