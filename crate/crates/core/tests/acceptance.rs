//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Every comparison is exact.

use std::process::ExitCode;
use std::sync::Arc;

use sugawara_core::fock::{GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use sugawara_core::harness::{
    fingerprint, run_suite, run_suite_with_algebra, sugawara_matrix, CacheKey, OperatorMatrixCache, Suite, SuiteConfig,
};
use sugawara_core::lie::SimpleLieAlgebra;
use sugawara_core::limits::{CriticalLevel, InfiniteLevel};
use sugawara_core::report::{emit_report, ReportFormat, VerificationReport};
use sugawara_core::scalars::{Rational, RationalFunction};
use sugawara_core::sugawara::Sugawara;
use sugawara_core::Error;

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

/// Sub-results of one criterion: `(what, ok, detail)`.
#[derive(Default)]
struct Criterion(Vec<(String, bool, String)>);

impl Criterion {
    fn check(&mut self, what: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push((what.into(), ok, detail.into()));
    }

    fn suite(&mut self, cfg: SuiteConfig) {
        let what = format!(
            "{} sl{} n={} D={} N={}",
            cfg.suite, cfg.rank, cfg.level_structure, cfg.degree, cfg.mode_range
        );
        match run_suite(&cfg) {
            Ok(r) => {
                let detail = describe(&r);
                self.check(what, r.aggregate_pass && !r.checks.is_empty(), detail);
            }
            Err(e) => self.check(what, false, format!("error: {e}")),
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.check(what, ok, if ok { String::new() } else { format!("got {got:?}, want {want:?}") });
    }
}

fn describe(r: &VerificationReport) -> String {
    match r.failures().next() {
        None => format!("{} checks", r.checks.len()),
        Some(c) => format!("{} of {} failed; first {} {:?}", r.failures().count(), r.checks.len(), c.id, c.witness),
    }
}

fn cfg(suite: Suite, rank: usize, n: i64) -> SuiteConfig {
    SuiteConfig::new(suite).algebra(rank).level_structure(n).degree(6).mode_range(4)
}

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn lie(rank: usize) -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl(rank).unwrap())
}

fn mono(word: &[GeneratorSymbol]) -> ModuleVector {
    ModuleVector::from_monomial(PBWMonomial::from_symbols(word.to_vec()))
}

fn j(a: usize, m: i64) -> GeneratorSymbol {
    GeneratorSymbol::j(a, m)
}

fn l(m: i64) -> GeneratorSymbol {
    GeneratorSymbol::l(m)
}

fn semidirect(rank: usize, n: i64) -> Arc<VacuumModule> {
    Arc::new(VacuumModule::new(VacuumModuleSpec::semidirect(lie(rank), n, 6)).unwrap())
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    for rank in [2, 3] {
        for n in [0, 1] {
            c.suite(cfg(Suite::KacMoody, rank, n));
            c.suite(cfg(Suite::Virasoro, rank, n));
            c.suite(cfg(Suite::Semidirect, rank, n));
        }
    }
    let m = semidirect(2, 0);
    let vac = ModuleVector::vacuum();
    let ef = m.apply(j(E, 1), &m.apply(j(F, -1), &vac).unwrap()).unwrap();
    c.eq("E_1 F_-1 vac = k vac", ef, vac.scale(&rf("k")));
    let ll = m.apply(l(2), &m.apply(l(-2), &vac).unwrap()).unwrap();
    c.eq("L_2 L_-2 vac = c/2 vac", ll, vac.scale(&rf("c/2")));
    let lj = m.apply(l(1), &mono(&[j(H, -2)])).unwrap();
    c.eq("L_1 H_-2 vac = 2 H_-1 vac", lj, mono(&[j(H, -1)]).scale(&rf("2")));
    c
}

/// `L^S_2 L^S_-2 vac = (c/2) vac` on `V_k(g)` with `n = 0`.
fn sugawara_charge(rank: usize) -> RationalFunction {
    let m = Arc::new(VacuumModule::new(VacuumModuleSpec::kac_moody(lie(rank), 0, 6)).unwrap());
    let s = Sugawara::new(m).unwrap();
    let vac = ModuleVector::vacuum();
    let v = s.sugawara_mode(2, &s.sugawara_mode(-2, &vac).unwrap()).unwrap();
    v.coeff(&PBWMonomial::vacuum()).scale(&Rational::from_int(2))
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    for rank in [2, 3] {
        for n in [0, 1] {
            c.suite(cfg(Suite::Sugawara, rank, n));
        }
    }
    c.eq("c(sl2) = 3k/(k+2)", sugawara_charge(2), rf("3*k/(k+2)"));
    c.eq("c(sl3) = 8k/(k+3)", sugawara_charge(3), rf("8*k/(k+3)"));
    // no central term off l+m = 0
    let m = Arc::new(VacuumModule::new(VacuumModuleSpec::kac_moody(lie(2), 0, 6)).unwrap());
    let s = Sugawara::new(m).unwrap();
    let vac = ModuleVector::vacuum();
    let ls = |a: i64, v: &ModuleVector| s.sugawara_mode(a, v).unwrap();
    let br = ls(2, &ls(-1, &vac)).sub(&ls(-1, &ls(2, &vac)));
    c.eq("[L^S_2,L^S_-1] vac = 3 L^S_1 vac", br, ls(1, &vac).scale(&rf("3")));
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    for n in [0, 1] {
        c.suite(cfg(Suite::Shifted, 2, n));
    }
    let s = Sugawara::new(semidirect(2, 0)).unwrap();
    c.eq("c_k = c - 3k/(k+2)", s.c_k(), rf("c - 3*k/(k+2)"));
    let vac = ModuleVector::vacuum();
    let v = s.shifted_mode(2, &s.shifted_mode(-2, &vac).unwrap()).unwrap();
    c.eq("S_2 S_-2 vac = (c_k/2) vac", v, vac.scale(&rf("(c - 3*k/(k+2))/2")));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    for n in [1, 2] {
        let r = run_suite(&cfg(Suite::Sugawara, 2, n)).unwrap();
        let vanish: Vec<_> = r.checks.iter().filter(|x| x.id.ends_with(&format!("vac_{n} = 0"))).collect();
        let nonzero: Vec<_> = r.checks.iter().filter(|x| x.id.ends_with(&format!("vac_{n} != 0"))).collect();
        c.check(
            format!("L^S_m vac_{n} = 0 for m >= {}", 2 * n - 1),
            !vanish.is_empty() && vanish.iter().all(|x| x.pass),
            format!("{} modes", vanish.len()),
        );
        c.check(
            format!("L^S_{} vac_{n} != 0", 2 * n - 2),
            nonzero.len() == 1 && nonzero[0].pass,
            "",
        );
    }
    // oracle: on vac_1, L^S_0 vac = (1/2(k+2)) sum kappa^{ab} J^a_0 J^b_0 vac
    let m = Arc::new(VacuumModule::new(VacuumModuleSpec::kac_moody(lie(2), 1, 6)).unwrap());
    let s = Sugawara::new(m).unwrap();
    let got = s.sugawara_mode(0, &ModuleVector::vacuum()).unwrap();
    let mut want = mono(&[j(E, 0), j(F, 0)]).scale(&rf("1/(k+2)"));
    want.add_scaled(&mono(&[j(H, 0), j(H, 0)]), &rf("1/(4*(k+2))"));
    want.add_scaled(&mono(&[j(H, 0)]), &rf("-1/(2*(k+2))"));
    c.eq("L^S_0 vac_1 explicit", got, want);
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    c.suite(cfg(Suite::Singular, 2, 0));
    c.suite(cfg(Suite::Singular, 3, 0));
    let s = Sugawara::new(semidirect(2, 0)).unwrap();
    let mut want = mono(&[l(-2)]);
    want.add_scaled(&mono(&[j(E, -1), j(F, -1)]), &rf("-1/(k+2)"));
    want.add_scaled(&mono(&[j(H, -2)]), &rf("1/(2*(k+2))"));
    want.add_scaled(&mono(&[j(H, -1), j(H, -1)]), &rf("-1/(4*(k+2))"));
    let sv = s.singular_vector().unwrap();
    c.eq("S explicit (sl2)", sv.clone(), want);
    let m = s.module();
    let mut all_zero = true;
    for mm in 0..=4 {
        for a in 0..3 {
            all_zero &= m.apply(j(a, mm), &sv).unwrap().is_zero();
        }
    }
    c.check("J^a_m S = 0, 0 <= m <= 4 (direct)", all_zero, "");
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    for n in [0, 1] {
        let r = run_suite(&cfg(Suite::TensorIso, 2, n)).unwrap();
        let dets = r.checks.iter().filter(|x| x.id.ends_with("/det")).count();
        c.check(
            format!("tensor-iso sl2 n={n} D=6"),
            r.aggregate_pass && dets > 0,
            format!("{dets} determinant blocks; {}", describe(&r)),
        );
    }
    // oracle dimensions of V_{k,c}(sl2): (1,3,9,22,51,108,221) * (1,0,1,1,2,2,4)
    let m = semidirect(2, 0);
    let dims: Vec<usize> = (0..=6).map(|w| m.enumerate_basis(w).unwrap().len()).collect();
    c.eq("dim V_k,c(sl2) by degree", dims, vec![1, 3, 10, 26, 65, 147, 322]);
    let s = Sugawara::new(m.clone()).unwrap();
    let (rows, mat) = s.tensor_matrix(4, 6).unwrap();
    c.eq("sigma block degree 4 size", rows.len(), 65);
    c.eq("det sigma (degree 4)", mat.determinant(), RationalFunction::one());
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    c.suite(cfg(Suite::Critical, 2, 0));
    c.suite(cfg(Suite::Critical, 2, 1));
    c.suite(cfg(Suite::Critical, 3, 0));
    for (rank, mu) in [(2, 6), (3, 24)] {
        let crit = CriticalLevel::new(semidirect(rank, 0)).unwrap();
        c.eq(&format!("mu_g(sl{rank})"), crit.mu_g(), mu);
        // linear coefficient of [Sbar_2, Sbar_-2] vac at vac: (mu_g/12)(8-2)
        c.eq(
            &format!("central function sl{rank} at l=2"),
            crit.central_function(2),
            Some(RationalFunction::from_int(mu / 2)),
        );
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    c.suite(cfg(Suite::Classical, 2, 0));
    c.suite(cfg(Suite::Classical, 2, 1));
    let inf = InfiniteLevel::new(VacuumModuleSpec::semidirect(lie(2), 0, 6)).unwrap();
    let mut want = mono(&[l(-2)]).scale(&rf("lambda"));
    want.add_scaled(&mono(&[j(E, -1), j(F, -1)]), &rf("-1"));
    want.add_scaled(&mono(&[j(H, -1), j(H, -1)]), &rf("-1/4"));
    c.eq("lim Sbar_-2 vac", inf.sbar_limit_on_vacuum(-2).unwrap(), want);
    c.eq("central function at l=2", inf.central_function(2), Some(rf("lambda^2*mu/2")));
    let at_zero = inf
        .sbar_limit_on_vacuum(-2)
        .unwrap()
        .try_map_coeffs(|_, x| x.eval_at(sugawara_core::scalars::Param::Lambda, Rational::zero()))
        .unwrap();
    c.check(
        "lambda = 0: pure Kac-Moody symbol",
        at_zero.terms().keys().all(|m| m.l_count() == 0) && !at_zero.is_zero(),
        "",
    );
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    for n in [0, 1] {
        c.suite(cfg(Suite::Rees, 2, n));
        c.suite(cfg(Suite::Poisson, 2, n));
    }
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::default();
    for rank in [2, 3] {
        for n in [0, 1, 2] {
            c.suite(cfg(Suite::Dimensions, rank, n));
        }
    }
    let km = VacuumModule::new(VacuumModuleSpec::kac_moody(lie(2), 0, 6)).unwrap();
    let dims: Vec<usize> = (0..=6).map(|w| km.enumerate_basis(w).unwrap().len()).collect();
    c.eq("dim V_k(sl2) by degree", dims, vec![1, 3, 9, 22, 51, 108, 221]);
    let vir = VacuumModule::new(VacuumModuleSpec::virasoro(0, 6)).unwrap();
    let dims: Vec<usize> = (0..=6).map(|w| vir.enumerate_basis(w).unwrap().len()).collect();
    c.eq("dim Vir_c by degree", dims, vec![1, 0, 1, 1, 2, 2, 4]);
    let km3 = VacuumModule::new(VacuumModuleSpec::kac_moody(lie(3), 0, 6)).unwrap();
    let dims: Vec<usize> = (0..=3).map(|w| km3.enumerate_basis(w).unwrap().len()).collect();
    c.eq("dim V_k(sl3) by degree", dims, vec![1, 8, 44, 192]);
    c
}

fn strip_time(r: &VerificationReport) -> Vec<u8> {
    let mut r = r.clone();
    r.wall_time_ms = 0;
    emit_report(&r, ReportFormat::Json)
}

fn criterion_11() -> Criterion {
    let mut c = Criterion::default();
    let base = SuiteConfig::new(Suite::Sugawara).degree(4).mode_range(3);
    let one = run_suite(&base.clone().workers(1)).unwrap();
    let many = run_suite(&base.clone().workers(4)).unwrap();
    let again = run_suite(&base.clone().workers(1)).unwrap();
    c.check("sugawara sl2 D=4 N=3 passes", one.aggregate_pass, describe(&one));
    c.check("1 vs 4 workers byte-identical", strip_time(&one) == strip_time(&many), "");
    c.check("repeat run byte-identical", strip_time(&one) == strip_time(&again), "");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ops.json");
    let spec = VacuumModuleSpec::kac_moody(lie(2), 0, 6);
    let s = Sugawara::new(Arc::new(VacuumModule::new(spec.clone()).unwrap())).unwrap();
    let mat = sugawara_matrix(&s, 0, 3).unwrap();
    let key = CacheKey {
        operator: "L^S_0".into(),
        degree: 3,
        fingerprint: fingerprint(&spec),
    };
    let cache = OperatorMatrixCache::open(&path).unwrap();
    c.eq("empty cache misses", cache.load(&key), Ok(None));
    cache.store(&key, &mat).unwrap();
    let reloaded = OperatorMatrixCache::open(&path).unwrap().load(&key);
    c.eq("store then load L^S_0 at degree 3", reloaded, Ok(Some(mat)));
    let changed = CacheKey {
        fingerprint: fingerprint(&spec.with_degree(5)),
        ..key
    };
    let err = OperatorMatrixCache::open(&path).unwrap().load(&changed);
    c.check("changed D is CacheInvalid", matches!(err, Err(Error::CacheInvalid(_))), format!("{err:?}"));

    let mut cached = base.clone().workers(2);
    cached.cache = Some(dir.path().join("suite.json"));
    let first = run_suite(&cached).unwrap();
    let second = run_suite(&cached).unwrap();
    let hits = second.checks.iter().filter(|x| x.lhs == "cached matrix").count();
    c.check(
        "suite cache: second run hits equal recomputation",
        first.aggregate_pass && second.aggregate_pass && hits > 0,
        format!("{hits} cached matrices"),
    );

    // negative control: [E, F] = 2H instead of H
    let g = SimpleLieAlgebra::sl(2).unwrap();
    let mut sc = g.structure_constants.clone();
    sc[E][F] = vec![(H, Rational::from_int(2))];
    let bad = SimpleLieAlgebra::from_data(
        "sl2-corrupted".into(),
        g.family,
        g.rank,
        g.basis_labels.clone(),
        sc,
        g.form_matrix.clone(),
        g.dual_coxeter,
    )
    .unwrap();
    for suite in [Suite::Lie, Suite::KacMoody] {
        let r = run_suite_with_algebra(&SuiteConfig::new(suite).degree(4).mode_range(2), bad.clone()).unwrap();
        let witnessed = r.failures().all(|x| x.witness.is_some()) && r.failures().count() > 0;
        c.check(
            format!("negative control ({suite}) fails with witness"),
            !r.aggregate_pass && witnessed,
            describe(&r),
        );
    }
    c
}

type Entry = (u32, &'static str, fn() -> Criterion);

fn main() -> ExitCode {
    let criteria: [Entry; 11] = [
        (1, "defining relations", criterion_1),
        (2, "Sugawara relations and central charge", criterion_2),
        (3, "shifted Virasoro", criterion_3),
        (4, "quadratic level", criterion_4),
        (5, "singular vector", criterion_5),
        (6, "Sugawara embedding", criterion_6),
        (7, "critical level", criterion_7),
        (8, "infinite level", criterion_8),
        (9, "Rees family and Poisson table", criterion_9),
        (10, "graded dimensions", criterion_10),
        (11, "engineering", criterion_11),
    ];
    let mut all = true;
    for (id, name, f) in criteria {
        let c = f();
        let ok = c.0.iter().all(|x| x.1);
        all &= ok;
        println!("{} {id} {name}", if ok { "PASS" } else { "FAIL" });
        for (what, ok, detail) in &c.0 {
            println!("    [{}] {what}{}", if *ok { "ok" } else { "FAILED" }, if detail.is_empty() { String::new() } else { format!(": {detail}") });
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
