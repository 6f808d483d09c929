use std::sync::Arc;

use super::*;
use crate::fock::{GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use crate::lie::SimpleLieAlgebra;
use crate::scalars::Param;
use crate::Error;

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

fn sl2() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl(2).unwrap())
}

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn j(a: usize, m: i64) -> GeneratorSymbol {
    GeneratorSymbol::j(a, m)
}

fn l(m: i64) -> GeneratorSymbol {
    GeneratorSymbol::l(m)
}

fn mono(word: &[GeneratorSymbol]) -> ModuleVector {
    ModuleVector::from_monomial(PBWMonomial::from_symbols(word.to_vec()))
}

#[test]
fn rees_examples() {
    let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 0, 4)).unwrap();
    for (x, y) in [(j(E, 0), j(F, 0)), (j(E, 1), j(F, -1)), (l(2), l(-2)), (j(H, -1), j(H, -1)), (l(1), j(E, -2))] {
        let c = rees_relation_check(&m, x, y);
        assert!(c.pass, "{c:?}");
    }
}

#[test]
fn poisson_table_examples() {
    let spec = VacuumModuleSpec::kac_moody(sl2(), 0, 6).classical();
    let t = PoissonBracketTable::new(&spec);
    let (lin, central) = t.bracket(j(E, 1), j(F, -1));
    assert_eq!(lin, vec![(j(H, 0), Rational::one())]);
    assert_eq!(central, rf("lambda"));
    let (_, central0) = t.bracket(j(E, 0), j(F, 0));
    assert!(central0.is_zero());

    let m = VacuumModule::new(spec).unwrap();
    let e = mono(&[j(E, -1)]);
    let fh = mono(&[j(F, -1), j(H, -1)]);
    let got = classical_poisson(&m, &e, &fh, &t).unwrap();
    let mut expect = mono(&[j(H, -2), j(H, -1)]);
    expect.add_scaled(&mono(&[j(E, -2), j(F, -1)]), &rf("-2"));
    assert_eq!(got, expect);
    assert!(classical_poisson(&m, &fh, &fh, &t).unwrap().is_zero());

    let syms: Vec<_> = (-2..=2).flat_map(|p| (0..3).map(move |a| j(a, p))).collect();
    assert!(t.antisymmetry_violation(&syms).is_none());
    assert!(t.jacobi_violation(&syms).is_none());
}

#[test]
fn classical_poisson_rejects_n2() {
    let spec = VacuumModuleSpec::kac_moody(sl2(), 2, 6).classical();
    let t = PoissonBracketTable::new(&spec);
    let m = VacuumModule::new(spec).unwrap();
    let v = mono(&[j(E, 1)]);
    assert!(matches!(classical_poisson(&m, &v, &v, &t), Err(Error::Domain(_))));
}

#[test]
fn critical_examples() {
    let m = Arc::new(VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 0, 4)).unwrap());
    let crit = CriticalLevel::new(m).unwrap();
    assert_eq!(crit.mu_g(), 6);
    for c in crit.critical_bracket(2, -2) {
        assert!(c.pass, "{c:?}");
    }
    let vac = ModuleVector::vacuum();
    assert!(crit.sbar_bracket(1, 1, &vac).is_zero());
    assert!(crit.at_critical(&crit.sbar_bracket(2, -2, &vac)).unwrap().is_zero());
    assert_eq!(crit.central_function(2), Some(rf("3")));
    assert!(crit.j_commutation(-2, E, 1).pass);
    let lc = crit.l_commutation(-2, 2);
    assert!(lc.pass, "{lc:?}");
}

#[test]
fn infinite_examples() {
    let inf = InfiniteLevel::new(VacuumModuleSpec::semidirect(sl2(), 0, 4)).unwrap();
    let c = inf.classical_bracket(2, -2);
    assert!(c.pass, "{c:?}");
    assert!(inf.classical_bracket(0, 0).pass);
    assert_eq!(inf.central_function(2), Some(rf("1/2*lambda^2*mu")));
    assert!(inf.sugawara_charge_vanishes().pass);
    let s = inf.symbol_limit(&[-2, -1, 0]);
    assert!(s.pass, "{s:?}");

    let mut expect = mono(&[l(-2)]).scale(&rf("lambda"));
    expect.add_scaled(&mono(&[j(E, -1), j(F, -1)]), &rf("-1"));
    expect.add_scaled(&mono(&[j(H, -1), j(H, -1)]), &rf("-1/4"));
    assert_eq!(inf.sbar_limit_on_vacuum(-2).unwrap(), expect);

    let zero = VacuumModuleSpec::semidirect(sl2(), 0, 4).with_param(Param::Lambda, rf("0"));
    assert!(matches!(InfiniteLevel::new(zero), Err(Error::Pole { .. })));

    let t = PoissonBracketTable::new(inf.module().spec());
    for (x, y) in [(j(E, 1), j(F, -1)), (l(2), l(-2)), (l(-1), j(H, -1))] {
        let c = inf.poisson_limit_check(&t, x, y);
        assert!(c.pass, "{c:?}");
    }
}
