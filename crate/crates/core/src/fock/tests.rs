use std::sync::Arc;

use super::*;
use crate::lie::SimpleLieAlgebra;
use crate::scalars::{Param, RationalFunction as RF};
use crate::Error;

fn sl2() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl(2).unwrap())
}

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

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
fn basis_sizes() {
    let km = VacuumModule::new(VacuumModuleSpec::kac_moody(sl2(), 0, 6)).unwrap();
    assert_eq!(km.enumerate_basis(0).unwrap().len(), 1);
    assert_eq!(km.enumerate_basis(2).unwrap().len(), 9);
    let vir = VacuumModule::new(VacuumModuleSpec::virasoro(0, 6)).unwrap();
    let b = vir.enumerate_basis(4).unwrap();
    assert_eq!(
        b.iter().map(|m| vir.format_monomial(m)).collect::<Vec<_>>(),
        vec!["L[m=-4] |0;n=0>", "L[m=-2] L[m=-2] |0;n=0>"]
    );
    assert!(matches!(vir.enumerate_basis(7), Err(Error::Truncation { .. })));
}

#[test]
fn normal_order_examples() {
    let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 0, 6)).unwrap();
    let k = RF::param(Param::K);
    let c = RF::param(Param::C);
    assert_eq!(
        m.normal_order(&[j(E, 1), j(F, -1)]).unwrap(),
        ModuleVector::vacuum().scale(&k)
    );
    assert!(m.normal_order(&[l(1), l(-2)]).unwrap().is_zero());
    assert_eq!(
        m.normal_order(&[l(2), l(-2)]).unwrap(),
        ModuleVector::vacuum().scale(&c.scale(&crate::scalars::Rational::new(1, 2)))
    );
    assert!(matches!(m.normal_order(&[l(-7)]), Err(Error::Truncation { .. })));
    let vir = VacuumModule::new(VacuumModuleSpec::virasoro(0, 6)).unwrap();
    assert!(matches!(vir.normal_order(&[j(E, -1)]), Err(Error::AlgebraMismatch(_))));
}

#[test]
fn apply_examples() {
    let m = VacuumModule::new(VacuumModuleSpec::kac_moody(sl2(), 0, 6)).unwrap();
    for a in 0..3 {
        assert!(m.apply(j(a, 0), &ModuleVector::vacuum()).unwrap().is_zero());
    }
    let e1 = m.apply(j(E, -1), &ModuleVector::vacuum()).unwrap();
    assert_eq!(e1, mono(&[j(E, -1)]));
    assert_eq!(m.apply(j(H, 0), &e1).unwrap(), e1.scale(&RF::from_int(2)));
}

#[test]
fn strategies_agree_on_short_words() {
    let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 1, 6)).unwrap();
    let syms = [j(E, 1), j(F, -1), j(H, 0), l(1), l(-2), l(0), j(E, -2), l(2)];
    for x in syms {
        for y in syms {
            for z in syms {
                let w = [x, y, z];
                if let Ok(a) = m.normal_order(&w) {
                    assert_eq!(a, m.normal_order_bubble(&w).unwrap(), "{w:?}");
                }
            }
        }
    }
}

#[test]
fn text_round_trip() {
    let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 0, 6)).unwrap();
    let v = m.normal_order(&[l(-2), j(E, 1), j(F, -2), j(H, -1)]).unwrap();
    let s = m.format_vector(&v);
    assert_eq!(m.parse_vector(&s).unwrap(), v);
    let w = mono(&[j(E, -1), l(-2)]).scale(&"k + 2".parse().unwrap());
    assert_eq!(m.format_vector(&w), "(k + 2) * J[a=E12,m=-1] L[m=-2] |0;n=0>");
    assert_eq!(m.parse_vector("0").unwrap(), ModuleVector::zero());
}

#[test]
fn classical_product_is_free_commutative() {
    let m = VacuumModule::new(VacuumModuleSpec::kac_moody(sl2(), 0, 6).classical()).unwrap();
    let e = mono(&[j(E, -1)]);
    let h = mono(&[j(H, -2)]);
    assert_eq!(m.classical_product(&ModuleVector::vacuum(), &e).unwrap(), e);
    assert_eq!(m.classical_product(&e, &e).unwrap(), mono(&[j(E, -1), j(E, -1)]));
    assert_eq!(
        m.classical_product(&e, &h).unwrap(),
        m.classical_product(&h, &e).unwrap()
    );
    assert!(m.apply(j(E, -1), &e).is_err());
}

#[test]
fn generating_functions() {
    assert_eq!(generating_function(3, false, 4), vec![1, 3, 9, 22, 51]);
    assert_eq!(generating_function(0, true, 6), vec![1, 0, 1, 1, 2, 2, 4]);
}
