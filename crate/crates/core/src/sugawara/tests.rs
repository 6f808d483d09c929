use std::sync::Arc;

use super::*;
use crate::lie::SimpleLieAlgebra;

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn j(a: usize, m: i64) -> GeneratorSymbol {
    GeneratorSymbol::j(a, m)
}

fn mono(word: &[GeneratorSymbol]) -> PBWMonomial {
    PBWMonomial::from_symbols(word.to_vec())
}

fn vec_of(word: &[GeneratorSymbol]) -> ModuleVector {
    ModuleVector::from_monomial(mono(word))
}

fn sug(n: i64, d: i64) -> Sugawara {
    let g = Arc::new(SimpleLieAlgebra::sl(2).unwrap());
    let m = VacuumModule::new(VacuumModuleSpec::semidirect(g, n, d)).unwrap();
    Sugawara::new(Arc::new(m)).unwrap()
}

#[test]
fn sugawara_mode_examples() {
    let s = sug(0, 6);
    for a in 0..3 {
        let v = vec_of(&[j(a, -1)]);
        assert_eq!(s.sugawara_mode(0, &v).unwrap(), v);
    }
    assert_eq!(
        s.sugawara_mode(-1, &vec_of(&[j(E, -1)])).unwrap(),
        vec_of(&[j(E, -2)])
    );
    let two = s
        .sugawara_mode(2, &s.sugawara_mode(-2, &ModuleVector::vacuum()).unwrap())
        .unwrap();
    assert_eq!(two, ModuleVector::vacuum().scale(&rf("(3*k)/(2*k + 4)")));
}

#[test]
fn shifted_minus_two_on_vacuum() {
    let s = sug(0, 6);
    let sv = s.singular_vector().unwrap();
    let inv = rf("1/(2*k + 4)");
    let mut expect = vec_of(&[GeneratorSymbol::l(-2)]);
    // E F + F E + H H / 2 = 2 E F - H_{-2} + H H / 2
    expect.add_scaled(&vec_of(&[j(E, -1), j(F, -1)]), &(&inv * &rf("-2")));
    expect.add_scaled(&vec_of(&[j(H, -2)]), &inv);
    expect.add_scaled(&vec_of(&[j(H, -1), j(H, -1)]), &(&inv * &rf("-1/2")));
    assert_eq!(sv, expect);
    assert_eq!(sv.degree(), Some(2));
    let m = s.module();
    assert!(m.apply(j(E, 1), &sv).unwrap().is_zero());
    assert!(m.apply(j(H, 0), &sv).unwrap().is_zero());
    assert!(s.shifted_mode(0, &ModuleVector::vacuum()).unwrap().is_zero());
}

#[test]
fn window_margin_is_harmless() {
    let a = sug(1, 4);
    let b = sug(1, 4).with_margin(5);
    for m in a.module().basis_up_to(2) {
        let v = ModuleVector::from_monomial(m);
        for n0 in -2..=2 {
            assert_eq!(a.segal(n0, &v), b.segal(n0, &v));
        }
    }
}

#[test]
fn tensor_iso_examples() {
    let s = sug(0, 6);
    let vac = PBWMonomial::vacuum();
    assert_eq!(s.tensor_iso(&vac, &vac).unwrap(), ModuleVector::vacuum());
    let e = mono(&[j(E, -1)]);
    assert_eq!(s.tensor_iso(&e, &vac).unwrap(), vec_of(&[j(E, -1)]));
    let l2 = mono(&[GeneratorSymbol::l(-2)]);
    assert_eq!(s.tensor_iso(&vac, &l2).unwrap(), s.singular_vector().unwrap());
    assert_eq!(s.embed_virasoro(&l2).unwrap(), s.singular_vector().unwrap());

    let inv = s.tensor_iso_inverse(&vec_of(&[GeneratorSymbol::l(-2)])).unwrap();
    assert_eq!(
        inv,
        vec![
            (mono(&[j(H, -2)]), vac.clone(), rf("-1/(2*k + 4)")),
            (mono(&[j(E, -1), j(F, -1)]), vac.clone(), rf("1/(k + 2)")),
            (mono(&[j(H, -1), j(H, -1)]), vac.clone(), rf("1/(4*k + 8)")),
            (vac.clone(), l2.clone(), rf("1")),
        ]
    );
    let ee = mono(&[j(E, -1), j(E, -1)]);
    assert_eq!(
        s.tensor_iso_inverse(&ModuleVector::from_monomial(ee.clone())).unwrap(),
        vec![(ee, vac.clone(), rf("1"))]
    );
}

#[test]
fn critical_level_is_rejected() {
    let g = Arc::new(SimpleLieAlgebra::sl(2).unwrap());
    let spec = VacuumModuleSpec::semidirect(g, 0, 4).with_param(Param::K, rf("-2"));
    let m = Arc::new(VacuumModule::new(spec).unwrap());
    assert!(matches!(Sugawara::new(m), Err(Error::CriticalLevel(-2))));
}

#[test]
fn sigma_determinant_is_one() {
    let s = sug(0, 4);
    for d in 0..=4 {
        let (_, mat) = s.tensor_matrix(d, d).unwrap();
        assert!(mat.determinant().is_one());
    }
}
