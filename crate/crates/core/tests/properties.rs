use std::sync::Arc;

use proptest::prelude::*;

use sugawara_core::fock::{GeneratorSymbol, ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use sugawara_core::lie::SimpleLieAlgebra;
use sugawara_core::scalars::{Param, Rational, RationalFunction};
use sugawara_core::sugawara::Sugawara;

fn sl2() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl(2).unwrap())
}

fn rf_strategy() -> impl Strategy<Value = RationalFunction> {
    (-5i64..5, -5i64..5, -5i64..5, 1i64..4, -3i64..3).prop_map(|(a, b, d, e, f)| {
        format!("({a}*k + {b}*c^2 + {d}*lambda*mu)/({e}*k^2 + {f}*c + 1)").parse().unwrap()
    })
}

fn symbol_strategy(lie_dim: usize, range: i64) -> impl Strategy<Value = GeneratorSymbol> {
    prop_oneof![
        (0..lie_dim, -range..=range).prop_map(|(a, m)| GeneratorSymbol::j(a, m)),
        (-range..=range).prop_map(GeneratorSymbol::l),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_identities(a in rf_strategy(), b in rf_strategy(), c in rf_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<RationalFunction>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in rf_strategy(), b in rf_strategy(), x in 1i64..20) {
        let at = |f: &RationalFunction| f.eval_at(Param::K, Rational::from_int(x));
        if let (Ok(fa), Ok(fb), Ok(fab)) = (at(&a), at(&b), at(&(&a * &b))) {
            prop_assert_eq!(fab, &fa * &fb);
        }
    }

    #[test]
    fn rewriters_agree(word in prop::collection::vec(symbol_strategy(3, 2), 1..5), n in 0i64..2) {
        let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), n, 6)).unwrap();
        if let (Ok(a), Ok(b)) = (m.normal_order(&word), m.normal_order_bubble(&word)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn module_action_is_a_representation(
        x in symbol_strategy(3, 3),
        y in symbol_strategy(3, 3),
        idx in 0usize..1000,
        k in -7i64..7,
    ) {
        prop_assume!(k != 0);
        let spec = VacuumModuleSpec::semidirect(sl2(), 0, 6).with_param(Param::K, RationalFunction::from_int(k));
        let m = VacuumModule::new(spec).unwrap();
        let basis = m.admissible_basis(&[x, y]);
        prop_assume!(!basis.is_empty());
        let v = ModuleVector::from_monomial(basis[idx % basis.len()].clone());
        let xy = m.apply(x, &m.apply(y, &v).unwrap()).unwrap();
        let yx = m.apply(y, &m.apply(x, &v).unwrap()).unwrap();
        let (lin, central) = m.bracket(x, y).unwrap();
        let mut rhs = v.scale(&central);
        for (s, r) in lin {
            rhs.add_scaled(&m.apply(s, &v).unwrap(), &RationalFunction::from_rational(r));
        }
        prop_assert_eq!(xy.sub(&yx), rhs);
    }

    #[test]
    fn vector_text_round_trip(idx in prop::collection::vec(0usize..200, 1..4), c in rf_strategy()) {
        let m = VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), 1, 5)).unwrap();
        let basis = m.basis_up_to(5);
        let mut v = ModuleVector::zero();
        for i in idx {
            v.add_term(basis[i % basis.len()].clone(), &c);
        }
        let text = m.format_vector(&v);
        prop_assert_eq!(m.parse_vector(&text).unwrap(), v);
    }

    #[test]
    fn tensor_iso_round_trip(idx in 0usize..400, n in 0i64..2) {
        let m = Arc::new(VacuumModule::new(VacuumModuleSpec::semidirect(sl2(), n, 5)).unwrap());
        let s = Sugawara::new(m.clone()).unwrap();
        let basis = m.basis_up_to(5);
        let b: &PBWMonomial = &basis[idx % basis.len()];
        let (j, l) = (b.j_part(), b.l_part());
        let image = s.tensor_iso(&j, &l).unwrap();
        let pre = s.tensor_iso_inverse(&image).unwrap();
        prop_assert_eq!(pre, vec![(j, l, RationalFunction::one())]);
    }
}
