use crate::fock::{GeneratorSymbol, ModuleVector, VacuumModule};
use crate::report::{vector_witness, Check, FirstFailure};
use crate::scalars::{Rational, RationalFunction};

/// Rescaling factor of a generator: `lambda/k` for `J`, `mu/c` for `L`.
pub fn rees_scale(module: &VacuumModule, s: GeneratorSymbol) -> RationalFunction {
    let p = &module.spec().params;
    let (num, den) = if s.is_j() { (&p.lambda, &p.k) } else { (&p.mu, &p.c) };
    num.checked_div(den).expect("rescaling needs nonzero k and c")
}

/// `[x_bar, y_bar]` against the printed rescaled relations, on every
/// admissible basis vector of a quantum module with symbolic parameters.
pub fn rees_relation_check(module: &VacuumModule, x: GeneratorSymbol, y: GeneratorSymbol) -> Check {
    let id = format!("rees/[{}bar,{}bar]", module.symbol_name(x), module.symbol_name(y));
    let (lhs_desc, rhs_desc) = match (x.is_j(), y.is_j()) {
        (true, true) => ("[Jbar^a_p,Jbar^b_q] v", "(lambda/k)([J^a,J^b]bar_{p+q} + p lambda (J^a,J^b) delta_{p+q,0}) v"),
        (false, false) => ("[Lbar_p,Lbar_q] v", "((mu/c)(p-q) Lbar_{p+q} + (mu^2/c)(p^3-p)/12 delta_{p+q,0}) v"),
        (false, true) => ("[Lbar_p,Jbar_q] v", "(mu/c)(-q) Jbar_{p+q} v"),
        (true, false) => ("[Jbar_p,Lbar_q] v", "(mu/c) p Jbar_{p+q} v"),
    };
    let p = &module.spec().params;
    let sx = rees_scale(module, x);
    let sy = rees_scale(module, y);
    let eps_j = p.lambda.checked_div(&p.k).expect("k is nonzero");
    let eps_l = p.mu.checked_div(&p.c).expect("c is nonzero");
    let (pm, qm) = (x.mode(), y.mode());
    let mut fail = FirstFailure::default();
    for b in module.admissible_basis(&[x, y]) {
        let v = ModuleVector::from_monomial(b);
        let xy = module.act(x, &module.act(y, &v));
        let yx = module.act(y, &module.act(x, &v));
        let lhs = xy.sub(&yx).scale(&(&sx * &sy));
        let mut rhs = ModuleVector::zero();
        match (x, y) {
            (GeneratorSymbol::J { a, .. }, GeneratorSymbol::J { a: b, .. }) => {
                let g = module.lie().expect("J symbols need g");
                for (d, c) in &g.structure_constants[a as usize][b as usize] {
                    let z = module.act(GeneratorSymbol::j(*d, pm + qm), &v);
                    rhs.add_scaled(&z, &(&eps_j * &eps_j).scale(c));
                }
                if pm + qm == 0 {
                    let f = &g.form_matrix[a as usize][b as usize];
                    let central = (&eps_j * &p.lambda).scale(&(f * &Rational::from_int(pm)));
                    rhs.add_scaled(&v, &central);
                }
            }
            (GeneratorSymbol::L { .. }, GeneratorSymbol::L { .. }) => {
                let z = module.act(GeneratorSymbol::l(pm + qm), &v);
                rhs.add_scaled(&z, &(&eps_l * &eps_l).scale(&Rational::from_int(pm - qm)));
                if pm + qm == 0 {
                    let central = (&p.mu * &p.mu)
                        .checked_div(&p.c)
                        .expect("c is nonzero")
                        .scale(&Rational::new(pm * pm * pm - pm, 12));
                    rhs.add_scaled(&v, &central);
                }
            }
            (GeneratorSymbol::L { .. }, GeneratorSymbol::J { a, .. }) => {
                let z = module.act(GeneratorSymbol::j(a as usize, pm + qm), &v);
                rhs.add_scaled(&z, &(&eps_l * &eps_j).scale(&Rational::from_int(-qm)));
            }
            (GeneratorSymbol::J { a, .. }, GeneratorSymbol::L { .. }) => {
                let z = module.act(GeneratorSymbol::j(a as usize, pm + qm), &v);
                rhs.add_scaled(&z, &(&eps_l * &eps_j).scale(&Rational::from_int(pm)));
            }
        }
        fail.record(vector_witness(module, &module.format_vector(&v), &lhs, &rhs));
        if fail.failed() {
            break;
        }
    }
    Check::new(id, lhs_desc, rhs_desc, fail.0)
}
