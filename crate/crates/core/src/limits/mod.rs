//! Rees deformations, the critical level and the infinite-level (Poisson)
//! limit of the Sugawara construction.

mod critical;
mod infinite;
mod poisson;
mod rees;

use std::collections::BTreeMap;

pub use critical::CriticalLevel;
pub use infinite::InfiniteLevel;
pub use poisson::{classical_poisson, PoissonBracketTable, SymbolBracket};
pub use rees::{rees_relation_check, rees_scale};

use crate::report::{Check, Witness};
use crate::scalars::{Rational, RationalFunction};

/// A central term `f` of a Virasoro-type bracket must satisfy
/// `(b-c) f(a) + (c-a) f(b) + (a-b) f(c) = 0` whenever `a + b + c = 0`.
/// Also compares `f` against `expected(l)`.
pub fn central_function_check(
    id: &str,
    f: &BTreeMap<i64, RationalFunction>,
    expected: impl Fn(i64) -> RationalFunction,
) -> Check {
    let mut witness = None;
    for (l, v) in f {
        if *v != expected(*l) {
            witness = Some(Witness {
                input: format!("l = {l}"),
                monomial: "|0>".into(),
                lhs: v.to_string(),
                rhs: expected(*l).to_string(),
            });
            break;
        }
    }
    if witness.is_none() {
        'outer: for (&a, fa) in f {
            for (&b, fb) in f {
                let c = -a - b;
                let Some(fc) = f.get(&c) else { continue };
                let r = |x: i64| Rational::from_int(x);
                let s = &(&fa.scale(&r(b - c)) + &fb.scale(&r(c - a))) + &fc.scale(&r(a - b));
                if !s.is_zero() {
                    witness = Some(Witness {
                        input: format!("(a, b, c) = ({a}, {b}, {c})"),
                        monomial: "|0>".into(),
                        lhs: s.to_string(),
                        rhs: "0".into(),
                    });
                    break 'outer;
                }
            }
        }
    }
    Check::new(
        id,
        "central function f(l) of the bracket",
        "expected (l^3-l) multiple; (b-c)f(a) + (c-a)f(b) + (a-b)f(c) = 0 for a+b+c = 0",
        witness,
    )
}

#[cfg(test)]
mod tests;
