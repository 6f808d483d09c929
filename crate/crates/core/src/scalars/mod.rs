//! Exact coefficient field `Q(k, c, lambda, mu)`.

mod poly;
mod rational;
mod rf;

pub use poly::{grlex_cmp, Exps, Param, Poly, NVARS};
pub use rational::Rational;
pub use rf::{ArithOp, Center, Laurent, RationalFunction};

/// `rf_arith` from the operation table: canonical-form field arithmetic.
pub fn rf_arith(op: ArithOp, a: &RationalFunction, b: &RationalFunction) -> crate::Result<RationalFunction> {
    RationalFunction::arith(op, a, b)
}
