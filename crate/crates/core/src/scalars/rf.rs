//! Elements of `Q(k, c, lambda, mu)` in canonical reduced form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Exps, Param, Poly, NVARS};
use super::rational::{integer_normalizer, Rational};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded-lex;
/// zero is `0 / 1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Expansion point for [`RationalFunction::series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    At(Rational),
    Infinity,
}

/// Laurent coefficients `coeffs[i]` of `t^(leading + i)`, for exponents up to
/// the requested order. `leading` is `None` for the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub leading: Option<i64>,
    pub coeffs: Vec<RationalFunction>,
}

impl Laurent {
    /// Coefficient of `t^e` (zero outside the computed window or below the
    /// leading exponent).
    pub fn coeff(&self, e: i64) -> RationalFunction {
        match self.leading {
            Some(l) if e >= l => self
                .coeffs
                .get((e - l) as usize)
                .cloned()
                .unwrap_or_else(RationalFunction::zero),
            _ => RationalFunction::zero(),
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        RationalFunction {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn param(p: Param) -> Self {
        Self::from_poly(Poly::var(p))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(d) = den.as_constant() {
            return RationalFunction {
                num: num.scale(&d.recip().unwrap()),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let (den, lc) = den.monic();
        let num = if lc.is_one() {
            num
        } else {
            num.scale(&lc.recip().unwrap())
        };
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Parameters that occur in numerator or denominator.
    pub fn params(&self) -> Vec<Param> {
        let mask = self.num.var_mask() | self.den.var_mask();
        Param::ALL
            .into_iter()
            .filter(|p| mask & (1 << p.index()) != 0)
            .collect()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        Ok(RationalFunction {
            num: base.num.pow(n.unsigned_abs()),
            den: base.den.pow(n.unsigned_abs()),
        })
    }

    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => a.checked_div(b)?,
        })
    }

    /// Substitutes parameters by rational functions. Fails with
    /// [`Error::Pole`] when the denominator vanishes after substitution.
    pub fn eval(&self, subst: &BTreeMap<Param, RationalFunction>) -> Result<Self> {
        if subst.is_empty() {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, subst);
        let d = eval_poly(&self.den, subst);
        if d.is_zero() {
            return Err(Error::Pole {
                factor: pole_factor(&self.den, subst),
            });
        }
        n.checked_div(&d)
    }

    pub fn eval_at(&self, p: Param, value: Rational) -> Result<Self> {
        let mut m = BTreeMap::new();
        m.insert(p, RationalFunction::from_rational(value));
        self.eval(&m)
    }

    /// Laurent expansion in `t = param - center` (or `t = 1/param` at
    /// infinity) through exponent `order`.
    pub fn series(&self, param: Param, center: &Center, order: i64) -> Laurent {
        if self.is_zero() {
            return Laurent {
                leading: None,
                coeffs: Vec::new(),
            };
        }
        let v = param.index();
        let (num, num_shift) = shifted_coeffs(&self.num, v, center);
        let (den, den_shift) = shifted_coeffs(&self.den, v, center);
        // num = t^num_shift * N(t), den = t^den_shift * D(t), N(0), D(0) != 0
        let leading = num_shift - den_shift;
        let d0_inv = den[0].recip().expect("D(0) != 0");
        let count = if order >= leading {
            (order - leading + 1) as usize
        } else {
            0
        };
        let mut out: Vec<RationalFunction> = Vec::with_capacity(count);
        for i in 0..count {
            let mut acc = num.get(i).cloned().unwrap_or_else(RationalFunction::zero);
            for j in 1..=i.min(den.len().saturating_sub(1)) {
                acc = &acc - &(&den[j] * &out[i - j]);
            }
            out.push(&acc * &d0_inv);
        }
        Laurent {
            leading: Some(leading),
            coeffs: out,
        }
    }

    /// Canonical text: `num` or `(num)/(den)` with both sides scaled to
    /// coprime integer coefficients and a positive leading denominator.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

/// Coefficients (as rational functions of the other parameters) of `p` after
/// the change of variables, with the lowest-order power of `t` factored out.
fn shifted_coeffs(p: &Poly, v: usize, center: &Center) -> (Vec<RationalFunction>, i64) {
    let coeffs = p.coeffs_in(v);
    let mut shifted: Vec<Poly> = match center {
        Center::Infinity => {
            // p(1/t) = t^{-deg} * reversed(p)(t)
            let mut c = coeffs.clone();
            c.reverse();
            c
        }
        Center::At(a) => {
            // p(a + t) = sum_i coeffs[i] (a + t)^i
            let deg = coeffs.len();
            let mut out = vec![Poly::zero(); deg];
            for (i, ci) in coeffs.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let mut binom = Rational::one();
                for j in 0..=i {
                    // binom(i, j) * a^(i-j)
                    let term = &binom * &a.pow((i - j) as u32);
                    out[j] = out[j].add(&ci.scale(&term));
                    binom = &(&binom * &Rational::from_int((i - j) as i64))
                        / &Rational::from_int((j + 1) as i64);
                }
            }
            out
        }
    };
    let base_shift = match center {
        Center::Infinity => -(coeffs.len() as i64 - 1),
        Center::At(_) => 0,
    };
    let lead = shifted.iter().position(|q| !q.is_zero()).unwrap_or(0);
    shifted.drain(..lead);
    (
        shifted.into_iter().map(RationalFunction::from_poly).collect(),
        base_shift + lead as i64,
    )
}

fn eval_poly(p: &Poly, subst: &BTreeMap<Param, RationalFunction>) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    let mut power_cache: BTreeMap<(usize, u16), RationalFunction> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut rest: Exps = *e;
        let mut term = RationalFunction::from_rational(c.clone());
        for (param, val) in subst {
            let i = param.index();
            let x = e[i];
            if x == 0 {
                continue;
            }
            rest[i] = 0;
            let pw = power_cache
                .entry((i, x))
                .or_insert_with(|| val.pow(x as i32).expect("nonnegative power"))
                .clone();
            term = &term * &pw;
        }
        if rest != [0; NVARS] {
            term = &term * &RationalFunction::from_poly(Poly::monomial(rest, Rational::one()));
        }
        acc = &acc + &term;
    }
    acc
}

fn pole_factor(den: &Poly, subst: &BTreeMap<Param, RationalFunction>) -> String {
    for (p, v) in subst {
        if let Some(r) = v.as_rational() {
            let mut single = BTreeMap::new();
            single.insert(*p, v.clone());
            if eval_poly(den, &single).is_zero() {
                let lin = Poly::var(*p).sub(&Poly::constant(r));
                return RationalFunction::from_poly(lin).to_string();
            }
        }
    }
    RationalFunction::from_poly(den.clone()).to_string()
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction {
                num: self.num.add(&rhs.num),
                den: Poly::one(),
            };
        }
        if self.den == rhs.den {
            return RationalFunction::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&rhs.num.mul(&a));
        RationalFunction::canonical(num, self.den.mul(&b))
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let (den, lc) = den.monic();
        RationalFunction {
            num: num.scale(&lc.recip().unwrap()),
            den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<&Rational> = self
            .num
            .terms()
            .iter()
            .chain(self.den.terms())
            .map(|(_, c)| c)
            .collect();
        let s = integer_normalizer(&coeffs);
        let num = self.num.scale(&s);
        let den = self.den.scale(&s);
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({den})")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({self})")
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent parser for `+ - * / ^` expressions over integers and
/// the four parameter names.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: i32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(RationalFunction::from_rational(s.parse()?))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let p = Param::from_name(name).ok_or_else(|| self.err("unknown parameter"))?;
                Ok(RationalFunction::param(p))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = rf("1/(k+2)");
        assert_eq!(&a + &a, rf("2/(k+2)"));
        assert_eq!(&rf("k+2") * &a, RationalFunction::one());
        assert_eq!(
            RationalFunction::arith(ArithOp::Div, &RationalFunction::one(), &RationalFunction::zero()),
            Err(Error::ZeroDivision)
        );
    }

    #[test]
    fn canonical_text() {
        assert_eq!(rf("3*k/(k+2)").to_string(), "(3*k)/(k + 2)");
        assert_eq!(rf("1/(2*k+4)").to_string(), "(1)/(2*k + 4)");
        assert_eq!(rf("1/2").to_string(), "(1)/(2)");
        assert_eq!(rf("k/2 + c").to_string(), "(2*c + k)/(2)");
        assert_eq!(rf("-c^2*mu + lambda").to_string(), "-c^2*mu + lambda");
        for s in ["(3*k)/(k + 2)", "(1)/(2*k + 4)", "-c^2*mu + lambda", "0", "(-1)/(k*c + 3)"] {
            assert_eq!(rf(s).to_string(), s);
        }
    }

    #[test]
    fn eval_examples() {
        let c_k = rf("3*k/(k+2)");
        assert_eq!(c_k.eval_at(Param::K, Rational::one()).unwrap(), RationalFunction::one());
        let pole = rf("1/(k+2)").eval_at(Param::K, Rational::from_int(-2));
        assert_eq!(pole, Err(Error::Pole { factor: "k + 2".into() }));
        let mut s = BTreeMap::new();
        s.insert(Param::C, RationalFunction::zero());
        s.insert(Param::K, RationalFunction::one());
        assert_eq!(rf("c - 3*k/(k+2)").eval(&s).unwrap(), RationalFunction::from_int(-1));
    }

    #[test]
    fn series_examples() {
        let s = rf("1/(k+2)").series(Param::K, &Center::At(Rational::from_int(-2)), 0);
        assert_eq!(s.leading, Some(-1));
        assert_eq!(s.coeffs[0], RationalFunction::one());
        let s = rf("3*k/(k+2)").series(Param::K, &Center::Infinity, 1);
        assert_eq!(s.leading, Some(0));
        assert_eq!(s.coeffs, vec![RationalFunction::from_int(3), RationalFunction::from_int(-6)]);
        let s = rf("k+2").series(Param::K, &Center::At(Rational::from_int(-2)), 2);
        assert_eq!(s.leading, Some(1));
        assert_eq!(s.coeffs, vec![RationalFunction::one(), RationalFunction::zero()]);
    }

    #[test]
    fn series_with_other_parameters() {
        // c/(k*(k+2)) at infinity: c/k^2 - 2c/k^3 + ...
        let s = rf("c/(k*(k+2))").series(Param::K, &Center::Infinity, 3);
        assert_eq!(s.leading, Some(2));
        assert_eq!(s.coeffs, vec![rf("c"), rf("-2*c")]);
    }
}
