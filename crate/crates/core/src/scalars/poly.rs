//! Sparse polynomials in the fixed parameters `k, c, lambda, mu` over `Q`.
//!
//! Terms are kept sorted by decreasing graded-lex order, with variable
//! priority `mu > lambda > c > k`, so the first term is the leading term.

use std::cmp::Ordering;
use std::fmt;

use super::rational::Rational;

pub const NVARS: usize = 4;

pub type Exps = [u16; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    K,
    C,
    Lambda,
    Mu,
}

impl Param {
    pub const ALL: [Param; NVARS] = [Param::K, Param::C, Param::Lambda, Param::Mu];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::K => "k",
            Param::C => "c",
            Param::Lambda => "lambda",
            Param::Mu => "mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "k" => Some(Param::K),
            "c" => Some(Param::C),
            "lambda" | "λ" => Some(Param::Lambda),
            "mu" | "μ" => Some(Param::Mu),
            _ => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn total(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Graded-lex comparison with `mu > lambda > c > k`.
pub fn grlex_cmp(a: &Exps, b: &Exps) -> Ordering {
    total(a)
        .cmp(&total(b))
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] += b[i];
    }
    r
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub_exps(b: &Exps, a: &Exps) -> Exps {
    let mut r = *b;
    for i in 0..NVARS {
        r[i] -= a[i];
    }
    r
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Exps, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: vec![([0; NVARS], c)],
        }
    }

    pub fn var(p: Param) -> Self {
        let mut e = [0; NVARS];
        e[p.index()] = 1;
        Poly {
            terms: vec![(e, Rational::one())],
        }
    }

    pub fn monomial(e: Exps, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: vec![(e, c)] }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Exps, Rational)>) -> Self {
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0; NVARS])
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if *e == [0; NVARS] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(e, c)] if *e == [0; NVARS] && c.is_one())
    }

    pub fn leading(&self) -> Option<&(Exps, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn var_mask(&self) -> u8 {
        let mut m = 0u8;
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| total(e)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Exps, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exps(e, m), x * c))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push((add_exps(e1, e2), c1 * c2));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient when `divisor` divides `self`, otherwise `None`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()?));
        }
        let (le, lc) = divisor.leading().cloned()?;
        let lc_inv = lc.recip()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.leading().cloned() {
            if !divides(&le, &re) {
                return None;
            }
            let qe = sub_exps(&re, &le);
            let qc = &rc * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Divides by the leading coefficient; returns the monic polynomial and
    /// the removed factor.
    pub fn monic(&self) -> (Poly, Rational) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (self.clone(), Rational::one());
        }
        (self.scale(&lc.recip().unwrap()), lc)
    }

    /// Coefficients with respect to variable `v`; entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            buckets[e[v] as usize].push((e2, c.clone()));
        }
        // Removing one variable preserves relative grlex order only within a
        // fixed v-degree, which is exactly the bucket.
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (i, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = *e;
                e2[v] += i as u16;
                terms.push((e2, c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd(self, other)
    }
}

fn monomial_gcd(m: &Exps, p: &Poly) -> Poly {
    let mut g = *m;
    for (e, _) in &p.terms {
        for i in 0..NVARS {
            g[i] = g[i].min(e[i]);
        }
    }
    Poly::monomial(g, Rational::one())
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<Poly>) {
    while matches!(v.last(), Some(p) if p.is_zero()) {
        v.pop();
    }
}

fn primitive(v: &[Poly]) -> Vec<Poly> {
    let c = content(v);
    let mut out: Vec<Poly> = if c.is_one() || c.is_zero() {
        v.to_vec()
    } else {
        v.iter()
            .map(|p| p.div_exact(&c).expect("content divides"))
            .collect()
    };
    if let Some(lead) = out.last() {
        let lc = lead.leading_coeff();
        if !lc.is_one() && !lc.is_zero() {
            let inv = lc.recip().unwrap();
            out = out.iter().map(|p| p.scale(&inv)).collect();
        }
    }
    out
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients,
/// up to a factor free of the main variable.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lcb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let lcr = r.last().unwrap().clone();
        let g = gcd(lcb, &lcr);
        let alpha = lcb.div_exact(&g).unwrap();
        let beta = lcr.div_exact(&g).unwrap();
        let mut next: Vec<Poly> = r.iter().map(|p| p.mul(&alpha)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&beta));
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 {
        return monomial_gcd(&a.terms[0].0, b);
    }
    if b.len() == 1 {
        return monomial_gcd(&b.terms[0].0, a);
    }
    if a == b {
        return a.monic().0;
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic().0;
    }
    let mask = a.var_mask() | b.var_mask();
    let v = 7 - mask.leading_zeros() as usize;
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &content(&b.coeffs_in(v)));
    }
    if db == 0 {
        return gcd(&content(&a.coeffs_in(v)), b);
    }
    let ac = a.coeffs_in(v);
    let bc = b.coeffs_in(v);
    let ca = content(&ac);
    let cb = content(&bc);
    let g_content = gcd(&ca, &cb);
    let pa = primitive(&ac);
    let pb = primitive(&bc);
    let (mut x, mut y) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem(&x, &y);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            y = vec![Poly::one()];
            break;
        }
        x = y;
        y = primitive(&r);
    }
    let g = Poly::from_coeffs_in(v, &primitive(&y));
    g_content.mul(&g).monic().0
}

fn fmt_monomial(e: &Exps, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for p in Param::ALL {
        let x = e[p.index()];
        if x == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if x == 1 {
            write!(f, "{}", p.name())?;
        } else {
            write!(f, "{}^{}", p.name(), x)?;
        }
    }
    Ok(())
}

/// Prints terms in decreasing graded-lex order, e.g. `3*k^2 - c + 2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let is_const = *e == [0; NVARS];
            if is_const {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(e, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Poly {
        Poly::var(Param::K)
    }
    fn c() -> Poly {
        Poly::var(Param::C)
    }
    fn int(n: i64) -> Poly {
        Poly::constant(Rational::from_int(n))
    }

    #[test]
    fn display_orders_terms() {
        let p = k().add(&int(2)).mul(&c());
        assert_eq!(p.to_string(), "k*c + 2*c");
        let q = k().mul(&k()).scale(&Rational::from_int(3)).sub(&c()).add(&int(2));
        assert_eq!(q.to_string(), "3*k^2 - c + 2");
    }

    #[test]
    fn exact_division() {
        let a = k().add(&int(2));
        let b = k().sub(&c());
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&k()), None);
    }

    #[test]
    fn gcd_multivariate() {
        let a = k().add(&int(2));
        let b = k().sub(&c());
        let d = c().add(&Poly::var(Param::Lambda));
        let p = a.mul(&a).mul(&b);
        let q = a.mul(&d);
        assert_eq!(gcd(&p, &q), a);
        assert_eq!(gcd(&b.mul(&d), &d.mul(&a)), d);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_univariate_nontrivial() {
        // (k^2 - 1) and (k^2 + 3k + 2) share (k + 1)
        let p = k().mul(&k()).sub(&int(1));
        let q = k().mul(&k()).add(&k().scale(&Rational::from_int(3))).add(&int(2));
        assert_eq!(gcd(&p, &q), k().add(&int(1)));
    }
}
