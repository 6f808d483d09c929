//! Text forms: `J[a=E12,m=-1] L[m=-2] |0;n=0>` for monomials and
//! `coeff * monomial + ...` for vectors.

use super::module::VacuumModule;
use super::symbol::GeneratorSymbol;
use super::vector::{ModuleVector, PBWMonomial};
use crate::error::{Error, Result};
use crate::scalars::RationalFunction;

impl VacuumModule {
    fn label(&self, a: u16) -> String {
        self.lie()
            .and_then(|g| g.basis_labels.get(a as usize))
            .cloned()
            .unwrap_or_else(|| format!("#{a}"))
    }

    pub fn format_symbol(&self, s: GeneratorSymbol) -> String {
        match s {
            GeneratorSymbol::J { m, a } => format!("J[a={},m={m}]", self.label(a)),
            GeneratorSymbol::L { m } => format!("L[m={m}]"),
        }
    }

    /// Short name for ids: `J^E12_-1`, `L_2`.
    pub fn symbol_name(&self, s: GeneratorSymbol) -> String {
        match s {
            GeneratorSymbol::J { m, a } => format!("J^{}_{m}", self.label(a)),
            GeneratorSymbol::L { m } => format!("L_{m}"),
        }
    }

    pub fn format_monomial(&self, m: &PBWMonomial) -> String {
        let mut s = String::new();
        for sym in m.symbols() {
            s.push_str(&self.format_symbol(*sym));
            s.push(' ');
        }
        s.push_str(&format!("|0;n={}>", self.level_structure()));
        s
    }

    pub fn format_vector(&self, v: &ModuleVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.terms()
            .iter()
            .map(|(m, c)| format!("{} * {}", format_coeff(c), self.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse_symbol(&self, tok: &str) -> Result<GeneratorSymbol> {
        let bad = || Error::Parse(format!("bad generator `{tok}`"));
        let parse_mode = |s: &str| s.parse::<i64>().map_err(|_| bad());
        let s = if let Some(body) = tok.strip_prefix("J[a=").and_then(|t| t.strip_suffix(']')) {
            let (label, mode) = body.split_once(",m=").ok_or_else(bad)?;
            let g = self.lie().ok_or_else(bad)?;
            let a = g.label_index(label).ok_or_else(bad)?;
            GeneratorSymbol::j(a, parse_mode(mode)?)
        } else if let Some(mode) = tok.strip_prefix("L[m=").and_then(|t| t.strip_suffix(']')) {
            GeneratorSymbol::l(parse_mode(mode)?)
        } else {
            return Err(bad());
        };
        self.spec().check_symbol(s)?;
        Ok(s)
    }

    pub fn parse_monomial(&self, s: &str) -> Result<PBWMonomial> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let (last, syms) = toks
            .split_last()
            .ok_or_else(|| Error::Parse("empty monomial".into()))?;
        if *last != format!("|0;n={}>", self.level_structure()) {
            return Err(Error::Parse(format!("bad vacuum `{last}`")));
        }
        let word = syms
            .iter()
            .map(|t| self.parse_symbol(t))
            .collect::<Result<Vec<_>>>()?;
        let m = PBWMonomial(word);
        self.check_monomial(&m)?;
        Ok(m)
    }

    pub fn parse_vector(&self, s: &str) -> Result<ModuleVector> {
        let s = s.trim();
        if s == "0" {
            return Ok(ModuleVector::zero());
        }
        let mut v = ModuleVector::zero();
        for term in split_top(s, " + ") {
            let parts = split_top(term, " * ");
            if parts.len() != 2 {
                return Err(Error::Parse(format!("bad term `{term}`")));
            }
            let c: RationalFunction = parts[0].parse()?;
            v.add_term(self.parse_monomial(parts[1])?, &c);
        }
        Ok(v)
    }
}

/// Coefficient text, parenthesized when it is a multi-term polynomial.
pub fn format_coeff(c: &RationalFunction) -> String {
    if c.is_polynomial() && c.numer().len() > 1 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn split_top<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}
