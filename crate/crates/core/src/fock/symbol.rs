use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::SimpleLieAlgebra;
use crate::scalars::{Param, Rational, RationalFunction};

/// A topological generator `J^a_m` or `L_m`. The derived order is the
/// canonical PBW order: every `J` before every `L`, `J` by `(m, a)`, `L` by `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSymbol {
    J { m: i32, a: u16 },
    L { m: i32 },
}

impl GeneratorSymbol {
    pub fn j(a: usize, m: i64) -> Self {
        GeneratorSymbol::J {
            m: m as i32,
            a: a as u16,
        }
    }

    pub fn l(m: i64) -> Self {
        GeneratorSymbol::L { m: m as i32 }
    }

    pub fn mode(self) -> i64 {
        match self {
            GeneratorSymbol::J { m, .. } | GeneratorSymbol::L { m } => m as i64,
        }
    }

    pub fn with_mode(self, m: i64) -> Self {
        match self {
            GeneratorSymbol::J { a, .. } => GeneratorSymbol::J { m: m as i32, a },
            GeneratorSymbol::L { .. } => GeneratorSymbol::L { m: m as i32 },
        }
    }

    pub fn is_j(self) -> bool {
        matches!(self, GeneratorSymbol::J { .. })
    }

    /// Creation symbols are those not annihilating `vac_n`.
    pub fn is_creation(self, n: i64) -> bool {
        match self {
            GeneratorSymbol::J { m, .. } => (m as i64) < n,
            GeneratorSymbol::L { m } => (m as i64) < 2 * n - 1,
        }
    }

    /// Filtration weight: `n - m` for `J_m`, `2n - m` for `L_m`. Equal to the
    /// conformal degree `-m` when `n = 0`.
    pub fn weight(self, n: i64) -> i64 {
        match self {
            GeneratorSymbol::J { m, .. } => n - m as i64,
            GeneratorSymbol::L { m } => 2 * n - m as i64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AlgebraKind {
    KacMoody,
    Virasoro,
    Semidirect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Regime {
    Quantum,
    Classical,
}

/// Values of `k, c, lambda, mu`; each defaults to the free parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub k: RationalFunction,
    pub c: RationalFunction,
    pub lambda: RationalFunction,
    pub mu: RationalFunction,
}

impl Default for Params {
    fn default() -> Self {
        Params::symbolic()
    }
}

impl Params {
    pub fn symbolic() -> Self {
        Params {
            k: RationalFunction::param(Param::K),
            c: RationalFunction::param(Param::C),
            lambda: RationalFunction::param(Param::Lambda),
            mu: RationalFunction::param(Param::Mu),
        }
    }

    pub fn get(&self, p: Param) -> &RationalFunction {
        match p {
            Param::K => &self.k,
            Param::C => &self.c,
            Param::Lambda => &self.lambda,
            Param::Mu => &self.mu,
        }
    }

    pub fn set(&mut self, p: Param, v: RationalFunction) {
        match p {
            Param::K => self.k = v,
            Param::C => self.c = v,
            Param::Lambda => self.lambda = v,
            Param::Mu => self.mu = v,
        }
    }

    pub fn with(mut self, p: Param, v: RationalFunction) -> Self {
        self.set(p, v);
        self
    }

    /// Parameters given a non-symbolic value, in `k, c, lambda, mu` order.
    pub fn overrides(&self) -> Vec<(Param, &RationalFunction)> {
        [Param::K, Param::C, Param::Lambda, Param::Mu]
            .into_iter()
            .filter(|p| *self.get(*p) != RationalFunction::param(*p))
            .map(|p| (p, self.get(p)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VacuumModuleSpec {
    pub kind: AlgebraKind,
    pub regime: Regime,
    pub lie: Option<Arc<SimpleLieAlgebra>>,
    pub level_structure: i64,
    pub params: Params,
    pub truncation_degree: i64,
}

impl VacuumModuleSpec {
    pub fn kac_moody(lie: Arc<SimpleLieAlgebra>, n: i64, d: i64) -> Self {
        Self::build(AlgebraKind::KacMoody, Some(lie), n, d)
    }

    pub fn virasoro(n: i64, d: i64) -> Self {
        Self::build(AlgebraKind::Virasoro, None, n, d)
    }

    pub fn semidirect(lie: Arc<SimpleLieAlgebra>, n: i64, d: i64) -> Self {
        Self::build(AlgebraKind::Semidirect, Some(lie), n, d)
    }

    fn build(kind: AlgebraKind, lie: Option<Arc<SimpleLieAlgebra>>, n: i64, d: i64) -> Self {
        VacuumModuleSpec {
            kind,
            regime: Regime::Quantum,
            lie,
            level_structure: n,
            params: Params::symbolic(),
            truncation_degree: d,
        }
    }

    pub fn classical(mut self) -> Self {
        self.regime = Regime::Classical;
        self
    }

    pub fn with_param(mut self, p: Param, v: RationalFunction) -> Self {
        self.params.set(p, v);
        self
    }

    pub fn with_degree(mut self, d: i64) -> Self {
        self.truncation_degree = d;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.level_structure < 0 {
            return Err(Error::Domain("level structure must be >= 0".into()));
        }
        if self.truncation_degree < 0 {
            return Err(Error::Domain("truncation degree must be >= 0".into()));
        }
        match (self.kind, &self.lie) {
            (AlgebraKind::Virasoro, Some(_)) => {
                Err(Error::Domain("Virasoro module takes no Lie algebra".into()))
            }
            (AlgebraKind::KacMoody | AlgebraKind::Semidirect, None) => {
                Err(Error::Domain("Kac-Moody part needs a Lie algebra".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn has_j(&self) -> bool {
        self.kind != AlgebraKind::Virasoro
    }

    pub fn has_l(&self) -> bool {
        self.kind != AlgebraKind::KacMoody
    }

    pub fn lie_dim(&self) -> usize {
        self.lie.as_ref().map_or(0, |g| g.dimension())
    }

    pub fn check_symbol(&self, s: GeneratorSymbol) -> Result<()> {
        match s {
            GeneratorSymbol::J { a, .. } => {
                if !self.has_j() {
                    return Err(Error::AlgebraMismatch("J symbol in a Virasoro module".into()));
                }
                if a as usize >= self.lie_dim() {
                    return Err(Error::AlgebraMismatch(format!("basis index {a} out of range")));
                }
            }
            GeneratorSymbol::L { .. } => {
                if !self.has_l() {
                    return Err(Error::AlgebraMismatch("L symbol in a Kac-Moody module".into()));
                }
            }
        }
        Ok(())
    }
}

/// `[x, y]` as a combination of symbols plus a central scalar, with the
/// level and central charge folded in from `params`.
pub fn symbol_bracket(
    lie: Option<&SimpleLieAlgebra>,
    params: &Params,
    x: GeneratorSymbol,
    y: GeneratorSymbol,
) -> (Vec<(GeneratorSymbol, Rational)>, RationalFunction) {
    use GeneratorSymbol::*;
    match (x, y) {
        (J { m: p, a }, J { m: q, a: b }) => {
            let lie = lie.expect("J symbols need a Lie algebra");
            let s = (p + q) as i64;
            let lin = lie.structure_constants[a as usize][b as usize]
                .iter()
                .map(|(d, c)| (GeneratorSymbol::j(*d, s), c.clone()))
                .collect();
            let central = if s == 0 && p != 0 {
                let f = &lie.form_matrix[a as usize][b as usize];
                params.k.scale(&(f * &Rational::from_int(p as i64)))
            } else {
                RationalFunction::zero()
            };
            (lin, central)
        }
        (L { m: p }, L { m: q }) => {
            let (p, q) = (p as i64, q as i64);
            let lin = if p != q {
                vec![(GeneratorSymbol::l(p + q), Rational::from_int(p - q))]
            } else {
                Vec::new()
            };
            let central = if p + q == 0 && p * p * p != p {
                params.c.scale(&Rational::new(p * p * p - p, 12))
            } else {
                RationalFunction::zero()
            };
            (lin, central)
        }
        (L { m: _ }, J { m: q, a }) => {
            let lin = if q != 0 {
                vec![(
                    GeneratorSymbol::j(a as usize, x.mode() + q as i64),
                    Rational::from_int(-(q as i64)),
                )]
            } else {
                Vec::new()
            };
            (lin, RationalFunction::zero())
        }
        (J { m: p, a }, L { m: _ }) => {
            let lin = if p != 0 {
                vec![(
                    GeneratorSymbol::j(a as usize, (p as i64) + y.mode()),
                    Rational::from_int(p as i64),
                )]
            } else {
                Vec::new()
            };
            (lin, RationalFunction::zero())
        }
    }
}
