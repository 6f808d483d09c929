//! Verification suites, report assembly and the operator-matrix cache.

mod cache;
mod suites;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

pub use cache::{fingerprint, CacheKey, OperatorMatrix, OperatorMatrixCache, ORDERING_VERSION};
pub use suites::sugawara_matrix;

use crate::error::{Error, Result};
use crate::fock::Params;
use crate::lie::SimpleLieAlgebra;
use crate::report::{Check, ConfigEcho, ReportFormat, VerificationReport};
use crate::scalars::{Param, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lie,
    KacMoody,
    Virasoro,
    Semidirect,
    Sugawara,
    Shifted,
    Singular,
    TensorIso,
    Rees,
    Critical,
    Classical,
    Poisson,
    Dimensions,
    All,
}

impl Suite {
    pub const EACH: [Suite; 13] = [
        Suite::Lie,
        Suite::KacMoody,
        Suite::Virasoro,
        Suite::Semidirect,
        Suite::Sugawara,
        Suite::Shifted,
        Suite::Singular,
        Suite::TensorIso,
        Suite::Rees,
        Suite::Critical,
        Suite::Classical,
        Suite::Poisson,
        Suite::Dimensions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lie => "lie",
            Suite::KacMoody => "kac-moody",
            Suite::Virasoro => "virasoro",
            Suite::Semidirect => "semidirect",
            Suite::Sugawara => "sugawara",
            Suite::Shifted => "shifted",
            Suite::Singular => "singular",
            Suite::TensorIso => "tensor-iso",
            Suite::Rees => "rees",
            Suite::Critical => "critical",
            Suite::Classical => "classical",
            Suite::Poisson => "poisson",
            Suite::Dimensions => "dimensions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([&Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// `N` of `sl_N`.
    pub rank: usize,
    pub level_structure: i64,
    pub degree: i64,
    pub mode_range: i64,
    pub params: Params,
    pub workers: usize,
    pub cache: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
}

impl SuiteConfig {
    /// sl2, `n = 0`, `D = 6`, `N = 4`, all parameters symbolic, one worker.
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            rank: 2,
            level_structure: 0,
            degree: 6,
            mode_range: 4,
            params: Params::symbolic(),
            workers: 1,
            cache: None,
            out: None,
            format: ReportFormat::Json,
        }
    }

    pub fn algebra(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn level_structure(mut self, n: i64) -> Self {
        self.level_structure = n;
        self
    }

    pub fn degree(mut self, d: i64) -> Self {
        self.degree = d;
        self
    }

    pub fn mode_range(mut self, n: i64) -> Self {
        self.mode_range = n;
        self
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    pub fn set(mut self, p: Param, v: RationalFunction) -> Self {
        self.params.set(p, v);
        self
    }

    /// Parses `sl<N>`.
    pub fn parse_algebra(s: &str) -> Result<usize> {
        let r = s
            .strip_prefix("sl")
            .and_then(|x| x.parse::<usize>().ok())
            .ok_or_else(|| Error::Config(format!("algebra must be sl<N>, got {s:?}")))?;
        if r < 2 {
            return Err(Error::Config(format!("sl{r} is not simple")));
        }
        Ok(r)
    }

    /// Parses `name=value` with `name` one of `k, c, lambda, mu`.
    pub fn parse_assignment(s: &str) -> Result<(Param, RationalFunction)> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected name=value, got {s:?}")))?;
        let p = match name.trim() {
            "k" => Param::K,
            "c" => Param::C,
            "lambda" => Param::Lambda,
            "mu" => Param::Mu,
            other => return Err(Error::Config(format!("unknown parameter {other:?}"))),
        };
        let v: RationalFunction = value
            .trim()
            .parse()
            .map_err(|e| Error::Config(format!("bad value for {name}: {e}")))?;
        if !v.is_zero() && v.as_rational().is_none() {
            return Err(Error::Config(format!("{name} must be a rational number")));
        }
        Ok((p, v))
    }

    pub fn suites(&self) -> Vec<Suite> {
        match self.suite {
            Suite::All => Suite::EACH
                .into_iter()
                .filter(|s| *s != Suite::Singular || self.level_structure == 0)
                .collect(),
            s => vec![s],
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        let p = &self.params;
        ConfigEcho {
            algebra: format!("sl{}", self.rank),
            level_structure: self.level_structure,
            degree: self.degree,
            mode_range: self.mode_range,
            params: [("k", &p.k), ("c", &p.c), ("lambda", &p.lambda), ("mu", &p.mu)]
                .into_iter()
                .map(|(n, v)| (n.to_string(), v.to_string()))
                .collect(),
        }
    }

    /// Range and pole checks. Specializations that make a suite's
    /// construction singular are configuration errors, not failed checks.
    pub fn validate(&self) -> Result<()> {
        if self.degree < 0 {
            return Err(Error::Config("degree must be >= 0".into()));
        }
        if self.mode_range < 1 {
            return Err(Error::Config("mode range must be >= 1".into()));
        }
        if self.level_structure < 0 {
            return Err(Error::Config("level structure must be >= 0".into()));
        }
        if self.rank < 2 {
            return Err(Error::Config(format!("sl{} is not simple", self.rank)));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        let p = &self.params;
        let h = RationalFunction::from_int(self.rank as i64);
        let symbolic = |v: &RationalFunction, q: Param| *v == RationalFunction::param(q);
        for s in self.suites() {
            let err = |msg: &str| Err(Error::Config(format!("suite {s}: {msg}")));
            match s {
                Suite::Sugawara | Suite::Shifted | Suite::Singular | Suite::TensorIso => {
                    if (&p.k + &h).is_zero() {
                        return err(&format!("k = -{} is the critical level (pole of 1/(k+h))", self.rank));
                    }
                    if s == Suite::Singular && self.level_structure != 0 {
                        return err("the singular vector is defined for n = 0");
                    }
                }
                Suite::Rees => {
                    if p.k.is_zero() {
                        return err("k = 0 is a pole of lambda/k");
                    }
                    if p.c.is_zero() {
                        return err("c = 0 is a pole of mu/c");
                    }
                }
                Suite::Critical => {
                    if !symbolic(&p.k, Param::K) {
                        return err("needs symbolic k");
                    }
                }
                Suite::Classical | Suite::Poisson => {
                    if !symbolic(&p.k, Param::K) {
                        return err("needs symbolic k");
                    }
                    if !symbolic(&p.c, Param::C) {
                        return err("c is fixed by c = k mu / lambda");
                    }
                    if p.lambda.is_zero() {
                        return err("lambda = 0 is a pole of c = k mu / lambda");
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Runs the configured suite on `sl_N`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let lie = SimpleLieAlgebra::sl(cfg.rank).map_err(|e| Error::Config(e.to_string()))?;
    run_suite_with_algebra(cfg, lie)
}

/// Runs the configured suite against explicit algebra data (the `--algebra`
/// choice is ignored apart from the report echo).
pub fn run_suite_with_algebra(cfg: &SuiteConfig, lie: SimpleLieAlgebra) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let lie = Arc::new(lie);
    let cache = match &cfg.cache {
        Some(p) => Some(Arc::new(OperatorMatrixCache::open(p)?)),
        None => None,
    };
    let mut tasks = Vec::new();
    for s in cfg.suites() {
        tasks.extend(suites::tasks(s, cfg, &lie, cache.as_ref())?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let checks: Vec<Check> = pool.install(|| {
        tasks
            .into_par_iter()
            .map(|t| t())
            .collect::<Vec<Vec<Check>>>()
            .into_iter()
            .flatten()
            .collect()
    });
    let mut echo = cfg.echo();
    echo.algebra = lie.name.clone();
    Ok(VerificationReport::new(
        cfg.suite.name(),
        echo,
        checks,
        start.elapsed().as_millis() as u64,
    ))
}

#[cfg(test)]
mod tests;
