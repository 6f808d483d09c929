//! Graded vacuum modules with PBW bases and the normal-ordering rewriter.

mod format;
mod module;
mod symbol;
mod vector;

pub use format::format_coeff;
pub use module::VacuumModule;
pub use symbol::{symbol_bracket, AlgebraKind, GeneratorSymbol, Params, Regime, VacuumModuleSpec};
pub use vector::{ModuleVector, PBWMonomial};

/// Coefficients of `prod_{j>=1} (1-q^j)^{-dim g}` (Kac-Moody part, `dim g`
/// may be 0) times `prod_{j>=2} (1-q^j)^{-1}` if `with_virasoro`, through
/// `q^max_degree`.
pub fn generating_function(dim_g: usize, with_virasoro: bool, max_degree: usize) -> Vec<u64> {
    let mut f = vec![0u64; max_degree + 1];
    f[0] = 1;
    let mut divide = |j: usize| {
        for i in j..=max_degree {
            f[i] += f[i - j];
        }
    };
    for j in 1..=max_degree {
        for _ in 0..dim_g {
            divide(j);
        }
    }
    if with_virasoro {
        for j in 2..=max_degree {
            divide(j);
        }
    }
    f
}

pub fn module_generating_function(spec: &VacuumModuleSpec, max_degree: usize) -> Vec<u64> {
    let dim = if spec.has_j() { spec.lie_dim() } else { 0 };
    generating_function(dim, spec.has_l(), max_degree)
}

#[cfg(test)]
mod tests;
