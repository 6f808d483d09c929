use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sugawara_core::fock::{module_generating_function, VacuumModule, VacuumModuleSpec};
use sugawara_core::harness::{fingerprint, run_suite, sugawara_matrix, CacheKey, OperatorMatrixCache, Suite, SuiteConfig};
use sugawara_core::lie::SimpleLieAlgebra;
use sugawara_core::report::{emit_report, ReportFormat};
use sugawara_core::sugawara::Sugawara;
use sugawara_core::Error;

#[derive(Parser)]
#[command(name = "sugawara", version, about = "Exact checks of the Sugawara construction on truncated vacuum modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
    /// Print operator matrices per degree.
    Table(TableArgs),
    /// Print graded dimensions against generating-function coefficients.
    Dims(DimsArgs),
}

#[derive(Args)]
struct ModuleArgs {
    /// Lie algebra, sl<N>.
    #[arg(long, default_value = "sl2")]
    algebra: String,
    #[arg(long, default_value_t = 0)]
    level_structure: i64,
    /// Truncation degree D.
    #[arg(long, default_value_t = 6)]
    degree: i64,
}

#[derive(Args)]
struct VerifyArgs {
    /// lie, kac-moody, virasoro, semidirect, sugawara, shifted, singular,
    /// tensor-iso, rees, critical, classical, poisson, dimensions or all.
    suite: String,
    #[command(flatten)]
    module: ModuleArgs,
    #[arg(long, default_value_t = 4)]
    mode_range: i64,
    /// Specialize a parameter, e.g. --set k=3/2 (k, c, lambda, mu).
    #[arg(long = "set", value_name = "NAME=RAT")]
    set: Vec<String>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableOperator {
    Sugawara,
}

#[derive(Args)]
struct TableArgs {
    operator: TableOperator,
    #[command(flatten)]
    module: ModuleArgs,
    /// Largest |n| of L^S_n.
    #[arg(long, default_value_t = 2)]
    mode_range: i64,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    module: ModuleArgs,
}

fn usage_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    eprintln!("run `sugawara --help` for usage");
    ExitCode::from(2)
}

fn algebra(m: &ModuleArgs) -> Result<Arc<SimpleLieAlgebra>, Error> {
    if m.degree < 0 {
        return Err(Error::Config("degree must be >= 0".into()));
    }
    if m.level_structure < 0 {
        return Err(Error::Config("level structure must be >= 0".into()));
    }
    let rank = SuiteConfig::parse_algebra(&m.algebra)?;
    Ok(Arc::new(SimpleLieAlgebra::sl(rank)?))
}

fn verify(a: VerifyArgs) -> ExitCode {
    let cfg = (|| -> Result<SuiteConfig, Error> {
        let suite: Suite = a.suite.parse()?;
        let mut cfg = SuiteConfig::new(suite)
            .algebra(SuiteConfig::parse_algebra(&a.module.algebra)?)
            .level_structure(a.module.level_structure)
            .degree(a.module.degree)
            .mode_range(a.mode_range)
            .workers(a.workers);
        for s in &a.set {
            let (p, v) = SuiteConfig::parse_assignment(s)?;
            cfg = cfg.set(p, v);
        }
        cfg.cache = a.cache.clone();
        cfg.out = a.out.clone();
        cfg.format = match a.format {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        };
        cfg.validate()?;
        Ok(cfg)
    })();
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) => return usage_error(&e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let bytes = emit_report(&report, cfg.format);
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &bytes) {
                eprintln!("error: writing {}: {e}", p.display());
                return ExitCode::from(2);
            }
            let failed = report.failures().count();
            println!(
                "{} checks, {} failed: {}",
                report.checks.len(),
                failed,
                if report.aggregate_pass { "PASS" } else { "FAIL" }
            );
        }
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    if report.aggregate_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn table(a: TableArgs) -> ExitCode {
    let TableOperator::Sugawara = a.operator;
    let run = || -> Result<(), Error> {
        if a.mode_range < 0 {
            return Err(Error::Config("mode range must be >= 0".into()));
        }
        let lie = algebra(&a.module)?;
        let spec = VacuumModuleSpec::kac_moody(lie, a.module.level_structure, a.module.degree);
        let module = Arc::new(VacuumModule::new(spec.clone())?);
        let sug = Sugawara::new(module.clone())?;
        let cache = a.cache.as_ref().map(OperatorMatrixCache::open).transpose()?;
        let fp = fingerprint(&spec);
        let n = a.module.level_structure;
        for w in 0..=a.module.degree {
            for n0 in -a.mode_range..=a.mode_range {
                let cost = sugawara_core::fock::GeneratorSymbol::l(n0).weight(n).max(n0.abs());
                if w + cost > a.module.degree {
                    continue;
                }
                let key = CacheKey {
                    operator: format!("L^S_{n0}"),
                    degree: w,
                    fingerprint: fp.clone(),
                };
                let mat = match cache.as_ref().map(|c| c.load(&key)).transpose()?.flatten() {
                    Some(m) => m,
                    None => {
                        let m = sugawara_matrix(&sug, n0, w)?;
                        if let Some(c) = &cache {
                            c.store(&key, &m)?;
                        }
                        m
                    }
                };
                println!("L^S_{n0} on weight {w} ({} x {})", mat.rows.len(), mat.cols.len());
                for (j, col) in mat.cols.iter().enumerate() {
                    let image: Vec<String> = mat
                        .entries
                        .iter()
                        .filter(|e| e.1 == j)
                        .map(|(i, _, c)| format!("({c}) * {}", mat.rows[*i]))
                        .collect();
                    let image = if image.is_empty() { "0".to_string() } else { image.join(" + ") };
                    println!("  {col} -> {image}");
                }
            }
        }
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(&e),
    }
}

fn dims(a: DimsArgs) -> ExitCode {
    let run = || -> Result<bool, Error> {
        let lie = algebra(&a.module)?;
        let (n, d) = (a.module.level_structure, a.module.degree);
        let specs = [
            ("kac-moody", VacuumModuleSpec::kac_moody(lie.clone(), n, d)),
            ("virasoro", VacuumModuleSpec::virasoro(n, d)),
            ("semidirect", VacuumModuleSpec::semidirect(lie, n, d)),
        ];
        let mut ok = true;
        println!("{:>6}  {:>20}  {:>20}  {:>20}", "weight", specs[0].0, specs[1].0, specs[2].0);
        let mut cols = Vec::new();
        for (_, spec) in &specs {
            let m = VacuumModule::new(spec.clone())?;
            let gf = module_generating_function(spec, d as usize);
            let counts = (0..=d)
                .map(|w| m.enumerate_basis(w).map(|b| b.len() as u64))
                .collect::<Result<Vec<_>, _>>()?;
            cols.push((counts, gf));
        }
        for w in 0..=d as usize {
            let mut line = format!("{w:>6}");
            for (counts, gf) in &cols {
                let mark = if counts[w] == gf[w] { "" } else { " !" };
                ok &= counts[w] == gf[w];
                line.push_str(&format!("  {:>20}", format!("{} / {}{mark}", counts[w], gf[w])));
            }
            println!("{line}");
        }
        println!("(basis count / generating function)");
        Ok(ok)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => usage_error(&e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::Dims(a) => dims(a),
    }
}
