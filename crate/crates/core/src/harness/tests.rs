use super::*;
use crate::report::emit_report;
use crate::sugawara::Sugawara;
use crate::fock::{VacuumModule, VacuumModuleSpec};

#[test]
fn sugawara_suite_small() {
    let cfg = SuiteConfig::new(Suite::Sugawara).degree(4).mode_range(3);
    let r = run_suite(&cfg).unwrap();
    assert!(r.aggregate_pass, "{:?}", r.failures().next());
}

#[test]
fn kac_moody_degree_zero() {
    let cfg = SuiteConfig::new(Suite::KacMoody).degree(0).mode_range(1);
    let r = run_suite(&cfg).unwrap();
    assert!(r.aggregate_pass);
    assert!(!r.checks.is_empty());
}

#[test]
fn pole_is_config_error() {
    let cfg = SuiteConfig::new(Suite::Sugawara).set(Param::K, RationalFunction::from_int(-2));
    assert!(matches!(run_suite(&cfg), Err(Error::Config(_))));
    let cfg = SuiteConfig::new(Suite::Rees).set(Param::C, RationalFunction::zero());
    assert!(matches!(run_suite(&cfg), Err(Error::Config(_))));
    let cfg = SuiteConfig::new(Suite::Classical).set(Param::Lambda, RationalFunction::zero());
    assert!(matches!(run_suite(&cfg), Err(Error::Config(_))));
    assert!(matches!(
        run_suite(&SuiteConfig::new(Suite::Lie).mode_range(0)),
        Err(Error::Config(_))
    ));
}

#[test]
fn assignment_parsing() {
    let (p, v) = SuiteConfig::parse_assignment("k=3/2").unwrap();
    assert_eq!(p, Param::K);
    assert_eq!(v, "3/2".parse::<RationalFunction>().unwrap());
    assert!(SuiteConfig::parse_assignment("q=1").is_err());
    assert!(SuiteConfig::parse_assignment("k=lambda").is_err());
    assert_eq!(SuiteConfig::parse_algebra("sl3").unwrap(), 3);
    assert!(SuiteConfig::parse_algebra("sl1").is_err());
    assert!(SuiteConfig::parse_algebra("so5").is_err());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ops.json");
    let lie = std::sync::Arc::new(crate::lie::SimpleLieAlgebra::sl(2).unwrap());
    let spec = VacuumModuleSpec::kac_moody(lie.clone(), 0, 5);
    let sug = Sugawara::new(std::sync::Arc::new(VacuumModule::new(spec.clone()).unwrap())).unwrap();
    let mat = sugawara_matrix(&sug, 0, 3).unwrap();
    let key = CacheKey {
        operator: "L^S_0".into(),
        degree: 3,
        fingerprint: fingerprint(&spec),
    };
    let cache = OperatorMatrixCache::open(&path).unwrap();
    assert_eq!(cache.load(&key).unwrap(), None);
    cache.store(&key, &mat).unwrap();
    let reopened = OperatorMatrixCache::open(&path).unwrap();
    assert_eq!(reopened.load(&key).unwrap(), Some(mat));

    let other = CacheKey {
        fingerprint: fingerprint(&spec.with_degree(6)),
        ..key
    };
    assert!(matches!(reopened.load(&other), Err(Error::CacheInvalid(_))));
}

#[test]
fn report_formats() {
    let cfg = SuiteConfig::new(Suite::Dimensions).degree(3);
    let r = run_suite(&cfg).unwrap();
    let json = String::from_utf8(emit_report(&r, ReportFormat::Json)).unwrap();
    assert_eq!(crate::report::VerificationReport::from_json(&json).unwrap(), r);
    assert!(json.contains(crate::report::SCHEMA_VERSION));
    let text = String::from_utf8(emit_report(&r, ReportFormat::Text)).unwrap();
    let lines = text.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).count();
    assert_eq!(lines, r.checks.len());
}
