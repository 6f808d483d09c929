use std::process::Command;

fn sugawara(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sugawara")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn verify_passes_with_exit_0() {
    let (code, out, _) = sugawara(&["verify", "sugawara", "--degree", "4", "--mode-range", "2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("PASS sugawara/")));
    assert!(!out.contains("FAIL"));
}

#[test]
fn json_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, _, _) = sugawara(&[
        "verify", "dimensions", "--degree", "3", "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let r = sugawara_core::report::VerificationReport::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(r.aggregate_pass);
    assert_eq!(r.schema_version, sugawara_core::report::SCHEMA_VERSION);
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |w: &str| {
        let (code, out, _) = sugawara(&["verify", "shifted", "--degree", "4", "--mode-range", "2", "--workers", w]);
        assert_eq!(code, 0);
        // the last line carries the wall time
        let mut lines: Vec<String> = out.lines().map(String::from).collect();
        lines.pop();
        lines
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["verify", "sugawara", "--set", "k=-2"][..],
        &["verify", "rees", "--set", "c=0"],
        &["verify", "classical", "--set", "lambda=0"],
        &["verify", "critical", "--set", "k=1"],
        &["verify", "lie", "--mode-range", "0"],
        &["verify", "lie", "--algebra", "sl1"],
        &["verify", "nonsense"],
        &["verify", "lie", "--set", "k"],
        &["verify", "singular", "--level-structure", "1"],
        &["frobnicate"],
    ] {
        let (code, _, err) = sugawara(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn numeric_level_passes() {
    let (code, _, err) = sugawara(&["verify", "sugawara", "--degree", "4", "--mode-range", "2", "--set", "k=1"]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn dims_and_table() {
    let (code, out, _) = sugawara(&["dims", "--degree", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("9 / 9"));
    let (code, out, _) = sugawara(&["table", "sugawara", "--degree", "2", "--mode-range", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("L^S_0 on weight 1 (3 x 3)"));
    assert!(out.contains("L^S_-1 on weight 0"));
}
