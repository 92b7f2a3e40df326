use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/corpus").join(name)
}

fn catalog() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/catalog/default.json")
}

fn privslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_privslice")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_roidsec_prints_one_suggestion() {
    let out = privslice(&["check", "--ir", s(&corpus("Roidsec.slir")), "--catalog", s(&catalog())]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 1);
    let cols: Vec<&str> = lines[0].split('\t').collect();
    assert_eq!(cols[..3], ["Suggestion", "GDPR Art. 5(1)(c)", "Roidsec.org.roidsec.tracker.LocationActivity.onLocationChanged.1"]);
}

#[test]
fn check_beita_prints_one_violation() {
    let out = privslice(&["check", "--ir", s(&corpus("Beita_com_beita_contact.slir"))]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("PotentialViolation\tGDPR Art. 25\t"));
}

#[test]
fn check_empty_program() {
    let dir = tempfile::tempdir().unwrap();
    let ir = dir.path().join("empty.slir");
    fs::write(&ir, "# nothing here\n").unwrap();
    let out = privslice(&["check", "--ir", s(&ir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn analyze_writes_requested_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = privslice(&[
        "analyze", "--ir", s(&corpus("Steam.slir")), "--catalog", s(&catalog()), "--out", s(&out_dir),
        "--emit", "bundle,dot,turtle", "--app-name", "steam-app",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let id = "steam_app.com.valvesoftware.android.steam.community.LoginActivity.onSignIn.0";
    for f in [
        "bundle.json".to_string(),
        format!("view1-{id}.dot"),
        format!("view2-{id}.dot"),
        format!("view2-{id}.ttl"),
        format!("view3-{id}.dot"),
        "summary.dot".to_string(),
    ] {
        assert!(out_dir.join(&f).is_file(), "{f} missing");
    }
    let bundle: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["app"], "steam-app");
    assert_eq!(bundle["slices"][0]["id"], id);
    // No staging files are left behind.
    assert_eq!(fs::read_dir(&out_dir).unwrap().count(), 6);
}

#[test]
fn analyze_bundle_only_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = privslice(&["analyze", "--ir", s(&corpus("Overlay_android_samp.slir")), "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names, vec!["bundle.json"]);
}

#[test]
fn directory_input_merges_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = privslice(&["analyze", "--ir", s(&corpus("")), "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    let bundle: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["app"], "corpus");
    assert_eq!(bundle["slices"].as_array().unwrap().len(), 4);
    assert_eq!(bundle["findings"].as_array().unwrap().len(), 5);
}

#[test]
fn parse_error_reports_location_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let ir = dir.path().join("bad.slir");
    fs::write(&ir, "class A {\n  method m() {\n    x = op(y)\n  }\n}\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = privslice(&["analyze", "--ir", s(&ir), "--out", s(&out_dir)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.slir:3:"), "{err}");
    assert!(!out_dir.exists());
}

#[test]
fn catalog_conflict_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    fs::write(
        &cat,
        r#"{"entries": [
            {"signature": "a.B.c", "role": "processing", "processing": "Store"},
            {"signature": "a.B.*", "role": "measure", "measure": "HashFunction"}
        ], "third_party_prefixes": []}"#,
    )
    .unwrap();
    let out = privslice(&["check", "--ir", s(&corpus("Roidsec.slir")), "--catalog", s(&cat)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cat.json"));
}

#[test]
fn unreachable_code_is_warned_about() {
    let dir = tempfile::tempdir().unwrap();
    let ir = dir.path().join("dead.slir");
    fs::write(&ir, "class A {\n  method m() {\n    return\n    x = const 1\n  }\n}\n").unwrap();
    let out = privslice(&["check", "--ir", s(&ir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning: unreachable statement A.m:1"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(privslice(&["analyze", "--ir", "x.slir"]).status.code(), Some(1));
    assert_eq!(privslice(&["check", "x.slir"]).status.code(), Some(1));
    assert_eq!(privslice(&["--help"]).status.code(), Some(0));
}
