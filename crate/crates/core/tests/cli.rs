use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon")).args(args).output().expect("spawn ribbon")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = ribbon(args);
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn betti_of_filament_ribbon() {
    let (code, out, _) = run(&["betti", &path("fig4.rcx"), "--target", "rbE"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "betti_rb=6"), "{out}");
    assert!(out.lines().any(|l| l == "b2=3"), "{out}");
}

#[test]
fn nearness_examples() {
    let (code, out, _) =
        run(&["near", &path("fig1.rcx"), "--a", "rbE", "--b", "rbA", "--probes", "b1_cycles", "--th", "1"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "near=true"), "{out}");
    let (_, out, _) =
        run(&["near", &path("fig1.rcx"), "--a", "rbE", "--b", "rbB", "--probes", "b2_holes", "--th", "1"]);
    assert!(out.lines().any(|l| l == "near=false"), "{out}");
    let (_, out, _) =
        run(&["near", &path("fig1.rcx"), "--a", "rbE", "--b", "rbB", "--probes", "b2_holes", "--th", "1.5"]);
    assert!(out.lines().any(|l| l == "th=3/2") && out.lines().any(|l| l == "near=true"), "{out}");
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &path("fig1.rcx")]).0, 0);
    assert_eq!(run(&["validate", &path("empty.rcx")]).0, 2);
    let (code, _, err) = run(&["validate", &path("missing.rcx")]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "Io");
}

#[test]
fn usage_and_target_errors() {
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, _, err) = run(&["betti", &path("fig4.rcx"), "--target", "nope"]);
    assert_eq!(code, 3);
    assert!(err.contains("UnknownTarget"), "{err}");
    let (code, _, err) = run(&["divide", &path("fig3.rcx"), "--target", "rbxK"]);
    assert_eq!(code, 3);
    assert!(err.contains("WrongTargetKind"), "{err}");
    let (code, _, err) =
        run(&["near", &path("fig1.rcx"), "--a", "rbE", "--b", "rbA", "--probes", "b1_cycles", "--th", "0"]);
    assert_eq!(code, 4);
    assert!(err.contains("NonPositiveThreshold"), "{err}");
}

#[test]
fn nerve_groups_and_checks() {
    let (code, out, _) = run(&["nerve", &path("fig3.rcx")]);
    assert_eq!(code, 0);
    assert!(out.contains("rbxK.group0=rbA,rbBp,rbB\n"), "{out}");
    let (code, out, _) = run(&["nervecheck", &path("convex.rcx")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("passed=true\n"), "{out}");
    assert_eq!(run(&["nervecheck", &path("fig4.rcx")]).0, 3);
}

#[test]
fn divide_and_render() {
    let (code, out, _) = run(&["divide", &path("fig4.rcx"), "--target", "rbE", "--grid", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("samples=140\n") && out.ends_with("passed=true\n"), "{out}");
    let dir = std::env::temp_dir().join(format!("ribbon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("rbE.svg");
    let (code, out, _) = run(&["render", &path("fig1_1.rcx"), "--target", "rbE", "-o", svg.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let written = std::fs::read_to_string(&svg).unwrap();
    assert!(written.starts_with("<?xml") && written.ends_with("</svg>\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn fmt_is_idempotent() {
    let (code, out, _) = run(&["fmt", &path("fig5.rcx")]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(data("fig5.rcx")).unwrap());
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        vec!["betti", "fig2.rcx", "--target", "vNrvK"],
        vec!["divide", "fig4.rcx", "--target", "rbE"],
        vec!["render", "fig5.rcx", "--target", "rbNrvE"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = path(&args[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (ribbon(&refs), ribbon(&refs));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status, b.status);
    }
}
