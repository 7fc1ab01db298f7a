use std::path::PathBuf;
use std::process::{Command, Output};

use superpoisson::format::{parse_algebra_file, Parsed};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpoisson"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_reports_pass_lines() {
    let out = run(&["verify", &data("sp24.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("super-poisson: PASS"));
    assert!(text.contains("super-flexible: PASS"));
    assert!(text.contains("grading: PASS"));
}

#[test]
fn verify_failure_lists_witness() {
    let out = run(&["verify", &data("fail_abcd_1100.json")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(e0, e0, e1) -> e1"), "{}", stdout(&out));
}

#[test]
fn verify_pair_runs_axioms() {
    let out = run(&["verify", &data("fail_pair_dot.json")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("dot-super-commutative: FAIL"));
    assert!(text.contains("super-leibniz: PASS"));
}

#[test]
fn malformed_files_name_the_field() {
    let out = run(&["verify", &data("bad_zero_denominator.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("products[0].result[0].coeff"));
    let out = run(&["verify", &data("bad_json.json")]);
    assert!(stderr(&out).contains("line 6"));
    let out = run(&["verify", &data("missing.json")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["verify", "--bogus", &data("sp24.json")])), 2);
    assert_eq!(code(&run(&["classify2", "--grid-min", "3", "--grid-max", "1"])), 2);
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("classify2"));
}

#[test]
fn split_then_fuse_reproduces_table() {
    for name in [
        "sp21.json",
        "sp22.json",
        "sp23.json",
        "sp24.json",
        "fail_abcd_2100.json",
        "fail_even_2_1.json",
    ] {
        let pair = scratch(&format!("{name}.pair.json"));
        let back = scratch(&format!("{name}.fused.json"));
        assert_eq!(code(&run(&["split", &data(name), "-o", pair.to_str().unwrap()])), 0);
        assert_eq!(
            code(&run(&["fuse", pair.to_str().unwrap(), "-o", back.to_str().unwrap()])),
            0
        );
        let original = parse_algebra_file(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        let fused = parse_algebra_file(&std::fs::read_to_string(&back).unwrap()).unwrap();
        assert_eq!(original, fused, "{name}");
        assert!(matches!(fused, Parsed::Algebra(_)));

        let first = stdout(&run(&["split", &data(name)]));
        assert_eq!(first, stdout(&run(&["split", &data(name)])));
    }
}

#[test]
fn split_and_fuse_reject_the_wrong_kind() {
    assert_eq!(code(&run(&["split", &data("fail_pair_dot.json")])), 2);
    assert_eq!(code(&run(&["fuse", &data("sp24.json")])), 2);
}

#[test]
fn powers_command() {
    let out = run(&["powers", &data("sp24.json"), "--element", "1", "--max-n", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("y^2 = e0"));
    assert!(text.contains("y^5 = 0"));
    assert!(text.contains("step y·y = 0: PASS"));

    let out = run(&["powers", &data("sp22.json"), "--element", "0", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["powers"]["10"]["kind"], "determined");

    assert_eq!(code(&run(&["powers", &data("sp24.json"), "--element", "7"])), 2);
    assert_eq!(
        code(&run(&["powers", &data("fail_abcd_1100.json"), "--element", "1"])),
        2
    );
}

#[test]
fn prove_command() {
    let out = run(&["prove"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("56 of 56 lines pass"));
    let out = run(&["prove", "--v1-form", "left-nested"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("concrete cross-check reproduces"));
}

#[test]
fn classify2_reports_differences() {
    let out = run(&["classify2", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["solutions"], 33);
    assert_eq!(v["report"]["derived_vs_reference"]["equivalent"], false);
    let out = run(&["classify2", "--grid-min", "0", "--grid-max", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["classify2"],
        vec!["prove", "--json"],
        vec!["verify", "--json", "fail_even_2_1.json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
