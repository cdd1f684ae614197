use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_monadkit")).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn path(name: &str) -> String {
    example(name).to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let (code, r) = run(&["validate", &path("m1_n4.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["in_x0"], true);
    let (code, r) = run(&["validate", &path("zero.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["m_subbundle"], false);
    assert_eq!(run(&["validate", &path("missing.json")]).0, 3);
    assert_eq!(run(&["validate", &path("m1_n4.json"), "--field", "R"]).0, 3);
    assert_eq!(run(&["no-such-command"]).0, 3);
}

#[test]
fn malformed_entries_are_parse_errors() {
    let dir = std::env::temp_dir().join(format!("monadkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"M": {"rows": 2, "cols": 2, "grade": 3, "entries": [["e0x", "0"], ["0", "0"]]},
        "N": {"rows": 2, "cols": 2, "grade": 1, "entries": [["e1", "e2"], ["e3", "e4"]]}}"#)
    .unwrap();
    let (code, r) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "parse");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).0, 3);
}

#[test]
fn reports_are_deterministic_and_can_go_to_a_file() {
    let args = ["stability", &path("m1_n4.json"), "--trials", "50", "--seed", "9"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let out = std::env::temp_dir().join(format!("monadkit-out-{}.json", std::process::id()));
    let (code, stdout) = run(&["syzygy", &path("m1_n4.json"), "--out", out.to_str().unwrap()]);
    assert_eq!((code, stdout), (0, Value::Null));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["result"]["dimension"], 10);
}

#[test]
fn normal_forms_and_classification() {
    let (code, r) = run(&["normalize-n", &path("m2_n3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tag"], "SPAN3");
    let (code, r) = run(&["classify-n1", &path("n1.json")]);
    assert_eq!(code, 0);
    assert!(r["result"]["type"].as_str().unwrap().starts_with('U'));
    let (_, r) = run(&["det-quadric", &path("m1_n4.json")]);
    assert_eq!(r["result"]["rank"], 4);
    let (_, r) = run(&["det-quadric", &path("m2_n3.json")]);
    assert_eq!(r["result"]["rank"], 3);
}

#[test]
fn make_m_from_coefficients_round_trips() {
    let p = "1,0,2,0,-1,0,3,0,1,0";
    let q = "0,1,0,-2,0,1,0,1,0,5";
    let (code, r) = run(&["make-m", &path("m1_n4.json"), "--p", p, "--q", q]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("monadkit-m-{}.json", std::process::id()));
    std::fs::write(&dir, r["result"]["monad"].to_string()).unwrap();
    let (code, v) = run(&["validate", dir.to_str().unwrap()]);
    assert_eq!(v["result"], r["result"]["validation"]);
    assert_eq!(code == 0, v["result"]["in_x0"] == true);
    assert_eq!(run(&["make-m", &path("m1_n4.json"), "--p", "1,2", "--q", q]).0, 2);
}

#[test]
fn dual_and_lines() {
    let (_, r) = run(&["dual", &path("m1_n4.json")]);
    assert_eq!(r["result"]["rank"], 8);
    assert_eq!(r["result"]["dual"]["kind"], "instanton");
    let (_, r) = run(&["dual", &path("m2_n3.json")]);
    assert_eq!(r["result"]["rank"], 7);
    assert_eq!(r["result"]["dual"]["kind"], "extension");
    let (code, j) = run(&["jump", &path("m1_n4.json"), "--line", "e0;e1"]);
    assert_eq!(code, 0);
    let (_, s) = run(&["splitting", &path("m1_n4.json"), "--line", "e0;e1"]);
    assert_eq!(j["result"]["class"]["splitting"], s["result"]["report"]["splitting"]);
    assert_eq!(run(&["jump", &path("m1_n4.json"), "--line", "e0;e0"]).0, 2);
    let (code, r) = run(&["jump-strata", &path("m1_n4.json"), "--field", "Fp:3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["lines"], 1210);
    assert_eq!(run(&["jump-strata", &path("m1_n4.json")]).0, 2);
}

#[test]
fn smoothness_restriction_and_scroll() {
    let (code, r) = run(&["smooth-check", &path("m1_n4.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["jacobian_rank"], 20);
    assert_eq!(r["result"]["stabilizer_rank_mn"], 9);
    let (code, r) = run(&["restrict", &path("m1_n4.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["validation"]["valid"], true);
    let (code, r) = run(&["restrict", &path("m1_n4.json"), "--hyperplane", "e1;e2;e3;e4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["solved"], true);
    assert_eq!(run(&["restrict", &path("m2_n3.json")]).0, 2);
    let (_, r) = run(&["scroll-test", &path("m1_n4.json"), "--p", "0,1,0,0,0,0,0,0,0,0"]);
    assert_eq!(r["result"]["on_scroll"], false);
    let (_, r) = run(&["scroll-test", &path("m1_n4.json"), "--p", "1,0,0,0,0,0,0,0,0,0"]);
    assert_eq!(r["result"]["plane"].as_array().unwrap().len(), 3);
}

#[test]
fn sample_strata_is_seeded() {
    let a = run(&["sample-strata", "--q", "5", "--trials", "2000", "--seed", "3"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, run(&["sample-strata", "--q", "5", "--trials", "2000", "--seed", "3"]));
    assert_eq!(a.1["result"]["trials"], 2000);
    assert_eq!(run(&["sample-strata", "--q", "6"]).0, 3);
}

#[test]
fn reproduce_quick_reports_every_criterion() {
    let (code, r) = run(&["reproduce", "--quick"]);
    let criteria = r["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    let all = criteria.iter().all(|c| c["passed"] == true);
    assert_eq!(r["result"]["all_passed"], all);
    assert_eq!(code, if all { 0 } else { 2 });
}
