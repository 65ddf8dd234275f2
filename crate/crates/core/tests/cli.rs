mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use kahler::cli::{run_args, InstanceFile, StratificationFile};
use kahler::scalar::{Complex64, GaussianRational, Mode};
use serde_json::Value;

fn kahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler"))
        .args(args)
        .env_remove("KAHLER_MODE")
        .output()
        .expect("binary runs")
}

fn instance(name: &str) -> String {
    fixture(&format!("instances/{name}.json")).display().to_string()
}

fn strata(name: &str) -> String {
    fixture(&format!("strata/{name}.json")).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn check_hl_on_identity_holds() {
    let out = kahler(&["check-hl", &instance("identity_n3_p1q1")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: holds"), "{text}");
    assert!(text.contains("mode: exact"), "{text}");
}

#[test]
fn criterion_failure_is_not_an_error() {
    let out = kahler(&["--json", "criterion", &instance("degenerate_n3_p1q1")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["summary"], "fails, I={1}");
    assert_eq!(v["details"]["failing_subset"], serde_json::json!([1]));
    assert_eq!(v["details"]["required_rank"], 3);
    assert_eq!(v["details"]["actual_rank"], 2);
}

#[test]
fn malformed_matrix_names_the_field() {
    let out = kahler(&["check-hl", &instance("malformed_3x2")]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("factors[0]"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unreadable_and_unparsable_inputs_exit_1() {
    let out = kahler(&["check-hl", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "p": "one", "factors": []}"#).unwrap();
    let out = kahler(&["check-hl", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains(": p:"), "{}", stderr(&out));

    std::fs::write(&bad, r#"{"n": 2, "p": 1, "q": 1, "factors": [[["1","2"],["3","1"]]]}"#).unwrap();
    let out = kahler(&["check-hl", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("factors[0]"), "{}", stderr(&out));
}

#[test]
fn bidegree_and_factor_count_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"n": 2, "p": 2, "q": 1, "factors": []}"#).unwrap();
    let out = kahler(&["check-hl", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(&f, r#"{"n": 2, "p": 1, "q": 1, "factors": [[["1"],["0"]],[["0"],["1"]]]}"#).unwrap();
    let out = kahler(&["check-hl", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn indeterminate_float_verdict_exits_2() {
    let out = kahler(&["--json", "check-hl", &instance("near_singular_float_n2")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "indeterminate");
    assert_eq!(v["mode"], "float");
}

#[test]
fn mode_selection() {
    let v = json(&kahler(&["--json", "check-hl", &instance("identity_n3_p1q1_float")]));
    assert_eq!(v["mode"], "float");
    assert_eq!(v["verdict"], "holds");

    let v = json(&kahler(&["--json", "--mode", "float", "check-hl", &instance("identity_n3_p1q1")]));
    assert_eq!(v["mode"], "float");

    let out = Command::new(env!("CARGO_BIN_EXE_kahler"))
        .args(["--json", "criterion", &instance("identity_n3_p1q1")])
        .env("KAHLER_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(json(&out)["mode"], "float");

    let out = kahler(&["--mode", "exact", "check-hl", &instance("identity_n3_p1q1_float")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not an exact rational"));

    let out = kahler(&["--mode", "fuzzy", "check-hl", &instance("identity_n3_p1q1")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_hr_reports_signature_and_decomposition() {
    let v = json(&kahler(&["--json", "check-hr", &instance("identity_n3_p1q1")]));
    assert_eq!(v["verdict"], "holds");
    let d = &v["details"];
    assert_eq!(d["primitive_dim"], 8);
    assert_eq!(d["expected_primitive_dim"], 8);
    assert_eq!(d["signature"]["n_plus"], 8);
    assert_eq!(d["decomposition"]["holds"], true);

    let v = json(&kahler(&["--json", "check-hr", &instance("degenerate_n3_p1q1")]));
    assert_eq!(v["verdict"], "fails");

    let out = kahler(&["check-hr", &instance("diag_pair_n2")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("M: required"), "{}", stderr(&out));
}

#[test]
fn af_and_scan_commands() {
    let v = json(&kahler(&["--json", "af", &instance("af_diag_n2")]));
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["details"]["lhs"], serde_json::json!(["49/4", "0"]));
    let v = json(&kahler(&["--json", "af", &instance("af_equality_n3")]));
    assert_eq!(v["details"]["equality"], true);
    assert_eq!(kahler(&["af", &instance("identity_n3_p1q1")]).status.code(), Some(1));

    let v = json(&kahler(&["--json", "scan", &instance("scan_identity_n3_p1q1")]));
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["details"]["entries"].as_array().unwrap().len(), 4);
    let v = json(&kahler(&["--json", "scan", &instance("scan_degenerate_n3_p1q1")]));
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["details"]["matches_limit"], false);
}

#[test]
fn defect_command() {
    let v = json(&kahler(&["--json", "defect", &strata("contract_plane_threefold")]));
    assert_eq!(v["details"]["defect"], 1);
    assert_eq!(v["details"]["exact_lef"], 2);
    assert_eq!(v["verdict"], "fails");

    let out = kahler(&["--json", "defect", "--m", "2", &strata("contract_plane_threefold")]);
    assert_eq!(json(&out)["verdict"], "holds");
    let out = kahler(&["--json", "defect", "--m", "3", &strata("contract_plane_threefold")]);
    assert_eq!(json(&out)["verdict"], "fails");

    let out = kahler(&["defect", &strata("malformed_no_dense_stratum")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no_dense_stratum"));

    let out = kahler(&["--json", "defect", "--force", &strata("malformed_no_dense_stratum")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["details"]["forced"], true);
    assert!(v["summary"].as_str().unwrap().contains("forced"));
}

#[test]
fn text_and_json_carry_the_same_verdict() {
    let path = instance("two_factors_n4_p1q1");
    let text = String::from_utf8(kahler(&["--text", "criterion", &path]).stdout).unwrap();
    let v = json(&kahler(&["--json", "criterion", &path]));
    assert!(text.contains(&format!("verdict: {}", v["summary"].as_str().unwrap())));
    assert_eq!(kahler(&["--json", "--text", "criterion", &path]).status.code(), Some(1));
}

#[test]
fn timings_only_with_flag() {
    let path = instance("identity_n3_p1q1");
    let v = json(&kahler(&["--json", "check-hl", &path]));
    assert!(v.get("timings_ms").is_none());
    let v = json(&kahler(&["--json", "--timings", "check-hl", &path]));
    assert!(v["timings_ms"]["total"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_small_run_is_deterministic() {
    let args = ["--json", "verify-theorem-a", "--seed", "7", "--trials", "24"];
    let a = run_args(std::iter::once("kahler").chain(args));
    let b = run_args(["kahler", "--threads", "1"].into_iter().chain(args.into_iter()));
    let c = run_args(["kahler", "--threads", "3"].into_iter().chain(args.into_iter()));
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["details"]["trials"], 24);
}

#[test]
fn verify_with_fixed_shape_and_float_mode() {
    let out = run_args([
        "kahler", "--json", "--mode", "float", "verify-theorem-a", "--trials", "10", "--dims", "3",
        "--p", "1", "--q", "1", "--ranks", "2", "--m-rank", "2",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["mode"], "float");
    assert_eq!(v["details"]["criterion_passes"], 0);
    assert_eq!(v["details"]["hl_agreements"], 10);

    let out = run_args(["kahler", "verify-theorem-a", "--dims", "9"]);
    assert_eq!(out.code, 1);
    let out = run_args(["kahler", "verify-theorem-a", "--p", "1"]);
    assert_eq!(out.code, 1);
    let out = run_args(["kahler", "--threads", "0", "verify-theorem-a"]);
    assert_eq!(out.code, 1);
}

#[test]
fn help_exits_0() {
    let out = kahler(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-theorem-a"));
}

fn for_each_fixture(dir: &str, mut f: impl FnMut(&Path, String)) {
    let mut paths: Vec<_> = std::fs::read_dir(fixture(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty());
    for p in paths {
        let text = std::fs::read_to_string(&p).unwrap();
        f(&p, text);
    }
}

#[test]
fn instance_fixtures_round_trip() {
    for_each_fixture("instances", |path, text| {
        let inst = InstanceFile::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = InstanceFile::parse(&inst.to_json()).unwrap();
        assert_eq!(again, inst, "{}", path.display());
        match inst.resolve_mode(None) {
            Mode::Exact => {
                if let Ok(t) = inst.typed::<GaussianRational>() {
                    let emitted = InstanceFile::from_forms(t.n, t.p, t.q, &t.factors, t.m.as_ref());
                    let back = InstanceFile::parse(&emitted.to_json()).unwrap().typed::<GaussianRational>().unwrap();
                    assert_eq!(back.factors, t.factors, "{}", path.display());
                    assert_eq!(back.m, t.m, "{}", path.display());
                }
            }
            Mode::Float => {
                let t = inst.typed::<Complex64>().unwrap();
                let emitted = InstanceFile::from_forms(t.n, t.p, t.q, &t.factors, t.m.as_ref());
                let back = InstanceFile::parse(&emitted.to_json()).unwrap().typed::<Complex64>().unwrap();
                assert_eq!(back.factors, t.factors, "{}", path.display());
            }
        }
    });
}

#[test]
fn stratification_fixtures_round_trip() {
    for_each_fixture("strata", |path, text| {
        let s = StratificationFile::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = StratificationFile::parse(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(again, s, "{}", path.display());
    });
}
