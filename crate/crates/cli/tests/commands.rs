use std::process::{Command, Output};

use serde_json::Value;

fn gkdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn column(v: &Value, table: &str, key: &str) -> Vec<u64> {
    v[table]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_u64().unwrap())
        .collect()
}

#[test]
fn count_one_variable_infinity() {
    let out = gkdim(&["count", "--grading", "inf", "--char", "0", "--m", "1", "--tmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(column(&v, "growth", "per_degree"), vec![1, 2, 4, 6, 8, 10, 12]);
    assert_eq!(v["config"]["grading"], "inf");
    assert_eq!(v["reconciliation"]["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn count_one_odd_generator_tail_is_constant() {
    let out = gkdim(&["count", "--grading", "kstar:1", "--m", "1", "--tmax", "6"]);
    let per = column(&json(&out), "growth", "per_degree");
    assert!(per[2..].iter().all(|&c| c == 3), "{per:?}");
}

#[test]
fn count_degree_zero_only() {
    let out = gkdim(&["count", "--tmax", "0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "t,per_degree,cumulative,closed_form,delta\n0,1,1,1,0\n");
}

#[test]
fn count_latex_and_out_file() {
    let dir = std::env::temp_dir().join(format!("gkdim-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.tex");
    let out = gkdim(&["count", "--tmax", "3", "--latex", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let tex = std::fs::read_to_string(&path).unwrap();
    assert!(tex.starts_with("\\begin{tabular}"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn count_multivariate_csv() {
    let out = gkdim(&["count", "--m", "1", "--tmax", "2", "--multivariate", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("y1,z1,dimension\n0,0,1\n"), "{text}");
}

#[test]
fn gk_matches_expected_values() {
    for (args, expected) in [
        (vec!["--grading", "inf", "--char", "0", "--m", "1"], 2),
        (vec!["--grading", "inf", "--char", "3", "--m", "2", "--tmax", "40"], 2),
        (vec!["--grading", "k:2", "--char", "0", "--m", "1"], 1),
    ] {
        let mut all = vec!["gk"];
        all.extend(args);
        let out = gkdim(&all);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["estimate"]["degree"], expected);
        assert_eq!(v["expected"], expected);
        assert_eq!(v["status"], "MATCH");
    }
}

#[test]
fn gk_low_confidence_exits_one() {
    // eight degrees cannot expose a degree-4 polynomial
    let out = gkdim(&["gk", "--grading", "inf", "--m", "2", "--tmax", "7", "--window", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "MISMATCH");
    assert_eq!(v["estimate"]["confidence"], "LOW");
}

#[test]
fn verify_passes_and_includes_power_template() {
    let out = gkdim(&["verify", "--grading", "inf", "--char", "5", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["template"].as_str().unwrap()).collect();
    assert!(names.contains(&"z1^5"), "{names:?}");
    assert_eq!(v["all_pass"], true);
}

#[test]
fn verify_finite_grading() {
    let out = gkdim(&["verify", "--grading", "kstar:2", "--char", "0", "--trials", "100", "--n", "12"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_rejects_fake_identity_with_witness() {
    let out = gkdim(&["verify", "--grading", "kstar:2", "--trials", "5", "--extra", "z1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let fake = v["reports"].as_array().unwrap().iter().find(|r| r["template"] == "extra z1").unwrap();
    assert_eq!(fake["status"], "FAIL");
    assert_eq!(fake["witness"]["trial"], 0);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("FAIL extra z1"), "{stderr}");
}

#[test]
fn rank_single_variable_sum() {
    let out = gkdim(&["rank", "--grading", "inf", "--char", "0", "--m", "1", "--total", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_exact"], true);
    let top = &v["totals"][4];
    assert_eq!(top["lower"], 8);
    assert_eq!(top["spanning"], 8);
    for c in v["components"].as_array().unwrap() {
        assert!(c["n"].as_u64().unwrap() > 0);
    }
}

#[test]
fn rank_strict_prime_field() {
    let out = gkdim(&["rank", "--grading", "kstar:2", "--char", "5", "--m", "2", "--total", "3", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_exact"], true);
}

#[test]
fn rank_degree_zero() {
    let v = json(&gkdim(&["rank", "--total", "0"]));
    assert_eq!(v["totals"][0]["lower"], 1);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
}

#[test]
fn rank_explicit_multidegree_csv() {
    let out = gkdim(&["rank", "--grading", "k:2", "--multidegree", "1,0/1,1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("y1,y2,z1,z2,lower,upper,exact,n,points"));
    assert!(lines.next().unwrap().starts_with("1,0,1,1,"));
}

#[test]
fn rank_refuses_long_words() {
    let out = gkdim(&["rank", "--m", "1", "--total", "5", "--max-word-total", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gkdim(&["count", "--grading", "kstar"]).status.code(), Some(2));
    assert_eq!(gkdim(&["count", "--char", "4"]).status.code(), Some(2));
    assert_eq!(gkdim(&["rank"]).status.code(), Some(2));
    assert_eq!(gkdim(&["gk", "--tmax", "3", "--window", "8"]).status.code(), Some(2));
}

#[test]
fn output_echoes_configuration() {
    let v = json(&gkdim(&["gk", "--grading", "k:1", "--char", "5", "--m", "2", "--seed", "17", "--alt-ek-bound", "letters"]));
    let c = &v["config"];
    assert_eq!(c["grading"], "k:1");
    assert_eq!(c["char"], 5);
    assert_eq!(c["seed"], 17);
    assert_eq!(c["ek_bound"], "letters");
    assert_eq!(c["tmax"], 30);
    assert_eq!(c["window"], 8);
    assert!(c["version"].is_string());
}
