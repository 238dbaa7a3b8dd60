use std::process::{Command, Output};

use serde_json::Value;

fn gnknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lambda_reports_order_12() {
    let out = gnknot(&["lambda", "--q", "2", "--r", "3", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 12);
    assert_eq!(v["status"], "pass");
}

#[test]
fn lambda_noncyclic_count() {
    let out = gnknot(&["lambda", "--q", "2", "--r", "3", "--a", "2", "--b", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["noncyclic"]["count"], 24);
}

#[test]
fn witness_has_ten_sk_only_roots() {
    let out = gnknot(&[
        "witness", "--a", "2", "--b", "3", "--n", "11", "--q", "11", "--r", "5", "--s", "2", "--t", "3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["witness"];
    assert_eq!(w["root_count"], 11);
    assert_eq!(w["sk_only"], 10);
}

#[test]
fn table_output_is_not_json() {
    let out = gnknot(&["witness", "--preset", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
    assert!(!out.stdout.is_empty());
}

#[test]
fn verify_theorem_rejects_non_coprime_n() {
    let out = gnknot(&[
        "verify-theorem", "--a", "2", "--b", "3", "--n", "6", "--q", "11", "--r", "5", "--s", "2", "--t", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd(st, n) = 1"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["lambda", "--q", "4", "--r", "3"][..],
        &["lambda", "--q", "3", "--r", "3"],
        &["wreath", "--q", "11", "--r", "5", "--s", "2", "--t", "2"],
        &["witness", "--preset", "3"],
        &["witness", "--a", "2", "--b", "3"],
        &["roots", "--threads", "0"],
        &["count-homs", "--q", "5"],
    ] {
        assert_eq!(gnknot(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_is_incomplete() {
    let out = gnknot(&["roots", "--preset", "1", "--oracle", "--budget", "1000", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["oracle"]["status"], "incomplete");
    assert_eq!(v["status"], "incomplete");
}

#[test]
fn count_homs_expectation() {
    let ok = gnknot(&["count-homs", "--q", "5", "--r", "2", "--expect", "10", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["count"], 10);
    let bad = gnknot(&["count-homs", "--q", "5", "--r", "2", "--expect", "11"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn count_homs_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g23.json");
    // u^2 = v^3 as the relator u u v^-3
    std::fs::write(&path, r#"{"gens":["u","v"],"rels":[[[0,2],[1,-3]]]}"#).unwrap();
    let out = gnknot(&["count-homs", "--q", "5", "--r", "2", "--pres", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["count"], 10);

    std::fs::write(&path, "not json").unwrap();
    let out = gnknot(&["count-homs", "--q", "5", "--r", "2", "--pres", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_is_created_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cyclo.json");
    let c = cache.to_str().unwrap();
    let first = gnknot(&["lambda", "--q", "11", "--r", "5", "--cache", c, "--json"]);
    assert_eq!(first.status.code(), Some(0));
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.contains("11"));
    let second = gnknot(&["lambda", "--q", "11", "--r", "5", "--cache", c, "--json"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), text);

    std::fs::write(&cache, "[garbage").unwrap();
    let bad = gnknot(&["lambda", "--q", "11", "--r", "5", "--cache", c]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn report_json_schema() {
    let out = gnknot(&["verify-theorem", "--preset", "1", "--homs-per-kind", "4", "--roots-per-hom", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["params", "checks", "witness", "conclusion"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "status", "detail", "count", "millis"] {
            assert!(c.get(key).is_some(), "check missing {key}");
        }
        assert!(c["millis"].is_null());
    }
}
