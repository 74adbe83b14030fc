use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superinv"))
        .args(args)
        .env_remove("SUPERINV_MAX_MONOMIALS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn verify_gl11_generation_exits_zero() {
    let out = run(&["verify", "--family", "gl", "--dims", "1,1", "--pqkl", "1,1,1,1", "--theorem", "T2.1", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert_eq!(c["dims"]["oracle"], c["dims"]["generated"]);
    }
    assert!(v["timing_ms"].is_null());
}

#[test]
fn unknown_theorem_is_usage_error() {
    let out = run(&["verify", "--theorem", "T9.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_flags_are_usage_errors() {
    assert_eq!(run(&["verify", "--theorem", "T2.1", "--dims", "1"]).status.code(), Some(2));
    assert_eq!(run(&["tableaux", "--shape", "2,x"]).status.code(), Some(2));
    assert_eq!(run(&["tableaux", "--shape", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--family", "so", "--dims", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn spe_base_case_reports_errata_and_passes() {
    let out = run(&["verify", "--family", "spe", "--n", "2", "--theorem", "L7.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let errata: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "errata").collect();
    assert_eq!(errata.len(), 1);
    assert!(errata[0]["errata"]["target"].as_str().unwrap().contains("base case"));
}

#[test]
fn cap_exceeded_has_its_own_exit_code() {
    let out = run(&["invariants", "--family", "gl", "--dims", "2,2", "--pqkl", "2,2,2,2", "--degree", "6", "--max-monomials", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_superinv"))
        .args(["invariants", "--family", "gl", "--dims", "1,1", "--pqkl", "1,1,1,1", "--degree", "3"])
        .env("SUPERINV_MAX_MONOMIALS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify", "--theorem", "T6.2", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv = ["verify", "--theorem", "T3.8", "--format", "csv"];
    assert_eq!(run(&csv).stdout, run(&csv).stdout);
}

#[test]
fn json_keys_keep_schema_order() {
    let out = run(&["verify", "--theorem", "T3.3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let c = text.find("\"config\"").unwrap();
    let k = text.find("\"checks\"").unwrap();
    let t = text.find("\"timing_ms\"").unwrap();
    assert!(c < k && k < t);
    let first = text.find("\"id\"").unwrap();
    assert!(first < text.find("\"claim_ref\"").unwrap());
    assert!(text.find("\"claim_ref\"").unwrap() < text.find("\"status\"").unwrap());
}

#[test]
fn timing_is_recorded_on_request() {
    let v = json(&run(&["verify", "--theorem", "T3.4", "--timing"]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn csv_is_a_flat_projection() {
    let out = run(&["verify", "--theorem", "T5.1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let json_out = json(&run(&["verify", "--theorem", "T5.1"]));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[0], "id");
    assert_eq!(&headers[2], "status");
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    let checks = json_out["checks"].as_array().unwrap();
    assert_eq!(rows.len(), checks.len());
    for (row, c) in rows.iter().zip(checks) {
        assert_eq!(&row[0], c["id"].as_str().unwrap());
        assert_eq!(&row[2], c["status"].as_str().unwrap());
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("superinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.to_str().unwrap();
    let out = run(&["tableaux", "--shape", "2,1", "--range", "2,1", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_dir_all(&dir).ok();
    let direct = json(&run(&["tableaux", "--shape", "2,1", "--range", "2,1"]));
    assert_eq!(written["standard_count"], direct["standard_count"]);
}

#[test]
fn tableaux_counts() {
    let v = json(&run(&["tableaux", "--shape", "2,1", "--range", "1,1"]));
    assert_eq!(v["standard_count"], 2);
    assert_eq!(v["semistandard_counts"], serde_json::json!([2, 2]));
    // gl(2|1) module of shape (2,1): 8 by the hook content formula
    let v = json(&run(&["tableaux", "--shape", "2,1", "--range", "2,1"]));
    assert_eq!(v["semistandard_counts"], serde_json::json!([8, 8]));
    let v = json(&run(&["tableaux", "--shape", "0"]));
    assert_eq!(v["standard_count"], 0);
    assert_eq!(v["standard_tableaux"], serde_json::json!([]));
}

#[test]
fn invariants_examples() {
    let v = json(&run(&["invariants", "--family", "gl", "--dims", "1,0", "--pqkl", "1,0,1,0", "--degree", "2"]));
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"][0], "(1)*x[1,1]*x*[1,1]");
    let v = json(&run(&["invariants", "--family", "gl", "--dims", "1,0", "--pqkl", "1,0,1,0", "--degree", "1"]));
    assert_eq!(v["dim"], 0);
    let v = json(&run(&["invariants", "--family", "gl", "--dims", "1,1", "--tensor", "1,2"]));
    assert_eq!(v["dim"], 0);
    let v = json(&run(&["invariants", "--family", "gl", "--dims", "1,1", "--tensor", "1,1"]));
    assert_eq!(v["dim"], 1);
}
