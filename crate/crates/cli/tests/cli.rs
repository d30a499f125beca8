use std::process::{Command, Output};

use serde_json::Value;

fn hooksum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hooksum"))
        .args(args)
        .env_remove("HOOKSUM_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = hooksum(&["enumerate", "cayley", "--labels", "1,2,3,4", "--count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "16");
    let o = hooksum(&[
        "enumerate",
        "increasing",
        "--labels",
        "1,2,3,4,5",
        "--count",
    ]);
    assert_eq!(stdout(&o).trim(), "24");
}

#[test]
fn enumerate_streams_json_lines() {
    let o = hooksum(&["enumerate", "increasing", "--labels", "1,2"]);
    assert_eq!(stdout(&o), "{\"labels\":[1,2],\"father\":{\"2\":1}}\n");
    let o = hooksum(&["enumerate", "cayley", "--labels", "2,5,7"]);
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert!(lines
        .iter()
        .all(|t| t["labels"] == serde_json::json!([2, 5, 7])));
}

#[test]
fn enumerate_rejects_bad_labels() {
    for bad in ["1,1,2", "0,1", "a,b", ""] {
        let o = hooksum(&["enumerate", "cayley", "--labels", bad]);
        assert_eq!(o.status.code(), Some(2), "labels {bad:?}");
    }
}

#[test]
fn max_size_guard() {
    let args = [
        "enumerate",
        "cayley",
        "--labels",
        "1,2,3,4,5,6,7,8",
        "--count",
    ];
    assert_eq!(hooksum(&args).status.code(), Some(2));
    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(stdout(&hooksum(&forced)).trim(), "262144");
    let o = Command::new(env!("CARGO_BIN_EXE_hooksum"))
        .args(["enumerate", "increasing", "--labels", "1,2,3,4", "--count"])
        .env("HOOKSUM_MAX_SIZE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theta_forms() {
    let o = hooksum(&["theta", "--labels", "1", "--form", "thm3"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"[{"coeff":"1","vars":[[["y",1,1],1]]}]"#
    );
    let o = hooksum(&["theta", "--labels", "1,2", "--form", "product"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"[{"coeff":"1","vars":[[["x",1],1],[["y",2,2],1]]}]"#
    );
    let sum = hooksum(&["theta", "--labels", "1,2,3", "--form", "sum"]);
    let product = hooksum(&["theta", "--labels", "1,2,3", "--form", "product"]);
    assert_eq!(sum.stdout, product.stdout);
    let o = hooksum(&["--pretty", "theta", "--labels", "1,2"]);
    assert_eq!(stdout(&o).trim(), "x[1]*y[2,2]");
}

#[test]
fn verify_reports() {
    let o = hooksum(&["verify", "thm11", "--labels", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(r["check"], "thm11");
    assert_eq!(r["pass"], true);
    assert_eq!(r["params"]["labels"], serde_json::json!([1, 2, 3]));
    assert!(r["elapsed_ms"].is_u64());

    let r = json_out(&hooksum(&[
        "verify", "abel", "--n", "3", "--u", "2", "--v", "1",
    ]));
    assert_eq!(
        (r["left"].as_str(), r["right"].as_str()),
        (Some("108"), Some("108"))
    );

    let o = hooksum(&["verify", "abel", "--n", "4", "--u", "-3", "--v", "5"]);
    assert_eq!(json_out(&o)["pass"], true);

    let r = json_out(&hooksum(&["verify", "bijection", "--labels", "1,2,3,4"]));
    assert_eq!(r["pass"], true);
    let total: u64 = r["grades"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["j"] == 0)
        .map(|g| g["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 16);

    for args in [
        &["verify", "recursion", "--labels", "2,4,7,8"][..],
        &["verify", "recursion", "--labels", "1,2,3,4", "--a", "3"],
        &["verify", "strehl", "--labels", "1,2,3"],
        &["verify", "hurwitz", "--labels", "1,3"],
        &["verify", "psi", "--n", "3"],
        &["verify", "matrixtree", "--labels", "2,4,7,8,11"],
    ] {
        let o = hooksum(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(json_out(&o)["pass"], true, "{args:?}");
    }
    let r = json_out(&hooksum(&["verify", "strehl", "--labels", "1,2"]));
    assert_eq!(
        r["fresh"],
        serde_json::json!({"u": ["x", 3], "v": ["x", 4]})
    );
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "thm11"][..],
        &["verify", "abel", "--n", "3"],
        &["verify", "abel", "--n", "0", "--u", "1", "--v", "1"],
        &["verify", "recursion", "--labels", "1,2,3", "--a", "1"],
        &["verify", "matrixtree", "--labels", "4"],
        &["verify", "psi", "--n", "0"],
        &["verify", "all", "--labels-max", "0"],
        &["verify", "nonsense"],
    ] {
        assert_eq!(hooksum(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn trace_unsort_worked_example() {
    let tree = r#"{"labels":[1,2,3],"father":{"2":1,"3":2}}"#;
    let o = hooksum(&["trace-unsort", "--tree", tree, "--phi", r#"{"2":3,"3":3}"#]);
    assert_eq!(o.status.code(), Some(0));
    let steps = json_out(&o);
    let steps = steps.as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[0]["index"], serde_json::json!({"i": 0, "j": 1}));
    assert_eq!(steps[1]["index"], serde_json::json!({"i": 1, "j": 0}));
    assert_eq!(
        steps[1]["tree"]["father"],
        serde_json::json!({"2": 3, "3": 1})
    );
    assert_eq!(steps[0]["weight"], steps[1]["weight"]);
}

#[test]
fn trace_unsort_identity_and_file_input() {
    let dir = std::env::temp_dir().join(format!("hooksum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tree.json");
    std::fs::write(&path, r#"{"labels":[1,2,3],"father":{"2":1,"3":1}}"#).unwrap();
    let o = hooksum(&["trace-unsort", "--tree", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o).as_array().unwrap().len(), 1);

    let out = dir.join("out.json");
    let o = hooksum(&[
        "--out",
        out.to_str().unwrap(),
        "trace-unsort",
        "--tree",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written[0]["step"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn trace_unsort_reports_condition() {
    let tree = r#"{"labels":[1,2,3],"father":{"2":1,"3":2}}"#;
    let o = hooksum(&["trace-unsort", "--tree", tree, "--phi", r#"{"2":1,"3":3}"#]);
    assert_eq!(o.status.code(), Some(1));
    let r = json_out(&o);
    assert_eq!(r["valid"], false);
    assert_eq!(r["condition"], 1);

    let o = hooksum(&["trace-unsort", "--tree", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matrix_dump() {
    let r = json_out(&hooksum(&["--pretty", "matrix", "--labels", "1,2,3"]));
    let rows = r["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][1], "-x[1]*y[1,2]");
    let r = json_out(&hooksum(&["matrix", "--labels", "1,2,3", "--minor"]));
    assert_eq!(r["matrix"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_all_is_stable() {
    let a = hooksum(&["verify", "all", "--labels-max", "3"]);
    let b = hooksum(&["verify", "all", "--labels-max", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json_out(&a);
    assert_eq!(r["pass"], true);
    assert!(r["results"].as_array().unwrap().len() > 10);
}
