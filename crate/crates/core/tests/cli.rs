mod common;

use common::*;

#[test]
fn golden_reports() {
    let problems = check_goldens();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

fn json(run: &Run) -> serde_json::Value {
    serde_json::from_str(&run.stdout).expect("report is JSON")
}

#[test]
fn partition_examples() {
    let run = run_case("fam_a", &["partition"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(
        v["partition"],
        serde_json::json!([["phi1", "phi2"], ["phi3"]])
    );
    assert_eq!(v["profile"], serde_json::json!([2, 1]));
    assert!(v.get("diagram").is_none());

    let v = json(&run_case("fam_d", &["partition"]));
    assert_eq!(v["profile"], serde_json::json!([2, 2]));

    let run = run_case("degenerate", &["partition"]);
    assert_eq!(run.code, 2);
    let v = json(&run);
    assert_eq!(v["verdict"], "degenerate");
    assert_eq!(v["zero_vectors"], serde_json::json!(["phi2"]));
}

#[test]
fn analyze_examples() {
    let v = json(&run_case("fam_a", &["analyze", "--k", "1"]));
    assert_eq!(v["verdict"], "violated");
    assert_eq!(v["ratio"], "3/2");
    assert_eq!(v["decomposition"]["transversal_rank"], 2);
    let v = json(&run_case("fam_b", &["analyze", "--k", "2"]));
    assert_eq!(v["ratio"], "3");
    let run = run_case("fam_a", &["analyze", "--k", "2"]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["verdict"], "satisfiable");
}

#[test]
fn construct_examples() {
    let stages = |fixture| json(&run_case(fixture, &["construct"]))["stages"].clone();
    let tks = |s: &serde_json::Value| -> Vec<(u64, u64, u64)> {
        s.as_array()
            .unwrap()
            .iter()
            .map(|st| {
                (
                    st["t"].as_u64().unwrap(),
                    st["k"].as_u64().unwrap(),
                    st["s"].as_u64().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(tks(&stages("fam_c")), vec![(2, 2, 1), (1, 1, 1)]);
    assert_eq!(tks(&stages("fam_d")), vec![(2, 2, 2)]);
    assert_eq!(tks(&stages("basis3")), vec![(3, 1, 3)]);
    let v = json(&run_case("fam_c", &["construct"]));
    assert!(v["stages"][0].get("projected").is_none());
    let v = json(&run_case("fam_c", &["construct", "--trace"]));
    assert_eq!(
        v["stages"][1]["projected"][0]["coords"],
        serde_json::json!(["0", "0", "1"])
    );
}

#[test]
fn witness_examples() {
    let v = json(&run_case("fam_b", &["witness", "--k", "2"]));
    assert_eq!(v["dim"], 1);
    assert_eq!(v["saturated"], serde_json::json!(["phi1", "phi2", "phi3"]));
    let v = json(&run_case("fam_a", &["witness", "--k", "1"]));
    assert_eq!(v["dim"], 2);
    for c in ["equal_spans", "ratio_exceeds_k", "remainders_independent"] {
        assert_eq!(v["conditions"][c], true);
    }
    let run = run_case("fam_a", &["witness", "--k", "2"]);
    assert_eq!(run.code, 2);
    assert!(json(&run)["explanation"].is_string());
}

#[test]
fn remove_examples() {
    let run = run_case("fam_b", &["remove", "--k", "1", "--l", "2"]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["removed"].as_array().unwrap().len(), 2);
    let run = run_case("fam_b", &["remove", "--k", "1", "--l", "1"]);
    assert_eq!(run.code, 2);
    assert_eq!(json(&run)["ratio"], "2");
    let run = run_case("fam_a", &["remove", "--k", "2", "--l", "0"]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["removed"], serde_json::json!([]));
}

#[test]
fn oracle_examples() {
    let v = json(&run_case("fam_a", &["oracle"]));
    assert_eq!(v["partition_count"], 4);
    assert_eq!(v["fundamental_profile"], serde_json::json!([2, 1]));
    assert_eq!(v["max_ratio"]["ratio"], "3/2");
    assert_eq!(v["min_parts"], 2);
    let v = json(&run_case("fam_b", &["oracle"]));
    assert_eq!(v["partition_count"], 1);
    assert_eq!(v["fundamental_profile"], serde_json::json!([1, 1, 1]));
    let run = run_case("eleven", &["oracle"]);
    assert_eq!(run.code, 3);
    assert_eq!(json(&run)["verdict"], "budget_exceeded");
}

#[test]
fn input_errors_exit_one_without_report() {
    for args in [
        vec!["partition", "--input", "bad_decimal.json"],
        vec!["partition", "--input", "missing.json"],
        vec!["partition"],
        vec!["analyze", "--input", "fam_a.json"],
        vec!["analyze", "--k", "0", "--input", "fam_a.json"],
        vec!["remove", "--k", "1", "--l", "9", "--input", "fam_a.json"],
        vec!["frobnicate", "--input", "fam_a.json"],
    ] {
        let run = run_cli(&args);
        assert_eq!(run.code, 1, "{args:?}");
        assert!(run.stdout.is_empty(), "{args:?}");
        assert!(!run.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn csv_input_matches_json() {
    let from_csv = run_cli(&["partition", "--input", "fam_a.csv"]);
    let from_json = run_cli(&["partition", "--input", "fam_a.json"]);
    assert_eq!(from_csv.code, 0);
    assert_eq!(json(&from_csv)["partition"], json(&from_json)["partition"]);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let run = run_cli(&[
        "oracle",
        "--input",
        "fam_a.json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        run_cli(&["oracle", "--input", "fam_a.json"]).stdout
    );
}

#[test]
fn reports_never_contain_decimals() {
    for (_, fixture, args, _) in golden_cases() {
        let out = run_case(fixture, &args).stdout;
        assert!(!out.contains("0.5"), "{fixture} {args:?}");
    }
}
