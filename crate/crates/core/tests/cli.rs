use std::process::{Command, Output};

use serde_json::Value;

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = cremona(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn degrees_of_a_jonquieres_map() {
    let r = report(&["degrees", "--map", "[x*z : x*y : z^2]", "--n", "20"]);
    let d: Vec<u64> = r["result"]["sequence"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(d, (2..=21).collect::<Vec<_>>());
    assert_eq!(r["result"]["growth"]["class"], "Linear");
    assert_eq!(r["schema"], "cremona-report/1");
    assert_eq!(r["config"]["seed"], 0);
    assert_eq!(r["config"]["command"]["n"], 20);
    assert_eq!(r["truncated"], false);
}

#[test]
fn degree_cap_truncates_without_failing() {
    let r = report(&[
        "degrees",
        "--map",
        "[x^2 - y*z : x*z : z^2]",
        "--n",
        "12",
        "--cap-degree",
        "100",
    ]);
    assert_eq!(r["truncated"], true);
    assert_eq!(
        r["result"]["sequence"]["degrees"].as_array().unwrap().len(),
        6
    );
}

#[test]
fn constants_report_twelve_digits() {
    let r = report(&["constants"]);
    let j = r["result"]["epsilon_j_digits"].as_str().unwrap();
    let h = r["result"]["epsilon_h_digits"].as_str().unwrap();
    assert!(j.starts_with("0.366025403784"));
    assert!(h.starts_with("0.351009500310"));
    assert_eq!(r["result"]["epsilon_j_identity"], true);
    assert!(r["result"]["epsilon_h_discrepancy"].as_f64().unwrap() > 1e-4);
}

#[test]
fn jordan3_witness_verifies() {
    let r = report(&["witness", "--kind", "jordan3", "--K", "2", "--n", "12"]);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["letters"], 75);
}

#[test]
fn all_witness_kinds_run() {
    for args in [
        vec!["witness", "--kind", "sl2", "--n", "10"],
        vec!["witness", "--kind", "nilpotent", "--d", "2", "--n", "7"],
        vec!["witness", "--kind", "bs", "--K", "3", "--n", "2"],
        vec![
            "witness",
            "--kind",
            "monomial",
            "--matrix",
            "[[2,1],[1,1]]",
            "--target",
            "-4000,17",
        ],
    ] {
        let r = report(&args);
        assert!(r["result"].is_object(), "{args:?}");
    }
}

#[test]
fn parse_errors_exit_with_two() {
    assert_eq!(
        cremona(&["degrees", "--map", "[x : y"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cremona(&["classify-linear", "--matrix", "[[1,2],[2,4]]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cremona(&["distortion", "--group", "SL(3)"]).status.code(),
        Some(2)
    );
    assert_eq!(cremona(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        cremona(&["height", "--map", "[x:y:z]", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn witness_that_cannot_be_built_is_a_hard_failure() {
    // the matrix has eigenvalues on the unit circle
    let out = cremona(&[
        "witness",
        "--kind",
        "monomial",
        "--matrix",
        "[[0,-1],[1,0]]",
        "--target",
        "3,4",
    ]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "horoball",
        "--n",
        "200",
        "--search",
        "2",
        "--restarts",
        "64",
        "--seed",
        "11",
    ];
    let a = cremona(&args);
    let b = cremona(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["result"]["certified"], 200);
    assert_eq!(r["config"]["seed"], 11);
}

#[test]
fn distortion_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("cremona-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bs.csv");
    let out = cremona(&[
        "distortion",
        "--group",
        "BS(1,2)",
        "--gen",
        "x",
        "--n",
        "9",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header: Value =
        serde_json::from_str(lines.next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(header["config"]["command"]["group"], "BS(1,2)");
    assert_eq!(lines.next(), Some("n,delta,ball_size,truncated"));
    let deltas: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(
        deltas,
        ["0", "1", "2", "3", "4", "6", "8", "12", "16", "24"]
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn horoball_pair_and_linear_class() {
    let r = report(&[
        "horoball",
        "--hw",
        r#"{"e0":"5","exc":{"q1":"3","q2":"4"}}"#,
        "--epsilon",
        "0.36",
        "--restarts",
        "100",
    ]);
    assert_eq!(r["result"]["certificate"]["status"], "Certified");
    assert_eq!(r["result"]["search"]["outcome"], "NotFound");
    let r = report(&[
        "classify-linear",
        "--matrix",
        r#"[["1/2",0,0],[0,1,0],[0,0,1]]"#,
    ]);
    assert_eq!(r["result"]["class"], "ExpDistorted");
}
