use std::process::{Command, Output};

fn softfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softfusion"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ga": {"pops": 7}}"#).unwrap();
    let bad = bad.to_str().unwrap();

    assert_eq!(softfusion(&["roc", "--config", bad]).status.code(), Some(2));
    assert_eq!(
        softfusion(&["roc", "--realizations", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(softfusion(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        softfusion(&["roc", "--config", "/nonexistent/c.json"])
            .status
            .code(),
        Some(4)
    );

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = blocker.join("sub");
    let res = softfusion(&["converge", "--out", out.to_str().unwrap()]);
    assert_eq!(
        res.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
}

#[test]
fn scenario_prints_json() {
    let out = softfusion(&["scenario", "--seed", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["snr_db"].as_array().unwrap().len(), 18);
    assert!(v["statistics"]["mu0"].is_array());
}

#[test]
fn converge_writes_trace_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"scenario": {"users": 5}, "ga": {"generations": 25}}"#,
    )
    .unwrap();
    let out = dir.path().join("o");
    let res = softfusion(&[
        "converge",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(out.join("converge.csv")).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("generation,best_fitness,mean_fitness")
    );
    assert_eq!(text.lines().count(), 26);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("converge.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["seed"], 8);
    assert_eq!(meta["command"], "converge");
    assert_eq!(meta["config"]["ga"]["generations"], 25);
}
