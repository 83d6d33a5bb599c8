use std::path::Path;
use std::process::{Command, Output};

use setmember::runner::{RunReport, RunStatus, CONES_HEADER, SETS_HEADER};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setmember")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn demo(z: &str) -> String {
    format!(r#"{{"plant": {{"n": [0, 1], "d": [1, -0.5]}}, "x0": [0], "horizon": 2, "measurements": {z}}}"#)
}

const SEEDED: &str = r#"{
    "plant": {"n": [0.2, 0.5, 0.3], "d": [1, -0.4, 0.5]},
    "x0": [0.1, -0.2],
    "horizon": 6,
    "measurements": {"seed": 42, "law": "uniform"},
    "oracle": "on"
}"#;

fn read_report(dir: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn demo_run_and_csv_export() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "demo.json", &demo("[0, 0]"));
    let out = tmp.path().join("run");
    let res = cli(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let report = read_report(&out);
    assert_eq!(report.status, RunStatus::Completed);
    assert_eq!(report.steps[1].vertices, vec![vec![-1.5], vec![1.5]]);

    let plots = tmp.path().join("plots");
    let res = cli(&["export-plot", out.join("report.json").to_str().unwrap(), "--out", plots.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let sets = std::fs::read_to_string(plots.join("sets.csv")).unwrap();
    let lines: Vec<&str> = sets.lines().collect();
    assert_eq!(lines[0], SETS_HEADER);
    // two steps, each an interval written as a two-point segment with empty x2
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(',')));
    assert!(lines[4].starts_with("2,1,1.5"));
    let cones = std::fs::read_to_string(plots.join("cones.csv")).unwrap();
    assert_eq!(cones.lines().next(), Some(CONES_HEADER));
}

#[test]
fn inconsistent_measurements_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.json", &demo("[0, 10]"));
    let out = tmp.path().join("run");
    let res = cli(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert_eq!(read_report(&out).status, RunStatus::EmptyFront { k: 2 });
}

#[test]
fn config_errors_name_the_problem() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let zero = demo("[]").replace("\"horizon\": 2", "\"horizon\": 0");
    let cfg = write_config(tmp.path(), "zero.json", &zero);
    let res = cli(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("horizon"));

    let cfg = write_config(tmp.path(), "broken.json", "{\n  \"plant\": {\"n\": [0, 1], \"d\": [1, -0.5]},\n  \"x0\": [0],\n  \"horizon\": two\n}");
    let res = cli(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("line 4"), "{err}");

    let cfg = write_config(tmp.path(), "extra.json", &demo("[0, 0]").replace("\"x0\"", "\"colour\": 1, \"x0\""));
    let res = cli(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("colour"));
}

#[test]
fn seeded_runs_are_byte_identical_and_export_closed_loops() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "seeded.json", SEEDED);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let res = cli(&["run", &cfg, "--out", dir.to_str().unwrap()]);
        assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    }
    let ra = std::fs::read(a.join("report.json")).unwrap();
    assert_eq!(ra, std::fs::read(b.join("report.json")).unwrap());

    let report = read_report(&a);
    assert_eq!(report.steps.len(), 6);
    for step in &report.steps {
        assert_eq!(step.true_state_inside, Some(true));
        assert!(step.oracle.is_some());
        assert!(step.defects.is_empty());
    }

    let plots = tmp.path().join("plots");
    let res = cli(&["export-plot", a.join("report.json").to_str().unwrap(), "--out", plots.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let sets = std::fs::read_to_string(plots.join("sets.csv")).unwrap();
    let last = report.steps.last().unwrap();
    let rows: Vec<&str> = sets.lines().skip(1).filter(|l| l.starts_with(&format!("{},", last.k))).collect();
    assert_eq!(rows.len(), last.vertices.len() + 1);
    let coords = |l: &str| l.splitn(3, ',').nth(2).unwrap().to_string();
    assert_eq!(coords(rows[0]), coords(rows[rows.len() - 1]));

    // a different seed gives a different run
    let c = tmp.path().join("c");
    let res = cli(&["run", &cfg, "--out", c.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(res.status.code(), Some(0));
    assert_ne!(ra, std::fs::read(c.join("report.json")).unwrap());
}

#[test]
fn floats_survive_the_report_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "seeded.json", SEEDED);
    let out = tmp.path().join("run");
    assert_eq!(cli(&["run", &cfg, "--out", out.to_str().unwrap()]).status.code(), Some(0));
    let report = read_report(&out);
    let again = setmember::runner::to_json_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<RunReport>(&again).unwrap(), report);
}

#[test]
fn tolerance_overrides_are_read_from_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "demo.json", &demo("[0, 0]"));
    let out = tmp.path().join("run");
    let res = Command::new(env!("CARGO_BIN_EXE_setmember"))
        .args(["run", &cfg, "--out", out.to_str().unwrap()])
        .env("SETMEMBER_TOL_FEASIBILITY", "not-a-number")
        .env("RUST_LOG", "warn")
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&res.stderr).contains("SETMEMBER_TOL_FEASIBILITY"));
}
