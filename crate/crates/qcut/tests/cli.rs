use std::path::Path;
use std::process::{Command, Output};

use qcut_core::fixtures::ising_chain;

fn qcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcut"))
        .args(args)
        .output()
        .expect("qcut runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const CHAIN3: &str =
    "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncx q[0],q[1];\ncx q[1],q[2];\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn zero_cap_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "x.qasm", CHAIN3);
    let o = qcut(&["partition", &f, "--max-qubits", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infeasible qubit cap"));
    assert!(o.stdout.is_empty());
}

#[test]
fn parse_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.qasm",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];\n",
    );
    let o = qcut(&["partition", &f, "-D", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"));
}

#[test]
fn chain3_json_reaches_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "chain3.qasm", CHAIN3);
    let o = qcut(&["partition", &f, "--max-qubits", "2", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lq = v["report"]["lq"].as_f64().unwrap();
    assert!((lq - 18f64.ln()).abs() < 1e-12, "lq = {lq}");
    assert_eq!(v["stages"].as_array().unwrap().len(), 2);
}

#[test]
fn table_has_step_rows() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i34.qasm", &ising_chain(34, 1).to_qasm());
    let o = qcut(&["partition", &f, "-D", "30", "--format", "table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("L_Q") && text.contains("L_D") && text.contains("Time[s]"));
    let step1 = text.lines().find(|l| l.starts_with("Step 1")).unwrap();
    let step2 = text.lines().find(|l| l.starts_with("Step 2")).unwrap();
    assert_eq!(
        step1.split_whitespace().collect::<Vec<_>>()[2..5],
        ["17.33", "5.55", "16"]
    );
    assert_eq!(
        step2.split_whitespace().collect::<Vec<_>>()[2..5],
        ["3.47", "2.77", "2"]
    );
}

#[test]
fn csv_and_dot_formats() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "chain3.qasm", CHAIN3);
    let o = qcut(&["partition", &f, "-D", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("circuit,L_Q_step1,L_Q_step2"));
    assert!(lines.next().unwrap().starts_with("chain3_D2,"));
    let o = qcut(&["partition", &f, "-D", "2", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph \"chain3\""));
    let o = qcut(&["graph", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches(" -- ").count(), 3);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "chain3.qasm", CHAIN3);
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"max_qubits": 2, "eps": 0.5, "format": "json"}"#,
    );
    let o = qcut(&["partition", &f, "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max_qubits"], 2);
    assert!(v["report"]["n_total"].as_u64().unwrap() > 0);
    let o = qcut(&["partition", &f, "--config", &cfg, "-D", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["r"], 1);
}

#[test]
fn bench_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    for w in [8, 10, 12] {
        write(
            dir.path(),
            &format!("ising{w}.qasm"),
            &ising_chain(w, 2).to_qasm(),
        );
    }
    write(
        dir.path(),
        "broken.qasm",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[5];\n",
    );
    let o = qcut(&["bench", dir.path().to_str().unwrap(), "-D", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "name",
            "L_Q",
            "n_space",
            "n_time",
            "L_tot",
            "R",
            "wall_time_s",
            "L_Q_step1",
            "error"
        ]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    let broken = rows.iter().find(|r| &r[0] == "broken").unwrap();
    assert!(!broken[8].is_empty());
    for r in rows.iter().filter(|r| &r[0] != "broken") {
        assert!(r[8].is_empty());
        let lq: f64 = r[1].parse().unwrap();
        let lq1: f64 = r[7].parse().unwrap();
        assert!(lq <= lq1 + 1e-9);
    }
}

#[test]
fn bench_empty_dir_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = qcut(&["bench", dir.path().to_str().unwrap(), "-D", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no circuits found"));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = qcut(&["verify", "--seed", "7"]);
    let b = qcut(&["verify", "--seed", "7"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().skip(1).all(|l| l.ends_with("pass")));
}

#[test]
fn verify_reads_preset_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "p.json",
        r#"{"partitions": 3, "eps": 0.2, "repetitions": 2}"#,
    );
    let o = qcut(&["verify", "--config", &cfg, "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["repetitions"], 2);
}

#[test]
fn fixtures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.qasm");
    let o = qcut(&[
        "fixtures",
        "--width",
        "6",
        "--steps",
        "2",
        "-o",
        f.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&f).unwrap();
    assert_eq!(text, ising_chain(6, 2).to_qasm());
}
