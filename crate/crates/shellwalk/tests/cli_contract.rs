use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn shellwalk(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellwalk"))
        .args(args)
        .current_dir(dir)
        .env_remove("SHELLWALK_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn diagnostic(out: &Output) -> Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().expect("a diagnostic line");
    serde_json::from_str(line).unwrap_or_else(|e| panic!("{line:?}: {e}"))
}

fn planted(dir: &Path) {
    let out = shellwalk(
        &[
            "generate", "--kind", "planted", "--core-size", "20", "--mid-size", "30", "--mid-links", "10",
            "--trees", "120", "--depth", "3", "--seed", "5", "-o", "gen",
        ],
        dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn decompose_writes_shells_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("g.txt"), "# k4 plus pendant\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n4 4\n").unwrap();
    let out = shellwalk(&["decompose", "--input", "g.txt", "-o", "out", "--write-edges"], tmp.path());
    assert!(out.status.success());
    let shells = std::fs::read_to_string(tmp.path().join("out/shells.txt")).unwrap();
    assert_eq!(shells, "# label shell\n0 3\n1 3\n2 3\n3 3\n4 1\n");
    let summary = json(&tmp.path().join("out/decomposition.json"));
    assert_eq!(summary["core_index"], 3);
    assert_eq!(summary["shell_sizes"], serde_json::json!([0, 1, 0, 4]));
    assert_eq!(summary["input"]["self_loops"], 1);
    let manifest = json(&tmp.path().join("out/manifest.json"));
    assert_eq!(manifest["args"]["command"], "decompose");
    assert!(manifest["args"]["common"]["seed"].is_u64());
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 3);
}

#[test]
fn generated_seed_is_printed_and_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let out = shellwalk(&["generate", "--kind", "ba", "--n", "50", "-o", "g"], tmp.path());
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let seed: u64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("generated seed "))
        .unwrap()
        .parse()
        .unwrap();
    let manifest = json(&tmp.path().join("g/manifest.json"));
    assert_eq!(manifest["args"]["common"]["seed"], seed);
}

#[test]
fn output_dir_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_shellwalk"))
        .args(["generate", "--kind", "er", "--n", "30", "--edge-p", "0.2", "--seed", "1"])
        .current_dir(tmp.path())
        .env("SHELLWALK_OUTPUT_DIR", "from-env")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(tmp.path().join("from-env/edges.txt").exists());
}

#[test]
fn profile_reports_pseudo_cores() {
    let tmp = tempfile::tempdir().unwrap();
    planted(tmp.path());
    let out = shellwalk(
        &["profile", "-i", "gen/edges.txt", "--theta", "0.9", "--p", "0.25", "--samples", "200", "--seed", "4", "-o", "p"],
        tmp.path(),
    );
    assert!(out.status.success());
    let profile = json(&tmp.path().join("p/profile.json"));
    assert_eq!(profile["pseudo_core_indices"], serde_json::json!([12]));
    assert_eq!(profile["theta"], 0.9);
    let csv = std::fs::read_to_string(tmp.path().join("p/profile.csv")).unwrap();
    assert!(csv.starts_with("shell_index,node_count,intra_edge_count,density,cascade_mean"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn cascade_csv_columns() {
    let tmp = tempfile::tempdir().unwrap();
    planted(tmp.path());
    let out = shellwalk(
        &["cascade", "-i", "gen/edges.txt", "--shells", "1,19", "--samples", "50", "--seed", "1", "-o", "c"],
        tmp.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("c/cascading_power.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "shell_index,n_nodes,mean,std,samples,p_infect");
    assert!(lines[1].starts_with("1,360,"));
    assert!(lines[2].starts_with("19,20,"));
    assert!(lines[2].ends_with(",50,0.05"));

    let out = shellwalk(
        &["cascade", "-i", "gen/edges.txt", "--seed-nodes", "0", "--p", "1", "--seed", "1", "-o", "one"],
        tmp.path(),
    );
    assert!(out.status.success());
    assert_eq!(json(&tmp.path().join("one/cascade.json"))["infected_count"], 410);
}

#[test]
fn experiment_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    planted(tmp.path());
    let out = shellwalk(
        &["experiment", "-i", "gen/edges.txt", "--algorithms", "sh,sa,rw,dhc", "--targets", "core", "--kmax", "15", "--seed", "2", "-o", "e"],
        tmp.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("e/cdf.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,sh,sa,rw,dhc");
    assert_eq!(lines.len(), 15);
    let report = json(&tmp.path().join("e/cdf.json"));
    let algs = report["algorithms"].as_array().unwrap();
    let n = report["instance_count"].as_u64().unwrap();
    for a in algs {
        let total = a["reached"].as_u64().unwrap() + a["stuck"].as_u64().unwrap() + a["step_cap"].as_u64().unwrap();
        assert_eq!(total, n);
        let cdf: Vec<f64> = a["cdf"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert!(cdf.windows(2).all(|w| w[0] <= w[1]));
    }
    let dat = std::fs::read_to_string(tmp.path().join("e/cdf.dat")).unwrap();
    assert!(dat.contains("# k sh sa rw dhc\n2 "));
}

#[test]
fn compare_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    planted(tmp.path());
    let out = shellwalk(
        &["experiment", "-i", "gen/edges.txt", "--targets", "compare", "--p", "0.25", "--seed", "3", "-o", "cmp"],
        tmp.path(),
    );
    assert!(out.status.success());
    for f in ["cdf_core.csv", "cdf_pseudo.csv", "compare.json", "profile.csv"] {
        assert!(tmp.path().join("cmp").join(f).exists(), "{f}");
    }
    let cmp = json(&tmp.path().join("cmp/compare.json"));
    assert_eq!(cmp["pseudo_targets"], serde_json::json!([12, 19]));
    let rw = &cmp["ratios"][0];
    assert_eq!(rw["algorithm"], "rw");
    assert!(rw["mean_step_ratio"].as_f64().unwrap() > 1.0);
}

#[test]
fn compare_without_pseudo_cores_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let out = shellwalk(
        &["generate", "--kind", "planted", "--core-size", "12", "--trees", "60", "--depth", "3", "--seed", "1", "-o", "g"],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = shellwalk(&["experiment", "-i", "g/edges.txt", "--targets", "compare", "--seed", "1", "-o", "c"], tmp.path());
    assert!(out.status.success());
    let cmp = json(&tmp.path().join("c/compare.json"));
    assert_eq!(cmp["applicable"], false);
}

#[test]
fn walk_trace() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("g.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n4 5\n5 6\n").unwrap();
    let out = shellwalk(&["walk", "-i", "g.txt", "--algorithm", "sh", "--start", "6", "--seed", "1", "-o", "w"], tmp.path());
    assert!(out.status.success());
    let trace = std::fs::read_to_string(tmp.path().join("w/walk_trace.csv")).unwrap();
    assert_eq!(trace, "step,node_label,shell\n0,6,1\n1,5,1\n2,4,1\n3,3,3\n");
    assert_eq!(json(&tmp.path().join("w/walk.json"))["status"], "reached");

    let out = shellwalk(&["walk", "-i", "g.txt", "--algorithm", "sh", "--start", "0", "--seed", "1", "-o", "w2"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"], "walk");
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = shellwalk(&["experiment", "--nonsense"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "usage");

    let out = shellwalk(&["--help"], tmp.path());
    assert_eq!(out.status.code(), Some(0));

    let out = shellwalk(&["decompose", "-i", "missing.txt", "--seed", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let d = diagnostic(&out);
    assert_eq!(d["error"], "io");
    assert_eq!(d["exit_code"], 1);

    std::fs::write(tmp.path().join("bad.txt"), "0 1\nx y\n").unwrap();
    let out = shellwalk(&["decompose", "-i", "bad.txt", "--seed", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(diagnostic(&out)["message"].as_str().unwrap().contains(":2:"));

    std::fs::write(tmp.path().join("k4p.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n").unwrap();
    let out = shellwalk(&["experiment", "-i", "k4p.txt", "--seed", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(diagnostic(&out)["error"], "no_instances");

    let out = shellwalk(&["profile", "-i", "k4p.txt", "--theta", "1.5", "--seed", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    let out = shellwalk(&["experiment", "-i", "k4p.txt", "--kmax", "1", "--seed", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn replay_detects_changed_input() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("g.txt"), "0 1\n1 2\n2 0\n").unwrap();
    assert!(shellwalk(&["decompose", "-i", "g.txt", "--seed", "1", "-o", "a"], tmp.path()).status.success());
    let out = shellwalk(&["replay", "--manifest", "a/manifest.json", "-o", "b"], tmp.path());
    assert!(out.status.success());
    std::fs::write(tmp.path().join("g.txt"), "0 1\n1 2\n").unwrap();
    let out = shellwalk(&["replay", "--manifest", "a/manifest.json", "-o", "c"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"], "manifest");
}
