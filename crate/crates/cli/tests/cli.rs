use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hyperpin(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpin"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn generate_writes_ring_and_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[topology]\nN = 9\n");
    let out = tmp.path().join("gen");
    let o = hyperpin(&["generate", "--config", &cfg], &out);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nodes=9 edges=9"));
    let text = fs::read_to_string(out.join("hypergraph.txt")).unwrap();
    assert!(text.starts_with("N 9"));
    let resolved = fs::read_to_string(out.join("config.toml")).unwrap();
    assert!(resolved.contains("N = 9"));
}

#[test]
fn spectrum_of_file_topology() {
    let tmp = tempfile::tempdir().unwrap();
    let graph = tmp.path().join("g.txt");
    fs::write(&graph, "N 3\nE sigma=1 T 2 H 0 hom\nE sigma=1 T 0 H 1,2 hom\n").unwrap();
    let cfg = write_config(
        tmp.path(),
        &format!("[topology]\nkind = \"file\"\npath = {:?}\n[dynamics]\nkappa = 1.0\npins = [[2]]\n", graph),
    );
    let out = tmp.path().join("spec");
    let o = hyperpin(&["spectrum", "--config", &cfg], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["laplacian.csv", "spectrum_l.csv", "l22.csv", "spectrum_l22.csv", "spectrum_m.csv", "verdict.csv"] {
        assert!(out.join(f).exists(), "missing {f}");
    }
    let l22 = fs::read_to_string(out.join("spectrum_l22.csv")).unwrap();
    assert_eq!(l22.lines().count(), 3);
}

#[test]
fn greedy_selection_on_ring() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[topology]\nN = 7\n[selection]\nmethod = \"greedy\"\n");
    let out = tmp.path().join("sel");
    let o = hyperpin(&["select", "--config", &cfg], &out);
    assert!(o.status.success());
    let csv = fs::read_to_string(out.join("selection.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "method,cost,feasible,chosen_sets,wall_time_ms");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], &["greedy", "4", "true"]);
}

#[test]
fn simulate_consensus_converges() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[dynamics]\npins = [[0, 1], [2, 3], [4, 6]]\nt_end = 20.0\n");
    let out = tmp.path().join("sim");
    let o = hyperpin(&["simulate", "--config", &cfg], &out);
    assert!(o.status.success());
    let err = fs::read_to_string(out.join("error_norm.csv")).unwrap();
    assert!(err.starts_with("t,error_norm"));
    let traj = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(traj.starts_with("t,node,component,value"));
}

#[test]
fn example_fig3_prints_reduced_spectrum() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ex");
    let o = hyperpin(&["example", "fig3"], &out);
    assert!(o.status.success());
    assert!(out.join("fig3").join("laplacian.csv").exists());
}

#[test]
fn unknown_config_key_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[topology]\nsize = 4\n");
    let o = hyperpin(&["generate", "--config", &cfg], &tmp.path().join("x"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("FAILED command=generate"));
}

#[test]
fn unknown_example_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let o = hyperpin(&["example", "fig9"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAILED command=example"));
}
