use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greedy-finger"))
        .args(args)
        .output()
        .expect("spawn cli")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_writes_trace_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.trace");
    let out = out.to_str().unwrap();
    stdout(&cli(&["gen", "--workload", "sequential", "--n", "5", "--m", "7", "--out", out]));
    assert_eq!(std::fs::read_to_string(out).unwrap(), "5 7\n1\n2\n3\n4\n5\n1\n2\n");
}

#[test]
fn run_greedy_prints_rows_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let trace = write(dir.path(), "t", "3 2\n3\n1\n");
    let points = dir.path().join("p.csv");
    let out = cli(&["run", "--algo", "greedy", "--trace", &trace, "--points", points.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(text, "i,key,cost,bound\n1,3,1,1\n2,1,2,2.584962500721156\n");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("ratio,slope,intercept,r2\n"));
    assert_eq!(std::fs::read_to_string(points).unwrap(), "time,key\n1,3\n2,1\n2,3\n");
}

#[test]
fn bound_with_weights_file() {
    let dir = tempfile::tempdir().unwrap();
    let trace = write(dir.path(), "t", "3 2\n1\n3\n");
    let weights = write(dir.path(), "w", "1\n2\n1\n");
    let text = stdout(&cli(&["bound", "--trace", &trace, "--weights", &weights]));
    assert_eq!(text, "i,key,term\n1,1,1\n2,3,3\n");
    let text = stdout(&cli(&["bound", "--trace", &trace, "--weights", &weights, "--start", "root"]));
    assert_eq!(text, "i,key,term\n1,1,3\n2,3,3\n");
}

#[test]
fn beststatic_and_opt() {
    let dir = tempfile::tempdir().unwrap();
    let trace = write(dir.path(), "t", "4 3\n4\n2\n3\n");
    let tree = dir.path().join("tree.csv");
    let text = stdout(&cli(&["beststatic", "--trace", &trace, "--tree-out", tree.to_str().unwrap()]));
    assert!(text.starts_with("total,root\n"));
    let rows = std::fs::read_to_string(tree).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert_eq!(stdout(&cli(&["opt", "--trace", &trace])), "opt_size,greedy_size,ratio\n5,6,1.2\n");
}

#[test]
fn fit_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let cost = write(dir.path(), "c", "i,key,cost,bound\n1,1,2,1\n2,2,4,2\n");
    let bound = write(dir.path(), "b", "i,key,term\n1,1,1\n2,2,2\n");
    let text = stdout(&cli(&["fit", "--cost", &cost, "--bound", &bound]));
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 2.0);
    assert!((row[1] - 2.0).abs() < 1e-12 && row[2].abs() < 1e-9 && (row[3] - 1.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad", "3 2\n1\n9\n");
    let out = cli(&["run", "--algo", "greedy", "--trace", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(cli(&["run", "--algo", "avl"]).status.code(), Some(2));
    let big = write(dir.path(), "big", "6 1\n1\n");
    assert_eq!(cli(&["opt", "--trace", &big]).status.code(), Some(2));
    let ok = cli(&["verify", "--suite", "depth"]);
    assert_eq!(ok.status.code(), Some(0));
}
