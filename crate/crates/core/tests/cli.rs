use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kclique::{save_csr, UndirectedGraph};

fn example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/example.txt")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kclique"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fields(line: &str) -> Vec<(&str, &str)> {
    line.split_whitespace()
        .map(|kv| kv.split_once('=').expect("key=value"))
        .collect()
}

#[test]
fn count_reports_triangles() {
    let o = run(&["count", "--graph", example().to_str().unwrap(), "-k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "cliques=5"), "{out}");
    assert!(out.contains("load_s="));
}

#[test]
fn count_with_explicit_configuration() {
    let g = example();
    for (ordering, strategy, work) in [("degree", "citron", 17), ("core", "baseline", 21)] {
        let o = run(&[
            "count", "--graph", g.to_str().unwrap(), "-k", "4", "--ordering", ordering, "--strategy", strategy,
            "--schedule", "cyclic", "--workers", "3", "--prune", "paper", "--trials", "2", "--instrument",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let out = stdout(&o);
        assert!(out.lines().any(|l| l == "cliques=1"), "{out}");
        assert!(out.contains(&format!("work_model={work}")), "{out}");
        assert_eq!(out.matches("trial=").count(), 2);
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    let g = example();
    let g = g.to_str().unwrap();
    assert_eq!(run(&["count", "--graph", g, "-k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", g, "-k", "3", "--workers", "0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", g, "-k", "3", "--schedule", "dynamic:0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", g, "-k", "3", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", g, "-k", "3", "--prune", "maybe"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", "/nonexistent/graph.txt", "-k", "3"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 2\n2 x\n").unwrap();
    let o = run(&["count", "--graph", bad.to_str().unwrap(), "-k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn records_have_fixed_schema() {
    let g = example();
    let args = ["count", "--graph", g.to_str().unwrap(), "-k", "3..5", "--output", "records", "--instrument"];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    let keys = [
        "graph", "k", "ordering", "strategy", "workers", "trial", "ordering_s", "counting_s", "total_s", "cliques",
        "array_accesses", "work_model",
    ];
    let summarize = |out: &str| -> Vec<(String, String)> {
        out.lines()
            .map(|l| {
                let f = fields(l);
                assert_eq!(f.iter().map(|(k, _)| *k).collect::<Vec<_>>(), keys, "{l}");
                for (k, v) in &f {
                    if k.ends_with("_s") {
                        let (_, frac) = v.split_once('.').expect("fixed decimals");
                        assert_eq!(frac.len(), 6);
                    }
                }
                (f[1].1.to_string(), f[9].1.to_string())
            })
            .collect()
    };
    let a = summarize(&first);
    assert_eq!(a, summarize(&second));
    assert_eq!(
        a,
        [("3", "5"), ("3", "5"), ("4", "1"), ("4", "1"), ("5", "0"), ("5", "0")]
            .map(|(k, c)| (k.to_string(), c.to_string()))
    );

    let plain = stdout(&run(&["count", "--graph", g.to_str().unwrap(), "-k", "3", "--output", "records"]));
    assert!(plain.lines().all(|l| fields(l).len() == 10));
}

#[test]
fn validate_agrees_on_example() {
    let o = run(&["validate", "--graph", example().to_str().unwrap(), "-k", "3..6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all configurations agree"));
}

#[test]
fn validate_reports_injected_fault() {
    let o = run(&["validate", "--graph", example().to_str().unwrap(), "-k", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("MISMATCH"), "{out}");
    assert!(out.contains("6!"), "{out}");
}

#[test]
fn validate_refuses_huge_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("huge.csrbin");
    save_csr(&UndirectedGraph::from_edges(1_000_000, &[(0, 999_999)]), &path).unwrap();
    let o = run(&["validate", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("oracle"));
}

#[test]
fn bench_counts_are_constant_per_k() {
    let o = run(&[
        "bench", "--graph", example().to_str().unwrap(), "-k", "3,4", "--workers", "4", "--output", "records",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut rows = Vec::new();
    for line in out.lines() {
        let f = fields(line);
        assert_eq!(f.last().unwrap().0, "speedup");
        let get = |key: &str| f.iter().find(|(k, _)| *k == key).unwrap().1.to_string();
        rows.push((get("k"), get("workers"), get("cliques")));
    }
    let expect = |k: &str, c: &str| ["1", "2", "4"].map(|w| (k.to_string(), w.to_string(), c.to_string()));
    let mut expected = expect("3", "5").to_vec();
    expected.extend(expect("4", "1"));
    assert_eq!(rows, expected);
}

#[test]
fn convert_writes_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("example.csrbin");
    let o = run(&["convert", "--graph", example().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("vertices=7 edges=11 max_degree=5"));
    let o = run(&["count", "--graph", out.to_str().unwrap(), "-k", "3"]);
    assert!(stdout(&o).lines().any(|l| l == "cliques=5"));

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["convert", "--graph", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertices=0 edges=0"));
    let g = kclique::load_csr(dir.path().join("empty.csrbin")).unwrap();
    assert_eq!(g.num_vertices(), 0);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# header\n1 2 3\n").unwrap();
    let o = run(&["convert", "--graph", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}
