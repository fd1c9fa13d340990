//! The `spr` binary end to end: generate, run, evaluate.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spr")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = spr(args);
    assert!(out.status.success(), "spr {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_run_eval_reproduces_distortion() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.spr");
    let minor = dir.path().join("m.json");
    ok(&["gen", "random", "--n", "200", "--m", "1000", "--k", "16", "--seed", "7", "-o", path(&graph)]);
    for algo in ["noisy", "fast", "ball", "voronoi"] {
        ok(&["run", path(&graph), "--algo", algo, "--seed", "3", "-o", path(&minor)]);
        let record: Value = serde_json::from_str(std::fs::read_to_string(&minor).unwrap().trim()).unwrap();
        assert_eq!(record["algorithm"], algo);
        let eval: Value = serde_json::from_str(ok(&["eval", path(&graph), path(&minor)]).trim()).unwrap();
        assert_eq!(eval["distortion_worst"], record["distortion_worst"], "{algo}");
        assert_eq!(eval["matches"], true);
        assert!(eval["min_ratio"].as_f64().unwrap() >= 1.0 - 1e-9);
    }
}

#[test]
fn generation_is_deterministic() {
    let args = ["gen", "random", "--n", "200", "--m", "1000", "--k", "16", "--seed", "7"];
    assert_eq!(ok(&args), ok(&args));
    let caterpillar = ok(&["gen", "caterpillar", "--k", "100", "--eps", "1e-4"]);
    let g = spr::graph::io::parse_graph(&caterpillar).unwrap();
    assert_eq!(g.vertex_count(), 200);
    assert_eq!(g.terminal_count(), 100);
}

#[test]
fn pinned_unit_draws_give_the_hand_executed_partition() {
    // caterpillar k = 4, eps = 1/2: with every g_j = 1 each terminal keeps
    // only its own spine vertex, since d(v_{j+1}, t_j) = 1.5 > (1 + delta),
    // so the minor is the spine path with weights d_G(t_j, t_{j+1}) = 2.5
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c.spr");
    let trace = dir.path().join("trace.jsonl");
    ok(&["gen", "caterpillar", "--k", "4", "--eps", "0.5", "-o", path(&graph)]);
    let line = ok(&["run", path(&graph), "--algo", "noisy", "--draws", "1,1,1,1", "--trace", path(&trace)]);
    let record: Value = serde_json::from_str(line.trim()).unwrap();
    let edges: Vec<(u64, u64, f64)> = record["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap(), e["w"].as_f64().unwrap()))
        .collect();
    assert_eq!(edges, vec![(0, 1, 2.5), (1, 2, 2.5), (2, 3, 2.5)]);
    // worst pair (t_0, t_3): 7.5 / 3.5
    assert!((record["distortion_worst"].as_f64().unwrap() - 7.5 / 3.5).abs() < 1e-12);
    let rounds: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rounds.len(), 4);
    assert!(rounds.iter().all(|r| r["record"] == "round" && r["g"] == 1 && r["cluster_size"] == 2));

    let voronoi = ok(&["run", path(&graph), "--algo", "voronoi"]);
    let v: Value = serde_json::from_str(voronoi.trim()).unwrap();
    assert_eq!(v["edges"], record["edges"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.spr");
    ok(&["gen", "binary-tree", "--depth", "4", "-o", path(&graph)]);
    assert_eq!(spr(&["run", path(&graph), "--algo", "dijkstra"]).status.code(), Some(2));
    assert_eq!(spr(&["run", path(&dir.path().join("missing.spr"))]).status.code(), Some(3));
    assert_eq!(spr(&["run", path(&graph), "--draws", "1,1"]).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.spr"), "spr-graph 1\n3 2 1\n0\n0 1 -1\n1 2 1\n").unwrap();
    assert_eq!(spr(&["run", path(&dir.path().join("bad.spr"))]).status.code(), Some(2));
    assert_eq!(spr(&["gen", "bg-lb"]).status.code(), Some(2));
}

#[test]
fn trials_bench_and_intervals_emit_rows() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.spr");
    ok(&["gen", "caterpillar", "--k", "6", "-o", path(&graph)]);

    let table = ok(&["trials", path(&graph), "--algo", "noisy", "--trials", "30"]);
    let lines: Vec<&str> = table.lines().collect();
    assert!(lines[0].starts_with("# algorithm=noisy k=6 trials=30"));
    assert_eq!(lines[1], "i\tj\tmean\tstderr\tmin\tmax");
    assert_eq!(lines.len(), 2 + 15);
    let threaded = Command::new(env!("CARGO_BIN_EXE_spr"))
        .args(["trials", path(&graph), "--algo", "noisy", "--trials", "30"])
        .env("SPR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(threaded.stdout).unwrap(), table);

    let json = ok(&["trials", path(&graph), "--algo", "fast", "--trials", "10", "--json"]);
    let first: Value = serde_json::from_str(json.lines().next().unwrap()).unwrap();
    assert_eq!(first["record"], "summary");
    assert!(first["max_of_means"].as_f64().unwrap() <= first["mean_worst"].as_f64().unwrap() + 1e-12);

    let bench = ok(&["bench", "--sizes", "2000,4000", "--repeats", "1", "--json"]);
    for line in bench.lines() {
        let row: Value = serde_json::from_str(line).unwrap();
        assert!(row["extractions"].as_u64().unwrap() <= row["extraction_bound"].as_u64().unwrap());
    }

    let intervals = ok(&["intervals", path(&graph), "--pair", "0,5", "--json"]);
    assert!(intervals.lines().count() >= 2);
}
