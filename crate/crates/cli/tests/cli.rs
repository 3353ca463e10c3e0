use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use ssp_core::matrix::{in_pattern_s, in_pattern_s0bar, is_ssp_witness};
use ssp_core::rules::replay;
use ssp_core::{Graph, SymMatrix, TraceStep};
use tempfile::TempDir;

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssp-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks a bundle against its own graph, independently of the CLI.
fn bundle_verifies(b: &Value) -> (Graph, SymMatrix) {
    let g: Graph = serde_json::from_value(b["graph"].clone()).unwrap();
    let a = SymMatrix::from_json(&b["a"].to_string()).unwrap();
    let x = SymMatrix::from_json(&b["x"].to_string()).unwrap();
    assert!(in_pattern_s(&a, &g).unwrap());
    assert!(in_pattern_s0bar(&x, &g).unwrap());
    assert!(!x.is_zero());
    assert!(is_ssp_witness(&a, &x).unwrap());
    (g, a)
}

#[test]
fn gen_writes_family_graphs() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["gen", "tadpole:5,1", "--out", "t51.json"]);
    assert_eq!(code(&o), 0);
    let g = Graph::from_json(&std::fs::read_to_string(dir.path().join("t51.json")).unwrap()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (6, 6));
    assert_eq!(g.girth(), Some(5));

    let o = lab(dir.path(), &["gen", "girth3:2,3,4"]);
    assert_eq!(code(&o), 0);
    let g = Graph::from_json(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 12);

    let o = lab(dir.path(), &["gen", "tadpole:2,1"]);
    assert_eq!(code(&o), 1);
    assert!(!dir.path().join("tadpole.json").exists());
    assert_eq!(code(&lab(dir.path(), &["gen", "nonsense"])), 1);
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["check", "tadpole:5,1", "--samples", "100", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 100);
    assert!(lines.iter().all(|r| r["has_ssp"] == true && r["certifying"] == true));
    assert_eq!(lines[0]["seed"], 3);

    assert_eq!(code(&lab(dir.path(), &["witness", "tadpole:6,1", "--out", "t61.json"])), 0);
    let o = lab(dir.path(), &["check", "tadpole:6,1", "--matrix", "t61.json"]);
    assert_eq!(code(&o), 2);
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["has_ssp"], false);
    assert_eq!(r["columns"].as_u64().unwrap() - r["rank"].as_u64().unwrap(), 1);

    let o = lab(dir.path(), &["check", "tadpole:6,1", "--matrix", "fixture:t61"]);
    assert_eq!(code(&o), 2);
    // floating point deficiency is reported but is not a refutation
    let o = lab(dir.path(), &["check", "tadpole:6,1", "--matrix", "fixture:t61", "--mode", "approx"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"certifying\":false"));

    assert_eq!(code(&lab(dir.path(), &["check", "missing.json"])), 1);
    assert_eq!(code(&lab(dir.path(), &["check", "cycle:4", "--mode", "fuzzy"])), 1);
}

#[test]
fn check_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let args = ["check", "tadpole:4,2", "--samples", "20", "--seed", "11"];
    let a = lab(dir.path(), &args);
    let b = Command::new(env!("CARGO_BIN_EXE_ssp-lab"))
        .current_dir(dir.path())
        .env("SSP_LAB_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = lab(dir.path(), &["check", "tadpole:4,2", "--samples", "20", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn certify_statuses_and_traces() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["certify", "girth3:1,1,1", "--out", "z1.json"]);
    assert_eq!(code(&o), 0);
    let body = json_file(&dir.path().join("z1.json"));
    assert_eq!(body["status"], "certified");
    let g: Graph = serde_json::from_value(body["graph"].clone()).unwrap();
    let trace: Vec<TraceStep> = serde_json::from_value(body["trace"].clone()).unwrap();
    assert!(replay(&g, &trace).unwrap().is_complete());

    let o = lab(dir.path(), &["certify", "cycle:4"]);
    assert_eq!(code(&o), 0);
    let body: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(body["status"] == "not-certified" || body["status"] == "inconclusive");

    let o = lab(dir.path(), &["certify", "complete:5"]);
    let body: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["status"], "certified");
    assert_eq!(body["trace"].as_array().unwrap().len(), 0);
}

#[test]
fn witness_bundles_verify() {
    let dir = TempDir::new().unwrap();
    for (spec, n, radicand) in [("U:6,1", 12, None), ("D:3,2", 10, None), ("H7", 7, Some(2)), ("cycle:5", 5, None)] {
        let o = lab(dir.path(), &["witness", spec]);
        assert_eq!(code(&o), 0, "{spec}");
        let b: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let (g, a) = bundle_verifies(&b);
        assert_eq!(g.n(), n, "{spec}");
        assert_eq!(a.radicand(), radicand, "{spec}");
    }
    assert_eq!(code(&lab(dir.path(), &["witness", "tadpole:5,1"])), 1);

    // explicit matrix route
    assert_eq!(code(&lab(dir.path(), &["gen", "tadpole:6,1", "--out", "g.json"])), 0);
    let o = lab(dir.path(), &["witness", "--graph", "g.json", "--matrix", "fixture:t61"]);
    assert_eq!(code(&o), 0);
    bundle_verifies(&serde_json::from_str(&stdout(&o)).unwrap());
    let o = lab(dir.path(), &["witness", "--graph", "tadpole:5,1", "--matrix", "fixture:t51"]);
    assert_eq!(code(&o), 1);
}

fn parse_id(id: &str) -> Graph {
    let (head, edges) = id.split_once('_').unwrap();
    let n: usize = head[1..].parse().unwrap();
    let edges = edges.split('.').filter(|e| !e.is_empty()).map(|e| {
        let (u, v) = e.split_once('-').unwrap();
        (u.parse().unwrap(), v.parse().unwrap())
    });
    Graph::from_edges(n, edges).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "spec,n,girth,necessary,status,rank_samples_ok,witness_file,trace_file");
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn classify_trees() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["classify", "--class", "tree", "--max-n", "6", "--samples", "2", "--out", "trees.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&dir.path().join("trees.csv"));
    assert_eq!(rows.len(), 1 + 1 + 3 + 16 + 125 + 1296);
    let mut certified = 0;
    for r in &rows {
        assert_eq!(r[2], "inf");
        if r[3] == "false" {
            assert_ne!(r[4], "certified", "{}", r[0]);
        }
        if r[4] == "certified" {
            certified += 1;
            let body = json_file(&dir.path().join(&r[7]));
            let g = parse_id(&r[0]);
            let trace: Vec<TraceStep> = serde_json::from_value(body["trace"].clone()).unwrap();
            assert!(replay(&g, &trace).unwrap().is_complete(), "{}", r[0]);
        }
    }
    assert!(certified > 0);
}

fn is_tadpole(g: &Graph, girth: usize) -> bool {
    let d = g.degrees();
    if g.n() == girth {
        return d.iter().all(|&x| x == 2);
    }
    d.iter().filter(|&&x| x == 3).count() == 1
        && d.iter().filter(|&&x| x == 1).count() == 1
        && d.iter().all(|&x| (1..=3).contains(&x))
}

#[test]
fn classify_unicyclic() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["classify", "--class", "unicyclic", "--max-n", "6", "--samples", "3", "--out", "u.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&dir.path().join("u.csv"));
    assert_eq!(rows.len(), 1 + 15 + 222 + 3660);
    let mut tadpoles = 0;
    let mut refuted = 0;
    for r in &rows {
        let g = parse_id(&r[0]);
        let girth: usize = r[2].parse().unwrap();
        assert_eq!(g.girth(), Some(girth));
        let wanted = match girth {
            3 => true,
            4 => g.n() > 4,
            5 => g.n() == 6,
            _ => false,
        };
        if wanted && is_tadpole(&g, girth) {
            tadpoles += 1;
            assert_eq!(r[5], "3/3", "{}", r[0]);
            assert_ne!(r[4], "refuted-by-witness", "{}", r[0]);
        }
        match r[4].as_str() {
            "refuted-by-witness" => {
                refuted += 1;
                let b = json_file(&dir.path().join(&r[6]));
                let (wg, _) = bundle_verifies(&b);
                assert_eq!(wg, g);
            }
            "certified" => assert!(!r[7].is_empty()),
            other => assert_eq!(other, "inconclusive"),
        }
    }
    assert!(tadpoles > 0);
    // every labelled C4, C5, C6 and D(2,1) carries a witness
    assert!(refuted >= 3 + 12 + 60 + 180, "{refuted}");
}

#[test]
fn classify_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let run = |threads: &str, out: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_ssp-lab"))
            .current_dir(dir.path())
            .env("SSP_LAB_THREADS", threads)
            .args(["classify", "--class", "unicyclic", "--max-n", "5", "--samples", "2", "--seed", "9", "--format", "json", "--artifacts", "art", "--out", out])
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        std::fs::read(dir.path().join(out)).unwrap()
    };
    assert_eq!(run("1", "a.json"), run("4", "b.json"));
}

#[test]
fn classify_limit() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&lab(dir.path(), &["classify", "--class", "tree", "--max-n", "9"])), 1);
    assert_eq!(code(&lab(dir.path(), &["classify", "--class", "tree", "--max-n", "4", "--limit", "3"])), 1);
    assert_eq!(code(&lab(dir.path(), &["classify", "--class", "forest", "--max-n", "4"])), 1);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("lab.conf"), "# defaults\nseed = 5\nsamples = 4\n").unwrap();
    let o = lab(dir.path(), &["--config", "lab.conf", "check", "tadpole:3,2"]);
    assert_eq!(code(&o), 0);
    let seeds: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, vec![5, 6, 7, 8]);
    let o = lab(dir.path(), &["--config", "lab.conf", "check", "tadpole:3,2", "--samples", "1", "--seed", "40"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).contains("\"seed\":40"));
    std::fs::write(dir.path().join("bad.conf"), "seed = many\n").unwrap();
    assert_eq!(code(&lab(dir.path(), &["--config", "bad.conf", "check", "cycle:4"])), 1);
}

#[test]
fn repro_commands() {
    let dir = TempDir::new().unwrap();
    let o = lab(dir.path(), &["repro", "ex-c4"]);
    assert_eq!(code(&o), 0);
    let body: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["summary"]["passed"], 1);
    assert_eq!(code(&lab(dir.path(), &["repro", "no-such-scenario"])), 1);
    assert_eq!(code(&lab(dir.path(), &["repro"])), 1);

    let o = lab(dir.path(), &["repro", "--all", "--out", "all.json"]);
    assert_eq!(code(&o), 0);
    let body = json_file(&dir.path().join("all.json"));
    assert!(body["summary"]["passed"].as_u64().unwrap() >= 9);
    assert_eq!(body["summary"]["failed"], 0);
    let again = lab(dir.path(), &["repro", "--all"]);
    assert_eq!(serde_json::from_str::<Value>(&stdout(&again)).unwrap(), body);
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&lab(dir.path(), &["frobnicate"])), 1);
    assert_eq!(code(&lab(dir.path(), &["check"])), 1);
    assert_eq!(code(&lab(dir.path(), &["--help"])), 0);
}
