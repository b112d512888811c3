use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use plexus_cli::oracle::fish_triple_loop;
use plexus_core::array::{Array, IndexSet};
use plexus_core::{Semiring, Value};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use tempfile::TempDir;

fn plexus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plexus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Run with `--json` and return (exit code, error object).
fn json_error(args: &[&str]) -> (i32, Json) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = plexus(&full);
    let j: Json = serde_json::from_str(&stdout(&o)).expect("json output");
    (o.status.code().unwrap(), j["error"].clone())
}

fn fish_diagram() -> Json {
    json!({
        "index_sets": {"N": 2},
        "vertices": [
            {"id": "i", "index_set": "N"}, {"id": "j", "index_set": "N"}, {"id": "k", "index_set": "N"},
            {"id": "p", "index_set": "N", "contracted": true},
            {"id": "q", "index_set": "N", "contracted": true},
            {"id": "r", "index_set": "N", "contracted": true}
        ],
        "edges": [
            {"id": "a", "legs": ["i", "j", "p"]},
            {"id": "b", "legs": ["q", "r", "p"]},
            {"id": "c", "legs": ["q", "r", "k"]}
        ]
    })
}

fn bindings(entries: [Json; 3]) -> Json {
    let [a, b, c] = entries;
    json!({
        "semiring": "int-mod:5",
        "index_sets": {"N": 2},
        "arrays": {
            "a": {"axes": ["N", "N", "N"], "entries": a, "legs": ["i", "j", "p"]},
            "b": {"axes": ["N", "N", "N"], "entries": b, "legs": ["q", "r", "p"]},
            "c": {"axes": ["N", "N", "N"], "entries": c, "legs": ["q", "r", "k"]}
        }
    })
}

fn ints(a: &Array) -> Json {
    json!(a.entries().iter().map(|v| match v {
        Value::Int(n) => *n,
        other => panic!("unexpected {other:?}"),
    }).collect::<Vec<_>>())
}

#[test]
fn eval_fish_matches_triple_loop() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "fish.json", &fish_diagram().to_string());
    let s = Semiring::IntMod(5);
    let n = IndexSet::new("N", 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..5 {
        let arrays: Vec<Array> = (0..3).map(|_| Array::random(vec![n.clone(); 3], s, 4, &mut rng)).collect();
        let b = write(&dir, &format!("b{trial}.json"), &bindings([ints(&arrays[0]), ints(&arrays[1]), ints(&arrays[2])]).to_string());
        let o = plexus(&["eval", arg(&d), "--bindings", arg(&b), "--order", "i,j,k"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let out: Json = serde_json::from_str(&stdout(&o)).unwrap();
        let expected: Vec<Json> = fish_triple_loop(&arrays[0], &arrays[1], &arrays[2])
            .into_iter()
            .map(|v| match v {
                Value::Int(n) => json!(n),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(out["entries"], json!(expected));
    }
}

#[test]
fn eval_workspace() {
    let dir = TempDir::new().unwrap();
    let ws = json!({
        "semiring": "nat64",
        "index_sets": {"I": 2},
        "arrays": {"m": {"axes": ["I", "I"], "entries": [1, 2, 3, 4]}},
        "diagrams": {"square": {
            "vertices": [{"id": "x", "index_set": "I"}, {"id": "y", "index_set": "I", "contracted": true}, {"id": "z", "index_set": "I"}],
            "edges": [{"id": "a", "legs": ["x", "y"]}, {"id": "b", "legs": ["y", "z"]}]
        }},
        "bindings": {"square": {"a": {"array": "m", "legs": ["x", "y"]}, "b": {"array": "m", "legs": ["y", "z"]}}}
    });
    let p = write(&dir, "ws.json", &ws.to_string());
    let o = plexus(&["eval", arg(&p), "--order", "x,z"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out: Json = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["entries"], json!([7, 10, 15, 22]));
}

#[test]
fn parse_error_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", "{\n  \"vertices\": [\n    oops\n  ]\n}\n");
    let (code, e) = json_error(&["eval", arg(&p), "--bindings", arg(&p)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "PARSE_ERROR");
    let loc = e["location"].as_str().unwrap();
    assert!(loc.ends_with(":3:5"), "{loc}");
}

#[test]
fn size_mismatch_points_at_entries() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "fish.json", &fish_diagram().to_string());
    let b = write(&dir, "b.json", &bindings([zeros(8), zeros(7), zeros(8)]).to_string());
    let (code, e) = json_error(&["eval", arg(&d), "--bindings", arg(&b)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "SIZE_MISMATCH");
    assert!(e["location"].as_str().unwrap().ends_with("$.arrays.b.entries"), "{e}");
}

#[test]
fn bad_reference_points_at_leg() {
    let dir = TempDir::new().unwrap();
    let mut d = fish_diagram();
    d["edges"][1]["legs"][2] = json!("nowhere");
    let d = write(&dir, "fish.json", &d.to_string());
    let b = write(&dir, "b.json", &bindings([zeros(8), zeros(8), zeros(8)]).to_string());
    let (code, e) = json_error(&["eval", arg(&d), "--bindings", arg(&b)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "BAD_REFERENCE");
    assert_eq!(e["location"], "$.edges[1].legs[2]");
}

#[test]
fn unknown_index_set() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "fish.json", &fish_diagram().to_string());
    let mut b = bindings([zeros(8), zeros(8), zeros(8)]);
    b["arrays"]["c"]["axes"][1] = json!("Q");
    let b = write(&dir, "b.json", &b.to_string());
    let (code, e) = json_error(&["eval", arg(&d), "--bindings", arg(&b)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "UNKNOWN_INDEX_SET");
    assert!(e["location"].as_str().unwrap().ends_with("$.arrays.c.axes[1]"), "{e}");
}

#[test]
fn conformability_when_axis_and_vertex_disagree() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "fish.json", &fish_diagram().to_string());
    let mut b = bindings([zeros(8), zeros(8), zeros(12)]);
    b["index_sets"]["M"] = json!(3);
    b["arrays"]["c"]["axes"][2] = json!("M");
    let b = write(&dir, "b.json", &b.to_string());
    let (code, e) = json_error(&["eval", arg(&d), "--bindings", arg(&b)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "CONFORMABILITY", "{e}");
}

#[test]
fn invalid_element_outside_carrier() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "fish.json", &fish_diagram().to_string());
    let b = write(&dir, "b.json", &bindings([json!([0, 1, 2, 3, 4, 0, 1, 9]), zeros(8), zeros(8)]).to_string());
    let (code, e) = json_error(&["eval", arg(&d), "--bindings", arg(&b)]);
    assert_eq!(code, 2);
    assert_eq!(e["code"], "INVALID_ELEMENT");
    assert!(e["location"].as_str().unwrap().ends_with("$.arrays.a.entries[7]"), "{e}");
}

#[test]
fn plain_error_line_format() {
    let o = plexus(&["laws", "--suite", "nothing"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("INVALID_ARGUMENT at --suite:"), "{err}");
}

#[test]
fn enumerate_default_census() {
    let o = plexus(&["enumerate", "--edges", "3", "--order", "3", "--free", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("count: 10, symmetric: 3\n"), "{out}");
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn semiheap_laws_pass_over_int_mod_5() {
    let o = plexus(&["laws", "--suite", "semiheap", "--semiring", "int-mod:5", "--sizes", "2,2,2", "--trials", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("semiheap: pass (50 trials"));
}

#[test]
fn relation_table_is_not_a_heap() {
    let o = plexus(&["--json", "laws", "--suite", "heap", "--table", "relation:2,2"]);
    assert_eq!(o.status.code(), Some(1));
    let j: Json = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["results"][0]["heap"], false);
    assert_eq!(j["results"][0]["semiheap"]["pass"], true);
}

#[test]
fn rewrite_reports_multiway_counts() {
    let o = plexus(&["--json", "rewrite", "zee", "--motif", "vee", "--semantic", "int-mod:7", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let j: Json = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["initial_matches"], 2);
    assert_eq!(j["states"], 4);
    assert_eq!(j["terminals"], 1);
    assert_eq!(j["semantic"]["pass"], true);
}

#[test]
fn fish_command_matches_triple_loop() {
    let dir = TempDir::new().unwrap();
    let s = Semiring::IntMod(5);
    let n = IndexSet::new("N", 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let arrays: Vec<Array> = (0..3).map(|_| Array::random(vec![n.clone(); 3], s, 4, &mut rng)).collect();
    let paths: Vec<PathBuf> = arrays
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let body = json!({"index_sets": {"N": 2}, "axes": ["N", "N", "N"], "entries": ints(a)});
            write(&dir, &format!("{k}.json"), &body.to_string())
        })
        .collect();
    let o = plexus(&["fish", arg(&paths[0]), arg(&paths[1]), arg(&paths[2]), "--semiring", "int-mod:5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out: Json = serde_json::from_str(&stdout(&o)).unwrap();
    let expected: Vec<i64> = fish_triple_loop(&arrays[0], &arrays[1], &arrays[2])
        .into_iter()
        .map(|v| match v {
            Value::Int(n) => n as i64,
            other => panic!("unexpected {other:?}"),
        })
        .collect();
    assert_eq!(out["entries"], json!(expected));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let runs: [&[&str]; 4] = [
        &["laws", "--suite", "semiheap", "--semiring", "int-mod:5", "--trials", "30", "--seed", "9"],
        &["--json", "rewrite", "long_fish", "--motif", "fish", "--semantic", "nat64", "--trials", "3", "--seed", "4"],
        &["enumerate", "--variant", "loose"],
        &["export-dot", "long_fish", "--motif", "fish"],
    ];
    for args in runs {
        let first = plexus(args);
        let second = plexus(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

fn zeros(n: usize) -> Json {
    json!(vec![0; n])
}
