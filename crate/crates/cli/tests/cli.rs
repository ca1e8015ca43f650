use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn hyperinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperinv"))
        .args(args)
        .env_remove("HYPERINV_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn padded_triangle() -> Value {
    json!({
        "version": 1,
        "vertices": ["x", "y", "z", "p"],
        "edges": [["x", "y"], ["y", "z"], ["x", "z"]],
    })
}

#[test]
fn bounds_table_rows() {
    let out = hyperinv(&["bounds", "table", "--max-d", "4", "--two-sided", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let got: Vec<(String, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["b"]["lower"].to_string(), r["b"]["upper"].to_string()))
        .collect();
    let want: Vec<(String, String)> = [(1, 1), (4, 4), (10, 21), (22, 106)]
        .iter()
        .map(|(l, u)| {
            (
                json!(l.to_string()).to_string(),
                json!(u.to_string()).to_string(),
            )
        })
        .collect();
    assert_eq!(got, want);
    assert_eq!(v["two_sided"]["upper"], json!("5"));
}

#[test]
fn bounds_text_is_aligned() {
    let out = hyperinv(&["--format", "text", "bounds", "table", "--max-d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    assert!(lines[3].trim_start().starts_with('3'));
}

#[test]
fn padded_triangle_is_not_invertible() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", &padded_triangle());
    let out = hyperinv(&["invert", "check", arg(&h)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["invertible"], json!(false));
    let set = v["deficiency"]["set"].as_array().unwrap().len();
    let nbhd = v["deficiency"]["neighborhood"].as_array().unwrap().len();
    assert!(nbhd < set);

    let out = hyperinv(&["invert", "critical", arg(&h)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["critical"], json!(true));
}

#[test]
fn invertible_hypergraph_yields_permutation() {
    let dir = TempDir::new().unwrap();
    let h = write(
        &dir,
        "h.json",
        &json!({ "vertices": ["a", "b", "c", "d"], "edges": [["a", "b"]] }),
    );
    let out = hyperinv(&["invert", "check", arg(&h)]);
    assert_eq!(out.status.code(), Some(0));
    let map = json_of(&out)["permutation"]["map"]
        .as_object()
        .unwrap()
        .clone();
    assert_eq!(map.len(), 4);
    // a and b may only go to c or d.
    let far = [json!("c"), json!("d")];
    assert!(far.contains(&map["a"]) && far.contains(&map["b"]));
    assert_ne!(map["a"], map["b"]);
}

#[test]
fn constructions_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let out = hyperinv(&["construct", "lower-bound", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let h3 = write(&dir, "h3.json", &json_of(&out));

    let out = hyperinv(&["cover", "verify", arg(&h3)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(
        (v["minimal"].clone(), v["members"].clone()),
        (json!(true), json!(10))
    );

    let out = hyperinv(&["construct", "double", arg(&h3)]);
    let h4 = json_of(&out);
    assert_eq!(h4["members"].as_array().unwrap().len(), 22);

    let out = hyperinv(&["reduce", "bipartite-to-complete", arg(&h3)]);
    assert_eq!(out.status.code(), Some(0));
    let k = write(&dir, "k.json", &json_of(&out));
    assert_eq!(
        json_of(&hyperinv(&["cover", "verify", arg(&k)]))["minimal"],
        json!(true)
    );

    let out = hyperinv(&["reduce", "cover-to-critical", arg(&k)]);
    assert_eq!(out.status.code(), Some(0));
    let crit = write(&dir, "crit.json", &json_of(&out));
    assert_eq!(
        hyperinv(&["invert", "critical", arg(&crit)]).status.code(),
        Some(0)
    );

    let out = hyperinv(&["reduce", "critical-to-cover", arg(&crit)]);
    assert_eq!(out.status.code(), Some(0));
    let back = write(&dir, "back.json", &json_of(&out));
    assert_eq!(
        json_of(&hyperinv(&["cover", "verify", arg(&back)]))["minimal"],
        json!(true)
    );
}

#[test]
fn families_round_trip() {
    let dir = TempDir::new().unwrap();
    let fam = json!({
        "version": 1,
        "family": [["a", "b"], ["c", "d"]],
        "covers": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]],
    });
    let f = write(&dir, "f.json", &fam);
    let out = hyperinv(&["covers", "to-edge-cover", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let c = write(&dir, "c.json", &json_of(&out));
    assert_eq!(
        json_of(&hyperinv(&["cover", "verify", arg(&c)]))["minimal"],
        json!(true)
    );

    let out = hyperinv(&["covers", "from-edge-cover", arg(&c)]);
    assert_eq!(out.status.code(), Some(0));
    let back = json_of(&out);
    assert_eq!(back["family"].as_array().unwrap().len(), 2);
    assert_eq!(back["covers"].as_array().unwrap().len(), 4);
}

#[test]
fn audit_report_feeds_setpairs() {
    let dir = TempDir::new().unwrap();
    let h = write(
        &dir,
        "h.json",
        &json_of(&hyperinv(&["construct", "lower-bound", "--d", "3"])),
    );
    let out = hyperinv(&["audit", "upper-bound", arg(&h), "--all-roots"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json_of(&out);
    assert_eq!(report["passed"], json!(true));
    let r = write(&dir, "r.json", &report);
    let out = hyperinv(&["audit", "setpairs", arg(&r)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], json!(true));
}

#[test]
fn parse_errors_report_offset() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"version":1,"vertices":["a"],"edges":[["a"]"#).unwrap();
    let out = hyperinv(&["invert", "check", arg(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte"), "{err}");

    let out = hyperinv(&["invert", "check", "/nonexistent/h.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_vertices_are_rejected() {
    let dir = TempDir::new().unwrap();
    let h = write(
        &dir,
        "h.json",
        &json!({ "vertices": ["a"], "edges": [["a", "q"]] }),
    );
    assert_eq!(
        hyperinv(&["invert", "check", arg(&h)]).status.code(),
        Some(2)
    );
}

#[test]
fn search_b2_is_exhaustive() {
    let out = hyperinv(&[
        "search",
        "b",
        "--d",
        "2",
        "--max-members",
        "4",
        "--max-part-size",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["best"], json!(4));
    assert_eq!(v["exhaustive"], json!(true));
    assert_eq!(v["witness"]["members"].as_array().unwrap().len(), 4);
}

#[test]
fn zero_budget_exits_partial() {
    let out = hyperinv(&["search", "b", "--d", "3", "--budget-secs", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["budget_exhausted"], json!(true));
    assert_eq!(v["best"], json!(10));

    let out = Command::new(env!("CARGO_BIN_EXE_hyperinv"))
        .args(["search", "b", "--d", "3"])
        .env("HYPERINV_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_general_instances() {
    let dir = TempDir::new().unwrap();
    let feasible = json!({
        "version": 1,
        "ground": ["a", "b", "c"],
        "candidates": [["a", "b"], ["b", "c"], ["c"], ["a"]],
        "restrictions": [{ "set": ["b"], "cap": 1 }],
    });
    let p = write(&dir, "i.json", &feasible);
    let out = hyperinv(&["solve", "general", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["feasible"], json!(true));
    let size = v["size"].as_u64().unwrap();
    assert_eq!(size as usize, v["members"].as_array().unwrap().len());

    let infeasible = json!({ "ground": ["a", "b"], "candidates": [["a"]] });
    let p = write(&dir, "j.json", &infeasible);
    let out = hyperinv(&["solve", "general", arg(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["feasible"], json!(false));
}

#[test]
fn repro_passes() {
    let out = hyperinv(&["repro", "paper-values"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json_of(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == json!(true)));
}

#[test]
fn lower_bound_matches_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for d in 1..=3 {
        let out = hyperinv(&["construct", "lower-bound", "--d", &d.to_string()]);
        let expected =
            std::fs::read_to_string(golden.join(format!("lower_bound_d{d}.json"))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "d = {d}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        hyperinv(&["bounds", "table", "--max-d", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hyperinv(&["search", "b", "--d", "2", "--max-members", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hyperinv(&["no-such-command"]).status.code(), Some(2));
}
