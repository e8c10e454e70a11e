//! End-to-end runs of the `gg` binary: outputs, round trips and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use guardgraph::geometry::{GuardMode, GuardSet, PiecewiseConvexPolygon};
use guardgraph::trigraph::{fan_triangulation, DominatingSet, Mode, TriangulationGraph};
use tempfile::TempDir;

fn gg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gg")).args(args).output().expect("gg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn genlb(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let o = gg(&[&["genlb"], args].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, name, &stdout(&o))
}

#[test]
fn dominate_fan10_diag_linear_stays_within_three() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "fan10.json", &fan_triangulation(10).unwrap().to_json_string());
    let o = gg(&["dominate", "--algo", "diag-linear", s(&input)]);
    assert_eq!(o.status.code(), Some(0));
    let d: DominatingSet = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(d.len() <= 3);
    assert_eq!(d.mode, Mode::DiagonalAllowed);
}

#[test]
fn dominate_quad_edge_quadratic_takes_two_edges() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "quad.json", r#"{"n": 4, "diagonals": [[0, 2]]}"#);
    let out = dir.path().join("set.json");
    let o = gg(&["dominate", "--algo", "edge-quadratic", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let d: DominatingSet = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(d.len(), 2);
}

#[test]
fn malformed_json_exits_one_with_position() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", "{\"n\": 4,\n \"diagonals\": [[0, 2]");
    let o = gg(&["dominate", "--algo", "diag-linear", s(&input)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2 column"));
}

#[test]
fn invalid_graph_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "cross.json", r#"{"n": 4, "diagonals": [[0, 1]]}"#);
    assert_eq!(gg(&["dominate", "--algo", "edge-linear", s(&input)]).status.code(), Some(2));
}

#[test]
fn bad_command_line_exits_one() {
    assert_eq!(gg(&["dominate", "--algo", "nope", "x.json"]).status.code(), Some(1));
}

#[test]
fn genlb_sizes() {
    let g: TriangulationGraph = serde_json::from_str(&stdout(&gg(&["genlb", "gamma7"]))).unwrap();
    assert_eq!(g.n(), 7);
    let p = PiecewiseConvexPolygon::from_json_str(&stdout(&gg(&["genlb", "spikes", "--k", "4"]))).unwrap();
    assert_eq!(p.n(), 12);
    let m = PiecewiseConvexPolygon::from_json_str(&stdout(&gg(&["genlb", "monotone", "--variant", "2", "--m", "4"]))).unwrap();
    assert_eq!(m.n(), 12);
    assert_eq!(gg(&["genlb", "diag", "--m", "1", "--variant", "1"]).status.code(), Some(2));
}

#[test]
fn genlb_random_follows_the_seed() {
    let a = stdout(&gg(&["genlb", "random", "--n", "20", "--seed", "3"]));
    let b = stdout(&gg(&["genlb", "random", "--n", "20", "--seed", "3"]));
    let c = stdout(&gg(&["genlb", "random", "--n", "20", "--seed", "4"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn emitted_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&gg(&["genlb", "glued", "--m", "2"]));
    let g: TriangulationGraph = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&g).unwrap() + "\n", text);
    let input = write(&dir, "g.json", &text);
    let set_text = stdout(&gg(&["dominate", "--algo", "edge-linear", s(&input)]));
    let set: DominatingSet = serde_json::from_str(&set_text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&set).unwrap() + "\n", set_text);
    let poly_text = stdout(&gg(&["genlb", "fan", "--n", "9"]));
    let p = PiecewiseConvexPolygon::from_json_str(&poly_text).unwrap();
    assert_eq!(p.to_json_string() + "\n", poly_text);
}

#[test]
fn guard_spikes_mobile_and_verify() {
    let dir = TempDir::new().unwrap();
    let poly = genlb(&dir, "spikes.json", &["spikes", "--k", "5"]);
    let svg = dir.path().join("spikes.svg");
    let o = gg(&["guard", s(&poly), "--strategy", "mobile-n3", "--svg", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    let g: GuardSet = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(g.len() <= 5);
    assert_eq!(g.mode, GuardMode::MobileGuards);
    assert!(fs::read_to_string(svg).unwrap().starts_with("<svg"));
    let guards = write(&dir, "guards.json", &stdout(&o));
    let v = gg(&["verify", s(&poly), s(&guards), "--density", "50"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("covered=true"));
}

#[test]
fn guard_monotone_polygon_takes_four() {
    let dir = TempDir::new().unwrap();
    let poly = genlb(&dir, "m1.json", &["monotone", "--variant", "1", "--m", "4"]);
    let o = gg(&["guard", s(&poly), "--strategy", "monotone"]);
    assert_eq!(o.status.code(), Some(0));
    let g: GuardSet = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(g.len() <= 4);
}

#[test]
fn monotone_strategy_rejects_spikes_with_exit_three() {
    let dir = TempDir::new().unwrap();
    let poly = genlb(&dir, "spikes.json", &["spikes", "--k", "4"]);
    assert_eq!(gg(&["guard", s(&poly), "--strategy", "monotone"]).status.code(), Some(3));
    assert_eq!(gg(&["monotone", s(&poly)]).status.code(), Some(3));
}

#[test]
fn monotone_table_lists_every_sorted_point() {
    let dir = TempDir::new().unwrap();
    let poly = genlb(&dir, "m2.json", &["monotone", "--variant", "2", "--m", "4"]);
    let text = stdout(&gg(&["monotone", s(&poly)]));
    assert_eq!(text.lines().count(), 1 + 14 + 1);
    let json: serde_json::Value = serde_json::from_str(&stdout(&gg(&["monotone", s(&poly), "--json"]))).unwrap();
    assert_eq!(json["decomposition"]["points"].as_array().unwrap().len(), 14);
}

#[test]
fn exhaustive_verify_counts_catalan_instances() {
    let o = gg(&["verify", "--exhaustive", "9", "--mode", "edge"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 violations / 429 triangulations"), "{}", stdout(&o));
    let j: serde_json::Value = serde_json::from_str(&stdout(&gg(&["verify", "--exhaustive", "7", "--json"]))).unwrap();
    assert_eq!(j["instances"], 42);
    assert_eq!(j["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn uncovered_guard_set_exits_four() {
    let dir = TempDir::new().unwrap();
    let poly = genlb(&dir, "spikes.json", &["spikes", "--k", "3"]);
    let guards = write(&dir, "g.json", r#"{"guards": [{"type": "arc", "index": 0}], "mode": "edge_guards"}"#);
    let o = gg(&["verify", s(&poly), s(&guards), "--density", "20"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("covered=false"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seen by no guard"));
}

#[test]
fn render_is_deterministic_and_marks_members() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "t.json", r#"{"n": 3, "diagonals": []}"#);
    let set = write(&dir, "d.json", r#"{"mode": "edge", "members": [[0, 1]]}"#);
    let a = gg(&["render", s(&graph), s(&set)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a).matches("class=\"member\"").count(), 1);
    let out = dir.path().join("t.svg");
    assert_eq!(gg(&["render", s(&graph), s(&set), "--out", s(&out)]).status.code(), Some(0));
    assert_eq!(fs::read_to_string(out).unwrap(), stdout(&a));
}
