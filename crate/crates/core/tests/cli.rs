use std::fs;
use std::process::{Command, Output};

use mapgen::{Graph, Map};
use tempfile::TempDir;

fn mapgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(text: &str) -> Vec<&str> {
    text.split("\n\n")
        .filter(|r| !r.trim().is_empty())
        .collect()
}

#[test]
fn workers_do_not_change_output() {
    let one = stdout(&mapgen(&["--gen", "8", "--regular", "3", "--genus", "1"]));
    let three = stdout(&mapgen(&[
        "--gen",
        "8",
        "--regular",
        "3",
        "--genus",
        "1",
        "--workers",
        "3",
    ]));
    assert_eq!(records(&one).len(), 37);
    assert_eq!(one, three);
    let limited = |k: &str| {
        stdout(&mapgen(&[
            "--gen",
            "8",
            "--regular",
            "3",
            "--genus",
            "2",
            "--limit",
            "10",
            "--workers",
            k,
        ]))
    };
    assert_eq!(limited("1"), limited("4"));
}

#[test]
fn records_parse_back_at_the_target() {
    let text = stdout(&mapgen(&["--gen", "6", "--regular", "3", "--genus", "1"]));
    let recs = records(&text);
    assert_eq!(recs.len(), 7);
    for rec in recs {
        let map = Map::from_rotation_code(rec).unwrap();
        assert_eq!(map.genus().unwrap(), 1);
    }
    let text = stdout(&mapgen(&["--gen", "5", "--regular", "4", "--faces", "1"]));
    for rec in records(&text) {
        assert_eq!(Map::from_rotation_code(rec).unwrap().face_count(), 1);
    }
}

#[test]
fn count_only_matches_full_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("maps.txt");
    let summary = stdout(&mapgen(&[
        "--gen",
        "7",
        "--regular",
        "4",
        "--genus",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]));
    let counted = stdout(&mapgen(&[
        "--gen",
        "7",
        "--regular",
        "4",
        "--genus",
        "2",
        "--count-only",
    ]));
    assert_eq!(summary, counted);
    assert!(
        counted.starts_with("2\t2\t100.0\t1415\t707.5\t"),
        "{counted}"
    );
    assert_eq!(records(&fs::read_to_string(&path).unwrap()).len(), 1415);
}

#[test]
fn limit_stops_at_a_record_boundary() {
    let text = stdout(&mapgen(&[
        "--gen",
        "8",
        "--regular",
        "3",
        "--genus",
        "2",
        "--limit",
        "5",
    ]));
    assert_eq!(records(&text).len(), 5);
    assert!(text.ends_with("\n\n"));
}

#[test]
fn graph6_input_keeps_its_labels() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("in.g6");
    // vertex 1 has degree 1 here, so the generator relabels internally
    let g =
        Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)]).unwrap();
    fs::write(&path, format!("{}\n", g.to_graph6())).unwrap();
    let text = stdout(&mapgen(&[
        "--input",
        path.to_str().unwrap(),
        "--genus",
        "1",
    ]));
    let recs = records(&text);
    assert!(!recs.is_empty());
    for rec in recs {
        let map = Map::from_rotation_code(rec).unwrap();
        assert_eq!(map.graph(), &g);
        assert_eq!(map.genus().unwrap(), 1);
    }
}

#[test]
fn empty_input_gives_an_empty_summary() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.g6");
    fs::write(&path, "").unwrap();
    let text = stdout(&mapgen(&[
        "--input",
        path.to_str().unwrap(),
        "--genus",
        "0",
        "--count-only",
    ]));
    assert_eq!(text.trim_end(), "0\t0\t0.0\t0\t0.0\t0");
}

#[test]
fn bad_graph6_reports_the_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.g6");
    fs::write(&path, "C~\nC\u{7f}x\n").unwrap();
    let out = mapgen(&["--input", path.to_str().unwrap(), "--genus", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn wrong_parity_emits_nothing() {
    let text = stdout(&mapgen(&[
        "--gen",
        "4",
        "--regular",
        "3",
        "--faces",
        "1",
        "--count-only",
    ]));
    assert_eq!(text.trim_end(), "1\t0\t0.0\t0\t0.0\t0");
}

#[test]
fn list_cap_is_a_resource_error() {
    let out = mapgen(&[
        "--gen",
        "6",
        "--regular",
        "5",
        "--genus",
        "2",
        "--mode",
        "list",
        "--list-cap",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_writes_the_class() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cubic.g6");
    stdout(&mapgen(&[
        "--gen",
        "10",
        "--regular",
        "3",
        "--genus",
        "0",
        "--count-only",
        "--export-graph6",
        path.to_str().unwrap(),
    ]));
    let lines = fs::read_to_string(&path).unwrap();
    let graphs: Vec<Graph> = lines
        .lines()
        .map(|l| Graph::from_graph6(l).unwrap())
        .collect();
    assert_eq!(graphs.len(), 19);
    assert!(graphs
        .iter()
        .all(|g| g.order() == 10 && g.min_degree() == 3 && g.max_degree() == 3));
}

#[test]
fn modes_agree_on_counts() {
    let count = |mode: &str| {
        stdout(&mapgen(&[
            "--gen",
            "6",
            "--regular",
            "4",
            "--genus",
            "2",
            "--count-only",
            "--mode",
            mode,
        ]))
    };
    let final_mode = count("final");
    assert_eq!(final_mode.trim_end(), "1\t1\t100.0\t206\t206.0\t206");
    for mode in ["incremental", "list", "exhaustive"] {
        assert_eq!(count(mode), final_mode, "{mode}");
    }
}
