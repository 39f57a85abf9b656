use std::path::PathBuf;
use std::process::{Command, Output};

use metrized_green::green::ValueMatrixWire;
use metrized_green::{parse_graph, MetrizedGraph, Rational, ValueMatrix};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metrized-green"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn tau_of_tetrahedron() {
    assert_eq!(
        stdout_ok(&["tau", "-g", &path("tetrahedron.json"), "--exact"]),
        "5/16"
    );
    assert_eq!(
        stdout_ok(&["tau", "-g", &path("tetrahedron.json")]),
        "0.3125"
    );
}

#[test]
fn green_on_tree() {
    let g = stdout_ok(&[
        "green",
        "-g",
        &path("tree.json"),
        "--at",
        "e2:0.5",
        "--at",
        "e4:0.5",
        "--exact",
    ]);
    assert_eq!(g, "1/4");
}

#[test]
fn resistance_between_vertices() {
    let r = stdout_ok(&[
        "resistance",
        "-g",
        &path("tetrahedron.json"),
        "--at",
        "v1",
        "--at",
        "v2",
        "--exact",
    ]);
    assert_eq!(r, "1/2");
}

#[test]
fn at_accepts_both_values_after_one_flag() {
    let r = stdout_ok(&[
        "resistance",
        "-g",
        &path("tetrahedron.json"),
        "--exact",
        "--at",
        "e1:0.5",
        "e6:0.5",
    ]);
    assert_eq!(r, "3/4");
}

#[test]
fn json_envelope() {
    let out = stdout_ok(&[
        "tau",
        "-g",
        &path("tetrahedron.json"),
        "--exact",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "tau");
    assert_eq!(v["mode"], "rational");
    assert_eq!(v["payload"]["value"], "5/16");

    let out = stdout_ok(&["pinv", "-g", &path("tetrahedron.json"), "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "float");
    assert_eq!(v["payload"]["labels"][0], "v1");
    assert_eq!(v["payload"]["rows"][0][0], "0.1875");
    assert_eq!(v["payload"]["rows"][0][1], "-0.0625");
}

#[test]
fn float_values_use_fifteen_significant_digits() {
    let out = stdout_ok(&[
        "resistance",
        "-g",
        &path("triangle.json"),
        "--at",
        "v1",
        "--at",
        "v2",
    ]);
    // 1 * 5 / 6
    assert_eq!(out, "0.833333333333333");
}

#[test]
fn csv_matrix_follows_vertex_order() {
    let out = stdout_ok(&[
        "resistance-matrix",
        "-g",
        &path("tree.json"),
        "--exact",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], ",v1,v2,v3,v4,v5,v6");
    assert_eq!(lines[1], "v1,0,2,1,2,3,3");
    assert_eq!(lines.len(), 7);
}

#[test]
fn laplacian_of_refined_multigraph() {
    let out = stdout_ok(&[
        "laplacian",
        "-g",
        &path("loops.json"),
        "--exact",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let labels = v["payload"]["labels"].as_array().unwrap();
    assert_eq!(labels.len(), 5);
    assert_eq!(labels[0], "a");
    for row in v["payload"]["rows"].as_array().unwrap() {
        let sum = row
            .as_array()
            .unwrap()
            .iter()
            .map(|c| metrized_green::scalar::parse_rational(c.as_str().unwrap()).unwrap())
            .fold(Rational::from_integer(0.into()), |a, b| a + b);
        assert_eq!(sum, Rational::from_integer(0.into()));
    }
}

#[test]
fn value_matrix_json_round_trip_matches_green() {
    let graph_path = path("triangle.json");
    let out = stdout_ok(&[
        "value-matrix",
        "-g",
        &graph_path,
        "--exact",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let wire: ValueMatrixWire = serde_json::from_value(v["payload"].clone()).unwrap();
    let z: ValueMatrix<Rational> = ValueMatrix::from_wire(&wire).unwrap();

    let text = std::fs::read_to_string(fixture("triangle.json")).unwrap();
    let graph: MetrizedGraph<Rational> = parse_graph(&text).unwrap();
    let points = [
        "e1:1/3", "e1:0.5", "e2:1.5", "e3:1/7", "e3:2.5", "v2", "e2:0.25",
    ];
    for x in points {
        for y in points {
            let expected =
                stdout_ok(&["green", "-g", &graph_path, "--exact", "--at", x, "--at", y]);
            let px = graph.parse_point(x).unwrap();
            let py = graph.parse_point(y).unwrap();
            assert_eq!(
                z.evaluate(&px, &py).unwrap().to_string(),
                expected,
                "{x} {y}"
            );
        }
    }
}

#[test]
fn value_matrix_pretty() {
    let out = stdout_ok(&["value-matrix", "-g", &path("tetrahedron.json"), "--exact"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("tau = 5/16"));
    assert_eq!(
        lines.next(),
        Some("z[e1, e1] = 5/16 - (1/2)(-1/2 (x-y)^2 + |x-y|)")
    );
    assert_eq!(out.lines().count(), 37);
}

#[test]
fn value_matrix_csv() {
    let out = stdout_ok(&[
        "value-matrix",
        "-g",
        &path("tree.json"),
        "--exact",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "x_edge,y_edge,kind,abs,quad,xx,yy,xy,x,y,constant"
    );
    assert_eq!(lines.len(), 26);
    assert!(lines[1].starts_with("e1,e1,same_edge,"));
}

#[test]
fn green_with_divisor() {
    let d = path("divisor.json");
    let g = stdout_ok(&[
        "green-d",
        "-g",
        &path("tetrahedron.json"),
        "--exact",
        "--divisor",
        &d,
        "--at",
        "e1:0.5",
        "--at",
        "v4",
    ]);
    assert_eq!(g, "5/4");
}

#[test]
fn info_reports_bridges() {
    let out = stdout_ok(&["info", "-g", &path("tree.json"), "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["genus"], 0);
    assert_eq!(v["payload"]["bridges"].as_array().unwrap().len(), 5);
    assert_eq!(v["payload"]["total_length"], "5");
}

#[test]
fn verify_passes_in_both_modes() {
    let out = stdout_ok(&[
        "verify",
        "-g",
        &path("loops.json"),
        "--exact",
        "--pairs",
        "15",
        "--tau-k",
        "20",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["passed"], true);
    assert_eq!(v["payload"]["max_resistance_deviation"], 0.0);

    let out = stdout_ok(&["verify", "-g", &path("tetrahedron.json"), "--pairs", "30"]);
    assert!(out.ends_with("ok"), "{out}");
}

#[test]
fn exit_codes() {
    let tree = path("tree.json");
    // usage errors
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["tau"]).status.code(), Some(2));
    assert_eq!(
        run(&["resistance", "-g", &tree, "--at", "v1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["resistance", "-g", &tree, "--at", "e2", "--at", "v1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["tau", "-g", &tree, "--format", "xml"]).status.code(),
        Some(2)
    );
    // validation errors
    assert_eq!(
        run(&["tau", "-g", "/nonexistent/graph.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["resistance", "-g", &tree, "--at", "e9:0.5", "--at", "v1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["resistance", "-g", &tree, "--at", "e1:2", "--at", "v1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "green-d",
            "-g",
            &tree,
            "--divisor",
            "/nonexistent.json",
            "--at",
            "v1",
            "--at",
            "v2"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn malformed_graph_is_a_validation_error() {
    let dir = std::env::temp_dir().join(format!("metrized-green-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (
            "disconnected",
            r#"{"vertices":["a","b","c","d"],"edges":[{"id":"e","from":"a","to":"b","length":1},{"id":"f","from":"c","to":"d","length":1}]}"#,
        ),
        (
            "negative",
            r#"{"vertices":["a","b"],"edges":[{"id":"e","from":"a","to":"b","length":-1}]}"#,
        ),
        ("garbage", "not json"),
        (
            "bad-literal",
            r#"{"vertices":["a","b"],"edges":[{"id":"e","from":"a","to":"b","length":"x"}]}"#,
        ),
    ];
    for (name, body) in cases {
        let file = dir.join(format!("{name}.json"));
        std::fs::write(&file, body).unwrap();
        let out = run(&["tau", "-g", file.to_str().unwrap(), "--exact"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
        assert!(!out.stderr.is_empty(), "{name}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_metrized-green"))
        .args(["value-matrix", "-g", &path("tetrahedron.json"), "--exact"])
        .env("METRIZED_GREEN_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("tau = 5/16"));
}
