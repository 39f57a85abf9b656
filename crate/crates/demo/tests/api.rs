use metrized_green_demo::api::{
    evaluate_pair, green_profile, presets, summary, value_matrix_text, PRESETS,
};
use serde_json::Value;

fn preset(name: &str) -> &'static str {
    PRESETS.iter().find(|(n, _)| *n == name).unwrap().1
}

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn every_preset_parses() {
    let map = parse(&presets());
    assert_eq!(map.as_object().unwrap().len(), PRESETS.len());
    for (name, json) in PRESETS {
        let s = parse(&summary(json, true).unwrap());
        assert_eq!(s["mode"], "rational", "{name}");
    }
}

#[test]
fn summary_of_tetrahedron() {
    let s = parse(&summary(preset("tetrahedron"), true).unwrap());
    assert_eq!(s["tau"], "5/16");
    assert_eq!(s["genus"], 3);
    assert_eq!(s["resistance"][0][1], "1/2");
    assert!(s["bridges"].as_array().unwrap().is_empty());
}

#[test]
fn dumbbell_bar_is_the_only_bridge() {
    let s = parse(&summary(preset("dumbbell"), true).unwrap());
    assert_eq!(s["bridges"], serde_json::json!(["bar"]));
    // loops contribute l/12 each, the bar l/4
    assert_eq!(s["tau"], "3/8");
}

#[test]
fn profile_peaks_at_its_source() {
    let p = parse(&green_profile(preset("triangle"), "e2:1", 41).unwrap());
    assert_eq!(p["source"], "e2:1");
    let tau = p["tau"].as_f64().unwrap();
    assert!((tau - 0.5).abs() < 1e-12);
    assert!((p["max"].as_f64().unwrap() - tau).abs() < 1e-12);
    let edges = p["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    let e2 = &edges[1];
    assert_eq!(e2["offsets"].as_array().unwrap().len(), 41);
    assert!((e2["values"][20].as_f64().unwrap() - tau).abs() < 1e-12);
    // continuity at the shared vertex v1
    let v1_on_e1 = edges[0]["values"][0].as_f64().unwrap();
    let v1_on_e2 = edges[1]["values"][0].as_f64().unwrap();
    assert!((v1_on_e1 - v1_on_e2).abs() < 1e-12);
}

#[test]
fn profile_rejects_bad_input() {
    assert!(green_profile(preset("triangle"), "e2:1", 1).is_err());
    assert!(green_profile(preset("triangle"), "e7:1", 10).is_err());
    assert!(green_profile("{}", "v1", 10).is_err());
}

#[test]
fn pair_in_both_modes() {
    let exact = parse(&evaluate_pair(preset("tree"), "e2:0.5", "e4:0.5", true).unwrap());
    assert_eq!(exact["resistance"], "2");
    assert_eq!(exact["green"], "1/4");
    let float = parse(&evaluate_pair(preset("tree"), "e2:0.5", "e4:0.5", false).unwrap());
    assert_eq!(float["green"], "0.25");
    assert!(evaluate_pair(preset("tree"), "e2", "v1", true).is_err());
}

#[test]
fn value_matrix_listing() {
    let text = value_matrix_text(preset("tetrahedron"), true).unwrap();
    assert!(text.starts_with("tau = 5/16\n"));
    assert_eq!(text.lines().count(), 37);
}
