//! Pure functions behind the browser bindings; everything returns JSON text.

use metrized_green::{
    green_can, parse_graph, resistance_points, tau_constant, value_matrix, Error, MetrizedGraph,
    Network, Rational, Scalar,
};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum DemoError {
    #[error(transparent)]
    Graph(#[from] Error),
    #[error("sample count must be between 2 and {max}, got {got}")]
    Samples { got: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, DemoError>;

pub const MAX_SAMPLES: usize = 2000;

pub const PRESETS: &[(&str, &str)] = &[
    (
        "triangle",
        r#"{"vertices": ["v1", "v2", "v3"], "edges": [
  {"id": "e1", "from": "v1", "to": "v2", "length": 1},
  {"id": "e2", "from": "v1", "to": "v3", "length": 2},
  {"id": "e3", "from": "v2", "to": "v3", "length": 3}]}"#,
    ),
    (
        "tree",
        r#"{"vertices": ["v1", "v2", "v3", "v4", "v5", "v6"], "edges": [
  {"id": "e1", "from": "v1", "to": "v3", "length": 1},
  {"id": "e2", "from": "v2", "to": "v3", "length": 1},
  {"id": "e3", "from": "v3", "to": "v4", "length": 1},
  {"id": "e4", "from": "v4", "to": "v5", "length": 1},
  {"id": "e5", "from": "v4", "to": "v6", "length": 1}]}"#,
    ),
    (
        "tetrahedron",
        r#"{"vertices": ["v1", "v2", "v3", "v4"], "edges": [
  {"id": "e1", "from": "v1", "to": "v2", "length": 1},
  {"id": "e2", "from": "v1", "to": "v3", "length": 1},
  {"id": "e3", "from": "v1", "to": "v4", "length": 1},
  {"id": "e4", "from": "v2", "to": "v3", "length": 1},
  {"id": "e5", "from": "v2", "to": "v4", "length": 1},
  {"id": "e6", "from": "v3", "to": "v4", "length": 1}]}"#,
    ),
    (
        "dumbbell",
        r#"{"vertices": ["a", "b"], "edges": [
  {"id": "loop_a", "from": "a", "to": "a", "length": 2},
  {"id": "bar", "from": "a", "to": "b", "length": "1/2"},
  {"id": "loop_b", "from": "b", "to": "b", "length": 1}]}"#,
    ),
];

#[derive(Serialize)]
pub struct Summary {
    pub mode: &'static str,
    pub tau: String,
    pub total_length: String,
    pub genus: usize,
    pub vertices: Vec<String>,
    pub bridges: Vec<String>,
    /// resistance between input vertices, row-major
    pub resistance: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct EdgeProfile {
    pub edge: String,
    pub length: f64,
    pub offsets: Vec<f64>,
    pub values: Vec<f64>,
}

/// `y ↦ g(x, y)` sampled along every input edge.
#[derive(Serialize)]
pub struct Profile {
    pub source: String,
    pub tau: f64,
    pub min: f64,
    pub max: f64,
    pub edges: Vec<EdgeProfile>,
}

#[derive(Serialize)]
pub struct PairValues {
    pub mode: &'static str,
    pub resistance: String,
    pub green: String,
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("demo payloads serialize")
}

pub fn presets() -> String {
    let map: serde_json::Map<String, serde_json::Value> = PRESETS
        .iter()
        .map(|(name, json)| {
            (
                name.to_string(),
                serde_json::Value::String(json.to_string()),
            )
        })
        .collect();
    serde_json::to_string(&map).expect("presets serialize")
}

fn load<S: Scalar>(graph_json: &str) -> Result<(MetrizedGraph<S>, Network<S>)> {
    let graph = parse_graph::<S>(graph_json)?;
    let net = Network::from_graph(&graph)?;
    Ok((graph, net))
}

fn summary_in<S: Scalar>(graph_json: &str) -> Result<String> {
    let (graph, net) = load::<S>(graph_json)?;
    let refined = net.graph();
    let n = graph.vertex_count();
    let resistance = (0..n)
        .map(|i| (0..n).map(|j| net.r(i, j).to_text()).collect())
        .collect();
    // an input edge is a bridge exactly when any of its pieces is
    let bridges = refined
        .original_edges()
        .iter()
        .filter(|o| net.is_bridge(o.segments[0].edge))
        .map(|o| o.label.clone())
        .collect();
    Ok(to_json(&Summary {
        mode: S::MODE,
        tau: tau_constant(&net).to_text(),
        total_length: graph.total_length().to_text(),
        genus: graph.edge_count() + 1 - n,
        vertices: graph.vertices().to_vec(),
        bridges,
        resistance,
    }))
}

pub fn summary(graph_json: &str, exact: bool) -> Result<String> {
    if exact {
        summary_in::<Rational>(graph_json)
    } else {
        summary_in::<f64>(graph_json)
    }
}

/// Always float: the result feeds a plot.
pub fn green_profile(graph_json: &str, source: &str, samples: usize) -> Result<String> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(DemoError::Samples {
            got: samples,
            max: MAX_SAMPLES,
        });
    }
    let (graph, net) = load::<f64>(graph_json)?;
    let refined = net.graph();
    let x = refined.parse_point(source)?;
    let tau = tau_constant(&net);
    let mut edges = Vec::with_capacity(graph.edge_count());
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (o, original) in graph.edges().iter().enumerate() {
        let step = original.length / (samples - 1) as f64;
        let offsets: Vec<f64> = (0..samples).map(|k| k as f64 * step).collect();
        let mut values = Vec::with_capacity(samples);
        for &t in &offsets {
            let y = refined.locate(o, t.min(original.length))?;
            let g = green_can(&net, &tau, &x, &y)?;
            min = min.min(g);
            max = max.max(g);
            values.push(g);
        }
        edges.push(EdgeProfile {
            edge: original.label.clone(),
            length: original.length,
            offsets,
            values,
        });
    }
    Ok(to_json(&Profile {
        source: refined.describe_point(&x),
        tau,
        min,
        max,
        edges,
    }))
}

fn pair_in<S: Scalar>(graph_json: &str, x: &str, y: &str) -> Result<String> {
    let (_, net) = load::<S>(graph_json)?;
    let (px, py) = (net.graph().parse_point(x)?, net.graph().parse_point(y)?);
    let tau = tau_constant(&net);
    Ok(to_json(&PairValues {
        mode: S::MODE,
        resistance: resistance_points(&net, &px, &py)?.to_text(),
        green: green_can(&net, &tau, &px, &py)?.to_text(),
    }))
}

pub fn evaluate_pair(graph_json: &str, x: &str, y: &str, exact: bool) -> Result<String> {
    if exact {
        pair_in::<Rational>(graph_json, x, y)
    } else {
        pair_in::<f64>(graph_json, x, y)
    }
}

fn value_matrix_in<S: Scalar>(graph_json: &str) -> Result<String> {
    let (_, net) = load::<S>(graph_json)?;
    let tau = tau_constant(&net);
    let z = value_matrix(&net, &tau);
    let graph = net.graph();
    let mut out = format!("tau = {}\n", tau.to_text());
    for i in 0..z.size() {
        for j in 0..z.size() {
            out.push_str(&format!(
                "z[{}, {}] = {}\n",
                graph.edge(i).label,
                graph.edge(j).label,
                z.entry(i, j).pretty(&tau)
            ));
        }
    }
    Ok(out)
}

/// Plain text listing of every value-matrix entry.
pub fn value_matrix_text(graph_json: &str, exact: bool) -> Result<String> {
    if exact {
        value_matrix_in::<Rational>(graph_json)
    } else {
        value_matrix_in::<f64>(graph_json)
    }
}
