//! Browser bindings. Each export takes a graph as JSON text and returns JSON
//! (or plain text); errors surface as JavaScript exceptions.

pub mod api;

use wasm_bindgen::prelude::*;

fn js_err(e: api::DemoError) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen]
pub fn presets() -> String {
    api::presets()
}

/// Tau, genus, bridges and the vertex resistance matrix.
#[wasm_bindgen]
pub fn summary(graph: &str, exact: bool) -> Result<String, JsValue> {
    api::summary(graph, exact).map_err(js_err)
}

/// `g(x, ·)` along every edge, for plotting.
#[wasm_bindgen(js_name = greenProfile)]
pub fn green_profile(graph: &str, source: &str, samples: usize) -> Result<String, JsValue> {
    api::green_profile(graph, source, samples).map_err(js_err)
}

#[wasm_bindgen(js_name = evaluatePair)]
pub fn evaluate_pair(graph: &str, x: &str, y: &str, exact: bool) -> Result<String, JsValue> {
    api::evaluate_pair(graph, x, y, exact).map_err(js_err)
}

#[wasm_bindgen(js_name = valueMatrix)]
pub fn value_matrix(graph: &str, exact: bool) -> Result<String, JsValue> {
    api::value_matrix_text(graph, exact).map_err(js_err)
}
