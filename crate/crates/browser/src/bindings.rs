use wasm_bindgen::prelude::*;

use crate::demo;

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = degreeText)]
pub fn degree_text(m: u32, d: u32, t: u32, a: u32) -> Result<String, JsValue> {
    js(demo::degree_text(m, d, t, a))
}

#[wasm_bindgen(js_name = degreeCurve)]
pub fn degree_curve(m: u32, d: u32, t: u32, a: u32, q_lo: f64, q_hi: f64, samples: u32) -> Result<Vec<f64>, JsValue> {
    js(demo::degree_curve(m, d, t, a, q_lo, q_hi, samples))
}

#[wasm_bindgen(js_name = muUnitary)]
pub fn mu_unitary(d: u32, t: u32, a: u32, level: u32, q: f64, samples: u32) -> Result<Vec<f64>, JsValue> {
    js(demo::mu_unitary(d, t, a, level, q, samples))
}

#[wasm_bindgen(js_name = contourTerms)]
pub fn contour_terms(m: u32, d: u32, t: u32, a: u32, q: f64, nodes: u32) -> Result<Vec<f64>, JsValue> {
    js(demo::contour_terms(m, d, t, a, q, nodes))
}
