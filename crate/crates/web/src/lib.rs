//! WebAssembly bindings for the `www/` demo page. Every export returns a JSON string.

pub mod demo;

use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub fn product_spectrum(a1: &str, a2: &str, a3: &str, cutoff: &str) -> Result<String, JsValue> {
    demo::product_spectrum(a1, a2, a3, cutoff).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verdict_explorer(a1: u32, a2: u32, a: &str, cutoff: &str) -> Result<String, JsValue> {
    demo::verdict_explorer(a1, a2, a, cutoff).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn circle_eta(s: f64, cutoff: &str, samples: u32) -> Result<String, JsValue> {
    demo::circle_eta(s, cutoff, samples).map_err(|e| JsValue::from_str(&e))
}
