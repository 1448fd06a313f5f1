//! Browser bindings: run a preset, sample partial sums, print a small table.
//! Every export returns a JSON string for the page to plot.

use dirichlet_lab::catalog::FunctionSpec;
use dirichlet_lab::funcs::Table;
use dirichlet_lab::presets::{run_preset, PresetConfig, PresetId};
use dirichlet_lab::report::reports_to_json;
use dirichlet_lab::sums::prefix_sums;
use dirichlet_lab::verify::geometric_checkpoints;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Sieving past this freezes the tab for too long.
pub const MAX_LIMIT: usize = 2_000_000;

fn check_limit(limit: usize) -> Result<usize, String> {
    if (1..=MAX_LIMIT).contains(&limit) {
        Ok(limit)
    } else {
        Err(format!("limit must be in 1..={MAX_LIMIT}, got {limit}"))
    }
}

pub fn preset_reports(preset: &str, limit: usize, k: u32) -> Result<String, String> {
    let id: PresetId = preset.parse().map_err(|e: dirichlet_lab::Error| e.to_string())?;
    let config = PresetConfig {
        limit: check_limit(limit)?,
        checkpoints: Some(geometric_checkpoints(100, 2, limit)),
        k,
        ..PresetConfig::default()
    };
    let outcome = run_preset(id, &config).map_err(|e| e.to_string())?;
    reports_to_json(&outcome.reports).map_err(|e| e.to_string())
}

/// `M(f, x)` at `points` roughly log-spaced cutoffs up to `limit`.
pub fn sampled_sums(spec: &str, limit: usize, points: usize) -> Result<String, String> {
    let spec: FunctionSpec = spec.parse().map_err(|e: dirichlet_lab::Error| e.to_string())?;
    let limit = check_limit(limit)?;
    let sums = prefix_sums(&spec.build(limit).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let points = points.clamp(2, 2000);
    let step = (limit as f64).ln() / (points - 1) as f64;
    let mut xs: Vec<usize> = (0..points)
        .map(|i| ((i as f64 * step).exp().round() as usize).clamp(1, limit))
        .collect();
    xs.dedup();
    let data: Vec<Value> = xs.iter().map(|&x| json!([x, sums.at(x)])).collect();
    Ok(json!({ "function": spec.to_string(), "points": data }).to_string())
}

pub fn table_values(spec: &str, limit: usize) -> Result<String, String> {
    let spec: FunctionSpec = spec.parse().map_err(|e: dirichlet_lab::Error| e.to_string())?;
    if !(1..=1000).contains(&limit) {
        return Err(format!("table limit must be in 1..=1000, got {limit}"));
    }
    let values: Vec<Value> = match spec.build(limit).map_err(|e| e.to_string())? {
        Table::Int(t) => t.values().iter().map(|v| json!(v)).collect(),
        Table::Real(t) => t.values().iter().map(|v| json!(v)).collect(),
    };
    Ok(json!({ "function": spec.to_string(), "values": values }).to_string())
}

#[wasm_bindgen(js_name = runPreset)]
pub fn run_preset_js(preset: &str, limit: u32, k: u32) -> Result<String, JsError> {
    preset_reports(preset, limit as usize, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = partialSums)]
pub fn partial_sums_js(spec: &str, limit: u32, points: u32) -> Result<String, JsError> {
    sampled_sums(spec, limit as usize, points as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = functionTable)]
pub fn function_table_js(spec: &str, limit: u32) -> Result<String, JsError> {
    table_values(spec, limit as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = presetIds)]
pub fn preset_ids() -> String {
    let ids: Vec<_> = PresetId::ALL
        .iter()
        .map(|p| json!({ "id": p.as_str(), "law": p.summary() }))
        .collect();
    Value::Array(ids).to_string()
}
