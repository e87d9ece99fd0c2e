//! Browser bindings for the block-matrix engine. Three operations back the
//! demo page: classifying one operator at a point, scanning perturbation
//! sets over a grid, and constructing a completion witness with a
//! window-schedule certificate. Everything speaks JSON strings so the page
//! needs no generated glue types, and every reported number is exact.

use wasm_bindgen::prelude::wasm_bindgen;

use fredblock_core::blockmodel::DEFAULT_SIZE_CAP;
use fredblock_core::completion::{complete, CompletionTarget};
use fredblock_core::deltasets::{region_scan, DeltaTarget, GridSpec, DEFAULT_GRID_CAP};
use fredblock_core::jsonio::{
    fredholm_data_json, model_to_doc, operator_from_json, OperatorJson, TupleDoc, SCHEMA,
};
use fredblock_core::rational::format_rational;
use fredblock_core::{
    classify, fredholm_data, spectra_membership, verify_prediction, RationalComplex,
};

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Fredholm data, class memberships and the five spectra of one operator at
/// one point. `op_json` is an operator object; `lambda` is `re,im`.
#[wasm_bindgen]
pub fn classify_point(op_json: &str, lambda: &str) -> String {
    let parsed: OperatorJson = match serde_json::from_str(op_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let expr = match operator_from_json(&parsed) {
        Ok(e) => e,
        Err(e) => return err_json(e),
    };
    let lambda = match RationalComplex::parse_pair(lambda) {
        Ok(l) => l,
        Err(e) => return err_json(e),
    };
    let data = fredholm_data(&expr, &lambda);
    let class = classify(&data).expect("catalog data is consistent");
    let spectra = spectra_membership(&expr, &lambda);
    serde_json::json!({
        "schema": SCHEMA,
        "data": fredholm_data_json(&data),
        "class": {
            "phi_plus": class.in_phi_plus,
            "phi_minus": class.in_phi_minus,
            "phi": class.in_phi,
            "left_weyl": class.in_left_weyl,
            "right_weyl": class.in_right_weyl,
            "index": class.index.to_string(),
        },
        "spectra": {
            "sf_plus": spectra.sf_plus,
            "sf_minus": spectra.sf_minus,
            "essential": spectra.essential,
            "aw": spectra.aw,
            "sw": spectra.sw,
        },
    })
    .to_string()
}

/// Scan one perturbation-set target over a grid. Returns row-major rows with
/// exact coordinates and the corrected (and, where defined, legacy) bounds,
/// ready for a canvas heatmap.
#[wasm_bindgen]
pub fn scan_region(tuple_json: &str, grid: &str, target: &str) -> String {
    let doc: TupleDoc = match serde_json::from_str(tuple_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let diag = match doc.to_tuple() {
        Ok(d) => d,
        Err(e) => return err_json(e),
    };
    let grid = match GridSpec::parse(grid) {
        Ok(g) => g,
        Err(e) => return err_json(e),
    };
    let target = match DeltaTarget::parse(target) {
        Some(t) => t,
        None => return err_json(format!("unknown target {target:?}")),
    };
    let scan = match region_scan(&diag, &grid, target, DEFAULT_GRID_CAP) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let rows: Vec<serde_json::Value> = scan
        .rows
        .iter()
        .map(|(lambda, m)| {
            serde_json::json!({
                "re": format_rational(&lambda.re),
                "im": format_rational(&lambda.im),
                "families": m.families.iter().map(|(n, v)| serde_json::json!([n, v])).collect::<Vec<_>>(),
                "lower": m.lower,
                "upper": m.upper,
                "legacy_lower": m.legacy_lower,
                "legacy_upper": m.legacy_upper,
            })
        })
        .collect();
    serde_json::json!({
        "schema": SCHEMA,
        "target": target.name(),
        "families": scan.family_names,
        "rows": rows,
    })
    .to_string()
}

/// Construct a completion witness for a diagonal tuple and certify its
/// predictions on a small window schedule.
#[wasm_bindgen]
pub fn complete_witness(tuple_json: &str, lambda: &str, target: &str) -> String {
    let doc: TupleDoc = match serde_json::from_str(tuple_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let diag = match doc.to_tuple() {
        Ok(d) => d,
        Err(e) => return err_json(e),
    };
    let lambda = match RationalComplex::parse_pair(lambda) {
        Ok(l) => l,
        Err(e) => return err_json(e),
    };
    let target = match CompletionTarget::parse(target) {
        Some(t) => t,
        None => return err_json(format!("unknown target {target:?}")),
    };
    let plan = match complete(&diag, &lambda, target) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let model = plan.clone().into_model(diag, lambda);
    let doc = model_to_doc(&model, Some(plan.strategy), Some(&plan.predicted), 128);
    let schedule = [8u64, 16, 32, 64];
    let report = match verify_prediction(&model, &plan.predicted, &schedule, DEFAULT_SIZE_CAP) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    serde_json::json!({
        "schema": SCHEMA,
        "model": serde_json::to_value(&doc).expect("serializable"),
        "verification": {
            "schedule": schedule,
            "alpha_trace": report.alpha_trace.trace,
            "alpha_flag": report.alpha_trace.flag.to_string(),
            "adjoint_trace": report.adjoint_trace.trace,
            "adjoint_flag": report.adjoint_trace.flag.to_string(),
            "certified": report.certified(),
        },
    })
    .to_string()
}

/// The completion targets, for populating the demo's selector.
#[wasm_bindgen]
pub fn completion_targets() -> String {
    let names: Vec<&str> = CompletionTarget::ALL.iter().map(|t| t.name()).collect();
    serde_json::json!(names).to_string()
}

/// The scan targets, for populating the demo's selector.
#[wasm_bindgen]
pub fn scan_targets() -> String {
    let names: Vec<&str> = DeltaTarget::ALL.iter().map(|t| t.name()).collect();
    serde_json::json!(names).to_string()
}
