//! Browser bindings for the `swtorus` engine.
//!
//! Each export takes plain strings and numbers and returns a JSON document.
//! The `*_json` functions hold the logic so they can be exercised natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use swtorus::alexander::{alexander_closure_with_axis, alexander_knot};
use swtorus::braid::closure_info;
use swtorus::catalog::Catalog;
use swtorus::surgery::{
    basic_classes, checked_invariant, distinguish, knot_warnings, max_divisibility, FamilyParams,
};
use swtorus::{BraidWord, KnotSpec};

fn knot_from(input: &str) -> Result<KnotSpec, String> {
    let input = input.trim();
    if let Some(entry) = Catalog::builtin().get(input) {
        return Ok(entry.knot_spec());
    }
    let braid = BraidWord::parse(input).map_err(|e| e.to_string())?;
    KnotSpec::from_braid(None, braid).map_err(|e| e.to_string())
}

/// Alexander polynomial of a braid closure. Knots get the one-variable
/// polynomial; every closure also gets the polynomial with the braid axis.
pub fn alexander_json(braid: &str) -> Result<String, String> {
    let braid = BraidWord::parse(braid.trim()).map_err(|e| e.to_string())?;
    let info = closure_info(&braid);
    let axis = alexander_closure_with_axis(&braid);
    let mut out = json!({
        "braid": braid.to_string(),
        "components": info.component_names,
        "axis": axis.to_string(),
    });
    if info.is_knot() {
        let knot = KnotSpec::from_braid(None, braid).map_err(|e| e.to_string())?;
        let alex = alexander_knot(&knot).map_err(|e| e.to_string())?;
        out["knot"] = json!({
            "raw": alex.raw.to_string(),
            "symmetric": alex.symmetric.to_string(),
            "span": alex.span,
            "genus_if_fibred": alex.genus_if_fibred,
            "monic": alex.monic,
        });
    }
    Ok(out.to_string())
}

/// Invariant of the family member with parameters `q`, `n`, with its basic
/// classes as `[a, b, coefficient, divisibility]` rows.
pub fn sw_json(knot: &str, q: u32, n: u32) -> Result<String, String> {
    let knot = knot_from(knot)?;
    let alex = alexander_knot(&knot).map_err(|e| e.to_string())?;
    let params = FamilyParams::new(knot, q, n).map_err(|e| e.to_string())?;
    let sw = checked_invariant(&params).map_err(|e| e.to_string())?;
    let classes: Vec<Value> = basic_classes(&sw)
        .iter()
        .map(|c| {
            json!([
                c.exponents.0,
                c.exponents.1,
                c.coefficient.to_string(),
                c.divisibility
            ])
        })
        .collect();
    Ok(json!({
        "invariant": sw.poly.to_string(),
        "classes": classes,
        "max_divisibility": max_divisibility(&sw).ok(),
        "warnings": knot_warnings(&alex),
    })
    .to_string())
}

/// Verdict for q = 1..=q_max with n = 2g + 1.
pub fn distinguish_json(knot: &str, q_max: u32) -> Result<String, String> {
    if q_max == 0 {
        return Err("q_max must be at least 1".into());
    }
    let knot = knot_from(knot)?;
    let qs: Vec<u32> = (1..=q_max).collect();
    let v = distinguish(&knot, &qs, None).map_err(|e| e.to_string())?;
    Ok(json!({
        "knot": v.knot,
        "n": v.n,
        "rows": v.rows,
        "verdict": v.verdict.as_str(),
        "warnings": v.warnings,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn alexander(braid: &str) -> Result<String, JsValue> {
    alexander_json(braid).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sw_invariant(knot: &str, q: u32, n: u32) -> Result<String, JsValue> {
    sw_json(knot, q, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn distinguish_family(knot: &str, q_max: u32) -> Result<String, JsValue> {
    distinguish_json(knot, q_max).map_err(|e| JsValue::from_str(&e))
}
