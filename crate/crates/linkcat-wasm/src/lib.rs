//! Browser bindings for the linking-diagram library.
//!
//! Everything crosses the JS boundary as strings: linkings in the same
//! JSON format the CLI uses, drawings as SVG text, errors as messages. The
//! string-level functions are plain Rust so they test on any target; the
//! exported wrappers only adapt them to wasm-bindgen.

use wasm_bindgen::prelude::*;

use linkcat::families::{
    default_cap, enumerate_with_cap, membership_report, multiplication_table, FamilyTag,
};
use linkcat::json::{linking_from_json, LinkingRepr};
use linkcat::mll::{dr_correct, Formula};
use linkcat::render::render_svg;
use serde_json::json;

fn compose_impl(first: &str, second: &str, flat: bool) -> Result<String, String> {
    let a = linking_from_json(first).map_err(|e| format!("first linking: {e}"))?;
    let b = linking_from_json(second).map_err(|e| format!("second linking: {e}"))?;
    let pb = a.then(&b).map_err(|e| e.to_string())?;
    let result = if flat {
        pb.linking.flatten()
    } else {
        pb.linking
    };
    let out = json!({
        "linking": LinkingRepr::of_linking(&result),
        "newLoops": pb.new_loops,
        "svg": render_svg(&result),
    });
    Ok(out.to_string())
}

fn render_impl(linking: &str) -> Result<String, String> {
    let linking = linking_from_json(linking).map_err(|e| e.to_string())?;
    Ok(render_svg(&linking))
}

fn enumerate_impl(family: &str, n: usize, with_table: bool) -> Result<String, String> {
    let tag = FamilyTag::parse(family).map_err(|e| e.to_string())?;
    let tag = FamilyTag::new(tag.family, true);
    let elements =
        enumerate_with_cap(tag, n, default_cap(tag.family)).map_err(|e| e.to_string())?;
    let cards: Vec<serde_json::Value> = elements
        .iter()
        .map(|l| {
            json!({
                "linking": LinkingRepr::of_linking(l),
                "svg": render_svg(l),
            })
        })
        .collect();
    let out = if with_table {
        let rows = multiplication_table(&elements).map_err(|e| e.to_string())?;
        json!({ "elements": cards, "table": rows })
    } else {
        json!({ "elements": cards })
    };
    Ok(out.to_string())
}

fn check_impl(linking: &str, family: &str) -> Result<String, String> {
    let tag = FamilyTag::parse(family).map_err(|e| e.to_string())?;
    let linking = linking_from_json(linking).map_err(|e| e.to_string())?;
    let failed = membership_report(&linking, tag);
    Ok(json!({ "member": failed.is_empty(), "failed": failed }).to_string())
}

fn mll_check_impl(formula: &str, axioms: &str) -> Result<String, String> {
    let formula = Formula::parse(formula).map_err(|e| e.to_string())?;
    let pairs = parse_pairs(axioms)?;
    let correct = dr_correct(&formula, &pairs).map_err(|e| e.to_string())?;
    Ok(json!({ "formula": formula.to_string(), "correct": correct }).to_string())
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|chunk| {
            let (i, j) = chunk
                .trim()
                .split_once('-')
                .ok_or_else(|| format!("axiom pair {chunk:?} is not i-j"))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("axiom pair {chunk:?} is not i-j"))
            };
            Ok((parse(i)?, parse(j)?))
        })
        .collect()
}

/// Compose two linking JSON documents; returns JSON with the composite,
/// the number of loops the composition formed, and an SVG drawing.
#[wasm_bindgen]
pub fn compose(first: &str, second: &str, flat: bool) -> Result<String, JsError> {
    compose_impl(first, second, flat).map_err(|e| JsError::new(&e))
}

/// Render a linking JSON document as SVG text.
#[wasm_bindgen]
pub fn render(linking: &str) -> Result<String, JsError> {
    render_impl(linking).map_err(|e| JsError::new(&e))
}

/// Enumerate a diagram monoid; each element comes with its SVG.
#[wasm_bindgen]
pub fn enumerate(family: &str, n: usize, with_table: bool) -> Result<String, JsError> {
    enumerate_impl(family, n, with_table).map_err(|e| JsError::new(&e))
}

/// Family-membership report for a linking JSON document.
#[wasm_bindgen]
pub fn check(linking: &str, family: &str) -> Result<String, JsError> {
    check_impl(linking, family).map_err(|e| JsError::new(&e))
}

/// Correctness of a proof structure given as a formula and axiom pairs.
#[wasm_bindgen]
pub fn mll_check(formula: &str, axioms: &str) -> Result<String, JsError> {
    mll_check_impl(formula, axioms).map_err(|e| JsError::new(&e))
}
