//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use lclass_core::charclass::{lclass_ci, signature_ci, signature_poly, CompleteIntersectionSpec};
use lclass_core::exactq::rational::to_text;
use lclass_core::singularities::{
    bp_spectral_pairs, contribution, link_cohomology, sector_table, BpSpec,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_list(text: &str) -> Result<Vec<u32>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| format!("not a natural number: {s:?}")))
        .collect()
}

/// L-class coefficients and signature of a complete intersection of dimension 2m.
pub fn lclass_json(m: u32, degrees: &str) -> Result<String, String> {
    if m > 40 {
        return Err("m is capped at 40 in the demo".into());
    }
    let spec = CompleteIntersectionSpec::new(m, parse_list(degrees)?).map_err(|e| e.to_string())?;
    let l = lclass_ci(&spec);
    let sig = signature_ci(&spec).map_err(|e| e.to_string())?;
    Ok(json!({
        "m": m,
        "degrees": spec.degrees,
        "coefficients": l.to_text(),
        "signature": sig.to_string(),
    })
    .to_string())
}

/// Signature polynomial of a hypersurface of dimension 2m and its values for d = 1..=d_max.
pub fn signature_poly_json(m: u32, d_max: u32) -> Result<String, String> {
    if m == 0 || m > 12 {
        return Err("m must be in 1..=12".into());
    }
    if d_max == 0 || d_max > 200 {
        return Err("d_max must be in 1..=200".into());
    }
    let p = signature_poly(m, 1).map_err(|e| e.to_string())?;
    let values: Vec<Value> = (1..=d_max)
        .map(|d| json!({"d": d, "signature": to_text(&p.eval_integers(&[d as i64]))}))
        .collect();
    Ok(json!({"m": m, "polynomial": p.to_string(), "values": values}).to_string())
}

/// Spectral pairs, primitive sector dimensions and link data of a Brieskorn-Pham germ.
pub fn spectrum_json(exponents: &str) -> Result<String, String> {
    let exps = parse_list(exponents)?;
    if exps.len() > 8 || exps.iter().any(|&a| a > 30) {
        return Err("at most 8 exponents, each at most 30".into());
    }
    let spec = BpSpec::new(exps).map_err(|e| e.to_string())?;
    let set = bp_spectral_pairs(&spec);
    let table = sector_table(&set);
    let c = contribution(&set);
    let pairs: Vec<Value> = set
        .pairs()
        .map(|p| json!({"alpha": to_text(&p.alpha), "weight": p.weight, "mult": p.mult}))
        .collect();
    let sigmas: Vec<Value> = c
        .sigmas
        .entries()
        .map(|(j, (s1, sne1))| json!({"j": j, "sigma_1": s1, "sigma_ne1": sne1}))
        .collect();
    let link: Vec<Value> = link_cohomology(&table)
        .iter()
        .flat_map(|(w, levels)| levels.iter().map(move |(p, v)| json!({"w": w, "p": p, "dim": v})))
        .collect();
    Ok(json!({
        "label": spec.label(),
        "n": set.dim(),
        "milnor_number": set.milnor_number(),
        "pairs": pairs,
        "sigmas": sigmas,
        "link_cohomology": link,
        "sigma_tilde": c.sigma_tilde,
        "constant_minus_ic": c.constant_minus_ic,
        "smooth_minus_constant": c.smooth_minus_constant,
        "smooth_minus_ic": c.smooth_minus_ic,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn lclass(m: u32, degrees: &str) -> Result<String, JsError> {
    lclass_json(m, degrees).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = signaturePoly)]
pub fn signature_poly_values(m: u32, d_max: u32) -> Result<String, JsError> {
    signature_poly_json(m, d_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spectrum(exponents: &str) -> Result<String, JsError> {
    spectrum_json(exponents).map_err(|e| JsError::new(&e))
}
