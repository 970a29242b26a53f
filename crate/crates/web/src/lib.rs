//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and returns a JSON string, so the page
//! needs no generated types. The `*_json` functions hold the logic and are
//! callable from native tests.

use serde_json::{json, Value};
use shuffle_square::arcs::ArcLayout;
use shuffle_square::encoding::Encoding;
use shuffle_square::partition::{self, PartitionInstance};
use shuffle_square::reduction::{build_reduction, synthesize_witness};
use shuffle_square::shuffle::shuffle_witness;
use shuffle_square::square::{is_square, Decision, SquareOptions};
use shuffle_square::{Side, Word};
use wasm_bindgen::prelude::*;

/// Longest reduction string the page will build.
pub const MAX_REDUCTION_VALUES: usize = 9;

fn encoding(tokens: bool) -> Encoding {
    if tokens {
        Encoding::Tokens
    } else {
        Encoding::Compact
    }
}

fn render(enc: Encoding, w: &Word) -> String {
    enc.encode(w).unwrap_or_else(|_| w.to_string())
}

fn labels(enc: Encoding, w: &Word) -> Vec<String> {
    w.syms()
        .iter()
        .map(|&s| render(enc, &w.with_syms(vec![s])))
        .collect()
}

/// Decides whether `w` is a square; a yes carries `u`, the matching, and its SVG arc diagram.
pub fn square_json(w: &str, tokens: bool, budget: usize) -> Result<Value, String> {
    let enc = encoding(tokens);
    let w = enc.decode(w).map_err(|e| e.to_string())?;
    let opts = SquareOptions {
        budget,
        ..SquareOptions::default()
    };
    let verdict = is_square(w.syms(), opts).map_err(|e| e.to_string())?;
    let decision = match verdict.decision {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    };
    let mut out = json!({"decision": decision, "method": verdict.method.name(), "length": w.len()});
    if let Some((u, m)) = &verdict.witness {
        let layout = ArcLayout::new(&labels(enc, &w), m).map_err(|v| v.to_string())?;
        out["u"] = json!(render(enc, &w.with_syms(u.clone())));
        out["matching"] = json!(m.pairs());
        out["svg"] = json!(layout.svg());
    }
    Ok(out)
}

/// Tests whether `w` interleaves `u` and `v`; a yes carries the 1/2 copy labels.
pub fn shuffle_json(u: &str, v: &str, w: &str, tokens: bool) -> Result<Value, String> {
    let words = encoding(tokens)
        .decode_all(&[u, v, w])
        .map_err(|e| e.to_string())?;
    let (u, v, w) = (&words[0], &words[1], &words[2]);
    Ok(match shuffle_witness(u.syms(), v.syms(), w.syms()) {
        Some(wit) => json!({
            "shuffle": true,
            "labels": wit.numeric_labels(),
            "first": wit.labels.iter().enumerate().filter(|(_, &s)| s == Side::First).map(|(i, _)| i).collect::<Vec<_>>(),
        }),
        None => json!({"shuffle": false}),
    })
}

/// Builds the reduction string for a 3-Partition instance given as whitespace or comma separated values.
pub fn reduce_json(values: &str) -> Result<Value, String> {
    let inst = PartitionInstance::parse(values).map_err(|e| e.to_string())?;
    if inst.len() > MAX_REDUCTION_VALUES {
        return Err(format!(
            "at most {MAX_REDUCTION_VALUES} values in the browser"
        ));
    }
    let built = build_reduction(&inst);
    let word = render(Encoding::Compact, &built.word);
    let spans: Vec<Value> = built
        .spans
        .iter()
        .map(|s| json!({"name": s.name, "start": s.start, "end": s.end}))
        .collect();
    let mut out = json!({
        "values": inst.values,
        "m": inst.m,
        "B": inst.target,
        "within_bounds": inst.within_bounds,
        "length": built.word.len(),
        "word": word,
        "spans": spans,
    });
    match partition::solve(&inst).map_err(|e| e.to_string())? {
        Some(sol) => {
            let trace = synthesize_witness(&inst, &sol).map_err(|e| e.to_string())?;
            out["solvable"] = json!(true);
            out["groups"] = json!(sol.group_values(&inst));
            out["witness_steps"] = json!(trace.steps.len());
            out["witness_replays"] = json!(trace.accepts(built.word.syms()));
        }
        None => out["solvable"] = json!(false),
    }
    Ok(out)
}

fn export(result: Result<Value, String>) -> Result<String, JsValue> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = squareCheck)]
pub fn square_check(w: &str, tokens: bool, budget: u32) -> Result<String, JsValue> {
    export(square_json(w, tokens, budget as usize))
}

#[wasm_bindgen(js_name = shuffleCheck)]
pub fn shuffle_check(u: &str, v: &str, w: &str, tokens: bool) -> Result<String, JsValue> {
    export(shuffle_json(u, v, w, tokens))
}

#[wasm_bindgen(js_name = reduceInstance)]
pub fn reduce_instance(values: &str) -> Result<String, JsValue> {
    export(reduce_json(values))
}
