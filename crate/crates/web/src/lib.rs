//! WebAssembly front end for the demo page in `www/`.
//!
//! Each export is a thin wrapper around a plain function returning
//! `Result<String, String>`, so the logic is testable natively; results are
//! JSON strings the page parses.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use updyn_core::certify::{certify_unpredictable, ReturnMode, DEFAULT_HORIZON};
use updyn_core::conjugacy::{Interval, LogisticSystem};
use updyn_core::star;
use updyn_core::symbolic::{FiniteWord, Kind, Sequence};

/// Longest window the page may request.
pub const MAX_WINDOW: u32 = 4096;
/// Minimal-mode searches stay fast below this depth.
pub const MAX_MINIMAL_DEPTH: u32 = 10;
pub const MAX_CANONICAL_DEPTH: u32 = 40;
pub const MAX_WORD_LEN: usize = 24;

type Res = Result<String, String>;

fn kind_of(bi: bool) -> Kind {
    if bi {
        Kind::BiInfinite
    } else {
        Kind::OneSided
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// `count` symbols of `s*` from index `start` (a decimal integer, any size).
pub fn window_json(bi: bool, start: &str, count: u32) -> Res {
    if count == 0 || count > MAX_WINDOW {
        return Err(format!("count must be in 1..={MAX_WINDOW}"));
    }
    let start = BigInt::from_str(start.trim()).map_err(|_| format!("bad index {start:?}"))?;
    let s = star::star(kind_of(bi));
    let view = s.shift(&start).map_err(err)?;
    let word = view.window(0, count as usize).map_err(err)?;
    Ok(json!({ "start": start.to_string(), "symbols": word.to_string() }).to_string())
}

/// Unpredictability certificate of `s*` with entries `1..=depth`.
pub fn certificate_json(bi: bool, depth: u32, canonical: bool) -> Res {
    let (mode, cap) = if canonical {
        (ReturnMode::Canonical, MAX_CANONICAL_DEPTH)
    } else {
        (ReturnMode::Minimal, MAX_MINIMAL_DEPTH)
    };
    if depth == 0 || depth > cap {
        return Err(format!(
            "depth must be in 1..={cap} for {} times",
            mode.name()
        ));
    }
    let s = star::star(kind_of(bi));
    let cert = certify_unpredictable(&s, depth as u64, mode, DEFAULT_HORIZON).map_err(err)?;
    let rows: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "n": e.n,
                "t": e.t.to_string(),
                "log2_t": e.t.bits(),
                "tau": e.tau.to_string(),
                "bound": e.proximity_bound.to_string(),
                "bound_approx": e.proximity_bound.to_f64(),
                "separated": e.separation_verified,
            })
        })
        .collect();
    Ok(json!({ "mode": mode.name(), "entries": rows }).to_string())
}

fn interval_value(i: &Interval) -> Value {
    let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
    json!({
        "lo": i.lo().to_string(),
        "hi": i.hi().to_string(),
        "lo_approx": f(i.lo()),
        "hi_approx": f(i.hi()),
        "width_approx": f(&i.width()),
    })
}

/// Outer enclosures of the logistic cylinders of every prefix of `word`,
/// plus the inner box for the full word.
pub fn cylinders_json(mu: &str, word: &str) -> Res {
    let mu = BigRational::from_str(mu.trim()).map_err(|_| format!("bad μ {mu:?}, use p/q"))?;
    let word = FiniteWord::from_str(word.trim()).map_err(err)?;
    if word.len() > MAX_WORD_LEN {
        return Err(format!("words are limited to {MAX_WORD_LEN} symbols"));
    }
    let sys = LogisticSystem::new(mu).map_err(err)?;
    let mut nested = Vec::with_capacity(word.len());
    for k in 1..=word.len() {
        let prefix = word.prefix(k);
        let hull = sys.cylinder_hull(&prefix).map_err(err)?;
        nested.push(json!({ "prefix": prefix.to_string(), "hull": interval_value(&hull) }));
    }
    let inner = sys.point_for(&word).map_err(err)?;
    Ok(json!({ "cylinders": nested, "point": interval_value(&inner) }).to_string())
}

fn js(r: Res) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn star_window(bi_infinite: bool, start: &str, count: u32) -> Result<String, JsValue> {
    js(window_json(bi_infinite, start, count))
}

#[wasm_bindgen]
pub fn certificate(bi_infinite: bool, depth: u32, canonical: bool) -> Result<String, JsValue> {
    js(certificate_json(bi_infinite, depth, canonical))
}

#[wasm_bindgen]
pub fn logistic_cylinders(mu: &str, word: &str) -> Result<String, JsValue> {
    js(cylinders_json(mu, word))
}
