//! Plain-Rust bodies of the exported functions, returning JSON strings.

use serde_json::{json, Value};
use spinc_core::models::{circle_factor, flat_torus_factor, CircleModel, FlatTorusModel};
use spinc_core::oracle::{build_product_dirac, spectrum_of, FlatProductModel};
use spinc_core::rational::{display, parse_rational, to_f64};
use spinc_core::spectra::{assemble_product_spectrum, eta_partial, eta_zero_lattice, symmetry_verdict, FactorSpectralData, Spectrum, Verdict};
use spinc_core::Q;

/// Above this the page would have to draw thousands of bars.
const MAX_CUTOFF: i64 = 12;

fn rational(name: &str, text: &str) -> Result<Q, String> {
    parse_rational(text.trim()).map_err(|e| format!("{name}: {e}"))
}

fn cutoff(text: &str) -> Result<Q, String> {
    let c = rational("cutoff", text)?;
    if c <= Q::from_integer(0) || c > Q::from_integer(MAX_CUTOFF) {
        return Err(format!("cutoff must lie in (0, {MAX_CUTOFF}]"));
    }
    Ok(c)
}

fn bars(spec: &Spectrum) -> Value {
    spec.iter().map(|(l, m)| json!({ "label": l.to_string(), "x": l.value(), "mult": m })).collect()
}

fn verdict(v: &Verdict) -> Value {
    json!({
        "kind": v.kind.as_str(),
        "index": v.index,
        "explanation": v.explanation,
        "witness": v.witness.as_ref().map(|w| json!({ "lambda": w.lambda.to_string(), "b1": w.b1, "b2": w.b2, "defect": w.defect })),
    })
}

/// Spectrum of `T² × S¹` with flat connection parameters, assembled and cross-checked.
pub fn product_spectrum(a1: &str, a2: &str, a3: &str, cutoff_text: &str) -> Result<String, String> {
    let torus = FlatTorusModel { a1: rational("a1", a1)?, a2: rational("a2", a2)? };
    let circle = CircleModel { a: rational("a3", a3)? };
    let c = cutoff(cutoff_text)?;
    let f1 = flat_torus_factor(&torus, c).map_err(|e| e.to_string())?;
    let f2 = circle_factor(&circle, c).map_err(|e| e.to_string())?;
    let spec = assemble_product_spectrum(&f1, &f2, c).map_err(|e| e.to_string())?;
    let v = symmetry_verdict(&f1, &f2).map_err(|e| e.to_string())?;
    let oracle = build_product_dirac(&FlatProductModel { torus, circle, cutoff: c })
        .and_then(|blocks| spectrum_of(&blocks, c))
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "cutoff": display(&c),
        "bars": bars(&spec),
        "total": spec.total_multiplicity(),
        "symmetric": spec.is_symmetric(),
        "verdict": verdict(&v),
        "oracle_match": oracle == spec,
    })
    .to_string())
}

/// Even factor with the untwisted torus spectrum but declared harmonic counts `(a1, a2)`,
/// crossed with the circle `{n + a}`.
pub fn verdict_explorer(a1: u32, a2: u32, a: &str, cutoff_text: &str) -> Result<String, String> {
    let c = cutoff(cutoff_text)?;
    let base = flat_torus_factor(&FlatTorusModel { a1: Q::from_integer(0), a2: Q::from_integer(0) }, c).map_err(|e| e.to_string())?;
    let f1 = FactorSpectralData::even(1, base.spectrum, a1.into(), a2.into()).map_err(|e| e.to_string())?;
    let f2 = circle_factor(&CircleModel { a: rational("a", a)? }, c).map_err(|e| e.to_string())?;
    let spec = assemble_product_spectrum(&f1, &f2, c).map_err(|e| e.to_string())?;
    let v = symmetry_verdict(&f1, &f2).map_err(|e| e.to_string())?;
    let defects: Vec<Value> = spec
        .iter()
        .filter(|(l, _)| l.sign() > 0)
        .filter_map(|(l, m)| {
            let d = m as i64 - spec.multiplicity(&-*l).ok()? as i64;
            (d != 0).then(|| json!({ "label": l.to_string(), "x": l.value(), "defect": d }))
        })
        .collect();
    Ok(json!({
        "bars": bars(&spec),
        "symmetric": spec.is_symmetric(),
        "odd_symmetric": f2.known_symmetric,
        "verdict": verdict(&v),
        "defects": defects,
    })
    .to_string())
}

/// `η(0) = 1 - 2â` together with partial sums at `s` over a grid of holonomies in `[0, 1)`.
pub fn circle_eta(s: f64, cutoff_text: &str, samples: u32) -> Result<String, String> {
    let c = rational("cutoff", cutoff_text)?;
    if c <= Q::from_integer(0) || c > Q::from_integer(10_000) {
        return Err("cutoff must lie in (0, 10000]".into());
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err("s must be positive".into());
    }
    let samples = samples.clamp(2, 400) as i64;
    let mut points = Vec::with_capacity(samples as usize);
    for k in 0..samples {
        let a = Q::new(k, samples);
        let spec = circle_factor(&CircleModel { a }, c).map_err(|e| e.to_string())?.spectrum;
        points.push(json!({ "a": to_f64(&a), "eta_zero": to_f64(&eta_zero_lattice(a)), "eta_s": eta_partial(&spec, s) }));
    }
    Ok(json!({ "s": s, "cutoff": display(&c), "points": points }).to_string())
}
