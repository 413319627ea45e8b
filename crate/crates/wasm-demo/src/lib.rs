//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string: either the result object or `{"error": "..."}`.

use std::collections::BTreeMap;

use ftv_core::reference;
use ftv_core::spatial::{detect_hotspots, kde_heatmap, merge_hotspots, plan_tour, GeoPoint, LocalProjection, ScoredPoint};
use ftv_core::{
    compute_ftv_with, rescale_tfn, AttractionEvaluation, Defuzzifier, FactorCatalogue, FactorDefinition, RangePolicy,
    SourceRange, TargetRange, Tfn, TierThresholds, ValuationResult,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Outcome = Result<Value, String>;

fn finish(r: Outcome) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Membership samples of `t` over its support, for plotting.
fn curve(t: &Tfn, samples: usize) -> Vec<[f64; 2]> {
    if t.lo() == t.hi() {
        return vec![[t.lo(), 0.0], [t.lo(), 1.0], [t.lo(), 0.0]];
    }
    (0..=samples)
        .map(|i| {
            let x = t.lo() + (t.hi() - t.lo()) * i as f64 / samples as f64;
            [x, t.membership(x)]
        })
        .collect()
}

fn describe(t: &Tfn, alpha: f64) -> Outcome {
    let cut = t.alpha_cut(alpha).map_err(err)?;
    Ok(json!({
        "tfn": t.components(),
        "centroid": t.centroid(),
        "alpha_cut": [cut.low, cut.high],
        "curve": curve(t, 64),
    }))
}

pub fn rescale_json(tfn: [f64; 3], src: [f64; 2], tgt: [f64; 2], alpha: f64) -> Outcome {
    let t = Tfn::new(tfn[0], tfn[1], tfn[2]).map_err(err)?;
    let src = SourceRange::new(src[0], src[1]).map_err(err)?;
    let tgt = TargetRange::new(tgt[0], tgt[1]).map_err(err)?;
    let out = rescale_tfn(&t, src, tgt).map_err(err)?;
    Ok(json!({ "source": describe(&t, alpha)?, "target": describe(&out, alpha)? }))
}

/// Fuzzy rescaling of one score: input and output triangles with their
/// alpha-cuts at `alpha`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn rescale(lo: f64, mode: f64, hi: f64, x: f64, y: f64, m: f64, big_m: f64, alpha: f64) -> String {
    finish(rescale_json([lo, mode, hi], [x, y], [m, big_m], alpha))
}

pub fn published_json(m: f64, big_m: f64, clamp: bool, method: &str) -> Outcome {
    let target = TargetRange::new(m, big_m).map_err(err)?;
    let method: Defuzzifier = method.parse().map_err(err)?;
    let policy = if clamp { RangePolicy::Clamp } else { RangePolicy::Strict };
    let rows = reference::published_catalogue().map_err(err)?;
    let defs = rows
        .iter()
        .map(|(id, name, x, y, w, _)| FactorDefinition::new(id.as_str(), name.as_str(), SourceRange::new(*x, *y)?, *w))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let cat = FactorCatalogue::new(defs, target).map_err(err)?;
    let scores: BTreeMap<String, Tfn> = rows.iter().map(|r| (r.0.clone(), r.5)).collect();
    let ftv = compute_ftv_with(&AttractionEvaluation::new("mean scores", scores), &cat, policy).map_err(err)?;
    let tiers = TierThresholds::for_target(target);
    let result = ValuationResult::new("mean scores", ftv, method, tiers.as_ref()).map_err(err)?;
    let factors: Vec<Value> = rows
        .iter()
        .map(|(id, name, x, y, w, score)| json!({ "id": id, "name": name, "range": [x, y], "weight": w, "score": score.components() }))
        .collect();
    Ok(json!({
        "ftv": ftv.components(),
        "crisp": result.crisp,
        "tier": result.tier.map(|t| t.as_str()),
        "weight_sum": cat.weight_sum(),
        "factors": factors,
    }))
}

/// Valuation of the published mean expert scores as one attraction.
#[wasm_bindgen]
pub fn published_ftv(m: f64, big_m: f64, clamp: bool, method: &str) -> String {
    finish(published_json(m, big_m, clamp, method))
}

/// Demo map frame: points arrive as metres east/north of this origin.
fn demo_frame() -> LocalProjection {
    LocalProjection::new(GeoPoint { lon: -75.8295, lat: 20.0208 })
}

pub fn heatmap_json(points: &[[f64; 3]], bandwidth_m: f64, cell_m: f64, percentile: f64) -> Outcome {
    let frame = demo_frame();
    let scored = points
        .iter()
        .map(|p| ScoredPoint::new(frame.inverse(p[0], p[1]), p[2]))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let grid = kde_heatmap(&scored, bandwidth_m, cell_m).map_err(err)?;
    let hotspots = merge_hotspots(&detect_hotspots(&grid, percentile).map_err(err)?, 0.0).map_err(err)?;
    let to_xy = |g: GeoPoint| {
        let (x, y) = frame.forward(g);
        [x, y]
    };
    let cells: Vec<[f64; 3]> = (0..grid.nrows)
        .flat_map(|r| (0..grid.ncols).map(move |c| (r, c)))
        .filter(|&(r, c)| grid.get(r, c) > 0.0)
        .map(|(r, c)| {
            let [x, y] = to_xy(grid.cell_center(r, c));
            [x, y, grid.get(r, c)]
        })
        .collect();
    let spots: Vec<Value> = hotspots
        .iter()
        .map(|h| json!({ "label": h.label, "xy": to_xy(h.center), "score": h.score }))
        .collect();
    let tour = if hotspots.is_empty() || hotspots.len() > ftv_core::spatial::MAX_TOUR_STOPS {
        Value::Null
    } else {
        let t = plan_tour(&hotspots, None).map_err(err)?;
        json!({ "labels": t.labels(), "length_km": t.length_km })
    };
    Ok(json!({
        "cell_m": grid.cell_m,
        "max": grid.max_value(),
        "cells": cells,
        "hotspots": spots,
        "tour": tour,
    }))
}

/// Heatmap, hot spots and tour for `points`, a JSON array of
/// `[x_m, y_m, weight]` triples in the demo frame.
#[wasm_bindgen]
pub fn heatmap(points: &str, bandwidth_m: f64, cell_m: f64, percentile: f64) -> String {
    let parsed: Result<Vec<[f64; 3]>, String> = serde_json::from_str(points).map_err(err);
    finish(parsed.and_then(|p| heatmap_json(&p, bandwidth_m, cell_m, percentile)))
}
