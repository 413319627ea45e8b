use serde::Serialize;

use super::geo::{haversine_km, GeoPoint};
use super::kde::DensityGrid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HotSpot {
    pub center: GeoPoint,
    pub score: f64,
    pub label: String,
}

/// Linear-interpolated percentile of an ascending slice.
fn percentile_of(sorted: &[f64], p: f64) -> f64 {
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

/// Strict local maxima of the grid (against every existing 8-neighbour) whose
/// value reaches the given percentile of the positive cells. Results are
/// sorted by descending score and labelled `H1`, `H2`, ...
pub fn detect_hotspots(grid: &DensityGrid, percentile: f64) -> Result<Vec<HotSpot>> {
    if !(percentile > 0.0 && percentile < 100.0) {
        return Err(Error::config(format!("hotspot percentile {percentile} must lie in (0, 100)")));
    }
    let mut positive: Vec<f64> = grid.values.iter().copied().filter(|v| *v > 0.0).collect();
    if positive.is_empty() {
        return Ok(Vec::new());
    }
    positive.sort_by(f64::total_cmp);
    let threshold = percentile_of(&positive, percentile);

    let mut peaks: Vec<(f64, usize, usize)> = Vec::new();
    for row in 0..grid.nrows {
        for col in 0..grid.ncols {
            let v = grid.get(row, col);
            if v <= 0.0 || v < threshold {
                continue;
            }
            let mut strict = true;
            'scan: for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let (r, c) = (row as i64 + dr, col as i64 + dc);
                    if r < 0 || c < 0 || r >= grid.nrows as i64 || c >= grid.ncols as i64 {
                        continue;
                    }
                    if grid.get(r as usize, c as usize) >= v {
                        strict = false;
                        break 'scan;
                    }
                }
            }
            if strict {
                peaks.push((v, row, col));
            }
        }
    }
    peaks.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    Ok(peaks
        .into_iter()
        .enumerate()
        .map(|(i, (score, row, col))| HotSpot {
            center: grid.cell_center(row, col),
            score,
            label: format!("H{}", i + 1),
        })
        .collect())
}

/// Greedy merge: in descending score order, each hotspot absorbs every weaker
/// one within `radius_m`. A zero radius returns the input unchanged.
pub fn merge_hotspots(hotspots: &[HotSpot], radius_m: f64) -> Result<Vec<HotSpot>> {
    if !(radius_m.is_finite() && radius_m >= 0.0) {
        return Err(Error::config(format!("merge radius {radius_m} m must be non-negative")));
    }
    let mut order: Vec<&HotSpot> = hotspots.iter().collect();
    order.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.label.cmp(&b.label)));
    let mut kept: Vec<HotSpot> = Vec::new();
    for h in order {
        let absorbed = kept
            .iter()
            .any(|k| haversine_km(k.center, h.center) * 1000.0 <= radius_m && radius_m > 0.0);
        if !absorbed {
            kept.push(h.clone());
        }
    }
    Ok(kept)
}
