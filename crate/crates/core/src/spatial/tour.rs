use serde::Serialize;

use super::geo::haversine_km;
use super::hotspot::HotSpot;
use crate::error::{Error, Result};

/// Largest stop count solved exactly (Held-Karp is O(2^n n^2)).
pub const MAX_TOUR_STOPS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DurationEstimate {
    pub min: f64,
    pub avg: f64,
    pub max: f64,
}

/// Closed circuit over hotspots; `stops[0]` is the start and the walk
/// returns to it after the last stop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tour {
    pub stops: Vec<HotSpot>,
    pub length_km: f64,
    pub duration_hours: Option<DurationEstimate>,
}

impl Tour {
    pub fn labels(&self) -> Vec<&str> {
        self.stops.iter().map(|h| h.label.as_str()).collect()
    }

    /// Recomputes the circuit length by walking the stops in order.
    pub fn walked_length_km(&self) -> f64 {
        let n = self.stops.len();
        if n < 2 {
            return 0.0;
        }
        (0..n)
            .map(|i| haversine_km(self.stops[i].center, self.stops[(i + 1) % n].center))
            .sum()
    }

    pub fn with_duration(mut self, walk_speed_kmh: f64, dwell_minutes: [f64; 3]) -> Result<Self> {
        let d = estimate_duration(self.length_km, walk_speed_kmh, dwell_minutes, self.stops.len())?;
        self.duration_hours = Some(d);
        Ok(self)
    }
}

/// Shortest closed circuit visiting every hotspot once, by dynamic
/// programming over subsets. Distances are great-circle (haversine).
///
/// `start` names the label of the first stop; the first hotspot is used when
/// omitted. Among the two orientations of the optimal circuit, the one whose
/// label sequence is lexicographically smaller is returned.
pub fn plan_tour(hotspots: &[HotSpot], start: Option<&str>) -> Result<Tour> {
    let n = hotspots.len();
    if n == 0 {
        return Err(Error::domain("cannot plan a tour over zero hotspots"));
    }
    if n > MAX_TOUR_STOPS {
        return Err(Error::domain(format!(
            "{n} hotspots exceed the exact-tour limit of {MAX_TOUR_STOPS}; merge or pre-cluster them first"
        )));
    }
    let s = match start {
        None => 0,
        Some(label) => hotspots
            .iter()
            .position(|h| h.label == label)
            .ok_or_else(|| Error::domain(format!("start hotspot `{label}` not found")))?,
    };
    if n == 1 {
        return Ok(Tour {
            stops: vec![hotspots[0].clone()],
            length_km: 0.0,
            duration_hours: None,
        });
    }

    let dist: Vec<Vec<f64>> = hotspots
        .iter()
        .map(|a| hotspots.iter().map(|b| haversine_km(a.center, b.center)).collect())
        .collect();
    let others: Vec<usize> = (0..n).filter(|&i| i != s).collect();
    let m = others.len();
    let full = (1usize << m) - 1;
    let mut cost = vec![vec![f64::INFINITY; m]; 1 << m];
    let mut parent = vec![vec![usize::MAX; m]; 1 << m];
    for (j, &o) in others.iter().enumerate() {
        cost[1 << j][j] = dist[s][o];
    }
    for mask in 1..=full {
        for j in 0..m {
            if mask & (1 << j) == 0 || !cost[mask][j].is_finite() {
                continue;
            }
            let base = cost[mask][j];
            for k in 0..m {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = mask | (1 << k);
                let c = base + dist[others[j]][others[k]];
                if c < cost[next][k] {
                    cost[next][k] = c;
                    parent[next][k] = j;
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut last = 0;
    for j in 0..m {
        let c = cost[full][j] + dist[others[j]][s];
        if c < best {
            best = c;
            last = j;
        }
    }

    let mut path = Vec::with_capacity(m);
    let (mut mask, mut j) = (full, last);
    while j != usize::MAX {
        path.push(others[j]);
        let p = parent[mask][j];
        mask &= !(1 << j);
        j = p;
    }
    path.reverse();

    let forward: Vec<usize> = std::iter::once(s).chain(path.iter().copied()).collect();
    let backward: Vec<usize> = std::iter::once(s).chain(path.iter().rev().copied()).collect();
    let labels = |order: &[usize]| -> Vec<&str> { order.iter().map(|&i| hotspots[i].label.as_str()).collect() };
    let order = if labels(&backward) < labels(&forward) {
        backward
    } else {
        forward
    };
    Ok(Tour {
        stops: order.into_iter().map(|i| hotspots[i].clone()).collect(),
        length_km: best,
        duration_hours: None,
    })
}

/// Walking time plus dwell time per stop, for the minimum, average and
/// maximum dwell: `length / speed + stops * dwell / 60` hours.
pub fn estimate_duration(
    length_km: f64,
    walk_speed_kmh: f64,
    dwell_minutes: [f64; 3],
    stops: usize,
) -> Result<DurationEstimate> {
    if !(walk_speed_kmh.is_finite() && walk_speed_kmh > 0.0) {
        return Err(Error::config(format!("walking speed {walk_speed_kmh} km/h must be positive")));
    }
    if !(length_km.is_finite() && length_km >= 0.0) {
        return Err(Error::domain(format!("tour length {length_km} km must be non-negative")));
    }
    let [lo, avg, hi] = dwell_minutes;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= avg && avg <= hi) {
        return Err(Error::config(format!(
            "dwell minutes {dwell_minutes:?} must be non-negative and ordered min <= avg <= max"
        )));
    }
    let walk = length_km / walk_speed_kmh;
    let at = |dwell: f64| walk + stops as f64 * dwell / 60.0;
    Ok(DurationEstimate {
        min: at(lo),
        avg: at(avg),
        max: at(hi),
    })
}
