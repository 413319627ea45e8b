use serde::Serialize;

use super::geo::{GeoPoint, LocalProjection};
use crate::error::{Error, Result};

/// Upper bound on grid cells, guarding against a tiny cell size over a wide extent.
const MAX_CELLS: usize = 16_000_000;

/// A located point carrying a non-negative weight (usually a defuzzified FTV).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoredPoint {
    pub point: GeoPoint,
    pub weight: f64,
}

impl ScoredPoint {
    pub fn new(point: GeoPoint, weight: f64) -> Result<Self> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::domain(format!("point weight {weight} must be finite and non-negative")));
        }
        Ok(ScoredPoint { point, weight })
    }
}

/// Quartic (biweight) kernel `15/16 (1 - u^2)^2` on `|u| < 1`.
pub fn quartic_kernel(u: f64) -> f64 {
    if u.abs() < 1.0 {
        let s = 1.0 - u * u;
        15.0 / 16.0 * s * s
    } else {
        0.0
    }
}

/// Regular grid in local metres. Row 0 is the southern edge; `values` is row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub projection: LocalProjection,
    /// South-west corner, metres east/north of the projection origin.
    pub origin_x: f64,
    pub origin_y: f64,
    pub cell_m: f64,
    pub ncols: usize,
    pub nrows: usize,
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.ncols + col]
    }

    pub fn cell_center_m(&self, row: usize, col: usize) -> (f64, f64) {
        (
            self.origin_x + (col as f64 + 0.5) * self.cell_m,
            self.origin_y + (row as f64 + 0.5) * self.cell_m,
        )
    }

    pub fn cell_center(&self, row: usize, col: usize) -> GeoPoint {
        let (x, y) = self.cell_center_m(row, col);
        self.projection.inverse(x, y)
    }

    /// Corner coordinates `[sw, se, ne, nw]` of a cell.
    pub fn cell_corners(&self, row: usize, col: usize) -> [GeoPoint; 4] {
        let x0 = self.origin_x + col as f64 * self.cell_m;
        let y0 = self.origin_y + row as f64 * self.cell_m;
        let (x1, y1) = (x0 + self.cell_m, y0 + self.cell_m);
        [(x0, y0), (x1, y0), (x1, y1), (x0, y1)].map(|(x, y)| self.projection.inverse(x, y))
    }

    /// Cell containing a point, if inside the grid.
    pub fn locate(&self, p: GeoPoint) -> Option<(usize, usize)> {
        let (x, y) = self.projection.forward(p);
        let col = ((x - self.origin_x) / self.cell_m).floor();
        let row = ((y - self.origin_y) / self.cell_m).floor();
        if col < 0.0 || row < 0.0 || col >= self.ncols as f64 || row >= self.nrows as f64 {
            return None;
        }
        Some((row as usize, col as usize))
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn odd_cells(extent: f64, cell: f64) -> usize {
    let n = ((extent / cell).ceil() as usize).max(1);
    // Odd counts put the centre of the extent on a cell centre.
    if n.is_multiple_of(2) {
        n + 1
    } else {
        n
    }
}

/// Weighted kernel density surface: each cell holds
/// `sum_i weight_i * K(d_i / bandwidth)` with `K` the quartic kernel and `d_i`
/// the distance from the cell centre to point `i`. The grid spans the points'
/// bounding box padded by one bandwidth.
pub fn kde_heatmap(points: &[ScoredPoint], bandwidth_m: f64, cell_m: f64) -> Result<DensityGrid> {
    if !(bandwidth_m.is_finite() && bandwidth_m > 0.0) {
        return Err(Error::config(format!("bandwidth {bandwidth_m} m must be positive")));
    }
    if !(cell_m.is_finite() && cell_m > 0.0) {
        return Err(Error::config(format!("cell size {cell_m} m must be positive")));
    }
    if points.is_empty() {
        return Ok(DensityGrid {
            projection: LocalProjection::new(GeoPoint { lon: 0.0, lat: 0.0 }),
            origin_x: -cell_m / 2.0,
            origin_y: -cell_m / 2.0,
            cell_m,
            ncols: 1,
            nrows: 1,
            values: vec![0.0],
        });
    }

    let locations: Vec<GeoPoint> = points.iter().map(|p| p.point).collect();
    let projection = LocalProjection::centred_on(&locations);
    let xy: Vec<(f64, f64)> = locations.iter().map(|p| projection.forward(*p)).collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &xy {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let ncols = odd_cells(max_x - min_x + 2.0 * bandwidth_m, cell_m);
    let nrows = odd_cells(max_y - min_y + 2.0 * bandwidth_m, cell_m);
    if ncols.saturating_mul(nrows) > MAX_CELLS {
        return Err(Error::config(format!(
            "density grid of {ncols}x{nrows} cells is too large; increase the cell size"
        )));
    }
    let origin_x = (min_x + max_x) / 2.0 - ncols as f64 * cell_m / 2.0;
    let origin_y = (min_y + max_y) / 2.0 - nrows as f64 * cell_m / 2.0;
    let mut grid = DensityGrid {
        projection,
        origin_x,
        origin_y,
        cell_m,
        ncols,
        nrows,
        values: vec![0.0; ncols * nrows],
    };

    let reach = |v: f64, origin: f64, n: usize| -> (usize, usize) {
        let lo = ((v - bandwidth_m - origin) / cell_m).floor().max(0.0) as usize;
        let hi = (((v + bandwidth_m - origin) / cell_m).ceil().max(0.0) as usize).min(n);
        (lo.min(n), hi)
    };
    for (sp, &(px, py)) in points.iter().zip(&xy) {
        if sp.weight == 0.0 {
            continue;
        }
        let (c0, c1) = reach(px, origin_x, ncols);
        let (r0, r1) = reach(py, origin_y, nrows);
        for row in r0..r1 {
            for col in c0..c1 {
                let (cx, cy) = grid.cell_center_m(row, col);
                let d = (cx - px).hypot(cy - py);
                let k = quartic_kernel(d / bandwidth_m);
                if k > 0.0 {
                    grid.values[row * ncols + col] += sp.weight * k;
                }
            }
        }
    }
    Ok(grid)
}
