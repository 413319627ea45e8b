//! Geospatial post-processing of valuation results: weighted density
//! heatmaps, hotspot detection, and a shortest closed walking circuit over
//! the hotspots.

mod geo;
mod geojson;
mod hotspot;
mod kde;
mod tour;

pub use geo::{haversine_km, GeoPoint, LocalProjection, EARTH_RADIUS_KM};
pub use geojson::{AttractionFeature, MapLayers};
pub use hotspot::{detect_hotspots, merge_hotspots, HotSpot};
pub use kde::{kde_heatmap, quartic_kernel, DensityGrid, ScoredPoint};
pub use tour::{estimate_duration, plan_tour, DurationEstimate, Tour, MAX_TOUR_STOPS};
