//! RFC 7946 FeatureCollection output (coordinates in lon, lat order).

use serde_json::{json, Map, Value};

use super::geo::GeoPoint;
use super::hotspot::HotSpot;
use super::kde::DensityGrid;
use super::tour::Tour;
use crate::valuation::ValuationResult;

/// An attraction's location together with its valuation.
#[derive(Debug, Clone, Copy)]
pub struct AttractionFeature<'a> {
    pub name: &'a str,
    pub location: GeoPoint,
    pub result: &'a ValuationResult,
}

#[derive(Debug, Clone, Default)]
pub struct MapLayers<'a> {
    pub attractions: Vec<AttractionFeature<'a>>,
    pub hotspots: &'a [HotSpot],
    pub tour: Option<&'a Tour>,
    pub grid: Option<&'a DensityGrid>,
}

fn coord(p: GeoPoint) -> Value {
    json!([p.lon, p.lat])
}

fn feature(layer: &str, geometry: Value, mut properties: Map<String, Value>) -> Value {
    properties.insert("layer".into(), layer.into());
    json!({ "type": "Feature", "geometry": geometry, "properties": properties })
}

impl MapLayers<'_> {
    pub fn to_geojson(&self) -> Value {
        let mut features = Vec::new();
        for a in &self.attractions {
            let r = a.result;
            let mut props = Map::new();
            props.insert("id".into(), r.attraction_id.clone().into());
            props.insert("name".into(), a.name.into());
            props.insert("ftv_lo".into(), r.ftv.lo().into());
            props.insert("ftv_mode".into(), r.ftv.mode().into());
            props.insert("ftv_hi".into(), r.ftv.hi().into());
            props.insert("crisp".into(), r.crisp.into());
            props.insert("tier".into(), r.tier.map(|t| t.as_str()).into());
            features.push(feature(
                "attraction",
                json!({ "type": "Point", "coordinates": coord(a.location) }),
                props,
            ));
        }
        for h in self.hotspots {
            let mut props = Map::new();
            props.insert("label".into(), h.label.clone().into());
            props.insert("score".into(), h.score.into());
            features.push(feature(
                "hotspot",
                json!({ "type": "Point", "coordinates": coord(h.center) }),
                props,
            ));
        }
        if let Some(t) = self.tour {
            let mut ring: Vec<Value> = t.stops.iter().map(|h| coord(h.center)).collect();
            if let Some(first) = t.stops.first() {
                ring.push(coord(first.center));
            }
            let mut props = Map::new();
            props.insert("stops".into(), t.labels().into());
            props.insert("length_km".into(), t.length_km.into());
            if let Some(d) = t.duration_hours {
                props.insert("duration_hours_min".into(), d.min.into());
                props.insert("duration_hours_avg".into(), d.avg.into());
                props.insert("duration_hours_max".into(), d.max.into());
            }
            features.push(feature(
                "tour",
                json!({ "type": "LineString", "coordinates": ring }),
                props,
            ));
        }
        if let Some(g) = self.grid {
            for row in 0..g.nrows {
                for col in 0..g.ncols {
                    let density = g.get(row, col);
                    if density <= 0.0 {
                        continue;
                    }
                    let [sw, se, ne, nw] = g.cell_corners(row, col);
                    let ring = json!([coord(sw), coord(se), coord(ne), coord(nw), coord(sw)]);
                    let mut props = Map::new();
                    props.insert("row".into(), row.into());
                    props.insert("col".into(), col.into());
                    props.insert("density".into(), density.into());
                    features.push(feature(
                        "density",
                        json!({ "type": "Polygon", "coordinates": [ring] }),
                        props,
                    ));
                }
            }
        }
        json!({ "type": "FeatureCollection", "features": features })
    }
}
