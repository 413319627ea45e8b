use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean Earth radius (IUGG), kilometres.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// WGS84 longitude/latitude in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lon: f64,
    pub lat: f64,
}

impl GeoPoint {
    pub fn new(lon: f64, lat: f64) -> Result<Self> {
        if !(lon.is_finite() && (-180.0..=180.0).contains(&lon)) {
            return Err(Error::domain(format!("longitude {lon} is outside [-180, 180]")));
        }
        if !(lat.is_finite() && (-90.0..=90.0).contains(&lat)) {
            return Err(Error::domain(format!("latitude {lat} is outside [-90, 90]")));
        }
        Ok(GeoPoint { lon, lat })
    }
}

/// Great-circle distance in kilometres.
pub fn haversine_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let (lat1, lat2) = (a.lat.to_radians(), b.lat.to_radians());
    let dlat = lat2 - lat1;
    let dlon = (b.lon - a.lon).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// Equirectangular projection to metres around a reference point. Accurate
/// enough for city-scale extents (a few kilometres).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalProjection {
    pub origin: GeoPoint,
    cos_lat: f64,
}

impl LocalProjection {
    pub fn new(origin: GeoPoint) -> Self {
        LocalProjection {
            origin,
            cos_lat: origin.lat.to_radians().cos(),
        }
    }

    /// Projection centred on the arithmetic mean of the points.
    pub fn centred_on(points: &[GeoPoint]) -> Self {
        if points.is_empty() {
            return LocalProjection::new(GeoPoint { lon: 0.0, lat: 0.0 });
        }
        let n = points.len() as f64;
        let lon = points.iter().map(|p| p.lon).sum::<f64>() / n;
        let lat = points.iter().map(|p| p.lat).sum::<f64>() / n;
        LocalProjection::new(GeoPoint { lon, lat })
    }

    fn metres_per_degree() -> f64 {
        EARTH_RADIUS_KM * 1000.0 * std::f64::consts::PI / 180.0
    }

    pub fn forward(&self, p: GeoPoint) -> (f64, f64) {
        let k = Self::metres_per_degree();
        ((p.lon - self.origin.lon) * k * self.cos_lat, (p.lat - self.origin.lat) * k)
    }

    pub fn inverse(&self, x: f64, y: f64) -> GeoPoint {
        let k = Self::metres_per_degree();
        GeoPoint {
            lon: self.origin.lon + x / (k * self.cos_lat),
            lat: self.origin.lat + y / k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_coordinates() {
        assert!(GeoPoint::new(181.0, 0.0).is_err());
        assert!(GeoPoint::new(0.0, -90.5).is_err());
        assert!(GeoPoint::new(f64::NAN, 0.0).is_err());
        assert!(GeoPoint::new(-75.83, 20.02).is_ok());
    }

    #[test]
    fn haversine_known_values() {
        let a = GeoPoint::new(0.0, 0.0).unwrap();
        let b = GeoPoint::new(1.0, 0.0).unwrap();
        // One degree of arc on the mean sphere.
        let expected = EARTH_RADIUS_KM * std::f64::consts::PI / 180.0;
        assert!((haversine_km(a, b) - expected).abs() < 1e-9);
        assert_eq!(haversine_km(a, a), 0.0);
        assert_eq!(haversine_km(a, b), haversine_km(b, a));
    }

    #[test]
    fn projection_round_trip() {
        let origin = GeoPoint::new(-75.83, 20.02).unwrap();
        let proj = LocalProjection::new(origin);
        let p = GeoPoint::new(-75.825, 20.024).unwrap();
        let (x, y) = proj.forward(p);
        let q = proj.inverse(x, y);
        assert!((p.lon - q.lon).abs() < 1e-12 && (p.lat - q.lat).abs() < 1e-12);
        // Planar distance agrees with haversine to well under 0.1% at this scale.
        let planar = (x * x + y * y).sqrt() / 1000.0;
        let great = haversine_km(origin, p);
        assert!((planar - great).abs() / great < 1e-3);
    }
}
