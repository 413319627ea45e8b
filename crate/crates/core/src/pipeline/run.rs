use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use super::config::RunConfig;
use super::format::sig6;
use super::ingest::{ingest, read_sites, AttractionSite, Ingested, WeightSource};
use crate::ahp::WeightReport;
use crate::error::{Error, Result};
use crate::fuzzy::Tfn;
use crate::spatial::{
    detect_hotspots, kde_heatmap, merge_hotspots, plan_tour, AttractionFeature, DensityGrid, HotSpot,
    MapLayers, ScoredPoint, Tour, MAX_TOUR_STOPS,
};
use crate::valuation::{compute_ftv_with, filter_high, rank, Tier, ValuationResult};

pub const RESULTS_CSV: &str = "results.csv";
pub const RESULTS_JSON: &str = "results.json";
pub const MAP_GEOJSON: &str = "map.geojson";

/// Ranked valuation of every attraction plus the filter outcome.
#[derive(Debug, Clone)]
pub struct Valuation {
    /// Sorted by rank (index 0 is rank 1).
    pub ranked: Vec<ValuationResult>,
    /// Ids kept by the High-tier filter, in rank order. All ids when
    /// classification is disabled.
    pub retained: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SpatialOutcome {
    pub grid: DensityGrid,
    pub hotspots: Vec<HotSpot>,
    pub tour: Option<Tour>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub valuation: Valuation,
    pub spatial: Option<SpatialOutcome>,
    pub written: Vec<PathBuf>,
}

pub fn valuate(data: &Ingested, cfg: &RunConfig) -> Result<Valuation> {
    let tiers = cfg.tiers();
    let results = data
        .evaluations
        .iter()
        .map(|e| {
            let ftv = compute_ftv_with(e, &data.catalogue, cfg.valuation.out_of_range)?;
            ValuationResult::new(e.attraction_id.clone(), ftv, cfg.valuation.defuzzify, tiers.as_ref())
        })
        .collect::<Result<Vec<_>>>()?;
    let ranked = rank(&results);
    let retained = if tiers.is_some() {
        filter_high(&ranked).into_iter().map(|r| r.attraction_id).collect()
    } else {
        ranked.iter().map(|r| r.attraction_id.clone()).collect()
    };
    Ok(Valuation { ranked, retained })
}

/// Heatmap, hotspots and tour over the retained attractions, weighted by
/// their defuzzified value measured from the bottom of the target range.
pub fn spatial_stage(
    sites: &[AttractionSite],
    valuation: &Valuation,
    cfg: &RunConfig,
) -> Result<SpatialOutcome> {
    let floor = cfg.valuation.target.min();
    let by_id: BTreeMap<&str, &ValuationResult> =
        valuation.ranked.iter().map(|r| (r.attraction_id.as_str(), r)).collect();
    let points = valuation
        .retained
        .iter()
        .map(|id| {
            let site = sites
                .iter()
                .find(|s| &s.id == id)
                .ok_or_else(|| Error::schema(format!("attraction `{id}` has no coordinates")))?;
            ScoredPoint::new(site.location, (by_id[id.as_str()].crisp - floor).max(0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = &cfg.spatial;
    let grid = kde_heatmap(&points, s.bandwidth_m, s.cell_m)?;
    let hotspots = merge_hotspots(&detect_hotspots(&grid, s.percentile)?, s.merge_radius_m)?;
    let tour = if hotspots.is_empty() {
        None
    } else {
        if hotspots.len() > MAX_TOUR_STOPS {
            return Err(Error::domain(format!(
                "{} hotspots exceed the exact-tour limit of {MAX_TOUR_STOPS}; raise spatial.percentile or spatial.merge_radius_m",
                hotspots.len()
            )));
        }
        let t = plan_tour(&hotspots, cfg.tour.start.as_deref())?;
        Some(t.with_duration(cfg.tour.walk_speed_kmh, cfg.tour.dwell_minutes)?)
    };
    Ok(SpatialOutcome { grid, hotspots, tour })
}

fn tier_str(t: Option<Tier>) -> &'static str {
    t.map_or("", |t| t.as_str())
}

pub fn render_results_csv(v: &Valuation) -> String {
    let mut out = String::from("attraction_id,ftv_lo,ftv_mode,ftv_hi,crisp,tier,rank\n");
    for (i, r) in v.ranked.iter().enumerate() {
        let [lo, mode, hi] = r.ftv.components();
        // Ids are validated non-empty; quote if they carry separators.
        let id = if r.attraction_id.contains([',', '"', '\n']) {
            format!("\"{}\"", r.attraction_id.replace('"', "\"\""))
        } else {
            r.attraction_id.clone()
        };
        let _ = writeln!(
            out,
            "{id},{},{},{},{},{},{}",
            sig6(lo),
            sig6(mode),
            sig6(hi),
            sig6(r.crisp),
            tier_str(r.tier),
            i + 1
        );
    }
    out
}

#[derive(Serialize)]
struct ResultRow<'a> {
    rank: usize,
    attraction_id: &'a str,
    name: &'a str,
    ftv: &'a Tfn,
    crisp: f64,
    tier: Option<Tier>,
}

#[derive(Serialize)]
struct WeightsSection<'a> {
    source: WeightSource,
    values: BTreeMap<&'a str, f64>,
    sum: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a WeightReport>,
}

pub fn render_results_json(data: &Ingested, v: &Valuation, spatial: Option<&SpatialOutcome>, cfg: &RunConfig) -> Result<String> {
    let names: BTreeMap<&str, &str> = data.sites.iter().map(|s| (s.id.as_str(), s.name.as_str())).collect();
    let rows: Vec<ResultRow<'_>> = v
        .ranked
        .iter()
        .enumerate()
        .map(|(i, r)| ResultRow {
            rank: i + 1,
            attraction_id: &r.attraction_id,
            name: names.get(r.attraction_id.as_str()).copied().unwrap_or(""),
            ftv: &r.ftv,
            crisp: r.crisp,
            tier: r.tier,
        })
        .collect();
    let weights = WeightsSection {
        source: data.weight_source,
        values: data.catalogue.factors().iter().map(|f| (f.id.as_str(), f.weight)).collect(),
        sum: data.catalogue.weight_sum(),
        report: data.weight_report.as_ref(),
    };
    let tiers = cfg.tiers();
    let mut doc = json!({
        "config": cfg,
        "weights": weights,
        "results": rows,
        "filter": {
            "enabled": tiers.is_some(),
            "threshold": tiers.map(|t| t.medium_max),
            "retained": v.retained,
            "retained_count": v.retained.len(),
            "total": v.ranked.len(),
        },
    });
    if let Some(s) = spatial {
        doc["hotspots"] = json!(s.hotspots);
        doc["tour"] = json!(s.tour);
        doc["grid"] = json!({
            "ncols": s.grid.ncols,
            "nrows": s.grid.nrows,
            "cell_m": s.grid.cell_m,
            "max_density": s.grid.max_value(),
        });
    }
    serde_json::to_string_pretty(&doc)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Numeric(format!("cannot serialise results: {e}")))
}

pub fn render_map(sites: &[AttractionSite], v: &Valuation, s: &SpatialOutcome) -> Result<String> {
    let attractions = v
        .ranked
        .iter()
        .filter_map(|r| {
            sites.iter().find(|s| s.id == r.attraction_id).map(|site| AttractionFeature {
                name: &site.name,
                location: site.location,
                result: r,
            })
        })
        .collect();
    let layers = MapLayers {
        attractions,
        hotspots: &s.hotspots,
        tour: s.tour.as_ref(),
        grid: Some(&s.grid),
    };
    serde_json::to_string(&layers.to_geojson())
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Numeric(format!("cannot serialise map: {e}")))
}

/// Writes every file or none: on the first failure, files already written
/// in this call are removed.
pub fn write_all(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        if let Err(e) = std::fs::write(&path, body) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            let _ = std::fs::remove_file(&path);
            return Err(Error::io(path, e));
        }
        written.push(path);
    }
    Ok(written)
}

fn remove_stale(dir: &Path) {
    for name in [RESULTS_CSV, RESULTS_JSON, MAP_GEOJSON] {
        let _ = std::fs::remove_file(dir.join(name));
    }
}

/// Ingest, valuate, rank, filter and run the spatial stage; writes
/// `results.csv`, `results.json` and `map.geojson`.
pub fn run_pipeline(cfg: &RunConfig) -> Result<RunSummary> {
    let out_dir = cfg.output_dir();
    let outcome = (|| {
        let data = ingest(cfg)?;
        let valuation = valuate(&data, cfg)?;
        let spatial = spatial_stage(&data.sites, &valuation, cfg)?;
        let files = [
            (RESULTS_CSV, render_results_csv(&valuation)),
            (RESULTS_JSON, render_results_json(&data, &valuation, Some(&spatial), cfg)?),
            (MAP_GEOJSON, render_map(&data.sites, &valuation, &spatial)?),
        ];
        Ok((valuation, spatial, files))
    })();
    match outcome {
        Ok((valuation, spatial, files)) => {
            let written = write_all(&out_dir, &files)?;
            Ok(RunSummary {
                valuation,
                spatial: Some(spatial),
                written,
            })
        }
        Err(e) => {
            remove_stale(&out_dir);
            Err(e)
        }
    }
}

/// Valuation only: writes `results.csv` and `results.json`.
pub fn run_valuation(cfg: &RunConfig) -> Result<RunSummary> {
    let out_dir = cfg.output_dir();
    let data = ingest(cfg).inspect_err(|_| remove_stale(&out_dir))?;
    let valuation = valuate(&data, cfg).inspect_err(|_| remove_stale(&out_dir))?;
    let files = [
        (RESULTS_CSV, render_results_csv(&valuation)),
        (RESULTS_JSON, render_results_json(&data, &valuation, None, cfg)?),
    ];
    let written = write_all(&out_dir, &files)?;
    Ok(RunSummary {
        valuation,
        spatial: None,
        written,
    })
}

/// Parses a `results.csv` written by a previous run.
pub fn read_results_csv(path: &Path) -> Result<Valuation> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::input(path, 0, e.to_string()))?;
    let mut ranked = Vec::new();
    let mut tiers_seen = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::input(path, 0, e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |msg: &str| Error::input(path, line, msg.to_owned());
        if rec.len() != 7 {
            return Err(bad("expected 7 columns"));
        }
        let num = |i: usize| rec[i].parse::<f64>().map_err(|_| bad("malformed number"));
        let ftv = Tfn::new(num(1)?, num(2)?, num(3)?).map_err(|e| bad(&e.to_string()))?;
        let tier = match &rec[5] {
            "" => None,
            "Low" => Some(Tier::Low),
            "Medium" => Some(Tier::Medium),
            "High" => Some(Tier::High),
            _ => return Err(bad("unknown tier")),
        };
        tiers_seen |= tier.is_some();
        ranked.push(ValuationResult {
            attraction_id: rec[0].to_owned(),
            ftv,
            crisp: num(4)?,
            tier,
        });
    }
    if ranked.is_empty() {
        return Err(Error::input(path, 1, "no attractions"));
    }
    let retained = if tiers_seen {
        filter_high(&ranked).into_iter().map(|r| r.attraction_id).collect()
    } else {
        ranked.iter().map(|r| r.attraction_id.clone()).collect()
    };
    Ok(Valuation { ranked, retained })
}

/// Spatial stage from a prior `results.csv` plus the configured attractions
/// file; writes `map.geojson`.
pub fn run_tour(cfg: &RunConfig, results_csv: &Path) -> Result<(SpatialOutcome, PathBuf)> {
    let sites: Vec<AttractionSite> = read_sites(&cfg.attractions_path())?.into_iter().map(|(s, _)| s).collect();
    let valuation = read_results_csv(results_csv)?;
    let spatial = spatial_stage(&sites, &valuation, cfg)?;
    let map = render_map(&sites, &valuation, &spatial)?;
    let written = write_all(&cfg.output_dir(), &[(MAP_GEOJSON, map)])?;
    Ok((spatial, written.into_iter().next().expect("one file")))
}
