//! Batch pipeline: ingest CSV inputs, aggregate expert scores, valuate,
//! classify, rank, run the spatial stage and write deterministic outputs.

mod config;
mod format;
mod ingest;
mod run;

pub use config::{InputFiles, OutputSettings, RunConfig, SpatialSettings, TourSettings, ValuationSettings};
pub use format::sig6;
pub use ingest::{
    ingest, load_catalogue, read_evaluations, read_factors, read_pairwise, read_sites, AttractionSite, Ingested,
    RawEvaluationRow, WeightSource,
};
pub use run::{
    read_results_csv, render_map, render_results_csv, render_results_json, run_pipeline, run_tour, run_valuation,
    spatial_stage, valuate, write_all, RunSummary, SpatialOutcome, Valuation, MAP_GEOJSON, RESULTS_CSV,
    RESULTS_JSON,
};
