//! CSV readers for factor catalogues, expert evaluations, attraction
//! locations and pairwise-comparison matrices.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use crate::ahp::{derive_weights, PairwiseMatrix, WeightReport};
use crate::error::{Error, Result};
use crate::fuzzy::{mean_tfns, Tfn};
use crate::normalize::{RangePolicy, SourceRange, TargetRange};
use crate::spatial::GeoPoint;
use crate::valuation::{AttractionEvaluation, FactorCatalogue, FactorDefinition};

/// One expert's score of one attraction on one factor, as read from file.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEvaluationRow {
    pub attraction_id: String,
    pub factor_id: String,
    pub expert_id: String,
    pub lo: f64,
    pub mode: f64,
    pub hi: f64,
    pub line: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractionSite {
    pub id: String,
    pub name: String,
    pub location: GeoPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightSource {
    Catalogue,
    Pairwise,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub catalogue: FactorCatalogue,
    /// In attraction-file order.
    pub evaluations: Vec<AttractionEvaluation>,
    pub sites: Vec<AttractionSite>,
    pub weight_source: WeightSource,
    pub weight_report: Option<WeightReport>,
    /// Number of raw expert rows read.
    pub raw_rows: usize,
}

struct Table {
    path: PathBuf,
    rows: Vec<(u64, csv::StringRecord)>,
}

impl Table {
    fn read(path: &Path, required: &[&str]) -> Result<(Self, HashMap<String, usize>)> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
        let columns: HashMap<String, usize> = headers
            .iter()
            .enumerate()
            .map(|(i, h)| (h.trim_start_matches('\u{feff}').to_owned(), i))
            .collect();
        let missing: Vec<&str> = required.iter().copied().filter(|c| !columns.contains_key(*c)).collect();
        if !missing.is_empty() {
            return Err(Error::input(
                path,
                1,
                format!("missing column(s) {}; expected header {}", missing.join(", "), required.join(",")),
            ));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| csv_error(path, e))?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            let line = rec.position().map_or(0, |p| p.line());
            rows.push((line, rec));
        }
        Ok((
            Table {
                path: path.to_path_buf(),
                rows,
            },
            columns,
        ))
    }

    fn err(&self, line: u64, msg: impl Into<String>) -> Error {
        Error::input(&self.path, line, msg)
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            Error::input(path, line, format!("expected {expected_len} fields, found {len}"))
        }
        csv::ErrorKind::Utf8 { .. } => Error::input(path, line, "invalid UTF-8"),
        kind => Error::input(path, line, format!("{kind:?}")),
    }
}

fn field<'r>(rec: &'r csv::StringRecord, cols: &HashMap<String, usize>, name: &str) -> &'r str {
    cols.get(name).and_then(|&i| rec.get(i)).unwrap_or("")
}

fn parse_num(t: &Table, line: u64, name: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| t.err(line, format!("column `{name}`: `{raw}` is not a finite number")))
}

/// Reads `id,name,x,y,weight`. Returns the factor rows and, per row, the
/// explicit weight if the cell was non-empty.
pub fn read_factors(path: &Path) -> Result<Vec<(FactorDefinition, Option<f64>, u64)>> {
    let (t, cols) = Table::read(path, &["id", "name", "x", "y", "weight"])?;
    let mut out: Vec<(FactorDefinition, Option<f64>, u64)> = Vec::new();
    for (line, rec) in &t.rows {
        let line = *line;
        let id = field(rec, &cols, "id");
        if id.is_empty() {
            return Err(t.err(line, "empty factor id"));
        }
        if out.iter().any(|(f, _, _)| f.id == id) {
            return Err(t.err(line, format!("duplicate factor id `{id}`")));
        }
        let x = parse_num(&t, line, "x", field(rec, &cols, "x"))?;
        let y = parse_num(&t, line, "y", field(rec, &cols, "y"))?;
        let src = SourceRange::new(x, y).map_err(|e| t.err(line, e.to_string()))?;
        let raw_w = field(rec, &cols, "weight");
        let weight = if raw_w.is_empty() {
            None
        } else {
            Some(parse_num(&t, line, "weight", raw_w)?)
        };
        let def = FactorDefinition::new(id, field(rec, &cols, "name"), src, weight.unwrap_or(0.0))
            .map_err(|e| t.err(line, e.to_string()))?;
        out.push((def, weight, line));
    }
    if out.is_empty() {
        return Err(Error::input(path, 1, "factor file has no rows"));
    }
    Ok(out)
}

/// Reads a square pairwise matrix whose header row lists factor ids.
pub fn read_pairwise(path: &Path) -> Result<(Vec<String>, PairwiseMatrix)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let ids: Vec<String> = rdr
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(|h| h.trim_start_matches('\u{feff}').to_owned())
        .collect();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        let row = rec
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::input(path, line, format!("`{v}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.len() != ids.len() {
        return Err(Error::input(
            path,
            1,
            format!("header lists {} factors but the matrix has {} rows", ids.len(), rows.len()),
        ));
    }
    let m = PairwiseMatrix::new(rows).map_err(|e| match e {
        Error::Domain(msg) | Error::Schema(msg) => Error::input(path, 1, msg),
        other => other,
    })?;
    Ok((ids, m))
}

/// Weights for the catalogue factors from a pairwise file, in catalogue order.
fn pairwise_weights(path: &Path, factor_ids: &[&str], allow_inconsistent: bool) -> Result<(Vec<f64>, WeightReport)> {
    let (ids, matrix) = read_pairwise(path)?;
    let mut sorted_ids = ids.clone();
    sorted_ids.sort();
    let mut expected: Vec<String> = factor_ids.iter().map(|s| s.to_string()).collect();
    expected.sort();
    if sorted_ids != expected {
        return Err(Error::input(
            path,
            1,
            "pairwise header ids do not match the factor catalogue ids",
        ));
    }
    let report = derive_weights(&matrix)?;
    if report.inconsistent && !allow_inconsistent {
        return Err(Error::config(format!(
            "pairwise matrix {} is inconsistent (CR = {:.4} > 0.1); pass --allow-inconsistent to use it anyway",
            path.display(),
            report.consistency_ratio
        )));
    }
    let weights = factor_ids
        .iter()
        .map(|id| report.weights[ids.iter().position(|h| h == id).expect("ids checked")])
        .collect();
    Ok((weights, report))
}

/// Builds the catalogue, taking weights from the factor file when present and
/// from the pairwise matrix otherwise.
pub fn load_catalogue(
    cfg: &RunConfig,
    target: TargetRange,
) -> Result<(FactorCatalogue, WeightSource, Option<WeightReport>)> {
    let path = cfg.factors_path();
    let rows = read_factors(&path)?;
    let explicit = rows.iter().filter(|(_, w, _)| w.is_some()).count();
    let (defs, source, report) = if explicit == rows.len() {
        (rows.into_iter().map(|(d, _, _)| d).collect::<Vec<_>>(), WeightSource::Catalogue, None)
    } else if explicit > 0 {
        let (_, _, line) = rows.iter().find(|(_, w, _)| w.is_none()).expect("some weight missing");
        return Err(Error::input(
            &path,
            *line,
            "weight column is partially filled; give every weight or none",
        ));
    } else {
        let pairwise = cfg.pairwise_path().ok_or_else(|| {
            Error::config("factor file has no weights and no pairwise matrix is configured")
        })?;
        let ids: Vec<&str> = rows.iter().map(|(d, _, _)| d.id.as_str()).collect();
        let (weights, report) = pairwise_weights(&pairwise, &ids, cfg.allow_inconsistent)?;
        let defs = rows
            .iter()
            .zip(weights)
            .map(|((d, _, _), w)| FactorDefinition::new(d.id.clone(), d.name.clone(), d.src, w.clamp(0.0, 1.0)))
            .collect::<Result<Vec<_>>>()?;
        (defs, WeightSource::Pairwise, Some(report))
    };
    let catalogue = FactorCatalogue::new(defs, target)?;
    Ok((catalogue, source, report))
}

pub fn read_sites(path: &Path) -> Result<Vec<(AttractionSite, u64)>> {
    let (t, cols) = Table::read(path, &["id", "name", "lon", "lat"])?;
    let mut out: Vec<(AttractionSite, u64)> = Vec::new();
    for (line, rec) in &t.rows {
        let line = *line;
        let id = field(rec, &cols, "id");
        if id.is_empty() {
            return Err(t.err(line, "empty attraction id"));
        }
        if out.iter().any(|(s, _)| s.id == id) {
            return Err(t.err(line, format!("duplicate attraction id `{id}`")));
        }
        let lon = parse_num(&t, line, "lon", field(rec, &cols, "lon"))?;
        let lat = parse_num(&t, line, "lat", field(rec, &cols, "lat"))?;
        let location = GeoPoint::new(lon, lat).map_err(|e| t.err(line, e.to_string()))?;
        out.push((
            AttractionSite {
                id: id.to_owned(),
                name: field(rec, &cols, "name").to_owned(),
                location,
            },
            line,
        ));
    }
    if out.is_empty() {
        return Err(Error::input(path, 1, "no attractions"));
    }
    Ok(out)
}

pub fn read_evaluations(path: &Path) -> Result<Vec<RawEvaluationRow>> {
    let (t, cols) = Table::read(path, &["attraction_id", "factor_id", "expert_id", "score"])?;
    let mut out = Vec::with_capacity(t.rows.len());
    for (line, rec) in &t.rows {
        let line = *line;
        let get = |c| field(rec, &cols, c);
        for c in ["attraction_id", "factor_id", "expert_id"] {
            if get(c).is_empty() {
                return Err(t.err(line, format!("empty `{c}`")));
            }
        }
        let tfn: Tfn = get("score").parse().map_err(|e: Error| t.err(line, e.to_string()))?;
        out.push(RawEvaluationRow {
            attraction_id: get("attraction_id").to_owned(),
            factor_id: get("factor_id").to_owned(),
            expert_id: get("expert_id").to_owned(),
            lo: tfn.lo(),
            mode: tfn.mode(),
            hi: tfn.hi(),
            line,
        });
    }
    Ok(out)
}

/// Reads and cross-checks every input, averaging expert scores per
/// attraction and factor.
pub fn ingest(cfg: &RunConfig) -> Result<Ingested> {
    cfg.validate()?;
    let (catalogue, weight_source, weight_report) = load_catalogue(cfg, cfg.valuation.target)?;
    let sites_path = cfg.attractions_path();
    let sites = read_sites(&sites_path)?;
    let eval_path = cfg.evaluations_path();
    let rows = read_evaluations(&eval_path)?;
    let raw_rows = rows.len();
    let strict = cfg.valuation.out_of_range == RangePolicy::Strict;

    // attraction -> factor -> expert -> score
    type Grouped = BTreeMap<String, (u64, BTreeMap<String, BTreeMap<String, Tfn>>)>;
    let mut grouped: Grouped = BTreeMap::new();
    for r in rows {
        let Some(factor) = catalogue.get(&r.factor_id) else {
            return Err(Error::input(&eval_path, r.line, format!("unknown factor id `{}`", r.factor_id)));
        };
        if strict {
            if let Some(v) = [r.lo, r.mode, r.hi].into_iter().find(|v| !factor.src.contains(*v)) {
                return Err(Error::input(
                    &eval_path,
                    r.line,
                    format!(
                        "factor `{}`: value {v} lies outside the source range [{}, {}]",
                        factor.id,
                        factor.src.min(),
                        factor.src.max()
                    ),
                ));
            }
        }
        let tfn = Tfn::new_unchecked(r.lo, r.mode, r.hi);
        let entry = grouped.entry(r.attraction_id.clone()).or_insert((r.line, BTreeMap::new()));
        let prev = entry.1.entry(r.factor_id.clone()).or_default().insert(r.expert_id.clone(), tfn);
        if prev.is_some() {
            return Err(Error::input(
                &eval_path,
                r.line,
                format!(
                    "duplicate score for attraction `{}`, factor `{}`, expert `{}`",
                    r.attraction_id, r.factor_id, r.expert_id
                ),
            ));
        }
    }

    if let Some((id, (line, _))) = grouped.iter().find(|(id, _)| !sites.iter().any(|(s, _)| &s.id == *id)) {
        return Err(Error::input(&eval_path, *line, format!("attraction `{id}` has no coordinates in {}", sites_path.display())));
    }

    let mut evaluations = Vec::with_capacity(sites.len());
    for (site, site_line) in &sites {
        let Some((first_line, factors)) = grouped.remove(&site.id) else {
            return Err(Error::input(&sites_path, *site_line, format!("attraction `{}` has no evaluations", site.id)));
        };
        let mut scores = BTreeMap::new();
        for (factor_id, by_expert) in factors {
            let ts: Vec<Tfn> = by_expert.into_values().collect();
            scores.insert(factor_id, mean_tfns(&ts)?);
        }
        let eval = AttractionEvaluation::new(site.id.clone(), scores);
        eval.check_against(&catalogue)
            .map_err(|e| Error::input(&eval_path, first_line, e.to_string()))?;
        evaluations.push(eval);
    }

    Ok(Ingested {
        catalogue,
        evaluations,
        sites: sites.into_iter().map(|(s, _)| s).collect(),
        weight_source,
        weight_report,
        raw_rows,
    })
}
