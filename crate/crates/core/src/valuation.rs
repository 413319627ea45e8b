//! Fuzzy experiential tourism value (FTV): weighted aggregation of rescaled
//! factor scores, tier classification, filtering and ranking.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{Defuzzifier, Tfn};
use crate::normalize::{RangePolicy, Rescaler, SourceRange, TargetRange};

/// Allowed deviation of the catalogue weight sum from one. Published weight
/// columns are rounded to three decimals and do not sum to one exactly.
pub const WEIGHT_SUM_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorDefinition {
    pub id: String,
    pub name: String,
    pub src: SourceRange,
    pub weight: f64,
}

impl FactorDefinition {
    pub fn new(id: impl Into<String>, name: impl Into<String>, src: SourceRange, weight: f64) -> Result<Self> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(Error::schema("factor id must not be empty"));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::config(format!("factor `{id}`: weight {weight} is outside [0, 1]")));
        }
        Ok(FactorDefinition {
            id,
            name: name.into(),
            src,
            weight,
        })
    }
}

/// Ordered factor list with its target range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorCatalogue {
    factors: Vec<FactorDefinition>,
    target: TargetRange,
}

impl FactorCatalogue {
    pub fn new(factors: Vec<FactorDefinition>, target: TargetRange) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::schema("factor catalogue is empty"));
        }
        let mut seen = HashSet::new();
        for f in &factors {
            if !seen.insert(f.id.as_str()) {
                return Err(Error::schema(format!("duplicate factor id `{}`", f.id)));
            }
        }
        let sum: f64 = factors.iter().map(|f| f.weight).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::config(format!(
                "factor weights sum to {sum}, expected 1 within {WEIGHT_SUM_TOLERANCE}"
            )));
        }
        Ok(FactorCatalogue { factors, target })
    }

    pub fn factors(&self) -> &[FactorDefinition] {
        &self.factors
    }

    pub fn target(&self) -> TargetRange {
        self.target
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&FactorDefinition> {
        self.factors.iter().find(|f| f.id == id)
    }

    pub fn weight_sum(&self) -> f64 {
        self.factors.iter().map(|f| f.weight).sum()
    }

    /// Same factors mapped onto a different target range.
    pub fn with_target(&self, target: TargetRange) -> Self {
        FactorCatalogue {
            factors: self.factors.clone(),
            target,
        }
    }
}

/// One attraction's expert-aggregated score per factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractionEvaluation {
    pub attraction_id: String,
    pub scores: BTreeMap<String, Tfn>,
}

impl AttractionEvaluation {
    pub fn new(attraction_id: impl Into<String>, scores: BTreeMap<String, Tfn>) -> Self {
        AttractionEvaluation {
            attraction_id: attraction_id.into(),
            scores,
        }
    }

    /// Checks that the score set matches the catalogue exactly.
    pub fn check_against(&self, cat: &FactorCatalogue) -> Result<()> {
        let missing: Vec<&str> = cat
            .factors()
            .iter()
            .filter(|f| !self.scores.contains_key(&f.id))
            .map(|f| f.id.as_str())
            .collect();
        let extra: Vec<&str> = self
            .scores
            .keys()
            .filter(|id| cat.get(id).is_none())
            .map(String::as_str)
            .collect();
        if missing.is_empty() && extra.is_empty() {
            return Ok(());
        }
        let mut parts = Vec::new();
        if !missing.is_empty() {
            parts.push(format!("missing scores for [{}]", missing.join(", ")));
        }
        if !extra.is_empty() {
            parts.push(format!("unknown factors [{}]", extra.join(", ")));
        }
        Err(Error::schema(format!(
            "attraction `{}`: {}",
            self.attraction_id,
            parts.join("; ")
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tier {
    Low,
    Medium,
    High,
}

impl Tier {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tier::Low => "Low",
            Tier::Medium => "Medium",
            Tier::High => "High",
        }
    }
}

/// Tier bands on the defuzzified value: Low `(-inf, low_max]`, Medium
/// `(low_max, medium_max]`, High `(medium_max, inf)`, all restricted to the
/// admissible scale `[scale_min, scale_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TierThresholds {
    pub low_max: f64,
    pub medium_max: f64,
    pub scale_min: f64,
    pub scale_max: f64,
}

impl Default for TierThresholds {
    fn default() -> Self {
        TierThresholds {
            low_max: 33.0,
            medium_max: 66.0,
            scale_min: 0.0,
            scale_max: 100.0,
        }
    }
}

impl TierThresholds {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.low_max, self.medium_max, self.scale_min, self.scale_max]
            .iter()
            .all(|v| v.is_finite())
            && self.scale_min <= self.low_max
            && self.low_max <= self.medium_max
            && self.medium_max <= self.scale_max;
        if ok {
            Ok(())
        } else {
            Err(Error::config(format!("inconsistent tier thresholds {self:?}")))
        }
    }

    /// Thresholds implied by a target range: the built-in bands for
    /// `[0, 100]`, none otherwise.
    pub fn for_target(tgt: TargetRange) -> Option<Self> {
        (tgt.min() == 0.0 && tgt.max() == 100.0).then(TierThresholds::default)
    }

    pub fn classify(&self, crisp: f64) -> Result<Tier> {
        // Tiny rounding excursions past the scale ends are tolerated.
        let slack = 1e-9 * (self.scale_max - self.scale_min).abs().max(1.0);
        if !crisp.is_finite() || crisp < self.scale_min - slack || crisp > self.scale_max + slack {
            return Err(Error::domain(format!(
                "value {crisp} is outside the classification scale [{}, {}]",
                self.scale_min, self.scale_max
            )));
        }
        Ok(if crisp <= self.low_max {
            Tier::Low
        } else if crisp <= self.medium_max {
            Tier::Medium
        } else {
            Tier::High
        })
    }
}

/// Classifies a value on the default `[0, 100]` bands.
pub fn classify(crisp: f64) -> Result<Tier> {
    TierThresholds::default().classify(crisp)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValuationResult {
    pub attraction_id: String,
    pub ftv: Tfn,
    pub crisp: f64,
    /// `None` when classification is disabled for the target range.
    pub tier: Option<Tier>,
}

impl ValuationResult {
    pub fn new(attraction_id: impl Into<String>, ftv: Tfn, method: Defuzzifier, tiers: Option<&TierThresholds>) -> Result<Self> {
        let crisp = ftv.defuzzify(method);
        let tier = tiers.map(|t| t.classify(crisp)).transpose()?;
        Ok(ValuationResult {
            attraction_id: attraction_id.into(),
            ftv,
            crisp,
            tier,
        })
    }
}

/// Weighted aggregate of the rescaled factor scores of one attraction.
///
/// Each score is rescaled onto the catalogue's target range, scaled by its
/// factor weight and summed. The sum is divided by the total weight, which is
/// a no-op for weights summing to one and keeps every component inside the
/// target range for catalogues within the weight-sum tolerance.
pub fn compute_ftv_with(eval: &AttractionEvaluation, cat: &FactorCatalogue, policy: RangePolicy) -> Result<Tfn> {
    eval.check_against(cat)?;
    let total = cat.weight_sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::config(format!("factor weights sum to {total}")));
    }
    let tgt = cat.target();
    let mut acc = Tfn::ZERO;
    for f in cat.factors() {
        let rescaled = Rescaler {
            factor: &f.id,
            src: f.src,
            tgt,
            policy,
        }
        .tfn(&eval.scores[&f.id])?;
        acc = acc + rescaled.scale(f.weight);
    }
    let ftv = acc.scale(1.0 / total);
    let [lo, mode, hi] = ftv.components().map(|v| v.clamp(tgt.min(), tgt.max()));
    Ok(Tfn::new_unchecked(lo, mode, hi))
}

/// [`compute_ftv_with`] under the strict range policy.
pub fn compute_ftv(eval: &AttractionEvaluation, cat: &FactorCatalogue) -> Result<Tfn> {
    compute_ftv_with(eval, cat, RangePolicy::Strict)
}

/// Crisp min-max tourism value index on a 0..5 scale:
/// `(5/n) * sum_i sum_k beta_k (x_ik - min_k) / (max_k - min_k)` over `n`
/// individuals (rows of `ratings`) and factors `k` (columns).
pub fn crisp_tourism_value(ratings: &[Vec<f64>], beta: &[f64], min: &[f64], max: &[f64]) -> Result<f64> {
    if ratings.is_empty() || beta.is_empty() {
        return Err(Error::domain("rating matrix is empty"));
    }
    let k = beta.len();
    if min.len() != k || max.len() != k {
        return Err(Error::domain("weights and factor bounds must have the same length"));
    }
    if let Some(j) = (0..k).find(|&j| min[j] == max[j]) {
        return Err(Error::domain(format!("factor {j}: minimum equals maximum")));
    }
    let mut total = 0.0;
    for (i, row) in ratings.iter().enumerate() {
        if row.len() != k {
            return Err(Error::domain(format!(
                "row {i} has {} ratings, expected {k}",
                row.len()
            )));
        }
        for j in 0..k {
            total += beta[j] * (row[j] - min[j]) / (max[j] - min[j]);
        }
    }
    Ok(5.0 / ratings.len() as f64 * total)
}

/// Keeps only High-tier results, preserving order.
pub fn filter_high(results: &[ValuationResult]) -> Vec<ValuationResult> {
    results
        .iter()
        .filter(|r| r.tier == Some(Tier::High))
        .cloned()
        .collect()
}

/// Descending crisp value, then descending mode, then ascending id.
pub fn rank_order(a: &ValuationResult, b: &ValuationResult) -> Ordering {
    b.crisp
        .total_cmp(&a.crisp)
        .then_with(|| b.ftv.mode().total_cmp(&a.ftv.mode()))
        .then_with(|| a.attraction_id.cmp(&b.attraction_id))
}

pub fn rank(results: &[ValuationResult]) -> Vec<ValuationResult> {
    let mut out = results.to_vec();
    out.sort_by(rank_order);
    out
}
