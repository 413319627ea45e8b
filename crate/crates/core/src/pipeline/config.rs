use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::Defuzzifier;
use crate::normalize::{RangePolicy, TargetRange};
use crate::valuation::TierThresholds;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFiles {
    pub factors: PathBuf,
    pub evaluations: PathBuf,
    pub attractions: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValuationSettings {
    pub target: TargetRange,
    pub defuzzify: Defuzzifier,
    pub out_of_range: RangePolicy,
    /// Explicit tier bands; defaults to the built-in bands on `[0, 100]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiers: Option<TierThresholds>,
}

impl Default for ValuationSettings {
    fn default() -> Self {
        ValuationSettings {
            target: TargetRange::percent(),
            defuzzify: Defuzzifier::Centroid,
            out_of_range: RangePolicy::Strict,
            tiers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpatialSettings {
    pub bandwidth_m: f64,
    pub cell_m: f64,
    pub percentile: f64,
    pub merge_radius_m: f64,
}

impl Default for SpatialSettings {
    fn default() -> Self {
        SpatialSettings {
            bandwidth_m: 100.0,
            cell_m: 10.0,
            percentile: 90.0,
            merge_radius_m: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TourSettings {
    pub walk_speed_kmh: f64,
    pub dwell_minutes: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
}

impl Default for TourSettings {
    fn default() -> Self {
        TourSettings {
            walk_speed_kmh: 4.0,
            dwell_minutes: [5.0, 10.0, 15.0],
            start: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSettings {
    pub dir: PathBuf,
}

impl Default for OutputSettings {
    fn default() -> Self {
        OutputSettings { dir: "out".into() }
    }
}

/// Everything a pipeline run needs. Relative paths are resolved against
/// `base_dir` (the directory holding the config file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub inputs: InputFiles,
    #[serde(default)]
    pub valuation: ValuationSettings,
    #[serde(default)]
    pub spatial: SpatialSettings,
    #[serde(default)]
    pub tour: TourSettings,
    #[serde(default, skip_serializing)]
    pub output: OutputSettings,
    #[serde(default)]
    pub allow_inconsistent: bool,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    /// Config for input files in `dir`, all settings at their defaults.
    pub fn for_inputs(dir: &Path, factors: &str, evaluations: &str, attractions: &str) -> Self {
        RunConfig {
            inputs: InputFiles {
                factors: factors.into(),
                evaluations: evaluations.into(),
                attractions: attractions.into(),
                pairwise: None,
            },
            valuation: ValuationSettings::default(),
            spatial: SpatialSettings::default(),
            tour: TourSettings::default(),
            output: OutputSettings::default(),
            allow_inconsistent: false,
            base_dir: dir.to_path_buf(),
        }
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn factors_path(&self) -> PathBuf {
        self.resolve(&self.inputs.factors)
    }

    pub fn evaluations_path(&self) -> PathBuf {
        self.resolve(&self.inputs.evaluations)
    }

    pub fn attractions_path(&self) -> PathBuf {
        self.resolve(&self.inputs.attractions)
    }

    pub fn pairwise_path(&self) -> Option<PathBuf> {
        self.inputs.pairwise.as_deref().map(|p| self.resolve(p))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.resolve(&self.output.dir)
    }

    /// Tier bands in effect, if classification is enabled.
    pub fn tiers(&self) -> Option<TierThresholds> {
        self.valuation
            .tiers
            .or_else(|| TierThresholds::for_target(self.valuation.target))
    }

    /// Checks parameter domains and that every referenced input file exists.
    pub fn validate(&self) -> Result<()> {
        let mut files = vec![self.factors_path(), self.evaluations_path(), self.attractions_path()];
        files.extend(self.pairwise_path());
        for f in files {
            if !f.is_file() {
                return Err(Error::config(format!("input file {} does not exist", f.display())));
            }
        }
        if let Some(t) = &self.valuation.tiers {
            t.validate()?;
        }
        let s = &self.spatial;
        let positive = |v: f64, what: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::config(format!("{what} must be positive, got {v}")))
            }
        };
        positive(s.bandwidth_m, "spatial.bandwidth_m")?;
        positive(s.cell_m, "spatial.cell_m")?;
        positive(self.tour.walk_speed_kmh, "tour.walk_speed_kmh")?;
        if !(s.percentile > 0.0 && s.percentile < 100.0) {
            return Err(Error::config(format!("spatial.percentile must lie in (0, 100), got {}", s.percentile)));
        }
        if !(s.merge_radius_m.is_finite() && s.merge_radius_m >= 0.0) {
            return Err(Error::config("spatial.merge_radius_m must be non-negative"));
        }
        let [lo, avg, hi] = self.tour.dwell_minutes;
        if !(lo >= 0.0 && lo <= avg && avg <= hi && hi.is_finite()) {
            return Err(Error::config("tour.dwell_minutes must be ordered [min, avg, max] and non-negative"));
        }
        Ok(())
    }
}
