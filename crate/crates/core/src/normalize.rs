//! Linear min-max rescaling of crisp values and of triangular fuzzy numbers.
//!
//! [`rescale_crisp`] maps `a` from a source range `[x, y]` onto a target
//! range `[m, M]` as `M - (M - m)(y - a)/(y - x)`. [`rescale_tfn`] applies the
//! same map to a whole fuzzy number; because the map is strictly increasing
//! the endpoint order survives and the result is simply the triplet of
//! rescaled components. Reversed ("lower is better") scales are expressed as
//! negative source ranges such as `[-5, 0]`, never as a decreasing target.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::Tfn;

/// Range `[x, y]` a factor is measured on; `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceRange {
    x: f64,
    y: f64,
}

/// Dimensionless range `[m, M]` results are mapped to; `m < M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetRange {
    m: f64,
    #[serde(rename = "M")]
    big_m: f64,
}

fn check_bounds(low: f64, high: f64, what: &str) -> Result<()> {
    if !(low.is_finite() && high.is_finite()) {
        return Err(Error::config(format!("{what} [{low}, {high}] must be finite")));
    }
    if low >= high {
        return Err(Error::config(format!(
            "{what} [{low}, {high}] must have its minimum strictly below its maximum"
        )));
    }
    Ok(())
}

impl SourceRange {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        check_bounds(x, y, "source range")?;
        Ok(SourceRange { x, y })
    }

    pub fn min(&self) -> f64 {
        self.x
    }

    pub fn max(&self) -> f64 {
        self.y
    }

    pub fn contains(&self, a: f64) -> bool {
        self.x <= a && a <= self.y
    }
}

impl TargetRange {
    pub fn new(m: f64, big_m: f64) -> Result<Self> {
        check_bounds(m, big_m, "target range")?;
        Ok(TargetRange { m, big_m })
    }

    /// The conventional `[0, 100]` scale.
    pub fn percent() -> Self {
        TargetRange { m: 0.0, big_m: 100.0 }
    }

    pub fn min(&self) -> f64 {
        self.m
    }

    pub fn max(&self) -> f64 {
        self.big_m
    }

    /// Reinterprets this range as a source range (for inverse maps).
    pub fn as_source(&self) -> SourceRange {
        SourceRange {
            x: self.m,
            y: self.big_m,
        }
    }
}

impl SourceRange {
    pub fn as_target(&self) -> TargetRange {
        TargetRange {
            m: self.x,
            big_m: self.y,
        }
    }
}

impl<'de> Deserialize<'de> for SourceRange {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        SourceRange::new(x, y).map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for TargetRange {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [m, big_m] = <[f64; 2]>::deserialize(d)?;
        TargetRange::new(m, big_m).map_err(serde::de::Error::custom)
    }
}

/// What to do with a value outside its factor's source range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangePolicy {
    /// Reject with [`Error::OutOfRange`].
    #[default]
    Strict,
    /// Saturate to the nearest bound and log a warning.
    Clamp,
}

/// Rescaling context: source range, target range, policy, and a factor label
/// used in diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct Rescaler<'a> {
    pub factor: &'a str,
    pub src: SourceRange,
    pub tgt: TargetRange,
    pub policy: RangePolicy,
}

impl Rescaler<'_> {
    fn admit(&self, a: f64) -> Result<f64> {
        if self.src.contains(a) {
            return Ok(a);
        }
        match self.policy {
            RangePolicy::Clamp if a.is_finite() => {
                let clamped = a.clamp(self.src.x, self.src.y);
                log::warn!(
                    "factor `{}`: value {a} clamped to {clamped} (range [{}, {}])",
                    self.factor,
                    self.src.x,
                    self.src.y
                );
                Ok(clamped)
            }
            _ => Err(Error::OutOfRange {
                factor: self.factor.to_owned(),
                value: a,
                x: self.src.x,
                y: self.src.y,
            }),
        }
    }

    pub fn crisp(&self, a: f64) -> Result<f64> {
        Ok(lre(self.admit(a)?, self.src, self.tgt))
    }

    pub fn tfn(&self, t: &Tfn) -> Result<Tfn> {
        let lo = self.admit(t.lo())?;
        let mode = self.admit(t.mode())?;
        let hi = self.admit(t.hi())?;
        let [lo, mode, hi] = [lo, mode, hi].map(|a| lre(a, self.src, self.tgt));
        // Rounding cannot reorder a monotone map, but guard the invariant anyway.
        Ok(Tfn::new_unchecked(lo, mode.max(lo), hi.max(mode)))
    }
}

#[inline]
fn lre(a: f64, src: SourceRange, tgt: TargetRange) -> f64 {
    let v = tgt.big_m - (tgt.big_m - tgt.m) * ((src.y - a) / (src.y - src.x));
    v.clamp(tgt.m, tgt.big_m)
}

/// Rescales a crisp value under the strict policy.
pub fn rescale_crisp(a: f64, src: SourceRange, tgt: TargetRange) -> Result<f64> {
    Rescaler {
        factor: "value",
        src,
        tgt,
        policy: RangePolicy::Strict,
    }
    .crisp(a)
}

/// Rescales every component of a fuzzy number under the strict policy.
pub fn rescale_tfn(t: &Tfn, src: SourceRange, tgt: TargetRange) -> Result<Tfn> {
    Rescaler {
        factor: "value",
        src,
        tgt,
        policy: RangePolicy::Strict,
    }
    .tfn(t)
}
