//! Triangular fuzzy numbers.
//!
//! A [`Tfn`] is the triplet `(lo, mode, hi)` with piecewise-linear membership
//! rising from `lo` to a peak of one at `mode` and falling back to zero at
//! `hi`. Values are immutable and validated on construction; arithmetic is
//! limited to what weighted aggregation needs (addition, real scaling and
//! the component-wise mean).

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Triangular fuzzy number `(lo, mode, hi)` with `lo <= mode <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tfn {
    lo: f64,
    mode: f64,
    hi: f64,
}

/// Closed real interval, the result of an alpha-cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, other: &Interval) -> bool {
        self.low <= other.low && other.high <= self.high
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

/// How a fuzzy number is mapped to a single real value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Defuzzifier {
    /// `(lo + mode + hi) / 3`.
    #[default]
    Centroid,
    /// The peak of the membership function.
    Mode,
}

impl FromStr for Defuzzifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "centroid" => Ok(Defuzzifier::Centroid),
            "mode" => Ok(Defuzzifier::Mode),
            other => Err(Error::config(format!(
                "unknown defuzzification method `{other}` (expected `centroid` or `mode`)"
            ))),
        }
    }
}

impl fmt::Display for Defuzzifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Defuzzifier::Centroid => "centroid",
            Defuzzifier::Mode => "mode",
        })
    }
}

impl Tfn {
    /// Builds a TFN, rejecting non-finite components and misordered triplets.
    pub fn new(lo: f64, mode: f64, hi: f64) -> Result<Self> {
        let invalid = |reason| Error::InvalidTfn { lo, mode, hi, reason };
        if !(lo.is_finite() && mode.is_finite() && hi.is_finite()) {
            return Err(invalid("components must be finite"));
        }
        if lo > mode || mode > hi {
            return Err(invalid("components must satisfy lo <= mode <= hi"));
        }
        Ok(Tfn { lo, mode, hi })
    }

    /// The degenerate TFN `(a, a, a)` representing a crisp value.
    pub fn crisp(a: f64) -> Result<Self> {
        Tfn::new(a, a, a)
    }

    /// Caller guarantees ordering and finiteness.
    pub(crate) fn new_unchecked(lo: f64, mode: f64, hi: f64) -> Self {
        debug_assert!(lo <= mode && mode <= hi, "({lo}, {mode}, {hi})");
        Tfn { lo, mode, hi }
    }

    pub const ZERO: Tfn = Tfn {
        lo: 0.0,
        mode: 0.0,
        hi: 0.0,
    };

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn mode(&self) -> f64 {
        self.mode
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn components(&self) -> [f64; 3] {
        [self.lo, self.mode, self.hi]
    }

    /// Membership degree of `x`.
    ///
    /// A zero-width branch (`lo == mode` or `mode == hi`) is skipped, so crisp
    /// numbers `(a, a, a)` have membership one at `a` and zero elsewhere.
    pub fn membership(&self, x: f64) -> f64 {
        if x == self.mode {
            1.0
        } else if x < self.lo || x > self.hi {
            0.0
        } else if x < self.mode {
            (x - self.lo) / (self.mode - self.lo)
        } else {
            (self.hi - x) / (self.hi - self.mode)
        }
    }

    /// The alpha-cut `[(mode - lo) a + lo, hi - (hi - mode) a]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!("alpha {alpha} is outside [0, 1]")));
        }
        // Exact endpoints at the extremes, independent of rounding.
        if alpha == 1.0 {
            return Ok(Interval {
                low: self.mode,
                high: self.mode,
            });
        }
        let low = (self.mode - self.lo) * alpha + self.lo;
        let high = -(self.hi - self.mode) * alpha + self.hi;
        Ok(Interval {
            low: low.min(self.mode),
            high: high.max(self.mode),
        })
    }

    /// Multiplies by a real; a negative factor swaps the outer endpoints.
    pub fn scale(&self, k: f64) -> Tfn {
        if k >= 0.0 {
            Tfn::new_unchecked(k * self.lo, k * self.mode, k * self.hi)
        } else {
            Tfn::new_unchecked(k * self.hi, k * self.mode, k * self.lo)
        }
    }

    /// Adds a crisp value to every component.
    pub fn shift(&self, c: f64) -> Tfn {
        Tfn::new_unchecked(self.lo + c, self.mode + c, self.hi + c)
    }

    pub fn defuzzify(&self, method: Defuzzifier) -> f64 {
        match method {
            Defuzzifier::Centroid => {
                let c = (self.lo + self.mode + self.hi) / 3.0;
                c.clamp(self.lo, self.hi)
            }
            Defuzzifier::Mode => self.mode,
        }
    }

    pub fn centroid(&self) -> f64 {
        self.defuzzify(Defuzzifier::Centroid)
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn::new_unchecked(self.lo + rhs.lo, self.mode + rhs.mode, self.hi + rhs.hi)
    }
}

impl Sum for Tfn {
    fn sum<I: Iterator<Item = Tfn>>(iter: I) -> Tfn {
        iter.fold(Tfn::ZERO, Add::add)
    }
}

/// Component-wise arithmetic mean of a non-empty set of TFNs.
pub fn mean_tfns(ts: &[Tfn]) -> Result<Tfn> {
    if ts.is_empty() {
        return Err(Error::domain("cannot average an empty list of fuzzy numbers"));
    }
    let n = ts.len() as f64;
    let total: Tfn = ts.iter().copied().sum();
    Ok(Tfn::new_unchecked(total.lo / n, total.mode / n, total.hi / n))
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.lo, self.mode, self.hi)
    }
}

impl FromStr for Tfn {
    type Err = Error;

    /// Parses the `lo;mode;hi` text form, e.g. `3.54;4.54;4.87`.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::TfnSyntax { text: s.to_owned() };
        let mut parts = s.split(';').map(|p| p.trim().parse::<f64>());
        let (Some(Ok(lo)), Some(Ok(mode)), Some(Ok(hi)), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(syntax());
        };
        Tfn::new(lo, mode, hi)
    }
}

impl<'de> Deserialize<'de> for Tfn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: f64,
            mode: f64,
            hi: f64,
        }
        let raw = Raw::deserialize(d)?;
        Tfn::new(raw.lo, raw.mode, raw.hi).map_err(serde::de::Error::custom)
    }
}
