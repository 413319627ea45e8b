//! Triangular fuzzy rescaling and fuzzy experiential tourism value (FTV)
//! aggregation.
//!
//! Expert scores are triangular fuzzy numbers on heterogeneous factor
//! scales. Each score is min-max rescaled onto a common target range, the
//! rescaled scores are combined with factor weights into one fuzzy value per
//! attraction, and that value is defuzzified to classify, filter and rank
//! attractions. A spatial stage turns the results into a density heatmap,
//! hotspots and a shortest walking circuit.
//!
//! ```
//! use ftv_core::fuzzy::Tfn;
//! use ftv_core::normalize::{rescale_tfn, SourceRange, TargetRange};
//!
//! let score = Tfn::new(-1.18, -0.18, -0.02).unwrap();
//! let src = SourceRange::new(-5.0, 0.0).unwrap();
//! let r = rescale_tfn(&score, src, TargetRange::percent()).unwrap();
//! assert!((r.lo() - 76.4).abs() < 1e-9);
//! ```

pub mod ahp;
pub mod error;
pub mod fuzzy;
pub mod normalize;
pub mod pipeline;
pub mod reference;
pub mod spatial;
pub mod valuation;

pub use error::{Error, ErrorClass, Result};
pub use fuzzy::{mean_tfns, Defuzzifier, Interval, Tfn};
pub use normalize::{rescale_crisp, rescale_tfn, RangePolicy, SourceRange, TargetRange};
pub use valuation::{
    classify, compute_ftv, compute_ftv_with, crisp_tourism_value, filter_high, rank, AttractionEvaluation,
    FactorCatalogue, FactorDefinition, Tier, TierThresholds, ValuationResult,
};
