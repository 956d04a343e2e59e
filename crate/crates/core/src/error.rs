//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Far-field integrand does not decay: requires growth exponent < 2t.
    #[error("non-integrable tail: growth exponent {growth} >= 2t = {two_t}")]
    NonIntegrableTail { growth: f64, two_t: f64 },

    /// Evaluation point too close to a singular feature of a merely Hölder
    /// function; the near-field symmetric kernel needs local C² regularity.
    #[error("evaluation point within {dist} of a singularity (split radius {split})")]
    NonSmoothEvaluationPoint { dist: f64, split: f64 },

    /// Barrier amplitude sweep exhausted without meeting the sampled inequality.
    #[error("barrier calibration failed: no amplitude <= {cap} satisfies the sampled inequality (best margin {best_margin})")]
    CalibrationFailed { cap: f64, best_margin: f64 },

    /// Too few admissible node pairs for a seminorm scan.
    #[error("grid too coarse: {pairs} admissible pairs (need >= {min_pairs})")]
    GridTooCoarse { pairs: usize, min_pairs: usize },

    /// Rate fit received data it cannot fit (all values equal, or nonpositive).
    #[error("degenerate data for rate fit: {reason}")]
    DegenerateData { reason: String },

    /// Convergence study lacks a reference solution.
    #[error("reference unavailable: {0}")]
    ReferenceUnavailable(String),

    /// Dense collocation solve hit a (numerically) singular matrix.
    #[error("singular collocation system at pivot {pivot}")]
    SingularSystem { pivot: usize },

    /// Kelvin-transformed evaluator queried at the origin.
    #[error("Kelvin transform evaluated at the origin")]
    EvaluationAtOrigin,

    /// Parameter outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<V> = std::result::Result<V, Error>;
