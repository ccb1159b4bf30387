//! Evaluation configuration: tolerance windows, matching mode, variations.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::variations::VariationKind;

/// Default inner tolerance half-width: ±70 ms.
pub const DEFAULT_INNER_HALF_WIDTH: f64 = 0.070;
/// Default outer tolerance half-width: ±1 s.
pub const DEFAULT_OUTER_HALF_WIDTH: f64 = 1.000;
/// Default cap on `|detections| + |annotations|` for the exhaustive search.
pub const DEFAULT_MAX_EXHAUSTIVE_EVENTS: usize = 24;

/// Which matching procedure drives an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingMode {
    /// The greedy sweep: true-positive matching then closest-detection
    /// shift assignment. This is the reference procedure.
    #[default]
    Greedy,
    /// Exhaustive search over all pairings, maximizing annotation
    /// efficiency. Guarded by [`EvalConfig::max_exhaustive_events`].
    Exhaustive,
}

/// Tolerance windows and evaluation options.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig<T: Scalar = f64> {
    /// Half-width of the inner tolerance window in seconds. A detection
    /// within this distance of an annotation is a true positive.
    pub inner_half_width: T,
    /// Half-width of the outer tolerance window in seconds. A leftover
    /// detection within this distance of a leftover annotation can be
    /// shifted onto it instead of being deleted and re-inserted.
    pub outer_half_width: T,
    /// Matching procedure used by the drivers ([`crate::evaluate_with_mode`],
    /// variation sweeps, the CLI).
    pub matching_mode: MatchingMode,
    /// Variations evaluated by [`crate::evaluate_all_variations`], in order.
    pub variation_kinds: Vec<VariationKind>,
    /// Size guard for [`crate::evaluate_exhaustive`].
    pub max_exhaustive_events: usize,
}

impl<T: Scalar> Default for EvalConfig<T> {
    fn default() -> Self {
        Self {
            inner_half_width: T::from_f64_lossy(DEFAULT_INNER_HALF_WIDTH),
            outer_half_width: T::from_f64_lossy(DEFAULT_OUTER_HALF_WIDTH),
            matching_mode: MatchingMode::Greedy,
            variation_kinds: VariationKind::all().to_vec(),
            max_exhaustive_events: DEFAULT_MAX_EXHAUSTIVE_EVENTS,
        }
    }
}

impl<T: Scalar> EvalConfig<T> {
    /// Default config with the given tolerance half-widths.
    pub fn with_windows(inner_half_width: T, outer_half_width: T) -> Result<Self> {
        let config = Self {
            inner_half_width,
            outer_half_width,
            ..Self::default()
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks `0 < inner <= outer` and that both half-widths are finite.
    pub fn validate(&self) -> Result<()> {
        let inner = self.inner_half_width;
        let outer = self.outer_half_width;
        if !inner.is_finite() || !outer.is_finite() {
            return Err(Error::InvalidConfig(
                "tolerance half-widths must be finite".into(),
            ));
        }
        if inner <= T::zero() {
            return Err(Error::InvalidConfig(format!(
                "inner half-width must be positive, got {}",
                inner.as_f64()
            )));
        }
        if inner > outer {
            return Err(Error::InvalidConfig(format!(
                "inner half-width {} exceeds outer half-width {}",
                inner.as_f64(),
                outer.as_f64()
            )));
        }
        Ok(())
    }
}
