//! Edit-operation evaluation for beat tracking.
//!
//! Given a sequence of beat detections and a sequence of ground-truth
//! annotations, this crate computes the set of editing operations (shifts,
//! insertions, deletions) needed to bring the detections into agreement with
//! the annotations under a pair of tolerance windows, and summarises the
//! result as an *annotation efficiency* score: the fraction of events that
//! required no correction at all.
//!
//! The pipeline mirrors the manual correction workflow:
//!
//! 1. Detections inside the inner tolerance window (default ±70 ms) of an
//!    annotation are true positives and need no work.
//! 2. Each remaining annotation claims the closest free detection inside the
//!    outer tolerance window (default ±1 s); that detection is *shifted*
//!    rather than deleted and re-inserted.
//! 3. Leftover annotations become insertions, leftover detections deletions.
//!
//! On top of the single-sequence evaluation the crate provides metrical-level
//! variations of the detections ([`variations`]), plain-text beat file
//! parsing and JSON/CSV/text reports ([`io`]), and a deterministic SVG
//! rendering of the operation set ([`viz`]).
//!
//! All event times are generic over the scalar type via [`Scalar`]
//! (`f32`/`f64`); every public type defaults to `f64`, which is what the
//! file formats and the CLI use.
//!
//! ```
//! use beatedit::{evaluate, BeatSequence, EvalConfig};
//!
//! let dets = BeatSequence::new(vec![1.0, 2.5, 4.5]).unwrap();
//! let anns = BeatSequence::new(vec![1.0, 2.0, 3.0]).unwrap();
//! let result = evaluate(&dets, &anns, &EvalConfig::default()).unwrap();
//!
//! assert_eq!(result.counts.true_positives, 1);
//! assert_eq!(result.counts.shifts, 1);
//! assert_eq!(result.annotation_efficiency, 0.25);
//! assert_eq!(result.transformed.times(), &[1.0, 2.0, 3.0]);
//! ```

pub mod config;
pub mod error;
pub mod eval;
pub mod exhaustive;
pub mod io;
pub mod metrics;
pub mod ops;
pub mod scalar;
pub mod sequence;
pub mod variations;
pub mod viz;

pub use config::{EvalConfig, MatchingMode};
pub use error::{Error, Result};
pub use eval::{
    apply_operations, assign_shifts, evaluate, evaluate_with_mode, match_true_positives,
    transformation_curve, EvalResult, MatchOutcome, ShiftOutcome, TransformationCurve,
};
pub use exhaustive::evaluate_exhaustive;
pub use metrics::{annotation_efficiency, direct_f_measure, f_measure};
pub use ops::{Counts, Operation, OperationKind, OperationLedger};
pub use scalar::Scalar;
pub use sequence::BeatSequence;
pub use variations::{
    evaluate_all_variations, generate_variation, VariationKind, VariationOutcome, VariationResult,
};
pub use viz::{render_comparison_svg, render_svg, StyleTable, VizSpec};

/// Event times are expressed in seconds; `f64` is the default precision.
pub type Seconds = f64;
