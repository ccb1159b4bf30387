//! Annotation efficiency and the classic windowed F-measure.

use crate::eval::match_true_positives;
use crate::ops::Counts;
use crate::scalar::Scalar;
use crate::sequence::BeatSequence;

/// Annotation efficiency: `t+ / (t+ + s + f+ + f-)`.
///
/// The fraction of events that needed no correction at all. Defined as 1.0
/// when all four counts are zero (two empty sequences require no effort).
pub fn annotation_efficiency(counts: &Counts) -> f64 {
    let total = counts.total();
    if total == 0 {
        return 1.0;
    }
    counts.true_positives as f64 / total as f64
}

/// Classic F-measure over shift-aware counts.
///
/// A shifted detection is both a false positive (it was misplaced) and a
/// false negative (its annotation was unmet), so `FP = f+ + s` and
/// `FN = f- + s`, giving `F = 2 t+ / (2 t+ + (f+ + s) + (f- + s))`.
/// Defined as 1.0 when all counts are zero.
pub fn f_measure(counts: &Counts) -> f64 {
    let t = counts.true_positives;
    let fp = counts.false_positives + counts.shifts;
    let fn_ = counts.false_negatives + counts.shifts;
    let denom = 2 * t + fp + fn_;
    if denom == 0 {
        return 1.0;
    }
    2.0 * t as f64 / denom as f64
}

/// F-measure computed directly from two sequences by inner-window maximum
/// matching: `F = 2m / (2m + (|dets| - m) + (|anns| - m))` where `m` is the
/// matching cardinality. 1.0 when both sequences are empty.
pub fn direct_f_measure<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    inner_half_width: T,
) -> f64 {
    let m = match_true_positives(dets, anns, inner_half_width).pairs.len();
    let denom = 2 * m + (dets.len() - m) + (anns.len() - m);
    if denom == 0 {
        return 1.0;
    }
    2.0 * m as f64 / denom as f64
}
