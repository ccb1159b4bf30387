//! The greedy evaluation pipeline: true-positive matching, shift
//! assignment, leftover accounting, operation application and the
//! transformation curve.

use crate::config::{EvalConfig, MatchingMode};
use crate::error::{Error, Result};
use crate::exhaustive::evaluate_exhaustive;
use crate::metrics::{annotation_efficiency, f_measure};
use crate::ops::{Counts, Operation, OperationLedger};
use crate::scalar::{within_window, Scalar};
use crate::sequence::BeatSequence;

/// Result of one evaluation: tallies, the full operation ledger, both
/// metrics and the transformed detection sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<T: Scalar = f64> {
    pub counts: Counts,
    pub ledger: OperationLedger<T>,
    /// `t+ / (t+ + s + f+ + f-)`, in `[0, 1]`.
    pub annotation_efficiency: f64,
    /// Shift-aware classic F-measure, in `[0, 1]`.
    pub f_measure: f64,
    /// `apply_operations(detections, ledger)`; attains F = 1 against the
    /// annotations.
    pub transformed: BeatSequence<T>,
}

/// Output of [`match_true_positives`]: the one-to-one pairing and what is
/// left on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchOutcome<T: Scalar = f64> {
    /// `(detection, annotation)` pairs in ascending annotation order.
    pub pairs: Vec<(T, T)>,
    pub unmatched_dets: BeatSequence<T>,
    pub unmatched_anns: BeatSequence<T>,
}

/// Output of [`assign_shifts`]: the shift operations and the events that
/// could not be served.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftOutcome<T: Scalar = f64> {
    /// Shift operations in ascending annotation order.
    pub shifts: Vec<Operation<T>>,
    /// False positives: detections marked for deletion.
    pub leftover_dets: BeatSequence<T>,
    /// False negatives: annotations marked for insertion.
    pub leftover_anns: BeatSequence<T>,
}

/// Pairs detections and annotations within the inner tolerance window.
///
/// Annotations are processed in ascending time and each takes the earliest
/// unused detection inside its window. Because every window has the same
/// width, this sweep realizes a maximum one-to-one matching. The outputs
/// partition the inputs.
pub fn match_true_positives<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    inner_half_width: T,
) -> MatchOutcome<T> {
    let (pairs, unmatched_dets, unmatched_anns) =
        greedy_match(dets.times(), anns.times(), inner_half_width);
    MatchOutcome {
        pairs,
        unmatched_dets: BeatSequence::from_sorted_unchecked(unmatched_dets),
        unmatched_anns: BeatSequence::from_sorted_unchecked(unmatched_anns),
    }
}

/// Slice-level greedy sweep shared by the pipeline and the metric helpers.
pub(crate) fn greedy_match<T: Scalar>(
    dets: &[T],
    anns: &[T],
    inner_half_width: T,
) -> (Vec<(T, T)>, Vec<T>, Vec<T>) {
    let mut pairs = Vec::new();
    let mut unmatched_dets = Vec::new();
    let mut unmatched_anns = Vec::new();
    let mut di = 0;
    for &a in anns {
        // Detections strictly below the current annotation that miss its
        // window can never match a later annotation either.
        while di < dets.len() && dets[di] < a && !within_window(dets[di], a, inner_half_width) {
            unmatched_dets.push(dets[di]);
            di += 1;
        }
        if di < dets.len() && within_window(dets[di], a, inner_half_width) {
            pairs.push((dets[di], a));
            di += 1;
        } else {
            unmatched_anns.push(a);
        }
    }
    unmatched_dets.extend_from_slice(&dets[di..]);
    (pairs, unmatched_dets, unmatched_anns)
}

/// Number of true-positive pairs under the inner window; the maximum
/// matching cardinality between the two sequences.
pub(crate) fn greedy_pair_count<T: Scalar>(dets: &[T], anns: &[T], inner_half_width: T) -> usize {
    greedy_match(dets, anns, inner_half_width).0.len()
}

/// Jump arrays over the sorted detections that answer "nearest unclaimed
/// index left/right of a position" with path compression.
struct LivePool {
    right: Vec<usize>,
    left: Vec<usize>,
}

impl LivePool {
    fn new(len: usize) -> Self {
        // `right[i]` chains to the smallest live index >= i (len = none);
        // `left[s]` chains over slots s = index + 1 to the largest live
        // index < s (slot 0 = none).
        Self {
            right: (0..=len).collect(),
            left: (0..=len).collect(),
        }
    }

    fn find_right(&mut self, start: usize) -> Option<usize> {
        let none = self.right.len() - 1;
        let mut i = start.min(none);
        while self.right[i] != i {
            i = self.right[i];
        }
        let found = i;
        let mut j = start.min(none);
        while self.right[j] != j {
            let next = self.right[j];
            self.right[j] = found;
            j = next;
        }
        (found != none).then_some(found)
    }

    fn find_left(&mut self, slot: usize) -> Option<usize> {
        let mut s = slot;
        while self.left[s] != s {
            s = self.left[s];
        }
        let found = s;
        let mut j = slot;
        while self.left[j] != j {
            let next = self.left[j];
            self.left[j] = found;
            j = next;
        }
        (found != 0).then(|| found - 1)
    }

    fn claim(&mut self, index: usize) {
        self.right[index] = index + 1;
        self.left[index + 1] = index;
    }
}

/// Assigns leftover detections to leftover annotations as shifts.
///
/// Annotations are processed in ascending time; each claims the unclaimed
/// detection with the smallest `|detection - annotation|` inside the outer
/// tolerance window, ties going to the earlier detection. Unserved
/// annotations come back as false negatives, unclaimed detections as false
/// positives.
pub fn assign_shifts<T: Scalar>(
    unmatched_dets: &BeatSequence<T>,
    unmatched_anns: &BeatSequence<T>,
    outer_half_width: T,
) -> ShiftOutcome<T> {
    let dets = unmatched_dets.times();
    let mut pool = LivePool::new(dets.len());
    let mut claimed = vec![false; dets.len()];
    let mut shifts = Vec::new();
    let mut leftover_anns = Vec::new();

    for &a in unmatched_anns {
        let split = dets.partition_point(|&d| d < a);
        let left = pool
            .find_left(split)
            .filter(|&i| within_window(dets[i], a, outer_half_width));
        let right = pool
            .find_right(split)
            .filter(|&i| within_window(dets[i], a, outer_half_width));
        let chosen = match (left, right) {
            (Some(l), Some(r)) => {
                // Equidistant candidates resolve to the earlier detection.
                if (a - dets[l]).abs() <= (dets[r] - a).abs() {
                    Some(l)
                } else {
                    Some(r)
                }
            }
            (Some(l), None) => Some(l),
            (None, Some(r)) => Some(r),
            (None, None) => None,
        };
        match chosen {
            Some(i) => {
                pool.claim(i);
                claimed[i] = true;
                shifts.push(Operation::Shift {
                    detection: dets[i],
                    annotation: a,
                });
            }
            None => leftover_anns.push(a),
        }
    }

    let leftover_dets: Vec<T> = dets
        .iter()
        .zip(&claimed)
        .filter_map(|(&d, &c)| (!c).then_some(d))
        .collect();
    ShiftOutcome {
        shifts,
        leftover_dets: BeatSequence::from_sorted_unchecked(leftover_dets),
        leftover_anns: BeatSequence::from_sorted_unchecked(leftover_anns),
    }
}

/// Runs the full greedy pipeline and assembles the result.
///
/// True-positive matching, then shift assignment; leftover annotations are
/// recorded as insertions and leftover detections as deletions. The
/// returned transformed sequence attains F = 1 against the annotations.
pub fn evaluate<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    config: &EvalConfig<T>,
) -> Result<EvalResult<T>> {
    config.validate()?;
    let matched = match_true_positives(dets, anns, config.inner_half_width);
    let shifted = assign_shifts(
        &matched.unmatched_dets,
        &matched.unmatched_anns,
        config.outer_half_width,
    );

    let mut operations =
        Vec::with_capacity(matched.pairs.len() + shifted.shifts.len() + dets.len() + anns.len());
    operations.extend(matched.pairs.iter().map(|&(detection, annotation)| {
        Operation::Match {
            detection,
            annotation,
        }
    }));
    operations.extend(shifted.shifts.iter().copied());
    operations.extend(
        shifted
            .leftover_anns
            .iter()
            .map(|&annotation| Operation::Insert { annotation }),
    );
    operations.extend(
        shifted
            .leftover_dets
            .iter()
            .map(|&detection| Operation::Delete { detection }),
    );

    let ledger = OperationLedger::new(operations);
    let counts = ledger.counts();
    let transformed = apply_operations(dets, &ledger)?;
    Ok(EvalResult {
        annotation_efficiency: annotation_efficiency(&counts),
        f_measure: f_measure(&counts),
        counts,
        ledger,
        transformed,
    })
}

/// Dispatches on [`EvalConfig::matching_mode`].
pub fn evaluate_with_mode<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    config: &EvalConfig<T>,
) -> Result<EvalResult<T>> {
    match config.matching_mode {
        MatchingMode::Greedy => evaluate(dets, anns, config),
        MatchingMode::Exhaustive => evaluate_exhaustive(dets, anns, config),
    }
}

/// Consumes one unused instance of `time` from the detection multiset.
fn consume<T: Scalar>(times: &[T], used: &mut [bool], time: T, what: &str) -> Result<()> {
    let mut i = times.partition_point(|&x| x < time);
    while i < times.len() && times[i] == time {
        if !used[i] {
            used[i] = true;
            return Ok(());
        }
        i += 1;
    }
    Err(Error::InconsistentLedger(format!(
        "{what} operation references detection time {} not present in the sequence",
        time.as_f64()
    )))
}

/// Applies a ledger to a detection sequence.
///
/// Matched detections stay where they are, shifted detections land exactly
/// on their annotation times, deletions are removed, insertions added; the
/// result is re-sorted (shifts may cross neighbouring detections).
/// Detections not referenced by the ledger are kept unchanged.
pub fn apply_operations<T: Scalar>(
    dets: &BeatSequence<T>,
    ledger: &OperationLedger<T>,
) -> Result<BeatSequence<T>> {
    let times = dets.times();
    let mut used = vec![false; times.len()];
    let mut out: Vec<T> = Vec::with_capacity(times.len() + ledger.len());
    for op in ledger {
        match *op {
            Operation::Match { detection, .. } => {
                consume(times, &mut used, detection, "match")?;
                out.push(detection);
            }
            Operation::Shift {
                detection,
                annotation,
            } => {
                consume(times, &mut used, detection, "shift")?;
                out.push(annotation);
            }
            Operation::Insert { annotation } => out.push(annotation),
            Operation::Delete { detection } => {
                consume(times, &mut used, detection, "delete")?;
            }
        }
    }
    out.extend(
        times
            .iter()
            .zip(&used)
            .filter_map(|(&t, &u)| (!u).then_some(t)),
    );
    out.sort_by(|a, b| a.partial_cmp(b).expect("beat times are finite"));
    Ok(BeatSequence::from_sorted_unchecked(out))
}

/// F-measure trajectory while a ledger is applied step by step.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformationCurve<T: Scalar = f64> {
    /// Classic F-measure of the untouched detections.
    pub initial_f: f64,
    /// Each applied operation with the F-measure reached after it.
    pub steps: Vec<(Operation<T>, f64)>,
}

impl<T: Scalar> TransformationCurve<T> {
    /// F-measure after the last step (the initial value if there are none).
    pub fn final_f(&self) -> f64 {
        self.steps.last().map_or(self.initial_f, |step| step.1)
    }

    /// Initial value followed by the per-step values.
    pub fn f_values(&self) -> Vec<f64> {
        std::iter::once(self.initial_f)
            .chain(self.steps.iter().map(|step| step.1))
            .collect()
    }
}

/// Applies the ledger one operation at a time — shifts first, then
/// insertions, then deletions, chronologically within each kind — and
/// records the classic F-measure after every step.
///
/// Matches are not steps: they require no work. For a ledger produced
/// against a non-empty annotation sequence the curve ends at 1.0.
pub fn transformation_curve<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    ledger: &OperationLedger<T>,
    config: &EvalConfig<T>,
) -> Result<TransformationCurve<T>> {
    config.validate()?;
    // Validates ledger-vs-detections consistency up front.
    apply_operations(dets, ledger)?;

    let inner = config.inner_half_width;
    let ann_times = anns.times();
    let mut current: Vec<T> = dets.times().to_vec();
    let direct_f = |seq: &[T]| -> f64 {
        let m = greedy_pair_count(seq, ann_times, inner);
        let denom = 2 * m + (seq.len() - m) + (ann_times.len() - m);
        if denom == 0 {
            1.0
        } else {
            2.0 * m as f64 / denom as f64
        }
    };

    let initial_f = direct_f(&current);
    let mut steps = Vec::new();
    let ordered = ledger
        .shifts()
        .chain(ledger.inserts())
        .chain(ledger.deletes());
    for op in ordered {
        match *op {
            Operation::Shift {
                detection,
                annotation,
            } => {
                remove_one(&mut current, detection);
                insert_sorted(&mut current, annotation);
            }
            Operation::Insert { annotation } => insert_sorted(&mut current, annotation),
            Operation::Delete { detection } => remove_one(&mut current, detection),
            Operation::Match { .. } => unreachable!("matches are filtered out"),
        }
        steps.push((*op, direct_f(&current)));
    }
    Ok(TransformationCurve { initial_f, steps })
}

fn remove_one<T: Scalar>(times: &mut Vec<T>, time: T) {
    let i = times.partition_point(|&x| x < time);
    debug_assert!(i < times.len() && times[i] == time, "validated by apply_operations");
    times.remove(i);
}

fn insert_sorted<T: Scalar>(times: &mut Vec<T>, time: T) {
    let i = times.partition_point(|&x| x < time);
    times.insert(i, time);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::OperationKind;
    use approx::assert_abs_diff_eq;

    fn seq(times: &[f64]) -> BeatSequence {
        BeatSequence::new(times.to_vec()).unwrap()
    }

    fn hand_trace() -> (BeatSequence, BeatSequence) {
        (seq(&[1.0, 2.5, 4.5]), seq(&[1.0, 2.0, 3.0]))
    }

    #[test]
    fn matching_pairs_earliest_unused_detection() {
        let out = match_true_positives(&seq(&[1.00, 2.05, 3.50]), &seq(&[1.00, 2.00, 3.00]), 0.07);
        assert_eq!(out.pairs, vec![(1.00, 1.00), (2.05, 2.00)]);
        assert_eq!(out.unmatched_dets.times(), &[3.50]);
        assert_eq!(out.unmatched_anns.times(), &[3.00]);
    }

    #[test]
    fn matching_identity_case() {
        let s = seq(&[0.5, 1.0, 1.5]);
        let out = match_true_positives(&s, &s, 0.07);
        assert_eq!(out.pairs.len(), 3);
        assert!(out.unmatched_dets.is_empty());
        assert!(out.unmatched_anns.is_empty());
    }

    #[test]
    fn matching_with_empty_detections() {
        let out = match_true_positives(&BeatSequence::empty(), &seq(&[1.0]), 0.07);
        assert!(out.pairs.is_empty());
        assert_eq!(out.unmatched_anns.times(), &[1.0]);
    }

    #[test]
    fn matching_resolves_interleaved_candidates() {
        // Both detections sit inside both windows; the sweep keeps
        // cardinality at two where nearest-first pairing would drop to one.
        let out = match_true_positives(&seq(&[1.01, 1.03]), &seq(&[1.00, 1.05]), 0.07);
        assert_eq!(out.pairs, vec![(1.01, 1.00), (1.03, 1.05)]);
    }

    #[test]
    fn shift_assignment_takes_closest_within_outer_window() {
        let out = assign_shifts(&seq(&[2.5, 4.5]), &seq(&[2.0, 3.0]), 1.0);
        assert_eq!(out.shifts.len(), 1);
        assert_eq!(
            out.shifts[0],
            Operation::Shift {
                detection: 2.5,
                annotation: 2.0
            }
        );
        assert_eq!(out.shifts[0].offset(), Some(-0.5));
        assert_eq!(out.leftover_dets.times(), &[4.5]);
        assert_eq!(out.leftover_anns.times(), &[3.0]);
    }

    #[test]
    fn shift_assignment_empty_inputs() {
        let out = assign_shifts(&BeatSequence::empty(), &BeatSequence::empty(), 1.0);
        assert!(out.shifts.is_empty());
        assert!(out.leftover_dets.is_empty());
        assert!(out.leftover_anns.is_empty());
    }

    #[test]
    fn shift_assignment_tie_goes_to_earlier_detection() {
        let out = assign_shifts(&seq(&[1.5, 2.5]), &seq(&[2.0]), 1.0);
        assert_eq!(
            out.shifts,
            vec![Operation::Shift {
                detection: 1.5,
                annotation: 2.0
            }]
        );
        assert_eq!(out.shifts[0].offset(), Some(0.5));
        assert_eq!(out.leftover_dets.times(), &[2.5]);
    }

    #[test]
    fn evaluate_hand_trace() {
        let (dets, anns) = hand_trace();
        let result = evaluate(&dets, &anns, &EvalConfig::default()).unwrap();
        assert_eq!(result.counts, Counts::new(1, 1, 1, 1));
        assert_eq!(result.annotation_efficiency, 0.25);
        assert_abs_diff_eq!(result.f_measure, 1.0 / 3.0, epsilon = 1e-12);
        let kinds: Vec<_> = result.ledger.iter().map(Operation::kind).collect();
        assert_eq!(
            kinds,
            vec![
                OperationKind::Match,
                OperationKind::Shift,
                OperationKind::Insert,
                OperationKind::Delete
            ]
        );
        assert_eq!(result.transformed.times(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn evaluate_identity_is_all_matches() {
        let s = seq(&[0.5, 1.0, 2.0, 3.3]);
        let result = evaluate(&s, &s, &EvalConfig::default()).unwrap();
        assert_eq!(result.annotation_efficiency, 1.0);
        assert_eq!(result.counts, Counts::new(4, 0, 0, 0));
    }

    #[test]
    fn evaluate_empty_detections_yields_insertions() {
        let result = evaluate(
            &BeatSequence::empty(),
            &seq(&[1.0, 2.0, 3.0]),
            &EvalConfig::default(),
        )
        .unwrap();
        assert_eq!(result.counts, Counts::new(0, 0, 0, 3));
        assert_eq!(result.annotation_efficiency, 0.0);
        assert_eq!(result.ledger.inserts().count(), 3);
        assert_eq!(result.transformed.times(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn evaluate_rejects_invalid_config() {
        let (dets, anns) = hand_trace();
        let bad = EvalConfig {
            inner_half_width: 2.0,
            outer_half_width: 1.0,
            ..EvalConfig::default()
        };
        assert!(matches!(
            evaluate(&dets, &anns, &bad),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn apply_operations_hand_trace() {
        let (dets, anns) = hand_trace();
        let result = evaluate(&dets, &anns, &EvalConfig::default()).unwrap();
        let transformed = apply_operations(&dets, &result.ledger).unwrap();
        assert_eq!(transformed.times(), anns.times());
    }

    #[test]
    fn apply_operations_with_only_matches_keeps_detections() {
        let dets = seq(&[1.0, 2.0]);
        let ledger = OperationLedger::new(vec![
            Operation::Match {
                detection: 1.0,
                annotation: 1.01,
            },
            Operation::Match {
                detection: 2.0,
                annotation: 1.99,
            },
        ]);
        let transformed = apply_operations(&dets, &ledger).unwrap();
        assert_eq!(transformed.times(), &[1.0, 2.0]);
    }

    #[test]
    fn apply_operations_inserts_into_empty_sequence() {
        let ledger = OperationLedger::new(vec![
            Operation::Insert { annotation: 1.0 },
            Operation::Insert { annotation: 2.0 },
        ]);
        let transformed = apply_operations(&BeatSequence::empty(), &ledger).unwrap();
        assert_eq!(transformed.times(), &[1.0, 2.0]);
    }

    #[test]
    fn apply_operations_rejects_unknown_detection() {
        let dets = seq(&[1.0]);
        let ledger = OperationLedger::new(vec![Operation::Delete { detection: 9.0 }]);
        assert!(matches!(
            apply_operations(&dets, &ledger),
            Err(Error::InconsistentLedger(_))
        ));
    }

    #[test]
    fn apply_operations_consumes_duplicates_once_each() {
        let dets = seq(&[1.0, 1.0]);
        let ledger = OperationLedger::new(vec![
            Operation::Delete { detection: 1.0 },
            Operation::Delete { detection: 1.0 },
        ]);
        let transformed = apply_operations(&dets, &ledger).unwrap();
        assert!(transformed.is_empty());

        let over = OperationLedger::new(vec![
            Operation::Delete { detection: 1.0 },
            Operation::Delete { detection: 1.0 },
            Operation::Delete { detection: 1.0 },
        ]);
        assert!(apply_operations(&dets, &over).is_err());
    }

    #[test]
    fn transformation_curve_hand_trace() {
        let (dets, anns) = hand_trace();
        let config = EvalConfig::default();
        let result = evaluate(&dets, &anns, &config).unwrap();
        let curve = transformation_curve(&dets, &anns, &result.ledger, &config).unwrap();
        let expected = [1.0 / 3.0, 2.0 / 3.0, 6.0 / 7.0, 1.0];
        let actual = curve.f_values();
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert_abs_diff_eq!(*a, e, epsilon = 1e-9);
        }
        let kinds: Vec<_> = curve.steps.iter().map(|(op, _)| op.kind()).collect();
        assert_eq!(
            kinds,
            vec![
                OperationKind::Shift,
                OperationKind::Insert,
                OperationKind::Delete
            ]
        );
    }

    #[test]
    fn transformation_curve_of_aligned_sequences_is_flat_one() {
        let s = seq(&[1.0, 2.0, 3.0]);
        let config = EvalConfig::default();
        let result = evaluate(&s, &s, &config).unwrap();
        let curve = transformation_curve(&s, &s, &result.ledger, &config).unwrap();
        assert!(curve.steps.is_empty());
        assert_eq!(curve.initial_f, 1.0);
        assert_eq!(curve.final_f(), 1.0);
    }

    #[test]
    fn pipeline_works_for_f32() {
        let dets = BeatSequence::<f32>::new(vec![1.0, 2.5, 4.5]).unwrap();
        let anns = BeatSequence::<f32>::new(vec![1.0, 2.0, 3.0]).unwrap();
        let result = evaluate(&dets, &anns, &EvalConfig::<f32>::default()).unwrap();
        assert_eq!(result.counts, Counts::new(1, 1, 1, 1));
        assert_eq!(result.annotation_efficiency, 0.25);
    }
}
