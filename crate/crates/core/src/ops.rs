//! Editing operations, the operation ledger, and the four tallies.

use crate::scalar::Scalar;

/// One editing operation against a detection sequence.
///
/// A `Match` records a true positive (no edit needed); a `Shift` moves a
/// detection onto an annotation; an `Insert` adds a missing detection at an
/// annotation time; a `Delete` removes a spurious detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operation<T: Scalar = f64> {
    Match { detection: T, annotation: T },
    Shift { detection: T, annotation: T },
    Insert { annotation: T },
    Delete { detection: T },
}

/// Discriminant of [`Operation`], in canonical ledger order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperationKind {
    Match,
    Shift,
    Insert,
    Delete,
}

impl OperationKind {
    /// Stable lowercase name, used in reports and SVG classes.
    pub fn name(self) -> &'static str {
        match self {
            OperationKind::Match => "match",
            OperationKind::Shift => "shift",
            OperationKind::Insert => "insert",
            OperationKind::Delete => "delete",
        }
    }
}

impl<T: Scalar> Operation<T> {
    pub fn kind(&self) -> OperationKind {
        match self {
            Operation::Match { .. } => OperationKind::Match,
            Operation::Shift { .. } => OperationKind::Shift,
            Operation::Insert { .. } => OperationKind::Insert,
            Operation::Delete { .. } => OperationKind::Delete,
        }
    }

    /// Detection time, absent for insertions.
    pub fn detection_time(&self) -> Option<T> {
        match *self {
            Operation::Match { detection, .. }
            | Operation::Shift { detection, .. }
            | Operation::Delete { detection } => Some(detection),
            Operation::Insert { .. } => None,
        }
    }

    /// Annotation time, absent for deletions.
    pub fn annotation_time(&self) -> Option<T> {
        match *self {
            Operation::Match { annotation, .. }
            | Operation::Shift { annotation, .. }
            | Operation::Insert { annotation } => Some(annotation),
            Operation::Delete { .. } => None,
        }
    }

    /// Signed correction offset `annotation - detection`; `Some` only for
    /// shifts.
    pub fn offset(&self) -> Option<T> {
        match *self {
            Operation::Shift {
                detection,
                annotation,
            } => Some(annotation - detection),
            _ => None,
        }
    }

    /// Sort key within a ledger: kind first, then the operation's own
    /// chronology (annotation time where present, detection time for
    /// deletions), then the secondary time.
    fn ledger_key(&self) -> (OperationKind, f64, f64) {
        let primary = match *self {
            Operation::Match { annotation, .. }
            | Operation::Shift { annotation, .. }
            | Operation::Insert { annotation } => annotation.as_f64(),
            Operation::Delete { detection } => detection.as_f64(),
        };
        let secondary = self.detection_time().map_or(0.0, Scalar::as_f64);
        (self.kind(), primary, secondary)
    }
}

/// The four tallies that summarise an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    /// Detections inside the inner window of an annotation (`t+`).
    pub true_positives: usize,
    /// Detections moved onto an annotation within the outer window (`s`).
    pub shifts: usize,
    /// Leftover detections, marked for deletion (`f+`).
    pub false_positives: usize,
    /// Leftover annotations, marked for insertion (`f-`).
    pub false_negatives: usize,
}

impl Counts {
    pub fn new(
        true_positives: usize,
        shifts: usize,
        false_positives: usize,
        false_negatives: usize,
    ) -> Self {
        Self {
            true_positives,
            shifts,
            false_positives,
            false_negatives,
        }
    }

    /// Total number of events involved: `t+ + s + f+ + f-`.
    pub fn total(&self) -> usize {
        self.true_positives + self.shifts + self.false_positives + self.false_negatives
    }
}

/// Ordered record of every operation from one evaluation.
///
/// Operations are stored in canonical order: matches first, then shifts,
/// insertions and deletions, chronologically within each kind. For ledgers
/// produced by the evaluation pipeline, each detection and each annotation
/// instance appears in exactly one operation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OperationLedger<T: Scalar = f64> {
    operations: Vec<Operation<T>>,
}

impl<T: Scalar> OperationLedger<T> {
    /// Builds a ledger, normalizing the operations into canonical order.
    pub fn new(mut operations: Vec<Operation<T>>) -> Self {
        operations.sort_by(|a, b| {
            a.ledger_key()
                .partial_cmp(&b.ledger_key())
                .expect("ledger times are finite")
        });
        Self { operations }
    }

    pub fn operations(&self) -> &[Operation<T>] {
        &self.operations
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Operation<T>> {
        self.operations.iter()
    }

    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    fn of_kind(&self, kind: OperationKind) -> impl Iterator<Item = &Operation<T>> {
        self.operations.iter().filter(move |op| op.kind() == kind)
    }

    pub fn matches(&self) -> impl Iterator<Item = &Operation<T>> {
        self.of_kind(OperationKind::Match)
    }

    pub fn shifts(&self) -> impl Iterator<Item = &Operation<T>> {
        self.of_kind(OperationKind::Shift)
    }

    pub fn inserts(&self) -> impl Iterator<Item = &Operation<T>> {
        self.of_kind(OperationKind::Insert)
    }

    pub fn deletes(&self) -> impl Iterator<Item = &Operation<T>> {
        self.of_kind(OperationKind::Delete)
    }

    /// Tallies the ledger into [`Counts`].
    pub fn counts(&self) -> Counts {
        let mut counts = Counts::default();
        for op in &self.operations {
            match op.kind() {
                OperationKind::Match => counts.true_positives += 1,
                OperationKind::Shift => counts.shifts += 1,
                OperationKind::Insert => counts.false_negatives += 1,
                OperationKind::Delete => counts.false_positives += 1,
            }
        }
        counts
    }

    /// All detection times referenced by the ledger, ascending. For pipeline
    /// ledgers this reconstructs the original detection sequence.
    pub fn detection_times(&self) -> Vec<T> {
        let mut times: Vec<T> = self
            .operations
            .iter()
            .filter_map(Operation::detection_time)
            .collect();
        times.sort_by(|a, b| a.partial_cmp(b).expect("ledger times are finite"));
        times
    }
}

impl<'a, T: Scalar> IntoIterator for &'a OperationLedger<T> {
    type Item = &'a Operation<T>;
    type IntoIter = std::slice::Iter<'a, Operation<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.operations.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_normalizes_to_canonical_order() {
        let ledger = OperationLedger::new(vec![
            Operation::Delete { detection: 4.5 },
            Operation::Insert { annotation: 3.0 },
            Operation::Shift {
                detection: 2.5,
                annotation: 2.0,
            },
            Operation::Match {
                detection: 1.0,
                annotation: 1.0,
            },
        ]);
        let kinds: Vec<_> = ledger.iter().map(Operation::kind).collect();
        assert_eq!(
            kinds,
            vec![
                OperationKind::Match,
                OperationKind::Shift,
                OperationKind::Insert,
                OperationKind::Delete
            ]
        );
    }

    #[test]
    fn offset_is_annotation_minus_detection() {
        let shift = Operation::Shift {
            detection: 2.5,
            annotation: 2.0,
        };
        assert_eq!(shift.offset(), Some(-0.5));
        let m = Operation::Match {
            detection: 1.0,
            annotation: 1.0,
        };
        assert_eq!(m.offset(), None);
    }

    #[test]
    fn counts_tally_by_kind() {
        let ledger = OperationLedger::new(vec![
            Operation::Match {
                detection: 1.0,
                annotation: 1.0,
            },
            Operation::Shift {
                detection: 2.5,
                annotation: 2.0,
            },
            Operation::Insert { annotation: 3.0 },
            Operation::Delete { detection: 4.5 },
        ]);
        assert_eq!(ledger.counts(), Counts::new(1, 1, 1, 1));
        assert_eq!(ledger.detection_times(), vec![1.0, 2.5, 4.5]);
    }
}
