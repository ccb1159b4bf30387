//! Exhaustive search over all partial pairings, used as a ground-truth
//! oracle for the greedy pipeline.

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::eval::{apply_operations, EvalResult};
use crate::metrics::{annotation_efficiency, f_measure};
use crate::ops::{Operation, OperationLedger};
use crate::scalar::{within_window, Scalar};
use crate::sequence::BeatSequence;

/// Hard cap on the bitmasked (smaller) side; the state table grows as
/// `2^min(|dets|, |anns|)`.
const MASK_SIDE_LIMIT: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairClass {
    TruePositive,
    Shift,
}

/// Evaluates by searching every one-to-one partial pairing.
///
/// A pair within the inner window is a true positive, a pair within the
/// outer window a shift; unpaired annotations are insertions and unpaired
/// detections deletions. Among all pairings the search returns the one
/// maximizing annotation efficiency, breaking ties toward more true
/// positives, then fewer shifts, then a canonical earliest-pairing ledger
/// (events taken in ascending time, preferring to pair).
///
/// The instance must satisfy
/// `|dets| + |anns| <= config.max_exhaustive_events`.
pub fn evaluate_exhaustive<T: Scalar>(
    dets: &BeatSequence<T>,
    anns: &BeatSequence<T>,
    config: &EvalConfig<T>,
) -> Result<EvalResult<T>> {
    config.validate()?;
    let events = dets.len() + anns.len();
    if events > config.max_exhaustive_events {
        return Err(Error::TooLarge {
            events,
            limit: config.max_exhaustive_events,
        });
    }
    let smaller = dets.len().min(anns.len());
    if smaller > MASK_SIDE_LIMIT {
        return Err(Error::TooLarge {
            events: smaller,
            limit: MASK_SIDE_LIMIT,
        });
    }

    // Iterate the larger side, bitmask the smaller one.
    let anns_primary = anns.len() >= dets.len();
    let (primary, secondary) = if anns_primary {
        (anns.times(), dets.times())
    } else {
        (dets.times(), anns.times())
    };

    let classify = |p: T, q: T| -> Option<PairClass> {
        if within_window(p, q, config.inner_half_width) {
            Some(PairClass::TruePositive)
        } else if within_window(p, q, config.outer_half_width) {
            Some(PairClass::Shift)
        } else {
            None
        }
    };

    let table = AchievableTable::build(primary, secondary, &classify);
    let total = dets.len() + anns.len();
    let best = table
        .outcomes(0, 0)
        .max_by(|a, b| compare_outcomes(*a, *b, total))
        .expect("the empty pairing is always achievable");

    let operations = reconstruct(primary, secondary, &classify, &table, best, anns_primary);
    let ledger = OperationLedger::new(operations);
    let counts = ledger.counts();
    debug_assert_eq!((counts.true_positives, counts.shifts), best);
    let transformed = apply_operations(dets, &ledger)?;
    Ok(EvalResult {
        annotation_efficiency: annotation_efficiency(&counts),
        f_measure: f_measure(&counts),
        counts,
        ledger,
        transformed,
    })
}

/// Orders `(t, s)` outcomes by annotation efficiency `t / (total - t - s)`
/// (compared exactly by cross-multiplication), then more true positives,
/// then fewer shifts.
fn compare_outcomes(a: (usize, usize), b: (usize, usize), total: usize) -> std::cmp::Ordering {
    let denom_a = total - a.0 - a.1;
    let denom_b = total - b.0 - b.1;
    (a.0 * denom_b)
        .cmp(&(b.0 * denom_a))
        .then(a.0.cmp(&b.0))
        .then(b.1.cmp(&a.1))
}

/// Suffix DP: for every (primary index, used-secondary mask) the set of
/// `(true positives, shifts)` totals achievable from the remaining events.
/// One `u32` bitset of shift counts per true-positive count.
struct AchievableTable {
    rows: Vec<u32>,
    n_masks: usize,
    width: usize,
}

impl AchievableTable {
    fn build<T: Scalar>(
        primary: &[T],
        secondary: &[T],
        classify: &impl Fn(T, T) -> Option<PairClass>,
    ) -> Self {
        let n_masks = 1usize << secondary.len();
        let width = secondary.len() + 1;
        let mut rows = vec![0u32; (primary.len() + 1) * n_masks * width];

        // Base case: nothing left to pair.
        for mask in 0..n_masks {
            rows[(primary.len() * n_masks + mask) * width] = 1; // (t=0, s=0)
        }
        for i in (0..primary.len()).rev() {
            for mask in 0..n_masks {
                let base = (i * n_masks + mask) * width;
                let skip = ((i + 1) * n_masks + mask) * width;
                for t in 0..width {
                    rows[base + t] = rows[skip + t];
                }
                for (j, &q) in secondary.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let Some(class) = classify(primary[i], q) else {
                        continue;
                    };
                    let taken = ((i + 1) * n_masks + (mask | (1 << j))) * width;
                    match class {
                        PairClass::TruePositive => {
                            for t in (0..width - 1).rev() {
                                rows[base + t + 1] |= rows[taken + t];
                            }
                        }
                        PairClass::Shift => {
                            for t in 0..width {
                                rows[base + t] |= rows[taken + t] << 1;
                            }
                        }
                    }
                }
            }
        }
        Self {
            rows,
            n_masks,
            width,
        }
    }

    fn contains(&self, i: usize, mask: usize, outcome: (usize, usize)) -> bool {
        let (t, s) = outcome;
        if t >= self.width || s >= self.width {
            return false;
        }
        self.rows[(i * self.n_masks + mask) * self.width + t] & (1 << s) != 0
    }

    fn outcomes(&self, i: usize, mask: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let base = (i * self.n_masks + mask) * self.width;
        (0..self.width).flat_map(move |t| {
            let bits = self.rows[base + t];
            (0..self.width).filter_map(move |s| (bits & (1 << s) != 0).then_some((t, s)))
        })
    }
}

/// Forward walk recovering a pairing that attains `target`, taking primary
/// events in ascending time and pairing each with the lowest compatible
/// secondary event that keeps the target reachable.
fn reconstruct<T: Scalar>(
    primary: &[T],
    secondary: &[T],
    classify: &impl Fn(T, T) -> Option<PairClass>,
    table: &AchievableTable,
    target: (usize, usize),
    anns_primary: bool,
) -> Vec<Operation<T>> {
    let make_pair = |p: T, q: T, class: PairClass| -> Operation<T> {
        let (detection, annotation) = if anns_primary { (q, p) } else { (p, q) };
        match class {
            PairClass::TruePositive => Operation::Match {
                detection,
                annotation,
            },
            PairClass::Shift => Operation::Shift {
                detection,
                annotation,
            },
        }
    };
    let make_unpaired_primary = |p: T| -> Operation<T> {
        if anns_primary {
            Operation::Insert { annotation: p }
        } else {
            Operation::Delete { detection: p }
        }
    };
    let make_unpaired_secondary = |q: T| -> Operation<T> {
        if anns_primary {
            Operation::Delete { detection: q }
        } else {
            Operation::Insert { annotation: q }
        }
    };

    let mut operations = Vec::with_capacity(primary.len() + secondary.len());
    let mut mask = 0usize;
    let (mut t_rem, mut s_rem) = target;
    for (i, &p) in primary.iter().enumerate() {
        let mut paired = false;
        for (j, &q) in secondary.iter().enumerate() {
            if mask & (1 << j) != 0 {
                continue;
            }
            let Some(class) = classify(p, q) else {
                continue;
            };
            let remaining = match class {
                PairClass::TruePositive if t_rem > 0 => (t_rem - 1, s_rem),
                PairClass::Shift if s_rem > 0 => (t_rem, s_rem - 1),
                _ => continue,
            };
            if table.contains(i + 1, mask | (1 << j), remaining) {
                operations.push(make_pair(p, q, class));
                mask |= 1 << j;
                (t_rem, s_rem) = remaining;
                paired = true;
                break;
            }
        }
        if !paired {
            debug_assert!(table.contains(i + 1, mask, (t_rem, s_rem)));
            operations.push(make_unpaired_primary(p));
        }
    }
    debug_assert_eq!((t_rem, s_rem), (0, 0));
    for (j, &q) in secondary.iter().enumerate() {
        if mask & (1 << j) == 0 {
            operations.push(make_unpaired_secondary(q));
        }
    }
    operations
}
