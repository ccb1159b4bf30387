//! Validated sequences of event times.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An ascending sequence of event times in seconds.
///
/// Holds either beat detections or ground-truth annotations. Times are
/// finite, non-negative and sorted in non-decreasing order; duplicates are
/// retained. The sequence may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct BeatSequence<T: Scalar = f64> {
    times: Vec<T>,
}

impl<T: Scalar> BeatSequence<T> {
    /// Builds a sequence from raw times, rejecting negative or non-finite
    /// values. Input that is not already sorted is sorted; callers that need
    /// to report that normalization (the beat-file parser does) should check
    /// order beforehand.
    pub fn new(times: Vec<T>) -> Result<Self> {
        for (index, &t) in times.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::InvalidTime {
                    index,
                    value: t.as_f64(),
                    reason: "time must be finite",
                });
            }
            if t < T::zero() {
                return Err(Error::InvalidTime {
                    index,
                    value: t.as_f64(),
                    reason: "time must be non-negative",
                });
            }
        }
        let mut times = times;
        if !is_sorted(&times) {
            times.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        }
        Ok(Self { times })
    }

    /// The empty sequence.
    pub fn empty() -> Self {
        Self { times: Vec::new() }
    }

    /// Event times in ascending order.
    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.times.iter()
    }

    /// First event time, if any.
    pub fn first(&self) -> Option<T> {
        self.times.first().copied()
    }

    /// Last event time, if any.
    pub fn last(&self) -> Option<T> {
        self.times.last().copied()
    }

    /// Internal constructor for times that are known to be valid and sorted
    /// (outputs of the evaluation pipeline and the variation generators).
    pub(crate) fn from_sorted_unchecked(times: Vec<T>) -> Self {
        debug_assert!(is_sorted(&times));
        Self { times }
    }
}

impl<'a, T: Scalar> IntoIterator for &'a BeatSequence<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.times.iter()
    }
}

pub(crate) fn is_sorted<T: Scalar>(times: &[T]) -> bool {
    times.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_sorted_input() {
        let seq = BeatSequence::new(vec![0.0, 1.0, 1.0, 2.5]).unwrap();
        assert_eq!(seq.times(), &[0.0, 1.0, 1.0, 2.5]);
    }

    #[test]
    fn sorts_unsorted_input() {
        let seq = BeatSequence::new(vec![2.0, 1.0]).unwrap();
        assert_eq!(seq.times(), &[1.0, 2.0]);
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(matches!(
            BeatSequence::new(vec![1.0, -0.5]),
            Err(Error::InvalidTime { index: 1, .. })
        ));
        assert!(BeatSequence::new(vec![f64::NAN]).is_err());
        assert!(BeatSequence::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn empty_is_fine() {
        let seq = BeatSequence::<f64>::new(vec![]).unwrap();
        assert!(seq.is_empty());
    }
}
