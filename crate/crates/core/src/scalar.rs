//! Scalar abstraction for event times: any IEEE float (`f32` or `f64`).

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Absolute slack applied to every tolerance-window comparison, in seconds.
///
/// Window tests are closed intervals; a detection exactly on the ±70 ms
/// boundary counts as inside. The slack keeps such boundary cases stable
/// against floating-point noise.
pub const WINDOW_SLACK: f64 = 1e-9;

/// Scalar type for event times in seconds.
///
/// Implemented for `f32` and `f64` (and anything else satisfying the
/// bounds). The crate-level defaults use `f64`.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug {
    /// Lossy conversion from `f64`, for constants and defaults.
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to any float scalar")
    }

    /// Conversion to `f64`, for formatting and pixel math.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float scalar converts to f64")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + ToPrimitive + Debug {}

/// Closed-interval window test with [`WINDOW_SLACK`] absolute slack:
/// `|a - b| <= half_width + slack`.
pub fn within_window<T: Scalar>(a: T, b: T, half_width: T) -> bool {
    (a - b).abs() <= half_width + T::from_f64_lossy(WINDOW_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_is_inside() {
        assert!(within_window(1.07f64, 1.0, 0.07));
        assert!(within_window(0.93f64, 1.0, 0.07));
        assert!(!within_window(1.0800001f64, 1.0, 0.07));
    }

    #[test]
    fn works_for_f32() {
        assert!(within_window(1.07f32, 1.0, 0.07));
        assert!(!within_window(1.09f32, 1.0, 0.07));
    }
}
