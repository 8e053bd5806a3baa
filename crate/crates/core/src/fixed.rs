//! Exact fixed-point accumulation of nonnegative distances.
//!
//! A distance `d` is stored as `floor(d * 2^64)`. Sums of these integers
//! are exact and order independent, and a window mean is the rational
//! `sum / (len * 2^64)`, compared exactly and rounded to `f64` once.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub const FRACTION_BITS: i32 = 64;

/// Quantize a nonnegative distance. Values must stay below `2^40`.
#[inline]
pub fn quantize(d: f64) -> u128 {
    debug_assert!((0.0..1.0e12).contains(&d), "distance {d} out of range");
    // exact scaling by a power of two, then truncation
    (d * 18446744073709551616.0) as u128
}

/// Signed counterpart of [`quantize`] for bounded test-function values.
#[inline]
pub fn quantize_signed(v: f64) -> i128 {
    debug_assert!(v.abs() < 1.0e12);
    (v * 18446744073709551616.0).floor() as i128
}

/// Correctly rounded `num / (den * 2^shift)`.
pub fn ratio_to_f64(num: u128, den: u128, shift: i32) -> f64 {
    assert!(den > 0);
    if num == 0 {
        return 0.0;
    }
    let k = num.leading_zeros().saturating_sub(1);
    let scaled = num << k;
    let q = scaled / den;
    let r = scaled % den;
    // q has at least 55 significant bits here, so a sticky low bit is
    // enough for round-to-nearest in the cast
    let sticky = u128::from(r != 0);
    let mantissa = (q | sticky) as f64;
    scale_pow2(mantissa, -(shift + k as i32))
}

/// Correctly rounded `num / (den * 2^shift)` for signed numerators.
pub fn signed_ratio_to_f64(num: i128, den: u128, shift: i32) -> f64 {
    let mag = ratio_to_f64(num.unsigned_abs(), den, shift);
    if num < 0 {
        -mag
    } else {
        mag
    }
}

fn scale_pow2(x: f64, e: i32) -> f64 {
    // split to keep every factor a normal power of two
    let mut x = x;
    let mut e = e;
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    x * 2f64.powi(e)
}

/// The exact mean of a window of quantized distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowMean {
    sum: u128,
    len: u64,
}

impl WindowMean {
    pub fn new(sum: u128, len: u64) -> Self {
        assert!(len > 0, "empty window");
        WindowMean { sum, len }
    }

    pub fn from_distances(ds: &[f64]) -> Self {
        WindowMean::new(ds.iter().map(|&d| quantize(d)).sum(), ds.len() as u64)
    }

    pub fn sum(&self) -> u128 {
        self.sum
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> f64 {
        ratio_to_f64(self.sum, u128::from(self.len), FRACTION_BITS)
    }

    /// Sum of two means over windows of the same length.
    pub fn checked_add(&self, other: &WindowMean) -> Option<WindowMean> {
        (self.len == other.len).then(|| WindowMean::new(self.sum + other.sum, self.len))
    }

    /// Exact comparison against a single quantized distance.
    pub fn cmp_distance(&self, d: f64) -> Ordering {
        self.sum.cmp(&(quantize(d) * u128::from(self.len)))
    }
}

impl PartialOrd for WindowMean {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WindowMean {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.sum * u128::from(other.len);
        let b = other.sum * u128::from(self.len);
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_dyadics_exactly() {
        assert_eq!(quantize(1.0), 1u128 << 64);
        assert_eq!(quantize(0.5f64.powi(64)), 1);
        assert_eq!(quantize(0.5f64.powi(65)), 0);
    }

    #[test]
    fn mean_of_constant_window_is_constant() {
        for &d in &[1.0, 0.1, 2.0 / 3.0, 0.25, 1.7320508075688772] {
            for n in [1usize, 3, 7, 1000, 131073] {
                let m = WindowMean::from_distances(&vec![d; n]);
                assert_eq!(m.value(), d, "d = {d}, n = {n}");
            }
        }
    }

    #[test]
    fn ratio_matches_float_division_when_exact() {
        assert_eq!(ratio_to_f64(3 << 64, 4, 64), 0.75);
        assert_eq!(ratio_to_f64(1, 1, 0), 1.0);
        assert_eq!(ratio_to_f64(0, 5, 64), 0.0);
        assert_eq!(ratio_to_f64(1 << 64, 3, 64), 1.0 / 3.0);
        assert_eq!(ratio_to_f64(2 << 64, 3, 64), 2.0 / 3.0);
    }

    #[test]
    fn ordering_is_exact() {
        let a = WindowMean::new(1, 3);
        let b = WindowMean::new(1, 4);
        assert!(a > b);
        assert_eq!(WindowMean::new(2, 6).cmp(&WindowMean::new(1, 3)), Ordering::Equal);
    }

    #[test]
    fn signed_conversion() {
        assert_eq!(signed_ratio_to_f64(-(1i128 << 64), 2, 64), -0.5);
    }
}
