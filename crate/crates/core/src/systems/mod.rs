//! The example systems and their factor maps.

mod chains;
mod dyadic;
mod interval;
mod odometer;
pub mod registry;
mod shells;
mod sturmian;
mod substitution;
mod thuemorse;
mod toeplitz;

pub use chains::{
    ex61_factor, ex62_factor, sturmian_chain, thue_morse_chain, FactorChain, IntervalBase, IntervalBasePoint, OnePoint,
    ShellLevels,
};
pub use dyadic::DyadicInteger;
pub use interval::{interval_map, Branch, Interval61, IntervalPoint};
pub use odometer::{odometer_add, Odometer};
pub use shells::{shell_map, Level, ShellPoint, Shells62};
pub use sturmian::{phase_from_f64, phase_to_f64, Rotation, RotationPoint, Side, Sturmian, SturmianPoint, GOLDEN_STEP};
pub use substitution::{
    exchange, period_doubling_code, substitution_language, toeplitz_language_check, LanguageCheck, Substitution,
    MAX_WORD_LEN,
};
pub use thuemorse::{thue_morse_eval, ThueMorse, ThueMorsePoint};
pub use toeplitz::{toeplitz_eval, FibreFlag, Toeplitz, ToeplitzPoint};

use crate::dynamics::System;

/// Coordinates beyond this radius are not inspected by subshift metrics;
/// `2^-1075` is no longer representable.
pub const SCAN_RADIUS: i64 = 1074;

/// `2^-n`, exact down to the smallest subnormal and zero beyond it.
pub fn pow2_neg(n: u64) -> f64 {
    if n <= 1022 {
        f64::from_bits((1023 - n) << 52)
    } else if n <= 1074 {
        f64::from_bits(1u64 << (1074 - n))
    } else {
        0.0
    }
}

/// A subshift over `{0, 1}` with metric `2^-min{|n| : x_n != y_n}`.
pub trait Symbolic: System {
    /// `x_n` for `n = lo..=hi`.
    fn coordinates(&self, x: &Self::Point, lo: i64, hi: i64) -> Vec<u8>;
}

pub(crate) fn subshift_dist<S: Symbolic>(sys: &S, x: &S::Point, y: &S::Point) -> f64 {
    let xs = sys.coordinates(x, -SCAN_RADIUS, SCAN_RADIUS);
    let ys = sys.coordinates(y, -SCAN_RADIUS, SCAN_RADIUS);
    let c = SCAN_RADIUS as usize;
    for n in 0..=c {
        if xs[c + n] != ys[c + n] || xs[c - n] != ys[c - n] {
            return pow2_neg(n as u64);
        }
    }
    0.0
}

pub(crate) fn subshift_orbit_distances<S: Symbolic>(sys: &S, x: &S::Point, y: &S::Point, lo: i64, hi: i64) -> Vec<f64> {
    let xs = sys.coordinates(x, lo - SCAN_RADIUS, hi + SCAN_RADIUS);
    let ys = sys.coordinates(y, lo - SCAN_RADIUS, hi + SCAN_RADIUS);
    sweep(&xs, &ys, (hi - lo + 1) as usize)
}

/// Distance from each centre to the nearest disagreement, for coordinate
/// arrays padded by [`SCAN_RADIUS`] on both sides.
fn sweep(xs: &[u8], ys: &[u8], count: usize) -> Vec<f64> {
    let r = SCAN_RADIUS as usize;
    let n = xs.len();
    debug_assert_eq!(n, count + 2 * r);
    const NONE: usize = usize::MAX;
    let mut next = vec![NONE; n + 1];
    for i in (0..n).rev() {
        next[i] = if xs[i] != ys[i] { i } else { next[i + 1] };
    }
    let mut prev = NONE;
    let mut out = Vec::with_capacity(count);
    for i in 0..n {
        if xs[i] != ys[i] {
            prev = i;
        }
        if i >= r && i < r + count {
            let left = if prev == NONE { u64::MAX } else { (i - prev) as u64 };
            let right = if next[i] == NONE { u64::MAX } else { (next[i] - i) as u64 };
            let m = left.min(right);
            out.push(if m > SCAN_RADIUS as u64 { 0.0 } else { pow2_neg(m) });
        }
    }
    out
}
