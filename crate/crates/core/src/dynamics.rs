//! Z-actions on compact metric spaces and Følner window machinery.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the acting group Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub i64);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn inverse(self) -> GroupElement {
        GroupElement(-self.0)
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        GroupElement(self.0 + rhs.0)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        GroupElement(self.0 - rhs.0)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.inverse()
    }
}

impl From<i64> for GroupElement {
    fn from(v: i64) -> Self {
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The integer window `{lo, ..., hi}`, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FolnerWindow {
    lo: i64,
    hi: i64,
}

impl FolnerWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(FolnerWindow { lo, hi })
    }

    /// `{-half, ..., half}`.
    pub fn symmetric(half: u64) -> Self {
        let h = half as i64;
        FolnerWindow { lo: -h, hi: h }
    }

    /// `{-len, ..., 0}`.
    pub fn one_sided(len: u64) -> Self {
        FolnerWindow { lo: -(len as i64), hi: 0 }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, g: i64) -> bool {
        self.lo <= g && g <= self.hi
    }

    pub fn translate(&self, g: i64) -> FolnerWindow {
        FolnerWindow { lo: self.lo + g, hi: self.hi + g }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// `|F Δ (F + g)|` for an interval `F`.
    pub fn symmetric_difference_with_translate(&self, g: i64) -> u64 {
        let n = self.len();
        let shift = g.unsigned_abs();
        2 * shift.min(n)
    }
}

impl fmt::Display for FolnerWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowFamily {
    /// `{-L, ..., L}`
    Symmetric,
    /// `{-L, ..., 0}`
    OneSided,
    Custom,
}

impl fmt::Display for WindowFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowFamily::Symmetric => "symmetric",
            WindowFamily::OneSided => "one-sided",
            WindowFamily::Custom => "custom",
        })
    }
}

/// A finite stand-in for a Følner sequence: windows of strictly increasing
/// size, each with a translate radius bounding the search over `g'`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FolnerSchedule {
    family: WindowFamily,
    windows: Vec<FolnerWindow>,
    translate_radius: Vec<u64>,
}

impl FolnerSchedule {
    pub fn new(family: WindowFamily, windows: Vec<FolnerWindow>, translate_radius: Vec<u64>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::InvalidSchedule("no windows".into()));
        }
        if windows.len() != translate_radius.len() {
            return Err(Error::InvalidSchedule(format!(
                "{} windows but {} translate radii",
                windows.len(),
                translate_radius.len()
            )));
        }
        if windows.windows(2).any(|w| w[0].len() >= w[1].len()) {
            return Err(Error::InvalidSchedule("window cardinalities must strictly increase".into()));
        }
        if translate_radius.windows(2).any(|r| r[0] > r[1]) {
            return Err(Error::InvalidSchedule("translate radii must be nondecreasing".into()));
        }
        Ok(FolnerSchedule { family, windows, translate_radius })
    }

    /// Windows `{-2^n, ..., 2^n}` for `n = 0..=max_exponent`, translate radius
    /// equal to the window length.
    pub fn symmetric(max_exponent: u32) -> Result<Self> {
        FolnerSchedule::dyadic(WindowFamily::Symmetric, 0, max_exponent)
    }

    /// Windows `{-2^n, ..., 0}` for `n = 0..=max_exponent`.
    pub fn one_sided(max_exponent: u32) -> Result<Self> {
        FolnerSchedule::dyadic(WindowFamily::OneSided, 0, max_exponent)
    }

    /// Windows of either interval family for `n = min_exponent..=max_exponent`.
    /// Raising `min_exponent` moves the tail half toward larger windows.
    pub fn dyadic(family: WindowFamily, min_exponent: u32, max_exponent: u32) -> Result<Self> {
        check_exponent(max_exponent)?;
        if min_exponent > max_exponent {
            return Err(Error::InvalidSchedule(format!(
                "min_exponent {min_exponent} exceeds max_exponent {max_exponent}"
            )));
        }
        let make = match family {
            WindowFamily::Symmetric => FolnerWindow::symmetric,
            WindowFamily::OneSided => FolnerWindow::one_sided,
            WindowFamily::Custom => {
                return Err(Error::InvalidSchedule("custom schedules need explicit windows".into()));
            }
        };
        let windows: Vec<_> = (min_exponent..=max_exponent).map(|n| make(1 << n)).collect();
        let radius = windows.iter().map(FolnerWindow::len).collect();
        FolnerSchedule::new(family, windows, radius)
    }

    /// Both interval families of [`default_schedule`].
    pub fn families(max_exponent: u32) -> Result<[FolnerSchedule; 2]> {
        Ok([FolnerSchedule::symmetric(max_exponent)?, FolnerSchedule::one_sided(max_exponent)?])
    }

    pub fn family(&self) -> WindowFamily {
        self.family
    }

    pub fn windows(&self) -> &[FolnerWindow] {
        &self.windows
    }

    pub fn translate_radius(&self) -> &[u64] {
        &self.translate_radius
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    /// Index of the first window of the tail half used for limsup surrogates.
    pub fn tail_start(&self) -> usize {
        self.windows.len() / 2
    }

    pub fn largest(&self) -> FolnerWindow {
        *self.windows.last().expect("schedule is nonempty")
    }

    /// Smallest and largest group element touched by the windows alone.
    pub fn span(&self) -> (i64, i64) {
        let lo = self.windows.iter().map(|w| w.lo).min().unwrap();
        let hi = self.windows.iter().map(|w| w.hi).max().unwrap();
        (lo, hi)
    }

    /// Span including every admissible translate.
    pub fn translated_span(&self) -> (i64, i64) {
        let lo = self.windows.iter().zip(&self.translate_radius).map(|(w, &m)| w.lo - m as i64).min().unwrap();
        let hi = self.windows.iter().zip(&self.translate_radius).map(|(w, &m)| w.hi + m as i64).max().unwrap();
        (lo, hi)
    }
}

fn check_exponent(max_exponent: u32) -> Result<()> {
    if max_exponent > 24 {
        return Err(Error::InvalidSchedule(format!("max_exponent {max_exponent} exceeds 24")));
    }
    Ok(())
}

/// The default schedule: symmetric windows `{-2^n, ..., 2^n}`,
/// `n = 0..=max_exponent`, with translate radius equal to the window length.
/// The one-sided companion family is [`FolnerSchedule::one_sided`].
pub fn default_schedule(max_exponent: u32) -> Result<FolnerSchedule> {
    if max_exponent < 1 {
        return Err(Error::InvalidSchedule("max_exponent must be at least 1".into()));
    }
    FolnerSchedule::symmetric(max_exponent)
}

/// A Z-action on a compact metric space.
///
/// Implementations must be deterministic: `act` and `dist` are pure, and
/// `act(act(x, g), h)` equals `act(x, g + h)` as payloads.
pub trait System: Send + Sync {
    type Point: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn id(&self) -> &str;

    fn act(&self, x: &Self::Point, g: GroupElement) -> Self::Point;

    fn dist(&self, x: &Self::Point, y: &Self::Point) -> f64;

    fn diameter(&self) -> f64;

    /// Symbolic systems have exactly dyadic distances.
    fn is_symbolic(&self) -> bool {
        false
    }

    /// `dist(k.x, k.y)` for `k = lo..=hi`.
    fn orbit_distances(&self, x: &Self::Point, y: &Self::Point, lo: i64, hi: i64) -> Vec<f64> {
        (lo..=hi)
            .map(|k| {
                let g = GroupElement(k);
                self.dist(&self.act(x, g), &self.act(y, g))
            })
            .collect()
    }

    /// `k.x` for `k = lo..=hi`.
    fn orbit(&self, x: &Self::Point, lo: i64, hi: i64) -> Vec<Self::Point> {
        (lo..=hi).map(|k| self.act(x, GroupElement(k))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let g = GroupElement(5);
        let h = GroupElement(-8);
        assert_eq!(g + h, GroupElement(-3));
        assert_eq!(g + GroupElement::IDENTITY, g);
        assert_eq!(g + g.inverse(), GroupElement::IDENTITY);
    }

    #[test]
    fn window_rejects_reversed_bounds() {
        assert!(FolnerWindow::new(3, 2).is_err());
        assert_eq!(FolnerWindow::new(-2, 2).unwrap().len(), 5);
    }

    #[test]
    fn default_schedule_lengths() {
        let s = default_schedule(3).unwrap();
        let lens: Vec<_> = s.windows().iter().map(FolnerWindow::len).collect();
        assert_eq!(lens, vec![3, 5, 9, 17]);
        assert_eq!(s.translate_radius(), &[3, 5, 9, 17]);
    }

    #[test]
    fn default_schedule_strictly_increasing() {
        let s = default_schedule(1).unwrap();
        assert!(s.windows().windows(2).all(|w| w[0].len() < w[1].len()));
        assert!(default_schedule(0).is_err());
    }

    #[test]
    fn folner_ratio_of_symmetric_windows() {
        let s = default_schedule(10).unwrap();
        let mut prev = f64::INFINITY;
        for (n, w) in s.windows().iter().enumerate() {
            let ratio = w.symmetric_difference_with_translate(1) as f64 / w.len() as f64;
            let expected = 2.0 / (2.0 * (1u64 << n) as f64 + 1.0);
            assert_eq!(ratio, expected);
            assert!(ratio < prev);
            prev = ratio;
        }
    }

    #[test]
    fn dyadic_range() {
        let s = FolnerSchedule::dyadic(WindowFamily::Symmetric, 3, 6).unwrap();
        assert_eq!(s.windows().iter().map(FolnerWindow::len).collect::<Vec<_>>(), vec![17, 33, 65, 129]);
        assert_eq!(s.tail_start(), 2);
        assert!(FolnerSchedule::dyadic(WindowFamily::OneSided, 7, 6).is_err());
        assert!(FolnerSchedule::dyadic(WindowFamily::Custom, 0, 6).is_err());
    }

    #[test]
    fn one_sided_schedule() {
        let s = FolnerSchedule::one_sided(3).unwrap();
        assert_eq!(s.windows()[3], FolnerWindow::new(-8, 0).unwrap());
        assert_eq!(s.translated_span(), (-17, 9));
    }

    #[test]
    fn schedule_validation() {
        let w = FolnerWindow::symmetric(2);
        assert!(FolnerSchedule::new(WindowFamily::Custom, vec![w, w], vec![1, 1]).is_err());
        assert!(FolnerSchedule::new(WindowFamily::Custom, vec![], vec![]).is_err());
        let w2 = FolnerWindow::symmetric(3);
        assert!(FolnerSchedule::new(WindowFamily::Custom, vec![w, w2], vec![2, 1]).is_err());
        assert!(FolnerSchedule::new(WindowFamily::Custom, vec![w, w2], vec![1, 2]).is_ok());
    }
}
