//! The golden rotation on R/Z and its Sturmian coding.
//!
//! Phases are fixed-point elements of R/Z with 64 fractional bits, so the
//! rotation is an exact group action.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};

use super::{subshift_dist, subshift_orbit_distances, Symbolic};

/// `round(alpha * 2^64)` for `alpha = (3 - sqrt 5) / 2`.
pub const GOLDEN_STEP: u64 = 7046029254386353130;

const TWO_POW_64: f64 = 18446744073709551616.0;

pub fn phase_from_f64(t: f64) -> u64 {
    let t = t.rem_euclid(1.0);
    // 1 - tiny rounds up to 2^64, which wraps to 0
    let scaled = (t * TWO_POW_64).round();
    if scaled >= TWO_POW_64 {
        0
    } else {
        scaled as u64
    }
}

pub fn phase_to_f64(p: u64) -> f64 {
    p as f64 / TWO_POW_64
}

/// A point of R/Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationPoint(pub u64);

impl RotationPoint {
    pub fn from_f64(t: f64) -> Self {
        RotationPoint(phase_from_f64(t))
    }

    pub fn to_f64(self) -> f64 {
        phase_to_f64(self.0)
    }
}

/// `t` when the phase is exactly the f64 `t`, otherwise `raw=<u64>`.
fn fmt_phase(f: &mut fmt::Formatter<'_>, p: u64, key: &str) -> fmt::Result {
    let t = phase_to_f64(p);
    if phase_from_f64(t) == p {
        write!(f, "{key}{t}")
    } else {
        write!(f, "raw={p}")
    }
}

impl fmt::Display for RotationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_phase(f, self.0, "")
    }
}

/// Rotation of R/Z by a fixed step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation {
    step: u64,
}

impl Rotation {
    pub fn new(alpha: f64) -> Self {
        Rotation { step: phase_from_f64(alpha) }
    }

    pub fn from_step(step: u64) -> Self {
        Rotation { step }
    }

    pub fn golden() -> Self {
        Rotation { step: GOLDEN_STEP }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn circle_dist(a: u64, b: u64) -> f64 {
        let d = a.wrapping_sub(b);
        phase_to_f64(d.min(d.wrapping_neg()))
    }
}

impl Default for Rotation {
    fn default() -> Self {
        Rotation::golden()
    }
}

impl System for Rotation {
    type Point = RotationPoint;

    fn id(&self) -> &str {
        "rotation"
    }

    fn act(&self, x: &RotationPoint, g: GroupElement) -> RotationPoint {
        RotationPoint(x.0.wrapping_add(self.step.wrapping_mul(g.0 as u64)))
    }

    fn dist(&self, x: &RotationPoint, y: &RotationPoint) -> f64 {
        Rotation::circle_dist(x.0, y.0)
    }

    fn diameter(&self) -> f64 {
        0.5
    }

    fn orbit_distances(&self, x: &RotationPoint, y: &RotationPoint, lo: i64, hi: i64) -> Vec<f64> {
        vec![self.dist(x, y); (hi - lo + 1) as usize]
    }
}

/// Which half-open partition a coding uses at the two cut points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `[0, 1 - alpha)`, `[1 - alpha, 1)`
    Right,
    /// `(0, 1 - alpha]`, `(1 - alpha, 1]`
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

/// Coding of the golden rotation orbit of `phase`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SturmianPoint {
    pub phase: u64,
    pub side: Side,
}

impl SturmianPoint {
    pub fn new(phase: u64, side: Side) -> Self {
        SturmianPoint { phase, side }
    }

    /// The point over `m * alpha`; its two codings differ at `n = -m` and
    /// `n = -m - 1`.
    pub fn on_cut_orbit(m: i64, side: Side) -> Self {
        SturmianPoint { phase: GOLDEN_STEP.wrapping_mul(m as u64), side }
    }

    pub fn other_side(&self) -> Self {
        let side = match self.side {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        };
        SturmianPoint { phase: self.phase, side }
    }
}

impl fmt::Display for SturmianPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_phase(f, self.phase, "phase=")?;
        write!(f, ", side={}", self.side)
    }
}

/// The Sturmian subshift of the golden rotation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sturmian;

impl Sturmian {
    const CUT: u64 = GOLDEN_STEP.wrapping_neg();

    pub fn symbol(phase: u64, side: Side) -> u8 {
        let one = match side {
            Side::Right => phase >= Self::CUT,
            Side::Left => phase > Self::CUT || phase == 0,
        };
        u8::from(one)
    }

    pub fn eval(x: &SturmianPoint, n: i64) -> u8 {
        Sturmian::symbol(x.phase.wrapping_add(GOLDEN_STEP.wrapping_mul(n as u64)), x.side)
    }
}

impl System for Sturmian {
    type Point = SturmianPoint;

    fn id(&self) -> &str {
        "sturmian"
    }

    fn act(&self, x: &SturmianPoint, g: GroupElement) -> SturmianPoint {
        SturmianPoint { phase: x.phase.wrapping_add(GOLDEN_STEP.wrapping_mul(g.0 as u64)), side: x.side }
    }

    fn dist(&self, x: &SturmianPoint, y: &SturmianPoint) -> f64 {
        subshift_dist(self, x, y)
    }

    fn diameter(&self) -> f64 {
        1.0
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    fn orbit_distances(&self, x: &SturmianPoint, y: &SturmianPoint, lo: i64, hi: i64) -> Vec<f64> {
        subshift_orbit_distances(self, x, y, lo, hi)
    }
}

impl Symbolic for Sturmian {
    fn coordinates(&self, x: &SturmianPoint, lo: i64, hi: i64) -> Vec<u8> {
        let mut p = x.phase.wrapping_add(GOLDEN_STEP.wrapping_mul(lo as u64));
        (lo..=hi)
            .map(|_| {
                let s = Sturmian::symbol(p, x.side);
                p = p.wrapping_add(GOLDEN_STEP);
                s
            })
            .collect()
    }
}
