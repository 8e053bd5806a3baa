//! Two copies of [0, 1] glued at 0, moved to the left by a homeomorphism
//! fixing `{1/n} ∪ {0}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};

/// `(y, y)` or `(y, -y)` in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Hat,
    Check,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Hat => 1.0,
            Branch::Check => -1.0,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Hat => Branch::Check,
            Branch::Check => Branch::Hat,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Hat => "hat",
            Branch::Check => "check",
        })
    }
}

/// `S^steps(y)` on the given branch. The step count is kept separately so
/// that composing actions is exact on payloads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalPoint {
    pub y: f64,
    pub branch: Branch,
    pub steps: i64,
}

impl IntervalPoint {
    pub fn new(y: f64, branch: Branch) -> Self {
        assert!((0.0..=1.0).contains(&y), "y = {y} outside [0, 1]");
        IntervalPoint { y, branch, steps: 0 }
    }

    pub fn hat(y: f64) -> Self {
        IntervalPoint::new(y, Branch::Hat)
    }

    pub fn check(y: f64) -> Self {
        IntervalPoint::new(y, Branch::Check)
    }

    pub fn position(&self) -> f64 {
        canonical_chain(self.y, self.steps, self.steps, s_forward, s_inverse)[0]
    }

    /// Plane coordinates.
    pub fn embed(&self) -> (f64, f64) {
        let p = self.position();
        (p, self.branch.sign() * p)
    }
}

impl fmt::Display for IntervalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y={}, branch={}", self.y, self.branch)?;
        if self.steps != 0 {
            write!(f, ", steps={}", self.steps)?;
        }
        Ok(())
    }
}

/// The piece `[a, b]` of the partition `[1/(n+1), 1/n]`, `[1/2, 1]` that
/// contains `y`.
fn piece(y: f64) -> (f64, f64) {
    if y >= 0.5 {
        return (0.5, 1.0);
    }
    if y <= 0.0 {
        return (0.0, 0.0);
    }
    let mut n = (1.0 / y).floor().max(2.0);
    while y < 1.0 / (n + 1.0) {
        n += 1.0;
    }
    while y > 1.0 / n {
        n -= 1.0;
    }
    (1.0 / (n + 1.0), 1.0 / n)
}

/// `S(y) = y - (y - a)(b - y)` on each piece `[a, b]`.
pub fn s_forward(y: f64) -> f64 {
    let (a, b) = piece(y);
    y - (y - a) * (b - y)
}

/// The root in `[a, b]` of `y^2 + (1 - a - b) y + ab - w = 0`.
pub fn s_inverse(w: f64) -> f64 {
    let (a, b) = piece(w);
    if w == a || w == b {
        return w;
    }
    let c1 = 1.0 - a - b;
    let k = a * b - w;
    let root = (c1 * c1 - 4.0 * k).sqrt();
    let y = if c1 > 0.0 { -2.0 * k / (c1 + root) } else { (root - c1) / 2.0 };
    y.clamp(a, b)
}

/// Positions `T^t(x0)` for `t = t_lo..=t_hi`, by iterating `fwd` from `x0`
/// for `t >= 0` and `inv` for `t < 0`. Every orbit of a floating system is
/// computed this way, so `act` followed by `dist` reproduces the values of
/// a bulk orbit computation bit for bit.
pub(crate) fn canonical_chain(
    x0: f64,
    t_lo: i64,
    t_hi: i64,
    fwd: impl Fn(f64) -> f64,
    inv: impl Fn(f64) -> f64,
) -> Vec<f64> {
    assert!(t_lo <= t_hi);
    let mut out = vec![0.0; (t_hi - t_lo + 1) as usize];
    let mut put = |t: i64, v: f64| {
        if t >= t_lo && t <= t_hi {
            out[(t - t_lo) as usize] = v;
        }
    };
    if t_hi >= 0 {
        let mut v = x0;
        let mut t = 0;
        loop {
            put(t, v);
            if t == t_hi {
                break;
            }
            let next = fwd(v);
            if next == v {
                for s in t + 1..=t_hi {
                    put(s, v);
                }
                break;
            }
            v = next;
            t += 1;
        }
    }
    if t_lo < 0 {
        let mut v = x0;
        let mut t = 0;
        loop {
            let next = inv(v);
            if next == v {
                for s in t_lo..t {
                    put(s, v);
                }
                break;
            }
            v = next;
            t -= 1;
            put(t, v);
            if t == t_lo {
                break;
            }
        }
    }
    out
}

/// `interval_map`: the action of `g` on a point.
pub fn interval_map(p: &IntervalPoint, g: GroupElement) -> IntervalPoint {
    IntervalPoint { steps: p.steps + g.0, ..*p }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Interval61;

fn plane_dist(p: f64, bp: Branch, q: f64, bq: Branch) -> f64 {
    (p - q).hypot(bp.sign() * p - bq.sign() * q)
}

impl System for Interval61 {
    type Point = IntervalPoint;

    fn id(&self) -> &str {
        "interval61"
    }

    fn act(&self, x: &IntervalPoint, g: GroupElement) -> IntervalPoint {
        interval_map(x, g)
    }

    fn dist(&self, x: &IntervalPoint, y: &IntervalPoint) -> f64 {
        plane_dist(x.position(), x.branch, y.position(), y.branch)
    }

    fn diameter(&self) -> f64 {
        2.0
    }

    fn orbit_distances(&self, x: &IntervalPoint, y: &IntervalPoint, lo: i64, hi: i64) -> Vec<f64> {
        let px = canonical_chain(x.y, x.steps + lo, x.steps + hi, s_forward, s_inverse);
        let py = canonical_chain(y.y, y.steps + lo, y.steps + hi, s_forward, s_inverse);
        px.iter().zip(&py).map(|(&p, &q)| plane_dist(p, x.branch, q, y.branch)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixes_reciprocals() {
        for n in 1..50 {
            let y = 1.0 / n as f64;
            assert_eq!(s_forward(y), y);
            assert_eq!(s_inverse(y), y);
        }
        assert_eq!(s_forward(0.0), 0.0);
        let p = IntervalPoint::hat(1.0 / 3.0);
        assert_eq!(interval_map(&p, GroupElement(17)).position(), 1.0 / 3.0);
    }

    #[test]
    fn one_step_from_point_three() {
        let expect = 0.3 - (0.3 - 0.25) * (1.0 / 3.0 - 0.3);
        assert_eq!(s_forward(0.3), expect);
        assert!((expect - 0.2983333333333333).abs() < 1e-15);
    }

    #[test]
    fn inverse_undoes_forward() {
        for i in 1..1000 {
            let y = i as f64 / 1000.0;
            assert!((s_inverse(s_forward(y)) - y).abs() < 1e-14, "y = {y}");
        }
    }

    #[test]
    fn strictly_decreasing_off_fixed_points() {
        for i in 1..1000 {
            let y = i as f64 / 1000.0 + 1e-4;
            assert!(s_forward(y) < y);
        }
    }

    #[test]
    fn branches_are_two_y_apart() {
        for y in [0.0, 0.1, 0.3, 0.75, 1.0] {
            assert_eq!(Interval61.dist(&IntervalPoint::hat(y), &IntervalPoint::check(y)), 2.0 * y);
        }
    }

    #[test]
    fn backward_orbit_climbs() {
        let (h, c) = (IntervalPoint::hat(0.3), IntervalPoint::check(0.3));
        let ds = Interval61.orbit_distances(&h, &c, -2000, 0);
        assert!((ds[0] - 2.0 / 3.0).abs() < 1e-9);
        assert!(ds.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn chain_matches_pointwise_positions() {
        let p = IntervalPoint::check(0.6);
        let ds = Interval61.orbit_distances(&p, &IntervalPoint::hat(0.22), -30, 30);
        for (i, k) in (-30..=30i64).enumerate() {
            let g = GroupElement(k);
            assert_eq!(ds[i], Interval61.dist(&interval_map(&p, g), &interval_map(&IntervalPoint::hat(0.22), g)));
        }
    }
}
