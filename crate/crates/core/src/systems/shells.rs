//! Circles `C_k` at height `1/k` turning ever more slowly, accumulating on
//! a motionless circle `C` at height 0.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};

use super::interval::canonical_chain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Finite(u32),
    /// The limit circle `C`.
    Limit,
}

impl Level {
    /// The speed `1/k`, 0 on the limit circle.
    pub fn speed(self) -> f64 {
        match self {
            Level::Finite(k) => 1.0 / f64::from(k),
            Level::Limit => 0.0,
        }
    }

    pub fn height(self) -> f64 {
        self.speed()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(k) => write!(f, "{k}"),
            Level::Limit => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellPoint {
    pub level: Level,
    /// In `[0, 2pi)`; 0 is the fixed point.
    pub angle: f64,
    pub steps: i64,
}

impl ShellPoint {
    pub fn new(level: Level, angle: f64) -> Self {
        if let Level::Finite(k) = level {
            assert!(k >= 1, "levels start at 1");
        }
        let mut angle = angle.rem_euclid(TAU);
        if angle >= TAU {
            angle = 0.0;
        }
        ShellPoint { level, angle, steps: 0 }
    }

    pub fn angle_now(&self) -> f64 {
        let eps = self.level.speed();
        canonical_chain(self.angle, self.steps, self.steps, |t| forward(t, eps), |t| inverse(t, eps))[0]
    }

    /// Coordinates in R^3: the circle of radius 1 about `(0, 1)` at height `1/k`.
    pub fn embed(&self) -> [f64; 3] {
        embed(self.angle_now(), self.level.height())
    }
}

impl fmt::Display for ShellPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level={}, angle={}", self.level, self.angle)?;
        if self.steps != 0 {
            write!(f, ", steps={}", self.steps)?;
        }
        Ok(())
    }
}

fn one_minus_cos(t: f64) -> f64 {
    let s = (0.5 * t).sin();
    2.0 * s * s
}

fn embed(t: f64, h: f64) -> [f64; 3] {
    [t.sin(), one_minus_cos(t), h]
}

/// `t + eps (1 - cos t) mod 2pi`.
fn forward(t: f64, eps: f64) -> f64 {
    if eps == 0.0 {
        return t;
    }
    let u = t + eps * one_minus_cos(t);
    if u >= TAU {
        u - TAU
    } else {
        u
    }
}

/// Preimage under [`forward`]: the root of `u + eps (1 - cos u) = t` in
/// `[t - 2 eps, t]`, by Newton steps kept inside a shrinking bracket.
fn inverse(t: f64, eps: f64) -> f64 {
    if eps == 0.0 || t == 0.0 {
        return t;
    }
    let h = |u: f64| u + eps * one_minus_cos(u) - t;
    let mut lo = (t - 2.0 * eps).max(0.0);
    let mut hi = t;
    let mut u = (t - eps * one_minus_cos(t)).clamp(lo, hi);
    for _ in 0..200 {
        let v = h(u);
        if v == 0.0 {
            break;
        }
        if v > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let slope = 1.0 + eps * u.sin();
        let mut next = if slope > 0.0 { u - v / slope } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
            if next <= lo || next >= hi {
                break;
            }
        }
        if next == u {
            break;
        }
        u = next;
    }
    u
}

/// `shell_map`: the action of `g` on a point.
pub fn shell_map(p: &ShellPoint, g: GroupElement) -> ShellPoint {
    ShellPoint { steps: p.steps + g.0, ..*p }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Shells62;

fn euclid(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

impl Shells62 {
    fn angles(p: &ShellPoint, lo: i64, hi: i64) -> Vec<f64> {
        let eps = p.level.speed();
        canonical_chain(p.angle, p.steps + lo, p.steps + hi, |t| forward(t, eps), |t| inverse(t, eps))
    }
}

impl System for Shells62 {
    type Point = ShellPoint;

    fn id(&self) -> &str {
        "shells62"
    }

    fn act(&self, x: &ShellPoint, g: GroupElement) -> ShellPoint {
        shell_map(x, g)
    }

    fn dist(&self, x: &ShellPoint, y: &ShellPoint) -> f64 {
        euclid(x.embed(), y.embed())
    }

    fn diameter(&self) -> f64 {
        5f64.sqrt()
    }

    fn orbit_distances(&self, x: &ShellPoint, y: &ShellPoint, lo: i64, hi: i64) -> Vec<f64> {
        let (hx, hy) = (x.level.height(), y.level.height());
        let ax = Shells62::angles(x, lo, hi);
        let ay = Shells62::angles(y, lo, hi);
        ax.iter().zip(&ay).map(|(&s, &t)| euclid(embed(s, hx), embed(t, hy))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn level_one_half_turn() {
        let p = ShellPoint::new(Level::Finite(1), PI);
        let q = shell_map(&p, GroupElement(1));
        assert_eq!(q.angle_now(), PI + 2.0);
    }

    #[test]
    fn fixed_points_and_limit_circle() {
        for k in [1, 2, 7] {
            let c = ShellPoint::new(Level::Finite(k), 0.0);
            assert_eq!(shell_map(&c, GroupElement(-40)).angle_now(), 0.0);
            assert_eq!(shell_map(&c, GroupElement(40)).embed(), c.embed());
        }
        let p = ShellPoint::new(Level::Limit, 1.234);
        assert_eq!(shell_map(&p, GroupElement(99)).angle_now(), 1.234);
    }

    #[test]
    fn increments_are_positive_and_bounded() {
        for k in [1u32, 3, 8] {
            let eps = 1.0 / f64::from(k);
            for i in 1..1000 {
                let t = i as f64 * TAU / 1000.0;
                let inc = (forward(t, eps) - t).rem_euclid(TAU);
                assert!(inc > 0.0 && inc <= 2.0 * eps, "k = {k}, t = {t}");
            }
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        for k in [1u32, 2, 16] {
            let eps = 1.0 / f64::from(k);
            for i in 1..500 {
                let t = i as f64 * TAU / 500.0;
                let u = forward(t, eps);
                let back = inverse(u, eps);
                let residual = (forward(back, eps) - u).abs();
                assert!(residual.min(TAU - residual) < 1e-14, "k = {k}, t = {t}, back = {back}");
                // at k = 1 the map is flat to third order at 3pi/2
                if k > 1 {
                    let err = (back - t).abs().min(TAU - (back - t).abs());
                    assert!(err < 1e-12, "k = {k}, t = {t}, back = {back}");
                }
            }
        }
    }

    #[test]
    fn embedding_on_unit_circle() {
        let p = ShellPoint::new(Level::Finite(4), 2.0);
        let [x, y, h] = p.embed();
        assert!((x * x + (y - 1.0) * (y - 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(h, 0.25);
    }

    #[test]
    fn orbits_approach_fixed_point() {
        let p = ShellPoint::new(Level::Finite(2), 3.0);
        let q = ShellPoint::new(Level::Finite(2), 4.0);
        let ds = Shells62.orbit_distances(&p, &q, -5000, 5000);
        assert!(ds[0] < 0.01 && ds[10000] < 0.01);
        assert!(ds[5000] > 0.5);
    }
}
