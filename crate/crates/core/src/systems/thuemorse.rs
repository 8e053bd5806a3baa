use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};

use super::{subshift_dist, subshift_orbit_distances, DyadicInteger, Symbolic, ToeplitzPoint};

/// A point of the Thue–Morse subshift stored as its Toeplitz image plus
/// the coordinate at 0. The rest is recovered by
/// `x_{n+1} = x_n XOR y_n`, `y` the base sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThueMorsePoint {
    base: ToeplitzPoint,
    bit0: u8,
}

impl ThueMorsePoint {
    pub fn new(base: ToeplitzPoint, bit0: u8) -> Self {
        assert!(bit0 <= 1);
        ThueMorsePoint { base, bit0 }
    }

    /// The one-sided fixed point `0110 1001 ...` of `0 -> 01, 1 -> 10`
    /// on the right, continued by `...0110 1001` to the left (`primed`
    /// selects `x_{-1} = 1` instead).
    pub fn fixed_point(primed: bool) -> Self {
        ThueMorsePoint::new(ToeplitzPoint::gamma(1, primed), 0)
    }

    pub fn base(&self) -> &ToeplitzPoint {
        &self.base
    }

    pub fn bit0(&self) -> u8 {
        self.bit0
    }

    /// The bitwise negation, the other point of the same fibre.
    pub fn negation(&self) -> Self {
        ThueMorsePoint { base: self.base.clone(), bit0: 1 - self.bit0 }
    }

    pub fn coordinates(&self, lo: i64, hi: i64) -> Vec<u8> {
        assert!(lo <= hi);
        let a = lo.min(0);
        let b = hi.max(0);
        let ys = if b > a { self.base.coordinates(a, b - 1) } else { Vec::new() };
        let mut xs = vec![0u8; (b - a + 1) as usize];
        let zero = (-a) as usize;
        xs[zero] = self.bit0;
        for i in zero..xs.len() - 1 {
            xs[i + 1] = xs[i] ^ ys[i];
        }
        for i in (0..zero).rev() {
            xs[i] = xs[i + 1] ^ ys[i];
        }
        xs[(lo - a) as usize..=(hi - a) as usize].to_vec()
    }

    pub fn eval(&self, n: i64) -> u8 {
        self.coordinates(n, n)[0]
    }

    pub fn shift(&self, g: i64) -> Self {
        ThueMorsePoint { base: self.base.shift(g), bit0: self.eval(g) }
    }

    /// `x_n XOR x_{n+1}` along a window, i.e. the base coordinates it determines.
    pub fn differences(xs: &[u8]) -> Vec<u8> {
        xs.windows(2).map(|w| w[0] ^ w[1]).collect()
    }
}

impl fmt::Display for ThueMorsePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "addr={}, flag={}, bit0={}", self.base.address(), self.base.flag(), self.bit0)
    }
}

/// `thue_morse_eval`: coordinate `n` of a Thue–Morse point.
pub fn thue_morse_eval(p: &ThueMorsePoint, n: i64) -> u8 {
    p.eval(n)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ThueMorse;

impl ThueMorse {
    pub fn point(address: DyadicInteger, primed: bool, bit0: u8) -> ThueMorsePoint {
        ThueMorsePoint::new(ToeplitzPoint::new(address, primed), bit0)
    }
}

impl System for ThueMorse {
    type Point = ThueMorsePoint;

    fn id(&self) -> &str {
        "thuemorse"
    }

    fn act(&self, x: &ThueMorsePoint, g: GroupElement) -> ThueMorsePoint {
        x.shift(g.0)
    }

    fn dist(&self, x: &ThueMorsePoint, y: &ThueMorsePoint) -> f64 {
        subshift_dist(self, x, y)
    }

    fn diameter(&self) -> f64 {
        1.0
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    fn orbit_distances(&self, x: &ThueMorsePoint, y: &ThueMorsePoint, lo: i64, hi: i64) -> Vec<f64> {
        subshift_orbit_distances(self, x, y, lo, hi)
    }
}

impl Symbolic for ThueMorse {
    fn coordinates(&self, x: &ThueMorsePoint, lo: i64, hi: i64) -> Vec<u8> {
        x.coordinates(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_prefix() {
        let t = ThueMorsePoint::fixed_point(false);
        assert_eq!(t.coordinates(0, 7), vec![0, 1, 1, 0, 1, 0, 0, 1]);
        for n in 0..4096i64 {
            assert_eq!(t.eval(n), (n.count_ones() % 2) as u8, "n = {n}");
        }
        assert_eq!(t.eval(-1), 0);
        assert_eq!(ThueMorsePoint::fixed_point(true).eval(-1), 1);
    }

    #[test]
    fn left_half_mirrors_right_half() {
        let t = ThueMorsePoint::fixed_point(false);
        for n in 0..2048i64 {
            assert_eq!(t.eval(-n - 1), t.eval(n));
        }
    }

    #[test]
    fn negation_is_at_distance_one() {
        let t = ThueMorsePoint::fixed_point(false);
        assert_eq!(ThueMorse.dist(&t, &t.negation()), 1.0);
        assert_eq!(ThueMorse.dist(&t, &t), 0.0);
        assert!(ThueMorse.orbit_distances(&t, &t.negation(), -100, 100).iter().all(|&d| d == 1.0));
    }

    #[test]
    fn shift_is_consistent() {
        let t = ThueMorsePoint::fixed_point(true);
        let s = ThueMorse.act(&t, GroupElement(13));
        assert_eq!(s.coordinates(-20, 20), t.coordinates(-7, 33));
        assert_eq!(ThueMorse.act(&s, GroupElement(-13)), t);
        assert_eq!(ThueMorse.act(&t, GroupElement::IDENTITY), t);
    }

    #[test]
    fn differences_recover_base() {
        let t = ThueMorse.act(&ThueMorsePoint::fixed_point(false), GroupElement(-37));
        let xs = t.coordinates(-30, 31);
        assert_eq!(ThueMorsePoint::differences(&xs), t.base().coordinates(-30, 30));
    }
}
