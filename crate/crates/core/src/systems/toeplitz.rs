use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};

use super::{subshift_dist, subshift_orbit_distances, DyadicInteger, Symbolic};

/// Which of the two sequences over an integer address a point is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibreFlag {
    /// The shift of `gamma`: 0 at the discontinuity.
    Plain,
    /// The shift of `gamma'`: 1 at the discontinuity.
    Primed,
    /// Non-integer address, single preimage.
    Unique,
}

impl fmt::Display for FibreFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibreFlag::Plain => "plain",
            FibreFlag::Primed => "primed",
            FibreFlag::Unique => "unique",
        })
    }
}

/// A point of the Toeplitz subshift: coordinate `n` is `f(address + n)`,
/// where `f(z) = 1` iff the 2-adic valuation of `z` is finite and even.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToeplitzPoint {
    address: DyadicInteger,
    flag: FibreFlag,
}

impl ToeplitzPoint {
    /// `primed` is ignored for non-integer addresses.
    pub fn new(address: DyadicInteger, primed: bool) -> Self {
        let flag = if !address.is_integer() {
            FibreFlag::Unique
        } else if primed {
            FibreFlag::Primed
        } else {
            FibreFlag::Plain
        };
        ToeplitzPoint { address, flag }
    }

    /// `k.gamma` (or `k.gamma'` when primed).
    pub fn gamma(k: i64, primed: bool) -> Self {
        ToeplitzPoint::new(DyadicInteger::from_i64(k), primed)
    }

    pub fn address(&self) -> &DyadicInteger {
        &self.address
    }

    pub fn flag(&self) -> FibreFlag {
        self.flag
    }

    pub fn shift(&self, g: i64) -> Self {
        ToeplitzPoint { address: self.address.add_i64(g), flag: self.flag }
    }

    pub fn eval(&self, n: i64) -> u8 {
        self.eval_with_low(self.address.low_u64(), n)
    }

    fn eval_with_low(&self, low: u64, n: i64) -> u8 {
        let w = low.wrapping_add(n as u64);
        if w != 0 {
            return u8::from(w.trailing_zeros().is_multiple_of(2));
        }
        let z = self.address.add_i64(n);
        match z.valuation() {
            Some(v) => u8::from(v % 2 == 0),
            None => u8::from(self.flag == FibreFlag::Primed),
        }
    }

    pub fn coordinates(&self, lo: i64, hi: i64) -> Vec<u8> {
        let low = self.address.low_u64();
        (lo..=hi).map(|n| self.eval_with_low(low, n)).collect()
    }
}

impl fmt::Display for ToeplitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "addr={}, flag={}", self.address, self.flag)
    }
}

/// `toeplitz_eval`: coordinate `n` of a Toeplitz point.
pub fn toeplitz_eval(p: &ToeplitzPoint, n: i64) -> u8 {
    p.eval(n)
}

/// The orbit closure of `gamma` under the shift.
#[derive(Debug, Clone, Copy, Default)]
pub struct Toeplitz;

impl System for Toeplitz {
    type Point = ToeplitzPoint;

    fn id(&self) -> &str {
        "toeplitz"
    }

    fn act(&self, x: &ToeplitzPoint, g: GroupElement) -> ToeplitzPoint {
        x.shift(g.0)
    }

    fn dist(&self, x: &ToeplitzPoint, y: &ToeplitzPoint) -> f64 {
        subshift_dist(self, x, y)
    }

    fn diameter(&self) -> f64 {
        1.0
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    fn orbit_distances(&self, x: &ToeplitzPoint, y: &ToeplitzPoint, lo: i64, hi: i64) -> Vec<f64> {
        subshift_orbit_distances(self, x, y, lo, hi)
    }
}

impl Symbolic for Toeplitz {
    fn coordinates(&self, x: &ToeplitzPoint, lo: i64, hi: i64) -> Vec<u8> {
        x.coordinates(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valuation_oracle(z: i64) -> Option<u32> {
        (z != 0).then(|| z.trailing_zeros())
    }

    #[test]
    fn gamma_small_coordinates() {
        let g = ToeplitzPoint::gamma(0, false);
        assert_eq!(g.eval(1), 1);
        assert_eq!(g.eval(2), 0);
        assert_eq!(g.eval(0), 0);
        assert_eq!(ToeplitzPoint::gamma(0, true).eval(0), 1);
        assert_eq!(g.eval(4), 1);
        assert_eq!(g.eval(-1), 1);
    }

    #[test]
    fn gamma_matches_valuation_oracle() {
        let g = ToeplitzPoint::gamma(0, false);
        for n in -3000..3000i64 {
            let expect = match valuation_oracle(n) {
                Some(v) => u8::from(v % 2 == 0),
                None => 0,
            };
            assert_eq!(g.eval(n), expect, "n = {n}");
        }
    }

    #[test]
    fn flag_is_unique_off_integers() {
        let p = ToeplitzPoint::new(DyadicInteger::from_fraction(1, 3).unwrap(), true);
        assert_eq!(p.flag(), FibreFlag::Unique);
        assert_eq!(ToeplitzPoint::gamma(4, true).flag(), FibreFlag::Primed);
    }

    #[test]
    fn shift_moves_coordinates() {
        let g = ToeplitzPoint::gamma(0, true);
        let s = Toeplitz.act(&g, GroupElement(5));
        for n in -50..50 {
            assert_eq!(s.eval(n), g.eval(n + 5));
        }
    }

    #[test]
    fn gamma_pair_distance() {
        let a = ToeplitzPoint::gamma(0, false);
        let b = ToeplitzPoint::gamma(0, true);
        assert_eq!(Toeplitz.dist(&a, &b), 1.0);
        let (sa, sb) = (a.shift(-3), b.shift(-3));
        assert_eq!(Toeplitz.dist(&sa, &sb), 0.125);
        let ds = Toeplitz.orbit_distances(&a, &b, -4, 4);
        for (i, k) in (-4..=4i64).enumerate() {
            assert_eq!(ds[i], Toeplitz.dist(&a.shift(k), &b.shift(k)));
        }
    }

    #[test]
    fn large_integer_addresses_take_exact_path() {
        let p = ToeplitzPoint::new(
            DyadicInteger::from_i64(1i64 << 62).add_i64(1i64 << 62).add_i64(1i64 << 62).add_i64(1i64 << 62),
            true,
        );
        // the address is 2^64, so the low word is zero at n = 0
        assert_eq!(p.address().low_u64(), 0);
        assert_eq!(p.eval(0), 1);
        assert_eq!(p.eval(1), 1);
    }
}
