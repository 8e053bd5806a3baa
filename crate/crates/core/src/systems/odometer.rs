use crate::dynamics::{GroupElement, System};

use super::{pow2_neg, DyadicInteger};

/// The dyadic odometer `z -> z + 1` on Z_2.
#[derive(Debug, Clone, Copy, Default)]
pub struct Odometer;

pub fn odometer_add(z: &DyadicInteger, g: GroupElement) -> DyadicInteger {
    z.add_i64(g.0)
}

impl System for Odometer {
    type Point = DyadicInteger;

    fn id(&self) -> &str {
        "odometer"
    }

    fn act(&self, x: &DyadicInteger, g: GroupElement) -> DyadicInteger {
        odometer_add(x, g)
    }

    /// `2^-i` where `i` is the first digit at which the points differ.
    fn dist(&self, x: &DyadicInteger, y: &DyadicInteger) -> f64 {
        match x.first_difference(y) {
            None => 0.0,
            Some(i) => pow2_neg(i as u64),
        }
    }

    fn diameter(&self) -> f64 {
        1.0
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    // the action is an isometry
    fn orbit_distances(&self, x: &DyadicInteger, y: &DyadicInteger, lo: i64, hi: i64) -> Vec<f64> {
        vec![self.dist(x, y); (hi - lo + 1) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_plus_one() {
        let z = Odometer.act(&DyadicInteger::zero(), GroupElement(1));
        assert_eq!((0..3).map(|i| z.digit(i)).collect::<Vec<_>>(), vec![1, 0, 0]);
    }

    #[test]
    fn distance_zero_two() {
        assert_eq!(Odometer.dist(&DyadicInteger::from_i64(0), &DyadicInteger::from_i64(2)), 0.5);
        assert_eq!(Odometer.dist(&DyadicInteger::from_i64(0), &DyadicInteger::from_i64(1)), 1.0);
        assert_eq!(Odometer.dist(&DyadicInteger::from_i64(7), &DyadicInteger::from_i64(7)), 0.0);
    }

    #[test]
    fn isometry() {
        let a = DyadicInteger::from_fraction(1, 3).unwrap();
        let b = DyadicInteger::from_fraction(5, 7).unwrap();
        let d = Odometer.dist(&a, &b);
        for g in [-5, -1, 1, 2, 100] {
            let g = GroupElement(g);
            assert_eq!(Odometer.dist(&Odometer.act(&a, g), &Odometer.act(&b, g)), d);
        }
    }
}
