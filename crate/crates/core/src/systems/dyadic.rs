//! Exact eventually periodic 2-adic integers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A 2-adic integer whose binary digit stream (least significant first) is
/// `pre` followed by `period` repeated forever.
///
/// The representation is canonical: the period is primitive and the
/// preperiod is as short as possible, so structural equality is equality
/// in Z_2. Integers are exactly the values with period `0` or `1`;
/// rationals with odd denominators are the other eventually periodic
/// streams.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicInteger {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl DyadicInteger {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        assert!(pre.iter().chain(&period).all(|&d| d <= 1), "digits must be binary");
        let mut z = DyadicInteger { pre, period };
        z.normalize();
        z
    }

    pub fn zero() -> Self {
        DyadicInteger { pre: vec![], period: vec![0] }
    }

    pub fn from_i64(n: i64) -> Self {
        let fill = u8::from(n < 0);
        let pre = (0..64).map(|i| ((n >> i) & 1) as u8).collect();
        DyadicInteger::new(pre, vec![fill])
    }

    /// The 2-adic expansion of `p / q` for odd `q`.
    pub fn from_fraction(p: i64, q: i64) -> Option<Self> {
        if q == 0 || q % 2 == 0 {
            return None;
        }
        let (mut p, q) = if q < 0 { (-(p as i128), -(q as i128)) } else { (p as i128, q as i128) };
        let mut digits = Vec::new();
        let mut seen: HashMap<i128, usize> = HashMap::new();
        loop {
            if let Some(&start) = seen.get(&p) {
                let period = digits.split_off(start);
                return Some(DyadicInteger::new(digits, period));
            }
            seen.insert(p, digits.len());
            let d = p.rem_euclid(2);
            digits.push(d as u8);
            p = (p - d * q) / 2;
        }
    }

    pub fn digit(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// The lowest 64 digits as an integer, i.e. the value modulo 2^64.
    pub fn low_u64(&self) -> u64 {
        (0..64).fold(0u64, |acc, i| acc | (u64::from(self.digit(i)) << i))
    }

    pub fn is_integer(&self) -> bool {
        self.period.len() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.period == [0]
    }

    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() || self.pre.len() > 63 {
            return None;
        }
        let low = self.pre.iter().enumerate().fold(0i64, |acc, (i, &d)| acc | (i64::from(d) << i));
        if self.period[0] == 1 {
            Some(low | (-1i64 << self.pre.len()))
        } else {
            Some(low)
        }
    }

    /// Index of the lowest nonzero digit; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        if let Some(i) = self.pre.iter().position(|&d| d == 1) {
            return Some(i);
        }
        self.period.iter().position(|&d| d == 1).map(|i| self.pre.len() + i)
    }

    /// Index of the first digit where `self` and `other` differ.
    pub fn first_difference(&self, other: &DyadicInteger) -> Option<usize> {
        if self == other {
            return None;
        }
        let horizon = self.pre.len().max(other.pre.len()) + lcm(self.period.len(), other.period.len());
        (0..horizon).find(|&i| self.digit(i) != other.digit(i))
    }

    pub fn add(&self, other: &DyadicInteger) -> DyadicInteger {
        let start = self.pre.len().max(other.pre.len());
        let cycle = lcm(self.period.len(), other.period.len());
        let mut seen = vec![[usize::MAX; 2]; cycle];
        let mut out = Vec::new();
        let mut carry = 0u8;
        let mut i = 0usize;
        loop {
            if i >= start {
                let slot = &mut seen[(i - start) % cycle][carry as usize];
                if *slot != usize::MAX {
                    let first = *slot;
                    let period = out.split_off(first);
                    return DyadicInteger::new(out, period);
                }
                *slot = i;
            }
            let s = self.digit(i) + other.digit(i) + carry;
            out.push(s & 1);
            carry = s >> 1;
            i += 1;
        }
    }

    pub fn add_i64(&self, g: i64) -> DyadicInteger {
        if g == 0 {
            return self.clone();
        }
        self.add(&DyadicInteger::from_i64(g))
    }

    pub fn neg(&self) -> DyadicInteger {
        let flip = |v: &[u8]| v.iter().map(|d| 1 - d).collect::<Vec<_>>();
        DyadicInteger::new(flip(&self.pre), flip(&self.period)).add_i64(1)
    }

    pub fn sub(&self, other: &DyadicInteger) -> DyadicInteger {
        self.add(&other.neg())
    }

    fn normalize(&mut self) {
        let n = self.period.len();
        if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| self.period[i] == self.period[i % d]))
        {
            self.period.truncate(d);
        }
        while let Some(&last) = self.pre.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl From<i64> for DyadicInteger {
    fn from(n: i64) -> Self {
        DyadicInteger::from_i64(n)
    }
}

impl fmt::Display for DyadicInteger {
    /// Integers print in decimal; everything else as `(period)preperiod`,
    /// most significant digit first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_i64() {
            return write!(f, "{n}");
        }
        f.write_str("(")?;
        for d in self.period.iter().rev() {
            write!(f, "{d}")?;
        }
        f.write_str(")")?;
        for d in self.pre.iter().rev() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DyadicInteger {
    type Err = String;

    /// Accepts a decimal integer (`-3`), a fraction with odd denominator
    /// (`1/3`), or the digit form `(period)preperiod` written most
    /// significant digit first (`(01)1` is ...010101 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (period, pre) = rest.split_once(')').ok_or("missing `)`")?;
            let parse = |t: &str| -> Result<Vec<u8>, String> {
                t.chars()
                    .rev()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(format!("invalid digit `{c}`")),
                    })
                    .collect()
            };
            let period = parse(period)?;
            if period.is_empty() {
                return Err("empty period".into());
            }
            return Ok(DyadicInteger::new(parse(pre)?, period));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|e| format!("numerator: {e}"))?;
            let q: i64 = q.trim().parse().map_err(|e| format!("denominator: {e}"))?;
            return DyadicInteger::from_fraction(p, q).ok_or_else(|| "denominator must be odd".to_string());
        }
        s.parse::<i64>().map(DyadicInteger::from_i64).map_err(|e| e.to_string())
    }
}
