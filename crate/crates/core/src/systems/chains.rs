//! The factor maps of the worked examples, each with a seeded fibre sampler.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{GroupElement, System};
use crate::factors::{compose, FactorMap, FibreRule, FibreSample};
use crate::relations::PairSequence;

use super::interval::{canonical_chain, s_forward, s_inverse};
use super::{
    DyadicInteger, Interval61, IntervalPoint, Level, Odometer, Rotation, RotationPoint, ShellPoint, Shells62, Side,
    Sturmian, SturmianPoint, ThueMorse, ThueMorsePoint, Toeplitz, ToeplitzPoint, GOLDEN_STEP,
};

/// The trivial system.
#[derive(Debug, Clone, Copy, Default)]
pub struct OnePoint;

impl System for OnePoint {
    type Point = ();

    fn id(&self) -> &str {
        "point"
    }

    fn act(&self, _x: &(), _g: GroupElement) {}

    fn dist(&self, _x: &(), _y: &()) -> f64 {
        0.0
    }

    fn diameter(&self) -> f64 {
        0.0
    }
}

/// The levels `{1/k} ∪ {0}` of the shell example, each fixed by the action.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShellLevels;

impl System for ShellLevels {
    type Point = Level;

    fn id(&self) -> &str {
        "levels62"
    }

    fn act(&self, x: &Level, _g: GroupElement) -> Level {
        *x
    }

    fn dist(&self, x: &Level, y: &Level) -> f64 {
        (x.height() - y.height()).abs()
    }

    fn diameter(&self) -> f64 {
        1.0
    }
}

/// A point of [0, 1] under `S`, stored like [`IntervalPoint`] without the branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalBasePoint {
    pub y: f64,
    pub steps: i64,
}

impl IntervalBasePoint {
    pub fn new(y: f64) -> Self {
        assert!((0.0..=1.0).contains(&y), "y = {y} outside [0, 1]");
        IntervalBasePoint { y, steps: 0 }
    }

    pub fn position(&self) -> f64 {
        canonical_chain(self.y, self.steps, self.steps, s_forward, s_inverse)[0]
    }
}

impl fmt::Display for IntervalBasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y={}", self.y)?;
        if self.steps != 0 {
            write!(f, ", steps={}", self.steps)?;
        }
        Ok(())
    }
}

/// [0, 1] under the interval homeomorphism, the common image of both branches.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalBase;

impl System for IntervalBase {
    type Point = IntervalBasePoint;

    fn id(&self) -> &str {
        "interval-base"
    }

    fn act(&self, x: &IntervalBasePoint, g: GroupElement) -> IntervalBasePoint {
        IntervalBasePoint { steps: x.steps + g.0, ..*x }
    }

    fn dist(&self, x: &IntervalBasePoint, y: &IntervalBasePoint) -> f64 {
        (x.position() - y.position()).abs()
    }

    fn diameter(&self) -> f64 {
        1.0
    }

    fn orbit_distances(&self, x: &IntervalBasePoint, y: &IntervalBasePoint, lo: i64, hi: i64) -> Vec<f64> {
        let px = canonical_chain(x.y, x.steps + lo, x.steps + hi, s_forward, s_inverse);
        let py = canonical_chain(y.y, y.steps + lo, y.steps + hi, s_forward, s_inverse);
        px.iter().zip(&py).map(|(p, q)| (p - q).abs()).collect()
    }
}

/// `pi = psi . phi` together with its two halves.
pub struct FactorChain<X: System, Y: System, Z: System> {
    pub phi: FactorMap<X, Y>,
    pub psi: FactorMap<Y, Z>,
    pub pi: FactorMap<X, Z>,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random 2-adic integer `p/q` with `q` odd, not in Z.
fn random_non_integer(rng: &mut ChaCha8Rng) -> DyadicInteger {
    loop {
        let q = 2 * rng.random_range(1i64..128) + 1;
        let p = rng.random_range(-4096i64..4096);
        if p % q != 0 {
            return DyadicInteger::from_fraction(p, q).expect("odd denominator");
        }
    }
}

fn four_pow(j: u32) -> i64 {
    1i64 << (2 * j)
}

fn tm(address: &DyadicInteger, primed: bool, bit0: u8) -> ThueMorsePoint {
    ThueMorse::point(address.clone(), primed, bit0)
}

/// Negation pairs over non-integer and small integer addresses, and
/// sequences of them converging along `z + 4^j`.
fn tm_phi_sample(seed: u64) -> FibreSample<ThueMorsePoint> {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    for _ in 0..20 {
        let x = tm(&random_non_integer(&mut rng), false, rng.random_range(0..=1));
        pairs.push((x.clone(), x.negation()));
    }
    for z in -3..=3 {
        for primed in [false, true] {
            let x = tm(&DyadicInteger::from_i64(z), primed, 0);
            pairs.push((x.clone(), x.negation()));
        }
    }
    let mut sequences = Vec::new();
    let bases = [DyadicInteger::from_i64(0), DyadicInteger::from_i64(-3), random_non_integer(&mut rng)];
    for z in &bases {
        let bit0 = rng.random_range(0..=1);
        let members = (1..=6)
            .map(|j| {
                let x = tm(&z.add_i64(four_pow(j)), false, bit0);
                (x.clone(), x.negation())
            })
            .collect();
        // f(4^j) = 1, so integer limits carry the primed flag
        let limit = tm(z, true, bit0);
        sequences.push(PairSequence::new(members, Some((limit.clone(), limit.negation()))));
    }
    FibreSample::new(pairs, sequences)
}

/// The two sequences over each of 20 integer addresses, a few singleton
/// fibres, and sequences whose discontinuity escapes to infinity.
fn tm_psi_sample(seed: u64) -> FibreSample<ToeplitzPoint> {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    let mut ks: Vec<i64> = Vec::new();
    while ks.len() < 20 {
        let k = rng.random_range(-1000i64..=1000);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    for k in ks {
        pairs.push((ToeplitzPoint::gamma(k, false), ToeplitzPoint::gamma(k, true)));
    }
    for _ in 0..4 {
        let x = ToeplitzPoint::new(random_non_integer(&mut rng), false);
        pairs.push((x.clone(), x));
    }
    let toward = |start: fn(u32) -> i64, primed_limit: bool| {
        let members =
            (1..=6).map(|j| (ToeplitzPoint::gamma(start(j), false), ToeplitzPoint::gamma(start(j), true))).collect();
        let limit = ToeplitzPoint::gamma(0, primed_limit);
        PairSequence::new(members, Some((limit.clone(), limit)))
    };
    // f(-4^j) = 1 and f(2 * 4^j) = 0 fix the flag of the limit
    let sequences = vec![toward(|j| -four_pow(j), true), toward(|j| 2 * four_pow(j), false)];
    FibreSample::new(pairs, sequences)
}

/// Full four-point fibres over small integers, negation pairs elsewhere,
/// and sequences of asymptotic pairs converging to the diagonal.
fn tm_pi_sample(seed: u64) -> FibreSample<ThueMorsePoint> {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    for z in -3..=3 {
        let a = DyadicInteger::from_i64(z);
        let fibre = [tm(&a, false, 0), tm(&a, false, 1), tm(&a, true, 0), tm(&a, true, 1)];
        for i in 0..4 {
            for j in i + 1..4 {
                pairs.push((fibre[i].clone(), fibre[j].clone()));
            }
        }
    }
    for _ in 0..10 {
        let x = tm(&random_non_integer(&mut rng), false, rng.random_range(0..=1));
        pairs.push((x.clone(), x.negation()));
    }
    let mut sequences = Vec::new();
    for bit0 in [0, 1] {
        let members = (1..=6)
            .map(|j| {
                let a = DyadicInteger::from_i64(-four_pow(j));
                (tm(&a, false, bit0), tm(&a, true, bit0))
            })
            .collect();
        let limit = tm(&DyadicInteger::zero(), true, bit0);
        sequences.push(PairSequence::new(members, Some((limit.clone(), limit))));
    }
    let z = random_non_integer(&mut rng);
    let members = (1..=6)
        .map(|j| {
            let x = tm(&z.add_i64(four_pow(j)), false, 0);
            (x.clone(), x.negation())
        })
        .collect();
    let limit = tm(&z, false, 0);
    sequences.push(PairSequence::new(members, Some((limit.clone(), limit.negation()))));
    FibreSample::new(pairs, sequences)
}

/// Thue–Morse → Toeplitz → odometer.
pub fn thue_morse_chain() -> FactorChain<ThueMorse, Toeplitz, Odometer> {
    let (tm_sys, toeplitz, odometer) = (Arc::new(ThueMorse), Arc::new(Toeplitz), Arc::new(Odometer));
    let phi = FactorMap::new(
        "tm.phi",
        tm_sys.clone(),
        toeplitz.clone(),
        |x: &ThueMorsePoint| x.base().clone(),
        tm_phi_sample,
        FibreRule::Exact,
    );
    let psi = FactorMap::new(
        "tm.psi",
        toeplitz,
        odometer,
        |y: &ToeplitzPoint| y.address().clone(),
        tm_psi_sample,
        FibreRule::Exact,
    );
    let pi = compose("tm.pi", &phi, &psi, tm_pi_sample);
    FactorChain { phi, psi, pi }
}

/// `m` with `m * alpha` approaching 0 from above, along Fibonacci numbers.
fn fibonacci_approach(count: usize) -> Vec<i64> {
    let (mut a, mut b) = (1i64, 2i64);
    let mut out = Vec::new();
    let mut last = u64::MAX;
    while out.len() < count {
        let phase = GOLDEN_STEP.wrapping_mul(b as u64);
        if b >= 5 && phase < 1 << 63 && phase < last {
            out.push(b);
            last = phase;
        }
        (a, b) = (b, a + b);
    }
    out
}

fn cut_pair(m: i64) -> (SturmianPoint, SturmianPoint) {
    (SturmianPoint::on_cut_orbit(m, Side::Right), SturmianPoint::on_cut_orbit(m, Side::Left))
}

fn sturm_phi_sample(seed: u64) -> FibreSample<SturmianPoint> {
    let mut rng = rng(seed);
    let mut pairs: Vec<_> = (0..20).map(|_| cut_pair(rng.random_range(-4096i64..=4096))).collect();
    for _ in 0..4 {
        let x = SturmianPoint::new(rng.random(), Side::Right);
        pairs.push((x, x));
    }
    let members = fibonacci_approach(8).into_iter().map(cut_pair).collect();
    let zero = SturmianPoint::new(0, Side::Right);
    FibreSample::new(pairs, vec![PairSequence::new(members, Some((zero, zero)))])
}

fn rotation_pair(rng: &mut ChaCha8Rng, min_dist: f64) -> (RotationPoint, RotationPoint) {
    loop {
        let (a, b) = (RotationPoint(rng.random()), RotationPoint(rng.random()));
        if Rotation::circle_dist(a.0, b.0) >= min_dist {
            return (a, b);
        }
    }
}

fn sturm_psi_sample(seed: u64) -> FibreSample<RotationPoint> {
    let mut rng = rng(seed);
    let mut pairs: Vec<_> = (0..20).map(|_| rotation_pair(&mut rng, 0.15)).collect();
    let a = RotationPoint(rng.random());
    pairs.push((a, a));
    let near = (1..=12)
        .map(|j| (a, RotationPoint(a.0.wrapping_add(RotationPoint::from_f64(0.1 * 0.5f64.powi(j)).0))))
        .collect();
    let far = RotationPoint(a.0.wrapping_add(RotationPoint::from_f64(0.3).0));
    let apart = (1..=12)
        .map(|j| (a, RotationPoint(far.0.wrapping_add(RotationPoint::from_f64(0.01 * 0.5f64.powi(j)).0))))
        .collect();
    let sequences = vec![PairSequence::new(near, Some((a, a))), PairSequence::new(apart, Some((a, far)))];
    FibreSample::new(pairs, sequences)
}

fn sturm_pi_sample(seed: u64) -> FibreSample<SturmianPoint> {
    let mut sample = sturm_phi_sample(seed);
    let mut rng = rng(seed ^ 0x5eed);
    for _ in 0..20 {
        let side = |b: bool| if b { Side::Right } else { Side::Left };
        let x = SturmianPoint::new(rng.random(), side(rng.random()));
        let y = SturmianPoint::new(rng.random(), side(rng.random()));
        sample.pairs.push((x, y));
    }
    sample
}

/// Sturmian subshift → golden rotation → point.
pub fn sturmian_chain() -> FactorChain<Sturmian, Rotation, OnePoint> {
    let (sturm, rotation, point) = (Arc::new(Sturmian), Arc::new(Rotation::golden()), Arc::new(OnePoint));
    let phi = FactorMap::new(
        "sturm.phi",
        sturm,
        rotation.clone(),
        |x: &SturmianPoint| RotationPoint(x.phase),
        sturm_phi_sample,
        FibreRule::Exact,
    );
    let psi = FactorMap::new("sturm.psi", rotation, point, |_: &RotationPoint| (), sturm_psi_sample, FibreRule::Exact);
    let pi = compose("sturm.pi", &phi, &psi, sturm_pi_sample);
    FactorChain { phi, psi, pi }
}

fn branch_pair(y: f64) -> (IntervalPoint, IntervalPoint) {
    (IntervalPoint::hat(y), IntervalPoint::check(y))
}

fn ex61_sample(seed: u64) -> FibreSample<IntervalPoint> {
    let mut rng = rng(seed);
    let mut pairs: Vec<_> = (0..16).map(|_| branch_pair(rng.random_range(0.0..1.0))).collect();
    pairs.extend([0.5, 1.0 / 3.0, 0.0].map(branch_pair));
    let below_third = (1..=8).map(|j| branch_pair(1.0 / 3.0 - 0.5f64.powi(j + 3))).collect();
    let to_zero = (1..=10).map(|j| branch_pair(0.5f64.powi(j + 2))).collect();
    let sequences = vec![
        PairSequence::new(below_third, Some(branch_pair(1.0 / 3.0))),
        PairSequence::new(to_zero, Some(branch_pair(0.0))),
    ];
    FibreSample::new(pairs, sequences)
}

/// The two branches of the interval example collapsed to one.
pub fn ex61_factor() -> FactorMap<Interval61, IntervalBase> {
    FactorMap::new(
        "ex61.pi",
        Arc::new(Interval61),
        Arc::new(IntervalBase),
        |p: &IntervalPoint| IntervalBasePoint { y: p.y, steps: p.steps },
        ex61_sample,
        FibreRule::Exact,
    )
}

fn shell(level: Level, t: f64) -> ShellPoint {
    ShellPoint::new(level, t)
}

/// Angles at least `gap` apart on the circle, away from the fixed point.
fn separated_angles(rng: &mut ChaCha8Rng, gap: f64) -> (f64, f64) {
    loop {
        let s = rng.random_range(0.5..TAU - 0.5);
        let t = rng.random_range(0.5..TAU - 0.5);
        if (s - t).abs() >= gap {
            return (s, t);
        }
    }
}

fn ex62_sample(seed: u64) -> FibreSample<ShellPoint> {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    for k in 1..=8 {
        let (s, t) = separated_angles(&mut rng, 0.0);
        pairs.push((shell(Level::Finite(k), s), shell(Level::Finite(k), t)));
    }
    for _ in 0..4 {
        let (s, t) = separated_angles(&mut rng, 0.5);
        pairs.push((shell(Level::Limit, s), shell(Level::Limit, t)));
    }
    let mut sequences = Vec::new();
    for _ in 0..3 {
        let (s, t) = separated_angles(&mut rng, 0.5);
        let members = (1..=16).map(|k| (shell(Level::Finite(k), s), shell(Level::Finite(k), t))).collect();
        sequences.push(PairSequence::new(members, Some((shell(Level::Limit, s), shell(Level::Limit, t)))));
    }
    let s = rng.random_range(0.5..TAU - 0.5);
    let members =
        (1..=16).map(|k| (shell(Level::Finite(k), s), shell(Level::Finite(k), s + 0.5f64.powi(k as i32)))).collect();
    sequences.push(PairSequence::new(members, Some((shell(Level::Limit, s), shell(Level::Limit, s)))));
    FibreSample::new(pairs, sequences)
}

/// Each point to its level.
pub fn ex62_factor() -> FactorMap<Shells62, ShellLevels> {
    FactorMap::new(
        "ex62.pi",
        Arc::new(Shells62),
        Arc::new(ShellLevels),
        |p: &ShellPoint| p.level,
        ex62_sample,
        FibreRule::Exact,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_in_fibres() {
        let chain = thue_morse_chain();
        for (name, ok) in [
            ("tm.phi", chain.phi.sample(3).all_pairs().iter().all(|(x, y)| chain.phi.in_fibre(x, y, 0.01))),
            ("tm.psi", chain.psi.sample(3).all_pairs().iter().all(|(x, y)| chain.psi.in_fibre(x, y, 0.01))),
            ("tm.pi", chain.pi.sample(3).all_pairs().iter().all(|(x, y)| chain.pi.in_fibre(x, y, 0.01))),
        ] {
            assert!(ok, "{name}");
        }
        let s = sturmian_chain();
        assert!(s.phi.sample(1).all_pairs().iter().all(|(x, y)| s.phi.in_fibre(x, y, 0.01)));
        let e = ex61_factor();
        assert!(e.sample(1).all_pairs().iter().all(|(x, y)| e.in_fibre(x, y, 0.01)));
        let e = ex62_factor();
        assert!(e.sample(1).all_pairs().iter().all(|(x, y)| e.in_fibre(x, y, 0.01)));
    }

    #[test]
    fn samplers_are_deterministic() {
        let chain = thue_morse_chain();
        assert_eq!(chain.pi.sample(9), chain.pi.sample(9));
        assert_eq!(ex62_factor().sample(4), ex62_factor().sample(4));
    }

    fn assert_converges<S: System>(sys: &S, seq: &PairSequence<S::Point>) {
        let gaps = seq.limit_gaps(sys).unwrap();
        assert!(*gaps.last().unwrap() < 1e-3, "{gaps:?}");
    }

    #[test]
    fn tm_sequences_converge() {
        let chain = thue_morse_chain();
        for seq in chain.pi.sample(2).sequences.iter().chain(&chain.phi.sample(2).sequences) {
            assert_converges(&ThueMorse, seq);
        }
        for seq in &chain.psi.sample(2).sequences {
            assert_converges(&Toeplitz, seq);
        }
        for seq in &sturmian_chain().phi.sample(2).sequences {
            assert_converges(&Sturmian, seq);
        }
    }

    #[test]
    fn fibonacci_phases_decrease_to_zero() {
        let ms = fibonacci_approach(8);
        let phases: Vec<u64> = ms.iter().map(|&m| GOLDEN_STEP.wrapping_mul(m as u64)).collect();
        assert!(phases.windows(2).all(|w| w[1] < w[0]));
        assert!(RotationPoint(*phases.last().unwrap()).to_f64() < 1e-3);
    }

    #[test]
    fn equivariance() {
        let chain = thue_morse_chain();
        let pts: Vec<_> = chain.pi.sample(0).pairs.into_iter().map(|p| p.0).collect();
        let gs = [GroupElement(-5), GroupElement(0), GroupElement(17)];
        assert!(chain.phi.is_equivariant_on(&pts, &gs));
        assert!(chain.pi.is_equivariant_on(&pts, &gs));
        let e = ex61_factor();
        let pts: Vec<_> = e.sample(0).pairs.into_iter().map(|p| p.1).collect();
        assert!(e.is_equivariant_on(&pts, &gs));
    }
}
