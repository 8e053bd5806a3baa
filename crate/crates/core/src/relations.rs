//! Thresholded pair classification and empirical tests on fibre samples.
//!
//! Finite windows cannot decide "= 0", so every verdict goes through a
//! [`Tolerances`] pair. Scans can refute a property; a passing scan only
//! means no violation was found at the given tolerances.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FolnerSchedule, FolnerWindow, GroupElement, System};
use crate::error::{Error, Result};
use crate::estimators::{weyl_from_orbit, PairEstimates, PairOrbit};
use crate::factors::{FactorMap, FibreSampler};
use crate::fixed::{quantize_signed, signed_ratio_to_f64, FRACTION_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Estimates below this count as 0.
    pub zero_tol: f64,
    /// Estimates above this count as bounded away from 0.
    pub sep_tol: f64,
}

impl Tolerances {
    pub fn new(zero_tol: f64, sep_tol: f64) -> Result<Self> {
        let t = Tolerances { zero_tol, sep_tol };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.zero_tol > 0.0 && self.zero_tol < self.sep_tol) {
            return Err(Error::InvalidTolerances { zero_tol: self.zero_tol, sep_tol: self.sep_tol });
        }
        Ok(())
    }

    /// Three-way reading of a value that should be 0.
    pub fn judge_zero(&self, v: f64) -> Judgement {
        if v < self.zero_tol {
            Judgement::Yes
        } else if v > self.sep_tol {
            Judgement::No
        } else {
            Judgement::Inconclusive
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero_tol: 1e-2, sep_tol: 1e-1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Judgement {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Diagonal,
    BanachProximal,
    Proximal,
    Distal,
    Inconclusive,
}

impl PairClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairClass::Diagonal => "diagonal",
            PairClass::BanachProximal => "banach_proximal",
            PairClass::Proximal => "proximal",
            PairClass::Distal => "distal",
            PairClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub in_r_pi: bool,
    /// `min(check, weyl)`: both bound the infimum of orbit distances from above.
    pub check_val: f64,
    pub besi_val: f64,
    pub weyl_val: f64,
    pub classes: BTreeSet<PairClass>,
    pub estimates: PairEstimates,
}

impl PairVerdict {
    pub fn from_estimates(diagonal: bool, in_r_pi: bool, estimates: PairEstimates, tol: &Tolerances) -> Self {
        let check_val = estimates.check.value.min(estimates.weyl.value);
        let besi_val = estimates.besicovitch.value;
        let weyl_val = estimates.weyl.value;
        let mut classes = BTreeSet::new();
        if diagonal {
            classes.insert(PairClass::Diagonal);
        }
        if weyl_val < tol.zero_tol {
            classes.insert(PairClass::BanachProximal);
        }
        if check_val < tol.zero_tol {
            classes.insert(PairClass::Proximal);
        } else if check_val > tol.sep_tol {
            classes.insert(PairClass::Distal);
        } else {
            classes.insert(PairClass::Inconclusive);
        }
        PairVerdict { in_r_pi, check_val, besi_val, weyl_val, classes, estimates }
    }

    pub fn is(&self, class: PairClass) -> bool {
        self.classes.contains(&class)
    }

    /// `diagonal => banach_proximal => proximal`, and never both proximal and distal.
    pub fn respects_lattice(&self) -> bool {
        (!self.is(PairClass::Diagonal) || self.is(PairClass::BanachProximal))
            && (!self.is(PairClass::BanachProximal) || self.is(PairClass::Proximal))
            && !(self.is(PairClass::Proximal) && self.is(PairClass::Distal))
    }
}

type PointPair<P> = (P, P);

/// Membership in `R(pi)`.
pub trait FibreRelation<P>: Sync {
    fn related(&self, x: &P, y: &P, zero_tol: f64) -> bool;
}

pub(crate) fn is_diagonal<S: System>(sys: &S, x: &S::Point, y: &S::Point) -> bool {
    x == y || sys.dist(x, y) == 0.0
}

pub fn classify_pair<S: System>(
    sys: &S,
    x: &S::Point,
    y: &S::Point,
    pi: Option<&dyn FibreRelation<S::Point>>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
) -> Result<PairVerdict> {
    tol.validate()?;
    let in_r_pi = pi.is_none_or(|p| p.related(x, y, tol.zero_tol));
    let estimates = PairEstimates::compute(sys, x, y, sched);
    Ok(PairVerdict::from_estimates(is_diagonal(sys, x, y), in_r_pi, estimates, tol))
}

/// Pairs from one system, optionally with the pair they converge to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSequence<P> {
    pub pairs: Vec<(P, P)>,
    pub limit: Option<(P, P)>,
}

impl<P> PairSequence<P> {
    pub fn new(pairs: Vec<(P, P)>, limit: Option<(P, P)>) -> Self {
        PairSequence { pairs, limit }
    }

    /// `d(x_j, x) + d(y_j, y)` against the declared limit.
    pub fn limit_gaps<S: System<Point = P>>(&self, sys: &S) -> Option<Vec<f64>>
    where
        P: Clone + PartialEq + std::fmt::Debug + Send + Sync,
    {
        let (lx, ly) = self.limit.as_ref()?;
        Some(self.pairs.iter().map(|(x, y)| sys.dist(x, lx) + sys.dist(y, ly)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbpReport {
    pub holds: bool,
    pub judgement: Judgement,
    pub weyl_series: Vec<f64>,
    pub tail_start: usize,
}

pub fn weyl_value<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> f64 {
    weyl_from_orbit(&PairOrbit::for_schedule(sys, x, y, sched), sched).value
}

/// Asymptotic Banach proximality with the default tail fraction 1/2.
pub fn is_asymptotically_banach_proximal<S: System>(
    sys: &S,
    seq: &PairSequence<S::Point>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
) -> Result<AbpReport> {
    abp_with_tail(sys, seq, tol, sched, 0.5)
}

/// The Weyl estimates of the last `tail_fraction` of the pairs must all be
/// below `zero_tol` (not aBP if any exceeds `sep_tol`).
pub fn abp_with_tail<S: System>(
    sys: &S,
    seq: &PairSequence<S::Point>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    tail_fraction: f64,
) -> Result<AbpReport> {
    tol.validate()?;
    if seq.pairs.is_empty() {
        return Err(Error::EmptySequence { index: 0 });
    }
    let weyl_series = par_map(&seq.pairs, |(x, y)| weyl_value(sys, x, y, sched));
    let n = weyl_series.len();
    let keep = ((n as f64 * tail_fraction.clamp(0.0, 1.0)).ceil() as usize).clamp(1, n);
    let tail_start = n - keep;
    let tail = &weyl_series[tail_start..];
    let judgement = if tail.iter().all(|&v| v < tol.zero_tol) {
        Judgement::Yes
    } else if tail.iter().any(|&v| v > tol.sep_tol) {
        Judgement::No
    } else {
        Judgement::Inconclusive
    };
    Ok(AbpReport { holds: judgement == Judgement::Yes, judgement, weyl_series, tail_start })
}

/// Grid of `eps` values and the `delta(eps) = delta_modulus * eps` rule
/// used by (eps, delta) scans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub eps_grid: Vec<f64>,
    pub delta_modulus: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { eps_grid: vec![0.5, 0.25, 0.1, 0.05], delta_modulus: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsDeltaViolation {
    pub pair_index: usize,
    pub eps: f64,
    pub delta: f64,
    pub dist: f64,
    pub value: f64,
}

/// Pairs with `dist < delta(eps)` whose orbit value exceeds `eps`.
pub fn eps_delta_scan(dists: &[f64], values: &[f64], scan: &ScanConfig) -> Vec<EpsDeltaViolation> {
    let mut out = Vec::new();
    for &eps in &scan.eps_grid {
        let delta = scan.delta_modulus * eps;
        for (i, (&d, &v)) in dists.iter().zip(values).enumerate() {
            if d < delta && v > eps {
                out.push(EpsDeltaViolation { pair_index: i, eps, delta, dist: d, value: v });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyMReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub witnesses: Vec<EpsDeltaViolation>,
    pub note: String,
}

fn check_fibre<X: System, Y: System>(
    pi: &FactorMap<X, Y>,
    pairs: &[(X::Point, X::Point)],
    tol: &Tolerances,
) -> Result<()> {
    match pairs.iter().position(|(x, y)| !pi.in_fibre(x, y, tol.zero_tol)) {
        Some(index) => Err(Error::NotInFibre { index }),
        None => Ok(()),
    }
}

/// Empirical (eps, delta) scan for property (M): sampled `R(pi)` pairs
/// (including sequence members and limits) closer than `delta` must have
/// Weyl estimate at most `eps`.
pub fn test_property_m<X: System, Y: System>(
    pi: &FactorMap<X, Y>,
    sampler: &dyn FibreSampler<X::Point>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    seed: u64,
    scan: &ScanConfig,
) -> Result<PropertyMReport> {
    tol.validate()?;
    let pairs = sampler.sample(seed).all_pairs();
    if pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    check_fibre(pi, &pairs, tol)?;
    let sys = pi.source();
    let dists: Vec<f64> = pairs.iter().map(|(x, y)| sys.dist(x, y)).collect();
    let values = par_map(&pairs, |(x, y)| weyl_value(sys, x, y, sched));
    let witnesses = eps_delta_scan(&dists, &values, scan);
    let holds = witnesses.is_empty();
    let note = if holds { "no violation found at tolerances" } else { "violation found" };
    Ok(PropertyMReport { holds, pairs_checked: pairs.len(), witnesses, note: note.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// The limit pair is Banach proximal but the sequence is not aBP.
    LimitBpImpliesSequenceAbp,
    /// The sequence is aBP but its limit is not Banach proximal.
    SequenceAbpImpliesLimitBp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceOutcome {
    pub abp: AbpReport,
    pub limit_weyl: f64,
    pub limit_bp: Judgement,
    pub limit_gaps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeWitness {
    pub sequence_index: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeReport {
    pub holds: bool,
    pub direction_failed: Option<Direction>,
    pub witnesses: Vec<MeWitness>,
    pub sequences: Vec<SequenceOutcome>,
}

/// Checks both implications between asymptotic Banach proximality of each
/// sampled sequence and Banach proximality of its declared limit.
pub fn test_mean_equicontinuity<X: System, Y: System>(
    pi: &FactorMap<X, Y>,
    sampler: &dyn FibreSampler<X::Point>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    seed: u64,
) -> Result<MeReport> {
    tol.validate()?;
    let sample = sampler.sample(seed);
    if sample.sequences.is_empty() {
        return Err(Error::EmptySample);
    }
    for (index, seq) in sample.sequences.iter().enumerate() {
        if seq.limit.is_none() {
            return Err(Error::MissingLimit { index });
        }
        if seq.pairs.is_empty() {
            return Err(Error::EmptySequence { index });
        }
        let members: Vec<_> = seq.pairs.iter().chain(seq.limit.iter()).cloned().collect();
        if check_fibre(pi, &members, tol).is_err() {
            return Err(Error::NotInFibre { index });
        }
    }
    let sys = pi.source();
    let mut sequences = Vec::with_capacity(sample.sequences.len());
    let mut witnesses = Vec::new();
    for (index, seq) in sample.sequences.iter().enumerate() {
        let abp = is_asymptotically_banach_proximal(sys, seq, tol, sched)?;
        let (lx, ly) = seq.limit.as_ref().expect("checked above");
        let limit_weyl = weyl_value(sys, lx, ly, sched);
        let limit_bp = tol.judge_zero(limit_weyl);
        match (limit_bp, abp.judgement) {
            (Judgement::Yes, Judgement::No) => {
                witnesses.push(MeWitness { sequence_index: index, direction: Direction::LimitBpImpliesSequenceAbp })
            }
            (Judgement::No, Judgement::Yes) => {
                witnesses.push(MeWitness { sequence_index: index, direction: Direction::SequenceAbpImpliesLimitBp })
            }
            _ => {}
        }
        let limit_gaps = seq.limit_gaps(sys).unwrap_or_default();
        sequences.push(SequenceOutcome { abp, limit_weyl, limit_bp, limit_gaps });
    }
    Ok(MeReport {
        holds: witnesses.is_empty(),
        direction_failed: witnesses.first().map(|w| w.direction),
        witnesses,
        sequences,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// A nearby pair with Weyl estimate below `zero_tol`.
    RegionallyBanachProximal,
    /// A nearby pair with check estimate below `zero_tol`.
    RegionallyProximal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionalWitness<P> {
    pub kind: WitnessKind,
    pub pair: (P, P),
    /// `max(d(x, a), d(y, b))` for the witness `(a, b)`.
    pub distance: f64,
    pub weyl_val: f64,
    pub check_val: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionalReport<P> {
    pub witness: Option<RegionalWitness<P>>,
    pub candidates_searched: usize,
    pub note: String,
}

/// Searches the pair itself and the sampler's `R(pi)` pairs within
/// `eps_pair` of `(x, y)` for a Banach proximal (preferred) or proximal
/// pair. Finding none proves nothing.
pub fn regional_witness_search<X: System, Y: System>(
    pi: &FactorMap<X, Y>,
    x: &X::Point,
    y: &X::Point,
    eps_pair: f64,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    seed: u64,
) -> Result<RegionalReport<X::Point>> {
    if eps_pair.is_nan() || eps_pair <= 0.0 {
        return Err(Error::NonPositiveEpsilon(eps_pair));
    }
    tol.validate()?;
    let sys = pi.source();
    let mut candidates = vec![(x.clone(), y.clone())];
    candidates.extend(pi.sample(seed).all_pairs());
    let near: Vec<(PointPair<X::Point>, f64)> = candidates
        .into_iter()
        .filter_map(|(a, b)| {
            let straight = sys.dist(x, &a).max(sys.dist(y, &b));
            let swapped = sys.dist(x, &b).max(sys.dist(y, &a));
            if swapped < straight {
                (swapped < eps_pair).then_some(((b, a), swapped))
            } else {
                (straight < eps_pair).then_some(((a, b), straight))
            }
        })
        .collect();
    let searched = near.len();
    let scored = par_map(&near, |((a, b), d)| {
        let e = PairEstimates::compute(sys, a, b, sched);
        (*d, e.weyl.value, e.check.value.min(e.weyl.value))
    });
    let pick = |kind: WitnessKind| {
        let mut best: Option<usize> = None;
        for (i, &(d, w, c)) in scored.iter().enumerate() {
            let ok = match kind {
                WitnessKind::RegionallyBanachProximal => w < tol.zero_tol,
                WitnessKind::RegionallyProximal => c < tol.zero_tol,
            };
            if ok && best.is_none_or(|b| d < scored[b].0) {
                best = Some(i);
            }
        }
        best.map(|i| (kind, i))
    };
    let found = pick(WitnessKind::RegionallyBanachProximal).or_else(|| pick(WitnessKind::RegionallyProximal));
    let witness = found.map(|(kind, i)| RegionalWitness {
        kind,
        pair: near[i].0.clone(),
        distance: scored[i].0,
        weyl_val: scored[i].1,
        check_val: scored[i].2,
    });
    let note = if witness.is_some() {
        "witness found among sampled pairs".to_string()
    } else {
        "no witness among sampled pairs; absence is not proof of non-membership".to_string()
    };
    Ok(RegionalReport { witness, candidates_searched: searched, note })
}

/// A bounded test function on the points of a system.
pub type TestFunction<P> = std::sync::Arc<dyn Fn(&P) -> f64 + Send + Sync>;

/// `(1/|F|) sum_{g in F} f(g.x)` for each test function, with exact
/// fixed-point sums.
pub fn empirical_measure<S: System>(
    sys: &S,
    x: &S::Point,
    window: &FolnerWindow,
    fns: &[TestFunction<S::Point>],
) -> Vec<f64> {
    let orbit = sys.orbit(x, window.lo(), window.hi());
    fns.iter()
        .map(|f| {
            let sum: i128 = orbit.iter().map(|p| quantize_signed(f(p))).sum();
            signed_ratio_to_f64(sum, u128::from(window.len()), FRACTION_BITS)
        })
        .collect()
}

/// `g.x` for every `g` of a window, in order.
pub fn window_orbit<S: System>(sys: &S, x: &S::Point, window: &FolnerWindow) -> Vec<S::Point> {
    window.iter().map(|g| sys.act(x, GroupElement(g))).collect()
}

pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{Rotation, RotationPoint, ThueMorse, ThueMorsePoint};

    #[test]
    fn tolerances_must_be_ordered() {
        assert!(Tolerances::new(0.1, 0.01).is_err());
        assert!(Tolerances::new(0.0, 0.1).is_err());
        assert!(Tolerances::new(0.01, 0.1).is_ok());
    }

    #[test]
    fn diagonal_pair() {
        let sched = crate::default_schedule(6).unwrap();
        let x = ThueMorsePoint::fixed_point(false);
        let v = classify_pair(&ThueMorse, &x, &x, None, &Tolerances::default(), &sched).unwrap();
        assert!(v.is(PairClass::Diagonal) && v.is(PairClass::BanachProximal) && v.is(PairClass::Proximal));
        assert!(v.respects_lattice());
    }

    #[test]
    fn negation_pair_is_distal() {
        let sched = crate::default_schedule(6).unwrap();
        let x = ThueMorsePoint::fixed_point(false);
        let v = classify_pair(&ThueMorse, &x, &x.negation(), None, &Tolerances::default(), &sched).unwrap();
        assert_eq!(v.check_val, 1.0);
        assert!(v.is(PairClass::Distal) && !v.is(PairClass::BanachProximal));
    }

    #[test]
    fn scan_flags_close_pairs_with_large_values() {
        let v = eps_delta_scan(&[0.01, 0.9], &[0.8, 0.9], &ScanConfig::default());
        assert!(!v.is_empty());
        assert!(v.iter().all(|w| w.pair_index == 0));
    }

    #[test]
    fn constant_diagonal_sequence_is_abp() {
        let sched = crate::default_schedule(4).unwrap();
        let p = RotationPoint::from_f64(0.2);
        let seq = PairSequence::new(vec![(p, p); 4], Some((p, p)));
        let r = is_asymptotically_banach_proximal(&Rotation::golden(), &seq, &Tolerances::default(), &sched).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn empirical_measure_of_constant() {
        let one: TestFunction<RotationPoint> = std::sync::Arc::new(|_| 1.0);
        let w = FolnerWindow::symmetric(100);
        let m = empirical_measure(&Rotation::golden(), &RotationPoint(0), &w, &[one]);
        assert_eq!(m, vec![1.0]);
    }
}
