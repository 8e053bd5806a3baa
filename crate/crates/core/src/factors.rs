//! Factor maps, metric lifting, function-family pseudometrics and the
//! empirical classification of factor maps.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FolnerSchedule, FolnerWindow, GroupElement, System};
use crate::error::{Error, Result};
use crate::estimators::{PairEstimates, PairOrbit};
use crate::fixed::{quantize_signed, ratio_to_f64, FRACTION_BITS};
use crate::relations::{
    eps_delta_scan, is_diagonal, par_map, test_mean_equicontinuity, test_property_m, EpsDeltaViolation, FibreRelation,
    MeReport, PairSequence, PropertyMReport, ScanConfig, Tolerances,
};

/// Sampled fibre pairs and convergent pair sequences of a factor map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibreSample<P> {
    pub pairs: Vec<(P, P)>,
    pub sequences: Vec<PairSequence<P>>,
}

impl<P: Clone> FibreSample<P> {
    pub fn new(pairs: Vec<(P, P)>, sequences: Vec<PairSequence<P>>) -> Self {
        FibreSample { pairs, sequences }
    }

    /// The pairs, then every sequence member, then every declared limit.
    pub fn all_pairs(&self) -> Vec<(P, P)> {
        let mut out = self.pairs.clone();
        for s in &self.sequences {
            out.extend(s.pairs.iter().cloned());
        }
        out.extend(self.sequences.iter().filter_map(|s| s.limit.clone()));
        out
    }
}

/// A deterministic, seeded generator of pairs in `R(pi)`.
pub trait FibreSampler<P>: Send + Sync {
    fn sample(&self, seed: u64) -> FibreSample<P>;
}

impl<P, F> FibreSampler<P> for F
where
    F: Fn(u64) -> FibreSample<P> + Send + Sync,
{
    fn sample(&self, seed: u64) -> FibreSample<P> {
        self(seed)
    }
}

/// How membership in `R(pi)` is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibreRule {
    /// Equal image payloads.
    Exact,
    /// Image distance below `zero_tol`.
    Approximate,
}

type MapFn<X, Y> = Arc<dyn Fn(&<X as System>::Point) -> <Y as System>::Point + Send + Sync>;

/// An equivariant surjection between two systems with its fibre sampler.
pub struct FactorMap<X: System, Y: System> {
    id: String,
    source: Arc<X>,
    target: Arc<Y>,
    apply: MapFn<X, Y>,
    sampler: Arc<dyn FibreSampler<X::Point>>,
    rule: FibreRule,
}

impl<X: System, Y: System> Clone for FactorMap<X, Y> {
    fn clone(&self) -> Self {
        FactorMap {
            id: self.id.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            apply: self.apply.clone(),
            sampler: self.sampler.clone(),
            rule: self.rule,
        }
    }
}

impl<X: System, Y: System> fmt::Debug for FactorMap<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorMap")
            .field("id", &self.id)
            .field("source", &self.source.id())
            .field("target", &self.target.id())
            .field("rule", &self.rule)
            .finish()
    }
}

impl<X: System, Y: System> FactorMap<X, Y> {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn source(&self) -> &X {
        &self.source
    }

    pub fn target(&self) -> &Y {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<X> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<Y> {
        self.target.clone()
    }

    pub fn apply(&self, x: &X::Point) -> Y::Point {
        (self.apply)(x)
    }

    pub fn sampler(&self) -> &dyn FibreSampler<X::Point> {
        self.sampler.as_ref()
    }

    pub fn sample(&self, seed: u64) -> FibreSample<X::Point> {
        self.sampler.sample(seed)
    }

    pub fn rule(&self) -> FibreRule {
        self.rule
    }

    pub fn in_fibre(&self, x: &X::Point, y: &X::Point, zero_tol: f64) -> bool {
        let (a, b) = (self.apply(x), self.apply(y));
        match self.rule {
            FibreRule::Exact => a == b,
            FibreRule::Approximate => self.target.dist(&a, &b) < zero_tol,
        }
    }

    /// `pi(g.x) = g.pi(x)` on every given point and group element.
    pub fn is_equivariant_on(&self, points: &[X::Point], gs: &[GroupElement]) -> bool {
        points
            .iter()
            .all(|x| gs.iter().all(|&g| self.apply(&self.source.act(x, g)) == self.target.act(&self.apply(x), g)))
    }
}

impl<X: System + 'static, Y: System + 'static> FactorMap<X, Y> {
    pub fn new(
        id: impl Into<String>,
        source: Arc<X>,
        target: Arc<Y>,
        apply: impl Fn(&X::Point) -> Y::Point + Send + Sync + 'static,
        sampler: impl FibreSampler<X::Point> + 'static,
        rule: FibreRule,
    ) -> Self {
        FactorMap { id: id.into(), source, target, apply: Arc::new(apply), sampler: Arc::new(sampler), rule }
    }

    pub fn with_sampler(&self, sampler: impl FibreSampler<X::Point> + 'static) -> Self {
        FactorMap { sampler: Arc::new(sampler), ..self.clone() }
    }

    pub fn with_id(&self, id: impl Into<String>) -> Self {
        FactorMap { id: id.into(), ..self.clone() }
    }

    /// `psi . self`, sampled by `sampler`.
    pub fn then<Z: System + 'static>(
        &self,
        psi: &FactorMap<Y, Z>,
        id: impl Into<String>,
        sampler: impl FibreSampler<X::Point> + 'static,
    ) -> FactorMap<X, Z> {
        compose(id, self, psi, sampler)
    }
}

impl<X: System + 'static> FactorMap<X, X> {
    /// The identity map, sampled by the given points (diagonal pairs only).
    pub fn identity(id: impl Into<String>, sys: Arc<X>, points: Vec<X::Point>) -> Self {
        let sampler = move |_seed: u64| {
            let pairs: Vec<_> = points.iter().map(|p| (p.clone(), p.clone())).collect();
            let sequences = vec![PairSequence::new(pairs.clone(), pairs.last().cloned())];
            FibreSample::new(pairs, sequences)
        };
        FactorMap::new(id, sys.clone(), sys, |x: &X::Point| x.clone(), sampler, FibreRule::Exact)
    }
}

impl<X: System, Y: System> FibreRelation<X::Point> for FactorMap<X, Y>
where
    X: 'static,
    Y: 'static,
{
    fn related(&self, x: &X::Point, y: &X::Point, zero_tol: f64) -> bool {
        self.in_fibre(x, y, zero_tol)
    }
}

/// `psi . phi`.
pub fn compose<X: System + 'static, Y: System + 'static, Z: System + 'static>(
    id: impl Into<String>,
    phi: &FactorMap<X, Y>,
    psi: &FactorMap<Y, Z>,
    sampler: impl FibreSampler<X::Point> + 'static,
) -> FactorMap<X, Z> {
    let (f, g) = (phi.apply.clone(), psi.apply.clone());
    let rule = if phi.rule == FibreRule::Exact && psi.rule == FibreRule::Exact {
        FibreRule::Exact
    } else {
        FibreRule::Approximate
    };
    FactorMap::new(id, phi.source.clone(), psi.target.clone(), move |x: &X::Point| g(&f(x)), sampler, rule)
}

/// The source of a factor map re-metrized by `d_X + d_Y . (pi x pi)`.
pub struct Lifted<X: System, Y: System> {
    id: String,
    pi: FactorMap<X, Y>,
}

/// `lift_metric`: a copy of the source whose metric dominates the pulled
/// back target metric.
pub fn lift_metric<X: System + 'static, Y: System + 'static>(pi: &FactorMap<X, Y>) -> Lifted<X, Y> {
    Lifted { id: format!("{}+{}", pi.source().id(), pi.target().id()), pi: pi.clone() }
}

impl<X: System + 'static, Y: System + 'static> System for Lifted<X, Y> {
    type Point = X::Point;

    fn id(&self) -> &str {
        &self.id
    }

    fn act(&self, x: &X::Point, g: GroupElement) -> X::Point {
        self.pi.source().act(x, g)
    }

    fn dist(&self, x: &X::Point, y: &X::Point) -> f64 {
        self.pi.source().dist(x, y) + self.pi.target().dist(&self.pi.apply(x), &self.pi.apply(y))
    }

    fn diameter(&self) -> f64 {
        self.pi.source().diameter() + self.pi.target().diameter()
    }

    fn is_symbolic(&self) -> bool {
        self.pi.source().is_symbolic() && self.pi.target().is_symbolic()
    }

    fn orbit_distances(&self, x: &X::Point, y: &X::Point, lo: i64, hi: i64) -> Vec<f64> {
        let base = self.pi.source().orbit_distances(x, y, lo, hi);
        let down = self.pi.target().orbit_distances(&self.pi.apply(x), &self.pi.apply(y), lo, hi);
        base.iter().zip(&down).map(|(a, b)| a + b).collect()
    }
}

type TestFn<P> = Arc<dyn Fn(&P) -> f64 + Send + Sync>;

/// A sequence of bounded functions `f_1, f_2, ...` on a system.
pub struct FunctionFamily<P> {
    fns: Vec<TestFn<P>>,
}

impl<P> Clone for FunctionFamily<P> {
    fn clone(&self) -> Self {
        FunctionFamily { fns: self.fns.clone() }
    }
}

impl<P> Default for FunctionFamily<P> {
    fn default() -> Self {
        FunctionFamily { fns: Vec::new() }
    }
}

impl<P> FunctionFamily<P> {
    pub fn new() -> Self {
        FunctionFamily::default()
    }

    pub fn push(mut self, f: impl Fn(&P) -> f64 + Send + Sync + 'static) -> Self {
        self.fns.push(Arc::new(f));
        self
    }

    pub fn len(&self) -> usize {
        self.fns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fns.is_empty()
    }

    /// `f_m(x)` for `m = 1..=len`.
    pub fn eval(&self, m: usize, x: &P) -> f64 {
        (self.fns[m - 1])(x)
    }

    /// `sup |f_m| <= 1` on the given points.
    pub fn is_bounded_on(&self, points: &[P]) -> bool {
        points.iter().all(|x| self.fns.iter().all(|f| f(x).abs() <= 1.0))
    }

    /// Some `f_m` separates every pair of distinct (by `distinct`) points.
    pub fn separates(&self, points: &[P], distinct: impl Fn(&P, &P) -> bool) -> bool {
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                if distinct(x, y) && self.fns.iter().all(|f| f(x) == f(y)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Terms beyond this index are dropped from exact family sums; their
/// contribution is at most `2^-39`, which the reported bound covers.
pub const MAX_EXACT_TERMS: usize = 40;

/// Value of `d_f` truncated at `M` terms and the bound `2^(-M+1)` on the
/// neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyDistance {
    pub value: f64,
    pub truncation_bound: f64,
}

fn effective_terms(m: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::ZeroTruncation);
    }
    Ok(m.min(MAX_EXACT_TERMS))
}

/// `sum_{m <= M} 2^(M - m) |a_m - b_m|` in units of `2^-(64 + M)`.
fn weighted_sum(terms: usize, diffs: impl Iterator<Item = u128>) -> u128 {
    diffs.take(terms).enumerate().map(|(i, d)| d << (terms - 1 - i)).sum()
}

fn quantized<P>(fam: &FunctionFamily<P>, terms: usize, x: &P) -> Vec<i128> {
    (1..=terms.min(fam.len())).map(|m| quantize_signed(fam.eval(m, x))).collect()
}

/// `d_f(x, y) = sum_{m <= M} 2^-m |f_m(x) - f_m(y)|`, summed exactly on
/// values floored to multiples of `2^-64`.
pub fn d_family<P>(fam: &FunctionFamily<P>, x: &P, y: &P, truncation: usize) -> Result<FamilyDistance> {
    let terms = effective_terms(truncation)?;
    let (a, b) = (quantized(fam, terms, x), quantized(fam, terms, y));
    let sum = weighted_sum(terms, a.iter().zip(&b).map(|(p, q)| (p - q).unsigned_abs()));
    Ok(FamilyDistance {
        value: ratio_to_f64(sum, 1, FRACTION_BITS + terms as i32),
        truncation_bound: 2f64.powi(-(truncation.min(1000) as i32) + 1),
    })
}

/// Windowed form of the domination inequality
/// `avg d_f <= avg d_h + avg phi`, `phi = sum 2^-m (|f_m - h_m|(x) + |f_m - h_m|(y))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domination {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// `rhs - lhs >= 0` as exact integers.
    pub holds: bool,
}

pub fn domination_check<S: System>(
    sys: &S,
    x1: &S::Point,
    x2: &S::Point,
    fam_f: &FunctionFamily<S::Point>,
    fam_h: &FunctionFamily<S::Point>,
    window: &FolnerWindow,
    truncation: usize,
) -> Result<Domination> {
    if fam_f.len() != fam_h.len() {
        return Err(Error::TruncationMismatch { left: fam_f.len(), right: fam_h.len() });
    }
    let terms = effective_terms(truncation)?;
    let (mut lhs, mut rhs) = (0u128, 0u128);
    for g in window.iter() {
        let g = GroupElement(g);
        let (p, q) = (sys.act(x1, g), sys.act(x2, g));
        let (fp, fq) = (quantized(fam_f, terms, &p), quantized(fam_f, terms, &q));
        let (hp, hq) = (quantized(fam_h, terms, &p), quantized(fam_h, terms, &q));
        lhs += weighted_sum(terms, fp.iter().zip(&fq).map(|(a, b)| (a - b).unsigned_abs()));
        rhs += weighted_sum(terms, hp.iter().zip(&hq).map(|(a, b)| (a - b).unsigned_abs()));
        rhs += weighted_sum(terms, fp.iter().zip(&hp).map(|(a, b)| (a - b).unsigned_abs()));
        rhs += weighted_sum(terms, fq.iter().zip(&hq).map(|(a, b)| (a - b).unsigned_abs()));
    }
    let den = u128::from(window.len());
    let shift = FRACTION_BITS + terms as i32;
    Ok(Domination {
        lhs: ratio_to_f64(lhs, den, shift),
        rhs: ratio_to_f64(rhs, den, shift),
        slack: ratio_to_f64(rhs.saturating_sub(lhs), den, shift),
        holds: rhs >= lhs,
    })
}

/// Per-property outcome of [`classify_factor_map`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub id: String,
    pub equicontinuous: bool,
    pub distal: bool,
    pub banach_distal: bool,
    /// Equivalent to topo-isomorphy for factor maps between minimal systems.
    pub banach_proximal: bool,
    pub proximal: bool,
    pub mean_equicontinuous: Option<bool>,
    pub property_m: bool,
    pub pairs_sampled: usize,
    pub equicontinuity_witnesses: Vec<EpsDeltaViolation>,
    /// Non-diagonal pairs breaking distality, Banach distality, Banach
    /// proximality and proximality, by pair index.
    pub not_distal: Vec<usize>,
    pub not_banach_distal: Vec<usize>,
    pub not_banach_proximal: Vec<usize>,
    pub not_proximal: Vec<usize>,
    pub property_m_report: PropertyMReport,
    pub mean_equicontinuity_report: Option<MeReport>,
    /// Violated implications between the verdicts; these point at
    /// tolerances or schedules too coarse for the map at hand.
    pub inconsistencies: Vec<String>,
    pub topo_isomorphy_criterion: String,
    pub pair_values: Vec<PairValues>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairValues {
    pub dist: f64,
    pub check: f64,
    pub hat: f64,
    pub besicovitch: f64,
    pub weyl: f64,
    pub diagonal: bool,
}

impl FactorReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

/// Classifies a factor map over its sampled fibres.
pub fn classify_factor_map<X: System + 'static, Y: System + 'static>(
    pi: &FactorMap<X, Y>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    seed: u64,
    scan: &ScanConfig,
) -> Result<FactorReport> {
    tol.validate()?;
    let sample = pi.sample(seed);
    if sample.pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    let sys = pi.source();
    if let Some(index) = sample.pairs.iter().position(|(x, y)| !pi.in_fibre(x, y, tol.zero_tol)) {
        return Err(Error::NotInFibre { index });
    }
    let values = par_map(&sample.pairs, |(x, y)| pair_values(sys, x, y, sched));

    let mut not_distal = Vec::new();
    let mut not_banach_distal = Vec::new();
    let mut not_banach_proximal = Vec::new();
    let mut not_proximal = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let check = v.check.min(v.weyl);
        if !v.diagonal {
            if check <= tol.sep_tol {
                not_distal.push(i);
            }
            if v.weyl <= tol.sep_tol {
                not_banach_distal.push(i);
            }
        }
        if v.weyl >= tol.zero_tol {
            not_banach_proximal.push(i);
        }
        if check >= tol.zero_tol {
            not_proximal.push(i);
        }
    }

    // equicontinuity: small fibre distance forces small orbit-wide distance
    let scan_pairs = sample.all_pairs();
    let scan_values: Vec<PairValues> = if scan_pairs.len() == sample.pairs.len() {
        values.clone()
    } else {
        par_map(&scan_pairs, |(x, y)| pair_values(sys, x, y, sched))
    };
    let dists: Vec<f64> = scan_values.iter().map(|v| v.dist).collect();
    let hats: Vec<f64> = scan_values.iter().map(|v| v.hat).collect();
    let equicontinuity_witnesses = eps_delta_scan(&dists, &hats, scan);

    let property_m_report = test_property_m(pi, pi.sampler(), tol, sched, seed, scan)?;
    let mean_equicontinuity_report = if sample.sequences.is_empty() {
        None
    } else {
        Some(test_mean_equicontinuity(pi, pi.sampler(), tol, sched, seed)?)
    };

    let equicontinuous = equicontinuity_witnesses.is_empty();
    let distal = not_distal.is_empty();
    let banach_distal = not_banach_distal.is_empty();
    let banach_proximal = not_banach_proximal.is_empty();
    let proximal = not_proximal.is_empty();
    let mean_equicontinuous = mean_equicontinuity_report.as_ref().map(|r| r.holds);

    let mut inconsistencies = Vec::new();
    let me = mean_equicontinuous.unwrap_or(true);
    if equicontinuous && !(me && distal) {
        inconsistencies.push("equicontinuous but not (mean equicontinuous and distal)".to_string());
    }
    if banach_proximal && !(proximal && me) {
        inconsistencies.push("banach proximal but not (proximal and mean equicontinuous)".to_string());
    }
    if mean_equicontinuous == Some(true) && distal && !equicontinuous {
        inconsistencies.push("mean equicontinuous and distal but not equicontinuous".to_string());
    }
    if mean_equicontinuous == Some(true) && proximal && !banach_proximal {
        inconsistencies.push("mean equicontinuous and proximal but not banach proximal".to_string());
    }

    Ok(FactorReport {
        id: pi.id().to_string(),
        equicontinuous,
        distal,
        banach_distal,
        banach_proximal,
        proximal,
        mean_equicontinuous,
        property_m: property_m_report.holds,
        pairs_sampled: sample.pairs.len(),
        equicontinuity_witnesses,
        not_distal,
        not_banach_distal,
        not_banach_proximal,
        not_proximal,
        property_m_report,
        mean_equicontinuity_report,
        inconsistencies,
        topo_isomorphy_criterion: "all sampled fibre pairs Banach proximal (Weyl estimate below zero_tol)".to_string(),
        pair_values: values,
    })
}

fn pair_values<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> PairValues {
    let e = PairEstimates::compute(sys, x, y, sched);
    PairValues {
        dist: sys.dist(x, y),
        check: e.check.value,
        hat: e.hat.value,
        besicovitch: e.besicovitch.value,
        weyl: e.weyl.value,
        diagonal: is_diagonal(sys, x, y),
    }
}

/// Outcome of [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub verified: bool,
    pub phi_banach_proximal: bool,
    pub psi_equicontinuous: bool,
    pub points_compared: usize,
    pub phi: FactorReport,
    pub psi: FactorReport,
}

/// Checks `pi = psi . phi` on sampled points, then that `phi` is Banach
/// proximal (topo-isomorphic) and `psi` equicontinuous.
pub fn verify_decomposition<X: System + 'static, Y: System + 'static, Z: System + 'static>(
    pi: &FactorMap<X, Z>,
    phi: &FactorMap<X, Y>,
    psi: &FactorMap<Y, Z>,
    tol: &Tolerances,
    sched: &FolnerSchedule,
    seed: u64,
    scan: &ScanConfig,
) -> Result<DecompositionReport> {
    let mut points = Vec::new();
    for source in [pi.sample(seed), phi.sample(seed)] {
        for (x, y) in source.all_pairs() {
            points.push(x);
            points.push(y);
        }
    }
    if let Some(index) = points.iter().position(|x| psi.apply(&phi.apply(x)) != pi.apply(x)) {
        return Err(Error::CompositionMismatch { index });
    }
    let phi_report = classify_factor_map(phi, tol, sched, seed, scan)?;
    let psi_report = classify_factor_map(psi, tol, sched, seed, scan)?;
    Ok(DecompositionReport {
        verified: phi_report.banach_proximal && psi_report.equicontinuous,
        phi_banach_proximal: phi_report.banach_proximal,
        psi_equicontinuous: psi_report.equicontinuous,
        points_compared: points.len(),
        phi: phi_report,
        psi: psi_report,
    })
}

/// Exact windowed Besicovitch average under a lifted metric, for checks
/// against the target system.
pub fn lifted_window_average<X: System + 'static, Y: System + 'static>(
    lifted: &Lifted<X, Y>,
    x: &X::Point,
    y: &X::Point,
    window: &FolnerWindow,
) -> f64 {
    PairOrbit::new(lifted, x, y, window.lo(), window.hi()).mean(window).value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{Rotation, RotationPoint};
    use std::f64::consts::TAU;

    fn circle_family() -> FunctionFamily<RotationPoint> {
        FunctionFamily::new()
            .push(|p: &RotationPoint| (TAU * p.to_f64()).cos())
            .push(|p: &RotationPoint| (TAU * p.to_f64()).sin())
    }

    #[test]
    fn d_family_on_circle() {
        let fam = circle_family();
        let d = d_family(&fam, &RotationPoint::from_f64(0.0), &RotationPoint::from_f64(0.5), 2).unwrap();
        assert_eq!(d.value, 1.0);
        assert_eq!(d.truncation_bound, 0.5);
        let z = d_family(&fam, &RotationPoint(7), &RotationPoint(7), 2).unwrap();
        assert_eq!(z.value, 0.0);
        assert!(d_family(&fam, &RotationPoint(7), &RotationPoint(7), 0).is_err());
    }

    #[test]
    fn identical_families_have_zero_slack() {
        let fam = circle_family();
        let w = FolnerWindow::symmetric(50);
        let r = Rotation::golden();
        let d = domination_check(&r, &RotationPoint::from_f64(0.1), &RotationPoint::from_f64(0.7), &fam, &fam, &w, 2)
            .unwrap();
        assert_eq!(d.lhs, d.rhs);
        assert_eq!(d.slack, 0.0);
        assert!(d.holds);
    }

    #[test]
    fn cos_against_sin() {
        let f = FunctionFamily::new().push(|p: &RotationPoint| (TAU * p.to_f64()).cos());
        let h = FunctionFamily::new().push(|p: &RotationPoint| (TAU * p.to_f64()).sin());
        let w = FolnerWindow::symmetric(200);
        let d = domination_check(
            &Rotation::golden(),
            &RotationPoint::from_f64(0.3),
            &RotationPoint::from_f64(0.9),
            &f,
            &h,
            &w,
            1,
        )
        .unwrap();
        assert!(d.holds && d.slack >= 0.0);
        let two = circle_family();
        assert!(matches!(
            domination_check(&Rotation::golden(), &RotationPoint(0), &RotationPoint(1), &f, &two, &w, 1),
            Err(Error::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn family_bounds_and_separation() {
        let fam = circle_family();
        let pts: Vec<_> = (0..20).map(|i| RotationPoint::from_f64(i as f64 / 20.0)).collect();
        assert!(fam.is_bounded_on(&pts));
        assert!(fam.separates(&pts, |a, b| a != b));
        let constant = FunctionFamily::new().push(|_: &RotationPoint| 0.5);
        assert!(!constant.separates(&pts, |a, b| a != b));
    }
}
