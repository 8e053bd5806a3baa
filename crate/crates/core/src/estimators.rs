//! Finite-window estimators for orbit metrics.
//!
//! All estimators read a single materialized array of orbit distances
//! `dist(k.x, k.y)`. Averages are exact fixed-point sums (see
//! [`crate::fixed`]) taken in a fixed order, so every value is bit
//! reproducible and symmetric in its two points.
//!
//! Limsup-type values report the maximum over the tail half of the
//! schedule. The Weyl sup over `g'` is truncated to the schedule's
//! translate radius; `boundary_hit` flags a maximizing translate sitting
//! on that radius, which usually means the sup has not stabilized.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FolnerSchedule, FolnerWindow, GroupElement, System, WindowFamily};
use crate::error::{Error, Result};
use crate::fixed::{quantize, WindowMean};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    /// Infimum of orbit distances.
    Check,
    /// Supremum of orbit distances.
    Hat,
    Besicovitch,
    Weyl,
    BanachDensity,
}

impl EstimateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EstimateKind::Check => "check",
            EstimateKind::Hat => "hat",
            EstimateKind::Besicovitch => "besicovitch",
            EstimateKind::Weyl => "weyl",
            EstimateKind::BanachDensity => "banach_density",
        }
    }
}

/// Which side of the true quantity a finite estimate lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OneSided {
    /// The estimate can only overshoot (infimum over a subset).
    UpperBound,
    /// The estimate can only undershoot (supremum over a subset).
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowValue {
    pub window: FolnerWindow,
    pub value: f64,
    /// Translate attaining the per-window sup (Weyl and density only).
    pub translate: Option<GroupElement>,
    #[serde(skip)]
    pub mean: Option<WindowMean>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudometricEstimate {
    pub kind: EstimateKind,
    pub family: WindowFamily,
    pub value: f64,
    pub per_window: Vec<WindowValue>,
    pub achieving_translate: Option<GroupElement>,
    pub bound: Option<OneSided>,
    /// The reported translate lies on the search radius.
    pub boundary_hit: bool,
}

/// Orbit distances of a pair over a contiguous range of group elements,
/// with exact prefix sums of the quantized values.
#[derive(Debug, Clone)]
pub struct PairOrbit {
    lo: i64,
    dists: Vec<f64>,
    prefix: Vec<u128>,
}

impl PairOrbit {
    pub fn new<S: System>(sys: &S, x: &S::Point, y: &S::Point, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        let dists = sys.orbit_distances(x, y, lo, hi);
        debug_assert_eq!(dists.len() as i64, hi - lo + 1);
        PairOrbit::from_distances(lo, dists)
    }

    pub fn from_distances(lo: i64, dists: Vec<f64>) -> Self {
        let mut prefix = Vec::with_capacity(dists.len() + 1);
        let mut acc = 0u128;
        prefix.push(0);
        for &d in &dists {
            acc += quantize(d);
            prefix.push(acc);
        }
        PairOrbit { lo, dists, prefix }
    }

    /// Covers every window and translate of `sched`.
    pub fn for_schedule<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> Self {
        let (lo, hi) = sched.translated_span();
        PairOrbit::new(sys, x, y, lo, hi)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dists.len() as i64 - 1
    }

    pub fn distance(&self, k: i64) -> f64 {
        self.dists[(k - self.lo) as usize]
    }

    pub fn distances(&self) -> &[f64] {
        &self.dists
    }

    fn slice(&self, w: &FolnerWindow) -> &[f64] {
        let a = (w.lo() - self.lo) as usize;
        let b = (w.hi() - self.lo) as usize;
        &self.dists[a..=b]
    }

    fn sum(&self, w: &FolnerWindow) -> u128 {
        let a = (w.lo() - self.lo) as usize;
        let b = (w.hi() - self.lo) as usize;
        self.prefix[b + 1] - self.prefix[a]
    }

    pub fn mean(&self, w: &FolnerWindow) -> WindowMean {
        WindowMean::new(self.sum(w), w.len())
    }

    pub fn min(&self, w: &FolnerWindow) -> f64 {
        self.slice(w).iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self, w: &FolnerWindow) -> f64 {
        self.slice(w).iter().copied().fold(0.0, f64::max)
    }

    /// Largest window mean over translates `|g'| <= radius`; ties go to the
    /// smallest `|g'|`, then to the negative translate.
    pub fn best_translate(&self, w: &FolnerWindow, radius: u64) -> (GroupElement, WindowMean) {
        let mut best_g = 0i64;
        let mut best = self.sum(w);
        for m in 1..=radius as i64 {
            for g in [-m, m] {
                let s = self.sum(&w.translate(g));
                if s > best {
                    best = s;
                    best_g = g;
                }
            }
        }
        (GroupElement(best_g), WindowMean::new(best, w.len()))
    }

    fn close_prefix(&self, eps: f64) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.dists.iter().scan(0u64, |acc, &d| {
                *acc += u64::from(d < eps);
                Some(*acc)
            }))
            .collect()
    }

    /// Smallest count of `{g in F + g' : d < eps}` over `|g'| <= radius`.
    fn min_density(&self, close: &[u64], w: &FolnerWindow, radius: u64) -> (GroupElement, u64) {
        let count = |w: &FolnerWindow| {
            let a = (w.lo() - self.lo) as usize;
            let b = (w.hi() - self.lo) as usize;
            close[b + 1] - close[a]
        };
        let mut best_g = 0i64;
        let mut best = count(w);
        for m in 1..=radius as i64 {
            for g in [-m, m] {
                let c = count(&w.translate(g));
                if c < best {
                    best = c;
                    best_g = g;
                }
            }
        }
        (GroupElement(best_g), best)
    }
}

fn tail_max(sched: &FolnerSchedule, per_window: &[WindowValue]) -> usize {
    let start = sched.tail_start();
    let mut best = start;
    for i in start + 1..per_window.len() {
        let better = match (per_window[i].mean, per_window[best].mean) {
            (Some(a), Some(b)) => a.cmp(&b) == Ordering::Greater,
            _ => per_window[i].value > per_window[best].value,
        };
        if better {
            best = i;
        }
    }
    best
}

/// Besicovitch estimate from a precomputed orbit.
pub fn besicovitch_from_orbit(orbit: &PairOrbit, sched: &FolnerSchedule) -> PseudometricEstimate {
    let per_window: Vec<_> = sched
        .windows()
        .iter()
        .map(|w| {
            let m = orbit.mean(w);
            WindowValue { window: *w, value: m.value(), translate: None, mean: Some(m) }
        })
        .collect();
    let best = tail_max(sched, &per_window);
    PseudometricEstimate {
        kind: EstimateKind::Besicovitch,
        family: sched.family(),
        value: per_window[best].value,
        per_window,
        achieving_translate: None,
        bound: None,
        boundary_hit: false,
    }
}

/// Weyl estimate from a precomputed orbit covering the translated span.
pub fn weyl_from_orbit(orbit: &PairOrbit, sched: &FolnerSchedule) -> PseudometricEstimate {
    let per_window: Vec<_> = sched
        .windows()
        .iter()
        .zip(sched.translate_radius())
        .map(|(w, &radius)| {
            let (g, m) = orbit.best_translate(w, radius);
            WindowValue { window: *w, value: m.value(), translate: Some(g), mean: Some(m) }
        })
        .collect();
    let best = tail_max(sched, &per_window);
    let g = per_window[best].translate;
    let radius = sched.translate_radius()[best];
    PseudometricEstimate {
        kind: EstimateKind::Weyl,
        family: sched.family(),
        value: per_window[best].value,
        achieving_translate: g,
        boundary_hit: radius > 0 && g.map(|g| g.0.unsigned_abs() == radius).unwrap_or(false),
        per_window,
        bound: None,
    }
}

/// Check (infimum) estimate: running minimum over the windows.
pub fn check_from_orbit(orbit: &PairOrbit, sched: &FolnerSchedule) -> PseudometricEstimate {
    extremum_from_orbit(orbit, sched, EstimateKind::Check)
}

/// Hat (supremum) estimate: running maximum over the windows.
pub fn hat_from_orbit(orbit: &PairOrbit, sched: &FolnerSchedule) -> PseudometricEstimate {
    extremum_from_orbit(orbit, sched, EstimateKind::Hat)
}

fn extremum_from_orbit(orbit: &PairOrbit, sched: &FolnerSchedule, kind: EstimateKind) -> PseudometricEstimate {
    let is_min = kind == EstimateKind::Check;
    let mut running = if is_min { f64::INFINITY } else { 0.0 };
    let per_window: Vec<_> = sched
        .windows()
        .iter()
        .map(|w| {
            let v = if is_min { orbit.min(w) } else { orbit.max(w) };
            running = if is_min { running.min(v) } else { running.max(v) };
            WindowValue { window: *w, value: running, translate: None, mean: None }
        })
        .collect();
    PseudometricEstimate {
        kind,
        family: sched.family(),
        value: running,
        per_window,
        achieving_translate: None,
        bound: Some(if is_min { OneSided::UpperBound } else { OneSided::LowerBound }),
        boundary_hit: false,
    }
}

pub fn banach_density_from_orbit(orbit: &PairOrbit, eps: f64, sched: &FolnerSchedule) -> PseudometricEstimate {
    let close = orbit.close_prefix(eps);
    let per_window: Vec<_> = sched
        .windows()
        .iter()
        .zip(sched.translate_radius())
        .map(|(w, &radius)| {
            let (g, count) = orbit.min_density(&close, w, radius);
            WindowValue { window: *w, value: count as f64 / w.len() as f64, translate: Some(g), mean: None }
        })
        .collect();
    let best = tail_max(sched, &per_window);
    PseudometricEstimate {
        kind: EstimateKind::BanachDensity,
        family: sched.family(),
        value: per_window[best].value,
        achieving_translate: per_window[best].translate,
        boundary_hit: false,
        per_window,
        bound: None,
    }
}

/// Windowed Besicovitch averages along `sched`, max over the tail half.
pub fn besicovitch_estimate<S: System>(
    sys: &S,
    x: &S::Point,
    y: &S::Point,
    sched: &FolnerSchedule,
) -> PseudometricEstimate {
    let (lo, hi) = sched.span();
    besicovitch_from_orbit(&PairOrbit::new(sys, x, y, lo, hi), sched)
}

/// Sup over translates of windowed averages, max over the tail half.
pub fn weyl_estimate<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> PseudometricEstimate {
    weyl_from_orbit(&PairOrbit::for_schedule(sys, x, y, sched), sched)
}

/// Minimum orbit distance over the union of the windows (an upper bound
/// for the true infimum).
pub fn check_estimate<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> PseudometricEstimate {
    let (lo, hi) = sched.span();
    check_from_orbit(&PairOrbit::new(sys, x, y, lo, hi), sched)
}

/// Maximum orbit distance over the union of the windows (a lower bound for
/// the true supremum).
pub fn hat_estimate<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> PseudometricEstimate {
    let (lo, hi) = sched.span();
    hat_from_orbit(&PairOrbit::new(sys, x, y, lo, hi), sched)
}

/// Lower Banach density of `{g : dist(g.x, g.y) < eps}`: min over
/// translates, max over the tail windows.
pub fn banach_density_estimate<S: System>(
    sys: &S,
    x: &S::Point,
    y: &S::Point,
    eps: f64,
    sched: &FolnerSchedule,
) -> Result<PseudometricEstimate> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    Ok(banach_density_from_orbit(&PairOrbit::for_schedule(sys, x, y, sched), eps, sched))
}

/// Check, Besicovitch and Weyl estimates sharing one orbit computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEstimates {
    pub check: PseudometricEstimate,
    pub hat: PseudometricEstimate,
    pub besicovitch: PseudometricEstimate,
    pub weyl: PseudometricEstimate,
}

impl PairEstimates {
    pub fn compute<S: System>(sys: &S, x: &S::Point, y: &S::Point, sched: &FolnerSchedule) -> Self {
        let orbit = PairOrbit::for_schedule(sys, x, y, sched);
        PairEstimates {
            check: check_from_orbit(&orbit, sched),
            hat: hat_from_orbit(&orbit, sched),
            besicovitch: besicovitch_from_orbit(&orbit, sched),
            weyl: weyl_from_orbit(&orbit, sched),
        }
    }
}

/// Minimum, exact mean and maximum of the orbit distances on one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowStats {
    pub min: f64,
    pub mean: WindowMean,
    pub max: f64,
}

pub fn window_stats<S: System>(sys: &S, x: &S::Point, y: &S::Point, w: &FolnerWindow) -> WindowStats {
    let orbit = PairOrbit::new(sys, x, y, w.lo(), w.hi());
    WindowStats { min: orbit.min(w), mean: orbit.mean(w), max: orbit.max(w) }
}

/// Exact windowed Besicovitch average on a single window.
pub fn windowed_average<S: System>(sys: &S, x: &S::Point, y: &S::Point, w: &FolnerWindow) -> WindowMean {
    PairOrbit::new(sys, x, y, w.lo(), w.hi()).mean(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(ds: &[f64]) -> PairOrbit {
        PairOrbit::from_distances(-(ds.len() as i64 / 2), ds.to_vec())
    }

    #[test]
    fn best_translate_prefers_small_shift_on_ties() {
        let o = orbit(&[1.0; 21]);
        let w = FolnerWindow::symmetric(2);
        let (g, m) = o.best_translate(&w, 3);
        assert_eq!(g, GroupElement(0));
        assert_eq!(m.value(), 1.0);
    }

    #[test]
    fn best_translate_finds_heavy_region() {
        let mut ds = vec![0.0; 21];
        for d in ds.iter_mut().skip(15) {
            *d = 1.0;
        }
        let o = orbit(&ds);
        let w = FolnerWindow::symmetric(1);
        let (g, m) = o.best_translate(&w, 7);
        assert_eq!(m.value(), 1.0);
        assert_eq!(g, GroupElement(6));
    }

    #[test]
    fn extremum_estimates_are_running() {
        let ds: Vec<f64> = (-8..=8).map(|k: i64| 1.0 / (1.0 + k.abs() as f64)).collect();
        let o = PairOrbit::from_distances(-8, ds);
        let sched = FolnerSchedule::symmetric(3).unwrap();
        let c = check_from_orbit(&o, &sched);
        assert_eq!(c.value, 1.0 / 9.0);
        assert_eq!(c.bound, Some(OneSided::UpperBound));
        let h = hat_from_orbit(&o, &sched);
        assert_eq!(h.value, 1.0);
        assert!(c.per_window.windows(2).all(|p| p[0].value >= p[1].value));
    }

    #[test]
    fn density_rejects_nonpositive_eps() {
        struct Trivial;
        impl System for Trivial {
            type Point = ();
            fn id(&self) -> &str {
                "trivial"
            }
            fn act(&self, _: &(), _: GroupElement) {}
            fn dist(&self, _: &(), _: &()) -> f64 {
                0.0
            }
            fn diameter(&self) -> f64 {
                0.0
            }
        }
        let sched = FolnerSchedule::symmetric(2).unwrap();
        assert!(banach_density_estimate(&Trivial, &(), &(), 0.0, &sched).is_err());
        let d = banach_density_estimate(&Trivial, &(), &(), 0.1, &sched).unwrap();
        assert_eq!(d.value, 1.0);
    }
}
