//! String ids for the example systems and factor maps, point literals, and
//! type-erased entry points used by the command line and the browser demo.
//!
//! Point literals are comma-separated `key=value` lists:
//!
//! | system       | literal                                   |
//! |--------------|-------------------------------------------|
//! | `interval61` | `y=0.3, branch=hat` (`branch=check`)      |
//! | `shells62`   | `level=3, angle=1.5` (`level=inf`)        |
//! | `odometer`   | `-1`, `1/3` or `(01)101`                  |
//! | `toeplitz`   | `addr=5, flag=primed`                     |
//! | `thuemorse`  | `addr=1/3, flag=plain, bit0=1`            |
//! | `sturmian`   | `phase=0.25, side=left` or `m=3, side=left` |
//! | `rotation`   | `0.1`, `phase=0.1` or `m=3`               |
//!
//! `interval61` and `shells62` also take `steps=<n>`. Odometer addresses
//! are written most significant digit first, the repeating block in
//! parentheses.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FolnerSchedule, System};
use crate::error::{Error, Result};
use crate::estimators::PairEstimates;
use crate::factors::{
    classify_factor_map, verify_decomposition, DecompositionReport, FactorMap, FactorReport, FibreSample,
};
use crate::relations::{
    classify_pair, test_mean_equicontinuity, test_property_m, MeReport, PairSequence, PairVerdict, PropertyMReport,
    ScanConfig, Tolerances,
};

use super::{
    ex61_factor, ex62_factor, sturmian_chain, thue_morse_chain, Branch, DyadicInteger, Interval61, IntervalPoint,
    Level, Odometer, Rotation, RotationPoint, ShellPoint, Shells62, Side, Sturmian, SturmianPoint, ThueMorse,
    ThueMorsePoint, Toeplitz, ToeplitzPoint, GOLDEN_STEP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemId {
    Interval61,
    Odometer,
    Rotation,
    Shells62,
    Sturmian,
    Thuemorse,
    Toeplitz,
}

impl SystemId {
    pub const ALL: [SystemId; 7] = [
        SystemId::Interval61,
        SystemId::Odometer,
        SystemId::Rotation,
        SystemId::Shells62,
        SystemId::Sturmian,
        SystemId::Thuemorse,
        SystemId::Toeplitz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemId::Interval61 => "interval61",
            SystemId::Odometer => "odometer",
            SystemId::Rotation => "rotation",
            SystemId::Shells62 => "shells62",
            SystemId::Sturmian => "sturmian",
            SystemId::Thuemorse => "thuemorse",
            SystemId::Toeplitz => "toeplitz",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            SystemId::Interval61 => "two copies of [0,1] glued at 0, S fixing {1/n}",
            SystemId::Odometer => "2-adic integers under +1",
            SystemId::Rotation => "golden rotation of R/Z",
            SystemId::Shells62 => "circles C_k at height 1/k accumulating on a fixed circle",
            SystemId::Sturmian => "Sturmian subshift of the golden rotation",
            SystemId::Thuemorse => "Thue-Morse subshift",
            SystemId::Toeplitz => "Toeplitz subshift (even 2-adic valuation)",
        }
    }

    pub fn literal_syntax(self) -> &'static str {
        match self {
            SystemId::Interval61 => "y=0.3, branch=hat|check[, steps=n]",
            SystemId::Odometer => "-1 | 1/3 | (01)101",
            SystemId::Rotation => "0.1 | phase=0.1 | m=3 | raw=<u64>",
            SystemId::Shells62 => "level=3|inf, angle=1.5[, steps=n]",
            SystemId::Sturmian => "phase=0.25|m=3|raw=<u64>, side=right|left",
            SystemId::Thuemorse => "addr=1/3, flag=plain|primed, bit0=0|1",
            SystemId::Toeplitz => "addr=5, flag=plain|primed",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SystemId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownSystem(s.to_string()))
    }
}

/// A point of any registered system.
#[derive(Debug, Clone, PartialEq)]
pub enum DynPoint {
    Interval(IntervalPoint),
    Odometer(DyadicInteger),
    Rotation(RotationPoint),
    Shell(ShellPoint),
    Sturmian(SturmianPoint),
    ThueMorse(ThueMorsePoint),
    Toeplitz(ToeplitzPoint),
}

impl DynPoint {
    pub fn system(&self) -> SystemId {
        match self {
            DynPoint::Interval(_) => SystemId::Interval61,
            DynPoint::Odometer(_) => SystemId::Odometer,
            DynPoint::Rotation(_) => SystemId::Rotation,
            DynPoint::Shell(_) => SystemId::Shells62,
            DynPoint::Sturmian(_) => SystemId::Sturmian,
            DynPoint::ThueMorse(_) => SystemId::Thuemorse,
            DynPoint::Toeplitz(_) => SystemId::Toeplitz,
        }
    }
}

impl fmt::Display for DynPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynPoint::Interval(p) => p.fmt(f),
            DynPoint::Odometer(p) => p.fmt(f),
            DynPoint::Rotation(p) => p.fmt(f),
            DynPoint::Shell(p) => p.fmt(f),
            DynPoint::Sturmian(p) => p.fmt(f),
            DynPoint::ThueMorse(p) => p.fmt(f),
            DynPoint::Toeplitz(p) => p.fmt(f),
        }
    }
}

/// Conversion between concrete payloads and [`DynPoint`].
pub trait Payload: Sized + Clone {
    fn from_dyn(p: &DynPoint) -> Option<Self>;
    fn into_dyn(self) -> DynPoint;
}

macro_rules! payload {
    ($ty:ty, $variant:ident) => {
        impl Payload for $ty {
            fn from_dyn(p: &DynPoint) -> Option<Self> {
                match p {
                    DynPoint::$variant(x) => Some(x.clone()),
                    _ => None,
                }
            }

            fn into_dyn(self) -> DynPoint {
                DynPoint::$variant(self)
            }
        }
    };
}

payload!(IntervalPoint, Interval);
payload!(DyadicInteger, Odometer);
payload!(RotationPoint, Rotation);
payload!(ShellPoint, Shell);
payload!(SturmianPoint, Sturmian);
payload!(ThueMorsePoint, ThueMorse);
payload!(ToeplitzPoint, Toeplitz);

struct Fields<'a> {
    system: SystemId,
    input: &'a str,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn parse(system: SystemId, input: &'a str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in input.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').unwrap_or(("", part));
            if map.insert(k.trim(), v.trim()).is_some() {
                return Err(parse_error(system, input, format!("duplicate key `{}`", k.trim())));
            }
        }
        Ok(Fields { system, input, map })
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        parse_error(self.system, self.input, reason)
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        self.map.remove(key)
    }

    fn need(&mut self, key: &str) -> Result<&'a str> {
        self.take(key).ok_or_else(|| self.err(format!("missing `{key}`")))
    }

    fn num<T: FromStr>(&self, key: &str, v: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        v.parse().map_err(|e: T::Err| self.err(format!("`{key}`: {e}")))
    }

    fn steps(&mut self) -> Result<i64> {
        match self.take("steps") {
            Some(v) => self.num("steps", v),
            None => Ok(0),
        }
    }

    fn flag(&mut self) -> Result<bool> {
        match self.take("flag") {
            None | Some("plain") | Some("unique") => Ok(false),
            Some("primed") => Ok(true),
            Some(other) => Err(self.err(format!("flag must be plain or primed, got `{other}`"))),
        }
    }

    fn address(&mut self) -> Result<DyadicInteger> {
        let v = self.need("addr")?;
        v.parse().map_err(|e: String| self.err(format!("`addr`: {e}")))
    }

    /// `phase=<f64>`, `m=<i64>`, `raw=<u64>` (units of 2^-64) or a bare number.
    fn phase(&mut self) -> Result<u64> {
        if let Some(v) = self.take("raw") {
            return self.num("raw", v);
        }
        if let Some(m) = self.take("m") {
            let m: i64 = self.num("m", m)?;
            return Ok(GOLDEN_STEP.wrapping_mul(m as u64));
        }
        let v = self.take("phase").or_else(|| self.take("")).ok_or_else(|| self.err("missing `phase` or `m`"))?;
        let t: f64 = self.num("phase", v)?;
        if !t.is_finite() {
            return Err(self.err("phase must be finite"));
        }
        Ok(RotationPoint::from_f64(t).0)
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(&"") => Err(self.err("unexpected bare value")),
            Some(k) => Err(self.err(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn parse_error(system: SystemId, input: &str, reason: impl Into<String>) -> Error {
    Error::ParsePoint { system: system.as_str().to_string(), input: input.to_string(), reason: reason.into() }
}

/// Parses a point literal of the given system.
pub fn parse_point(system: SystemId, input: &str) -> Result<DynPoint> {
    if system == SystemId::Odometer {
        let z: DyadicInteger = input.parse().map_err(|e: String| parse_error(system, input, e))?;
        return Ok(DynPoint::Odometer(z));
    }
    let mut f = Fields::parse(system, input)?;
    let point = match system {
        SystemId::Interval61 => {
            let y: f64 = f.num("y", f.map.get("y").copied().unwrap_or(""))?;
            f.take("y");
            if !(0.0..=1.0).contains(&y) {
                return Err(f.err("y must lie in [0, 1]"));
            }
            let branch = match f.need("branch")? {
                "hat" => Branch::Hat,
                "check" => Branch::Check,
                other => return Err(f.err(format!("branch must be hat or check, got `{other}`"))),
            };
            let steps = f.steps()?;
            DynPoint::Interval(IntervalPoint { steps, ..IntervalPoint::new(y, branch) })
        }
        SystemId::Shells62 => {
            let level = match f.need("level")? {
                "inf" => Level::Limit,
                v => {
                    let k: u32 = f.num("level", v)?;
                    if k == 0 {
                        return Err(f.err("levels start at 1"));
                    }
                    Level::Finite(k)
                }
            };
            let angle: f64 = match f.take("angle") {
                Some(v) => f.num("angle", v)?,
                None => return Err(f.err("missing `angle`")),
            };
            if !angle.is_finite() {
                return Err(f.err("angle must be finite"));
            }
            let steps = f.steps()?;
            DynPoint::Shell(ShellPoint { steps, ..ShellPoint::new(level, angle.rem_euclid(TAU)) })
        }
        SystemId::Rotation => DynPoint::Rotation(RotationPoint(f.phase()?)),
        SystemId::Sturmian => {
            let phase = f.phase()?;
            let side = match f.take("side") {
                None | Some("right") => Side::Right,
                Some("left") => Side::Left,
                Some(other) => return Err(f.err(format!("side must be right or left, got `{other}`"))),
            };
            DynPoint::Sturmian(SturmianPoint::new(phase, side))
        }
        SystemId::Toeplitz => {
            let address = f.address()?;
            let primed = f.flag()?;
            DynPoint::Toeplitz(ToeplitzPoint::new(address, primed))
        }
        SystemId::Thuemorse => {
            let address = f.address()?;
            let primed = f.flag()?;
            let bit0 = match f.take("bit0") {
                None | Some("0") => 0,
                Some("1") => 1,
                Some(other) => return Err(f.err(format!("bit0 must be 0 or 1, got `{other}`"))),
            };
            DynPoint::ThueMorse(ThueMorse::point(address, primed, bit0))
        }
        SystemId::Odometer => unreachable!("handled above"),
    };
    f.finish()?;
    Ok(point)
}

/// Runs `$body` with `$sys` bound to the system of a same-system pair.
macro_rules! with_pair {
    ($x:expr, $y:expr, |$sys:ident, $a:ident, $b:ident| $body:expr) => {
        match ($x, $y) {
            (DynPoint::Interval($a), DynPoint::Interval($b)) => {
                let $sys = &Interval61;
                $body
            }
            (DynPoint::Odometer($a), DynPoint::Odometer($b)) => {
                let $sys = &Odometer;
                $body
            }
            (DynPoint::Rotation($a), DynPoint::Rotation($b)) => {
                let $sys = &Rotation::golden();
                $body
            }
            (DynPoint::Shell($a), DynPoint::Shell($b)) => {
                let $sys = &Shells62;
                $body
            }
            (DynPoint::Sturmian($a), DynPoint::Sturmian($b)) => {
                let $sys = &Sturmian;
                $body
            }
            (DynPoint::ThueMorse($a), DynPoint::ThueMorse($b)) => {
                let $sys = &ThueMorse;
                $body
            }
            (DynPoint::Toeplitz($a), DynPoint::Toeplitz($b)) => {
                let $sys = &Toeplitz;
                $body
            }
            (x, y) => {
                return Err(Error::CrossSystem {
                    left: x.system().as_str().to_string(),
                    right: y.system().as_str().to_string(),
                })
            }
        }
    };
}

pub fn dist(x: &DynPoint, y: &DynPoint) -> Result<f64> {
    Ok(with_pair!(x, y, |sys, a, b| sys.dist(a, b)))
}

pub fn orbit_distances(x: &DynPoint, y: &DynPoint, lo: i64, hi: i64) -> Result<Vec<f64>> {
    Ok(with_pair!(x, y, |sys, a, b| sys.orbit_distances(a, b, lo, hi)))
}

/// All four estimates of a pair over one schedule.
pub fn estimate(x: &DynPoint, y: &DynPoint, sched: &FolnerSchedule) -> Result<PairEstimates> {
    Ok(with_pair!(x, y, |sys, a, b| PairEstimates::compute(sys, a, b, sched)))
}

/// Classification of a single pair, without fibre information.
pub fn classify(x: &DynPoint, y: &DynPoint, tol: &Tolerances, sched: &FolnerSchedule) -> Result<PairVerdict> {
    with_pair!(x, y, |sys, a, b| classify_pair(sys, a, b, None, tol, sched))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorId {
    #[serde(rename = "ex61.pi")]
    Ex61Pi,
    #[serde(rename = "ex62.pi")]
    Ex62Pi,
    #[serde(rename = "sturm.phi")]
    SturmPhi,
    #[serde(rename = "sturm.pi")]
    SturmPi,
    #[serde(rename = "sturm.psi")]
    SturmPsi,
    #[serde(rename = "tm.phi")]
    TmPhi,
    #[serde(rename = "tm.pi")]
    TmPi,
    #[serde(rename = "tm.psi")]
    TmPsi,
}

impl FactorId {
    pub const ALL: [FactorId; 8] = [
        FactorId::Ex61Pi,
        FactorId::Ex62Pi,
        FactorId::SturmPhi,
        FactorId::SturmPi,
        FactorId::SturmPsi,
        FactorId::TmPhi,
        FactorId::TmPi,
        FactorId::TmPsi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FactorId::Ex61Pi => "ex61.pi",
            FactorId::Ex62Pi => "ex62.pi",
            FactorId::SturmPhi => "sturm.phi",
            FactorId::SturmPi => "sturm.pi",
            FactorId::SturmPsi => "sturm.psi",
            FactorId::TmPhi => "tm.phi",
            FactorId::TmPi => "tm.pi",
            FactorId::TmPsi => "tm.psi",
        }
    }

    /// Source and target ids; targets outside [`SystemId`] are named here only.
    pub fn endpoints(self) -> (&'static str, &'static str) {
        match self {
            FactorId::Ex61Pi => ("interval61", "interval-base"),
            FactorId::Ex62Pi => ("shells62", "levels62"),
            FactorId::SturmPhi => ("sturmian", "rotation"),
            FactorId::SturmPi => ("sturmian", "point"),
            FactorId::SturmPsi => ("rotation", "point"),
            FactorId::TmPhi => ("thuemorse", "toeplitz"),
            FactorId::TmPi => ("thuemorse", "odometer"),
            FactorId::TmPsi => ("toeplitz", "odometer"),
        }
    }

    /// The source system, which is what pair literals are parsed against.
    pub fn source(self) -> SystemId {
        self.endpoints().0.parse().expect("registered source")
    }
}

impl fmt::Display for FactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FactorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FactorId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownFactorMap(s.to_string()))
    }
}

/// Settings shared by the factor-level operations.
#[derive(Debug, Clone)]
pub struct FactorRun {
    pub tol: Tolerances,
    pub sched: FolnerSchedule,
    pub seed: u64,
    pub scan: ScanConfig,
    /// Replaces the built-in sampler when present.
    pub sample: Option<FibreSample<DynPoint>>,
}

fn convert_pair<P: Payload>(source: SystemId, (x, y): &(DynPoint, DynPoint)) -> Result<(P, P)> {
    let conv = |p: &DynPoint| {
        P::from_dyn(p).ok_or_else(|| Error::CrossSystem {
            left: source.as_str().to_string(),
            right: p.system().as_str().to_string(),
        })
    };
    Ok((conv(x)?, conv(y)?))
}

fn convert_sample<P: Payload>(source: SystemId, s: &FibreSample<DynPoint>) -> Result<FibreSample<P>> {
    let pairs = s.pairs.iter().map(|p| convert_pair(source, p)).collect::<Result<_>>()?;
    let sequences = s
        .sequences
        .iter()
        .map(|seq| {
            let members = seq.pairs.iter().map(|p| convert_pair(source, p)).collect::<Result<_>>()?;
            let limit = seq.limit.as_ref().map(|p| convert_pair(source, p)).transpose()?;
            Ok(PairSequence::new(members, limit))
        })
        .collect::<Result<_>>()?;
    Ok(FibreSample::new(pairs, sequences))
}

fn prepared<X, Y>(id: FactorId, pi: FactorMap<X, Y>, run: &FactorRun) -> Result<FactorMap<X, Y>>
where
    X: System + 'static,
    Y: System + 'static,
    X::Point: Payload,
{
    match &run.sample {
        None => Ok(pi),
        Some(s) => {
            let sample: FibreSample<X::Point> = convert_sample(id.source(), s)?;
            Ok(pi.with_sampler(move |_seed: u64| sample.clone()))
        }
    }
}

/// Runs `$body` with `$pi` bound to the (possibly re-sampled) factor map.
macro_rules! with_factor {
    ($id:expr, $run:expr, |$pi:ident| $body:expr) => {
        match $id {
            FactorId::Ex61Pi => {
                let $pi = prepared($id, ex61_factor(), $run)?;
                $body
            }
            FactorId::Ex62Pi => {
                let $pi = prepared($id, ex62_factor(), $run)?;
                $body
            }
            FactorId::SturmPhi => {
                let $pi = prepared($id, sturmian_chain().phi, $run)?;
                $body
            }
            FactorId::SturmPi => {
                let $pi = prepared($id, sturmian_chain().pi, $run)?;
                $body
            }
            FactorId::SturmPsi => {
                let $pi = prepared($id, sturmian_chain().psi, $run)?;
                $body
            }
            FactorId::TmPhi => {
                let $pi = prepared($id, thue_morse_chain().phi, $run)?;
                $body
            }
            FactorId::TmPi => {
                let $pi = prepared($id, thue_morse_chain().pi, $run)?;
                $body
            }
            FactorId::TmPsi => {
                let $pi = prepared($id, thue_morse_chain().psi, $run)?;
                $body
            }
        }
    };
}

fn to_dyn<P: Payload>(s: FibreSample<P>) -> FibreSample<DynPoint> {
    let pair = |(x, y): (P, P)| (x.into_dyn(), y.into_dyn());
    let sequences = s
        .sequences
        .into_iter()
        .map(|seq| PairSequence::new(seq.pairs.into_iter().map(pair).collect(), seq.limit.map(pair)))
        .collect();
    FibreSample::new(s.pairs.into_iter().map(pair).collect(), sequences)
}

/// The fibre sample an operation on `id` runs over: the custom sample when
/// one is set, otherwise the built-in sampler at `run.seed`.
pub fn fibre_sample(id: FactorId, run: &FactorRun) -> Result<FibreSample<DynPoint>> {
    if let Some(s) = &run.sample {
        return Ok(s.clone());
    }
    with_factor!(id, run, |pi| Ok(to_dyn(pi.sample(run.seed))))
}

pub fn classify_factor(id: FactorId, run: &FactorRun) -> Result<FactorReport> {
    with_factor!(id, run, |pi| classify_factor_map(&pi, &run.tol, &run.sched, run.seed, &run.scan))
}

pub fn property_m(id: FactorId, run: &FactorRun) -> Result<PropertyMReport> {
    with_factor!(id, run, |pi| test_property_m(&pi, pi.sampler(), &run.tol, &run.sched, run.seed, &run.scan))
}

pub fn mean_equicontinuity(id: FactorId, run: &FactorRun) -> Result<MeReport> {
    with_factor!(id, run, |pi| test_mean_equicontinuity(&pi, pi.sampler(), &run.tol, &run.sched, run.seed))
}

/// `verify_decomposition` for the composite maps of the two chains.
pub fn decomposition(id: FactorId, run: &FactorRun) -> Result<DecompositionReport> {
    match id {
        FactorId::TmPi => {
            let c = thue_morse_chain();
            let pi = prepared(id, c.pi, run)?;
            verify_decomposition(&pi, &c.phi, &c.psi, &run.tol, &run.sched, run.seed, &run.scan)
        }
        FactorId::SturmPi => {
            let c = sturmian_chain();
            let pi = prepared(id, c.pi, run)?;
            verify_decomposition(&pi, &c.phi, &c.psi, &run.tol, &run.sched, run.seed, &run.scan)
        }
        other => Err(Error::NoDecomposition(other.as_str().to_string())),
    }
}

/// Sorted lines `system <id>  <description>  literal: <syntax>` and
/// `factor <id>  <source> -> <target>`.
pub fn listing() -> Vec<String> {
    let mut lines: Vec<String> = SystemId::ALL
        .iter()
        .map(|id| format!("system {id}  {}  literal: {}", id.description(), id.literal_syntax()))
        .collect();
    lines.extend(FactorId::ALL.iter().map(|id| {
        let (s, t) = id.endpoints();
        format!("factor {id}  {s} -> {t}")
    }));
    lines.sort();
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in SystemId::ALL {
            assert_eq!(id.as_str().parse::<SystemId>().unwrap(), id);
        }
        for id in FactorId::ALL {
            assert_eq!(id.as_str().parse::<FactorId>().unwrap(), id);
            let _ = id.source();
        }
        assert!("nope".parse::<SystemId>().is_err());
    }

    #[test]
    fn literals() {
        let p = parse_point(SystemId::Thuemorse, "addr=0, flag=primed, bit0=1").unwrap();
        assert_eq!(p, DynPoint::ThueMorse(ThueMorse::point(DyadicInteger::zero(), true, 1)));
        let p = parse_point(SystemId::Interval61, "y=0.3, branch=check").unwrap();
        assert_eq!(p, DynPoint::Interval(IntervalPoint::check(0.3)));
        let p = parse_point(SystemId::Shells62, "level=inf, angle=1.5").unwrap();
        assert_eq!(p, DynPoint::Shell(ShellPoint::new(Level::Limit, 1.5)));
        let p = parse_point(SystemId::Sturmian, "m=3, side=left").unwrap();
        assert_eq!(p, DynPoint::Sturmian(SturmianPoint::on_cut_orbit(3, Side::Left)));
        assert_eq!(parse_point(SystemId::Rotation, "0.5").unwrap(), DynPoint::Rotation(RotationPoint(1 << 63)));
        assert_eq!(parse_point(SystemId::Odometer, "(1)").unwrap(), DynPoint::Odometer(DyadicInteger::from_i64(-1)));
    }

    #[test]
    fn bad_literals() {
        assert!(parse_point(SystemId::Interval61, "y=1.5, branch=hat").is_err());
        assert!(parse_point(SystemId::Interval61, "y=0.5").is_err());
        assert!(parse_point(SystemId::Toeplitz, "addr=1, colour=red").is_err());
        assert!(parse_point(SystemId::Shells62, "level=0, angle=1").is_err());
        assert!(parse_point(SystemId::Odometer, "(2)").is_err());
    }

    #[test]
    fn display_parses_back() {
        for (id, lit) in [
            (SystemId::Thuemorse, "addr=1/3, flag=plain, bit0=1"),
            (SystemId::Toeplitz, "addr=5, flag=primed"),
            (SystemId::Interval61, "y=0.22, branch=hat"),
            (SystemId::Shells62, "level=4, angle=2"),
        ] {
            let p = parse_point(id, lit).unwrap();
            assert_eq!(parse_point(id, &p.to_string()).unwrap(), p, "{lit}");
        }
    }

    #[test]
    fn cross_system_pairs_are_rejected() {
        let x = parse_point(SystemId::Rotation, "0.1").unwrap();
        let y = parse_point(SystemId::Odometer, "3").unwrap();
        assert!(matches!(dist(&x, &y), Err(Error::CrossSystem { .. })));
    }

    #[test]
    fn listing_is_sorted() {
        let l = listing();
        assert!(l.windows(2).all(|w| w[0] <= w[1]));
        assert!(l.iter().any(|s| s.contains("thuemorse")));
        assert!(l.iter().any(|s| s.contains("tm.pi")));
    }
}
