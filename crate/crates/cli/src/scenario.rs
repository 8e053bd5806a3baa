//! Scenario files: TOML with one `[[scenario]]` table per experiment.

use std::collections::BTreeSet;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;
use weylab::estimators::EstimateKind;
use weylab::relations::{PairClass, ScanConfig};
use weylab::systems::registry::{parse_point, DynPoint, FactorId, SystemId};
use weylab::systems::MAX_WORD_LEN;
use weylab::{FolnerSchedule, Tolerances, WindowFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Operation {
    #[serde(rename = "estimate")]
    Estimate,
    #[serde(rename = "classify")]
    Classify,
    #[serde(rename = "test-M", alias = "test-m")]
    TestM,
    #[serde(rename = "test-meq")]
    TestMeq,
    #[serde(rename = "verify-decomposition")]
    VerifyDecomposition,
    #[serde(rename = "language-check")]
    LanguageCheck,
}

impl Operation {
    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Estimate => "estimate",
            Operation::Classify => "classify",
            Operation::TestM => "test-M",
            Operation::TestMeq => "test-meq",
            Operation::VerifyDecomposition => "verify-decomposition",
            Operation::LanguageCheck => "language-check",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    scenario: Vec<RawScenario>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawScenario {
    name: Spanned<String>,
    operation: Operation,
    system: Option<Spanned<String>>,
    factor: Option<Spanned<String>>,
    seed: Option<u64>,
    output: Option<Spanned<String>>,
    #[serde(default)]
    schedule: RawSchedule,
    #[serde(default)]
    tolerances: Option<Spanned<RawTolerances>>,
    #[serde(default)]
    scan: Option<RawScan>,
    #[serde(default)]
    pairs: Vec<RawPair>,
    #[serde(default)]
    sequences: Vec<RawSequence>,
    expect: Option<Spanned<bool>>,
    #[serde(default)]
    check: Vec<Spanned<RawCheck>>,
    max_len: Option<Spanned<usize>>,
    radius: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawSchedule {
    #[serde(default = "default_max_exponent")]
    max_exponent: Spanned<u32>,
    #[serde(default)]
    min_exponent: u32,
    #[serde(default = "default_family")]
    family: Spanned<WindowFamily>,
}

fn default_max_exponent() -> Spanned<u32> {
    Spanned::new(0..0, 12)
}

fn default_family() -> Spanned<WindowFamily> {
    Spanned::new(0..0, WindowFamily::Symmetric)
}

impl Default for RawSchedule {
    fn default() -> Self {
        RawSchedule { max_exponent: default_max_exponent(), min_exponent: 0, family: default_family() }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawTolerances {
    zero_tol: f64,
    sep_tol: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawScan {
    eps_grid: Vec<f64>,
    #[serde(default = "one")]
    delta_modulus: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    id: Spanned<String>,
    x: Spanned<String>,
    y: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    x: Spanned<String>,
    y: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    id: Spanned<String>,
    pairs: Vec<RawPoints>,
    limit: Option<RawPoints>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawCheck {
    pair: String,
    kind: Option<EstimateKind>,
    value: Option<f64>,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    class: Option<PairClass>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    System(SystemId),
    Factor(FactorId),
    Toeplitz,
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::System(id) => id.as_str().to_string(),
            Target::Factor(id) => id.as_str().to_string(),
            Target::Toeplitz => SystemId::Toeplitz.as_str().to_string(),
        }
    }
}

pub type Pair = (DynPoint, DynPoint);

#[derive(Debug, Clone)]
pub struct Sequence {
    pub id: String,
    pub pairs: Vec<Pair>,
    pub limit: Option<Pair>,
}

#[derive(Debug, Clone)]
pub enum Expectation {
    Value { kind: EstimateKind, value: f64, abs_tol: f64 },
    Class(PairClass),
}

#[derive(Debug, Clone)]
pub struct Check {
    pub pair: String,
    pub expect: Expectation,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub operation: Operation,
    pub target: Target,
    pub seed: Option<u64>,
    pub output: String,
    pub schedule: FolnerSchedule,
    pub tolerances: Tolerances,
    pub scan: ScanConfig,
    pub pairs: Vec<(String, Pair)>,
    pub sequences: Vec<Sequence>,
    pub expect: Option<bool>,
    pub checks: Vec<Check>,
    pub max_len: usize,
    pub radius: i64,
}

/// A parse or validation error at a byte range of the source.
#[derive(Debug, Clone)]
pub struct ScenarioError {
    pub span: Option<Range<usize>>,
    pub message: String,
}

impl ScenarioError {
    fn at(span: Range<usize>, message: impl Into<String>) -> Self {
        ScenarioError { span: Some(span), message: message.into() }
    }

    /// `origin:line:col: message`, with 1-based line and column.
    pub fn render(&self, origin: &str, source: &str) -> String {
        match &self.span {
            Some(span) => {
                let (line, col) = line_col(source, span.start);
                format!("{origin}:{line}:{col}: {}", self.message)
            }
            None => format!("{origin}: {}", self.message),
        }
    }
}

pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(source.len());
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}

fn name(raw: &Spanned<String>, what: &str) -> Result<String, ScenarioError> {
    if valid_name(raw.get_ref()) {
        Ok(raw.get_ref().clone())
    } else {
        Err(ScenarioError::at(raw.span(), format!("{what} `{}` must be non-empty [A-Za-z0-9._-]", raw.get_ref())))
    }
}

fn point(system: SystemId, raw: &Spanned<String>) -> Result<DynPoint, ScenarioError> {
    parse_point(system, raw.get_ref()).map_err(|e| ScenarioError::at(raw.span(), e.to_string()))
}

fn points(system: SystemId, raw: &RawPoints) -> Result<Pair, ScenarioError> {
    Ok((point(system, &raw.x)?, point(system, &raw.y)?))
}

pub fn parse(source: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let file: RawFile =
        toml::from_str(source).map_err(|e| ScenarioError { span: e.span(), message: e.message().to_string() })?;
    let mut names = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    let mut out = Vec::new();
    for raw in file.scenario {
        let s = resolve(raw)?;
        if !names.insert(s.name.clone()) {
            return Err(ScenarioError { span: None, message: format!("duplicate scenario name `{}`", s.name) });
        }
        if !outputs.insert(s.output.clone()) {
            return Err(ScenarioError { span: None, message: format!("duplicate output `{}`", s.output) });
        }
        out.push(s);
    }
    Ok(out)
}

fn resolve(raw: RawScenario) -> Result<Scenario, ScenarioError> {
    let scenario_name = name(&raw.name, "scenario name")?;
    let output = match &raw.output {
        Some(o) => name(o, "output")?,
        None => scenario_name.clone(),
    };
    let here = raw.name.span();
    let op = raw.operation;

    let target = match (&raw.system, &raw.factor) {
        (Some(_), Some(f)) => return Err(ScenarioError::at(f.span(), "give either `system` or `factor`, not both")),
        (Some(s), None) => {
            let id: SystemId =
                s.get_ref().parse().map_err(|e: weylab::Error| ScenarioError::at(s.span(), e.to_string()))?;
            Target::System(id)
        }
        (None, Some(f)) => {
            let id: FactorId =
                f.get_ref().parse().map_err(|e: weylab::Error| ScenarioError::at(f.span(), e.to_string()))?;
            Target::Factor(id)
        }
        (None, None) if op == Operation::LanguageCheck => Target::Toeplitz,
        (None, None) => return Err(ScenarioError::at(here, "missing `system` or `factor`")),
    };

    match (op, &target) {
        (Operation::Estimate, Target::System(_)) | (Operation::Classify, Target::System(_) | Target::Factor(_)) => {}
        (Operation::TestM | Operation::TestMeq, Target::Factor(_)) => {}
        (Operation::VerifyDecomposition, Target::Factor(FactorId::TmPi | FactorId::SturmPi)) => {}
        (Operation::VerifyDecomposition, _) => {
            return Err(ScenarioError::at(here, "verify-decomposition needs factor tm.pi or sturm.pi"));
        }
        (Operation::LanguageCheck, Target::Toeplitz | Target::System(SystemId::Toeplitz)) => {}
        (Operation::LanguageCheck, _) => return Err(ScenarioError::at(here, "language-check runs on toeplitz only")),
        (Operation::Estimate, _) => return Err(ScenarioError::at(here, "estimate needs a `system`")),
        (_, _) => return Err(ScenarioError::at(here, format!("{} needs a `factor`", op.as_str()))),
    }
    let target = if op == Operation::LanguageCheck { Target::Toeplitz } else { target };

    let sched = &raw.schedule;
    let family = *sched.family.get_ref();
    if family == WindowFamily::Custom {
        return Err(ScenarioError::at(sched.family.span(), "family must be symmetric or one-sided"));
    }
    let max_exponent = *sched.max_exponent.get_ref();
    let schedule = FolnerSchedule::dyadic(family, sched.min_exponent, max_exponent)
        .map_err(|e| ScenarioError::at(sched.max_exponent.span(), e.to_string()))?;

    let tolerances = match &raw.tolerances {
        None => Tolerances::default(),
        Some(t) => Tolerances::new(t.get_ref().zero_tol, t.get_ref().sep_tol)
            .map_err(|e| ScenarioError::at(t.span(), e.to_string()))?,
    };
    let scan = match raw.scan {
        None => ScanConfig::default(),
        Some(s) => ScanConfig { eps_grid: s.eps_grid, delta_modulus: s.delta_modulus },
    };

    let point_system = match &target {
        Target::System(id) => Some(*id),
        Target::Factor(id) => Some(id.source()),
        Target::Toeplitz => None,
    };
    let mut ids = BTreeSet::new();
    let mut pairs = Vec::new();
    for p in &raw.pairs {
        let Some(system) = point_system else {
            return Err(ScenarioError::at(p.id.span(), "language-check takes no pairs"));
        };
        let id = name(&p.id, "pair id")?;
        if !ids.insert(id.clone()) {
            return Err(ScenarioError::at(p.id.span(), format!("duplicate pair id `{id}`")));
        }
        pairs.push((id, (point(system, &p.x)?, point(system, &p.y)?)));
    }
    let mut sequences = Vec::new();
    for s in &raw.sequences {
        let Some(system) = point_system.filter(|_| matches!(target, Target::Factor(_))) else {
            return Err(ScenarioError::at(s.id.span(), "sequences belong to factor-map scenarios"));
        };
        let id = name(&s.id, "sequence id")?;
        if !ids.insert(id.clone()) {
            return Err(ScenarioError::at(s.id.span(), format!("duplicate id `{id}`")));
        }
        if s.pairs.is_empty() {
            return Err(ScenarioError::at(s.id.span(), "empty sequence"));
        }
        let members = s.pairs.iter().map(|p| points(system, p)).collect::<Result<_, _>>()?;
        let limit = s.limit.as_ref().map(|p| points(system, p)).transpose()?;
        sequences.push(Sequence { id, pairs: members, limit });
    }
    if matches!(target, Target::System(_)) && pairs.is_empty() {
        return Err(ScenarioError::at(here, format!("{} on a system needs at least one pair", op.as_str())));
    }
    if op == Operation::VerifyDecomposition && !(pairs.is_empty() && sequences.is_empty()) {
        return Err(ScenarioError::at(here, "verify-decomposition samples its own pairs"));
    }

    let expect = match raw.expect {
        Some(e) if matches!(op, Operation::Estimate | Operation::Classify) => {
            return Err(ScenarioError::at(e.span(), "`expect` applies to verdict operations; use [[scenario.check]]"));
        }
        e => e.map(Spanned::into_inner),
    };
    let mut checks = Vec::new();
    for c in &raw.check {
        let span = c.span();
        let c = c.get_ref();
        if !(matches!(op, Operation::Estimate | Operation::Classify) && matches!(target, Target::System(_))) {
            return Err(ScenarioError::at(span, "checks apply to estimate and classify on a system"));
        }
        if !ids.contains(&c.pair) {
            return Err(ScenarioError::at(span, format!("unknown pair `{}`", c.pair)));
        }
        let expect = match (c.kind, c.value, c.class) {
            (Some(kind), Some(value), None) => {
                if kind == EstimateKind::BanachDensity {
                    return Err(ScenarioError::at(span, "kind must be check, hat, besicovitch or weyl"));
                }
                let abs_tol = match (c.abs_tol, c.rel_tol) {
                    (Some(a), None) => a,
                    (None, Some(r)) => r * value.abs(),
                    (None, None) => 0.0,
                    (Some(_), Some(_)) => return Err(ScenarioError::at(span, "give abs-tol or rel-tol, not both")),
                };
                Expectation::Value { kind, value, abs_tol }
            }
            (None, None, Some(class)) if op == Operation::Classify => Expectation::Class(class),
            _ => return Err(ScenarioError::at(span, "a check needs `kind` and `value`, or `class` for classify")),
        };
        checks.push(Check { pair: c.pair.clone(), expect });
    }

    let max_len = match raw.max_len {
        None => 16,
        Some(m) if (1..=MAX_WORD_LEN).contains(m.get_ref()) => m.into_inner(),
        Some(m) => return Err(ScenarioError::at(m.span(), format!("max-len must lie in 1..={MAX_WORD_LEN}"))),
    };
    let radius = raw.radius.unwrap_or(1 << 15);

    Ok(Scenario {
        name: scenario_name,
        operation: op,
        target,
        seed: raw.seed,
        output,
        schedule,
        tolerances,
        scan,
        pairs,
        sequences,
        expect,
        checks,
        max_len,
        radius,
    })
}

impl Scenario {
    /// Operations that draw pairs from a seeded sampler.
    pub fn is_sampled(&self) -> bool {
        match self.operation {
            Operation::VerifyDecomposition => true,
            Operation::Classify | Operation::TestM | Operation::TestMeq => {
                matches!(self.target, Target::Factor(_)) && self.pairs.is_empty() && self.sequences.is_empty()
            }
            Operation::Estimate | Operation::LanguageCheck => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_and_column() {
        let src = "a\nbc\nd";
        assert_eq!(line_col(src, 0), (1, 1));
        assert_eq!(line_col(src, 3), (2, 2));
        assert_eq!(line_col(src, 5), (3, 1));
    }

    #[test]
    fn empty_file_has_no_scenarios() {
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn bad_literal_points_at_value() {
        let src = "[[scenario]]\nname = \"a\"\noperation = \"estimate\"\nsystem = \"odometer\"\n\
                   [[scenario.pairs]]\nid = \"p\"\nx = \"1/2\"\ny = \"0\"\n";
        let e = parse(src).unwrap_err();
        assert_eq!(line_col(src, e.span.unwrap().start), (7, 5));
    }

    #[test]
    fn unknown_operation_is_rejected() {
        let src = "[[scenario]]\nname = \"a\"\noperation = \"frobnicate\"\n";
        let e = parse(src).unwrap_err();
        assert_eq!(line_col(src, e.span.unwrap().start).0, 3);
    }

    #[test]
    fn estimate_needs_pairs() {
        let src = "[[scenario]]\nname = \"a\"\noperation = \"estimate\"\nsystem = \"rotation\"\n";
        assert!(parse(src).is_err());
    }

    #[test]
    fn decomposition_needs_composite() {
        let src = "[[scenario]]\nname = \"a\"\noperation = \"verify-decomposition\"\nfactor = \"tm.phi\"\n";
        assert!(parse(src).unwrap_err().message.contains("tm.pi"));
    }
}
