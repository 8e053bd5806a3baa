//! Runs a resolved scenario into CSV rows and a JSON verdict document.

use rayon::prelude::*;
use serde_json::{json, Value};
use weylab::estimators::{PairEstimates, PseudometricEstimate};
use weylab::relations::PairClass;
use weylab::systems::registry::{self, DynPoint, FactorId, FactorRun};
use weylab::systems::toeplitz_language_check;
use weylab::{FibreSample, PairSequence};

use crate::scenario::{Expectation, Operation, Pair, Scenario, Target};

pub const CSV_HEADER: &str = "scenario,pair_id,window_len,translate,kind,value";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub pair_id: String,
    pub window_len: u64,
    pub translate: i64,
    pub kind: &'static str,
    pub value: f64,
}

pub struct Outcome {
    pub rows: Vec<Row>,
    pub document: Value,
    pub passed: bool,
}

pub fn csv(scenario: &str, rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{scenario},{},{},{},{},{}\n", r.pair_id, r.window_len, r.translate, r.kind, r.value));
    }
    out
}

fn series(pair_id: &str, e: &PseudometricEstimate, rows: &mut Vec<Row>) {
    for w in &e.per_window {
        rows.push(Row {
            pair_id: pair_id.to_string(),
            window_len: w.window.len(),
            translate: w.translate.map_or(0, |g| g.value()),
            kind: e.kind.as_str(),
            value: w.value,
        });
    }
}

fn estimate_rows(pair_id: &str, e: &PairEstimates, rows: &mut Vec<Row>) {
    for est in [&e.check, &e.hat, &e.besicovitch, &e.weyl] {
        series(pair_id, est, rows);
    }
}

fn summary(id: &str, (x, y): &Pair, e: &PairEstimates) -> Value {
    json!({
        "id": id,
        "x": x.to_string(),
        "y": y.to_string(),
        "check": e.check.value,
        "hat": e.hat.value,
        "besicovitch": e.besicovitch.value,
        "weyl": e.weyl.value,
        "weyl_translate": e.weyl.achieving_translate,
        "weyl_boundary_hit": e.weyl.boundary_hit,
    })
}

/// Estimates for every labelled pair, in input order.
fn estimate_all(s: &Scenario, pairs: &[(String, Pair)]) -> weylab::Result<Vec<PairEstimates>> {
    pairs.par_iter().map(|(_, (x, y))| registry::estimate(x, y, &s.schedule)).collect()
}

fn labelled(prefix: &str, sample: &FibreSample<DynPoint>) -> Vec<(String, Pair)> {
    let mut out: Vec<(String, Pair)> =
        sample.pairs.iter().enumerate().map(|(i, p)| (format!("{prefix}p{i}"), p.clone())).collect();
    for (j, seq) in sample.sequences.iter().enumerate() {
        for (k, p) in seq.pairs.iter().enumerate() {
            out.push((format!("{prefix}s{j}.{k}"), p.clone()));
        }
        if let Some(p) = &seq.limit {
            out.push((format!("{prefix}s{j}.limit"), p.clone()));
        }
    }
    out
}

fn user_sample(s: &Scenario) -> Option<FibreSample<DynPoint>> {
    if s.pairs.is_empty() && s.sequences.is_empty() {
        return None;
    }
    let pairs = s.pairs.iter().map(|(_, p)| p.clone()).collect();
    let sequences = s.sequences.iter().map(|q| PairSequence::new(q.pairs.clone(), q.limit.clone())).collect();
    Some(FibreSample::new(pairs, sequences))
}

/// User ids for custom samples, generated ids otherwise.
fn sample_labels(s: &Scenario, sample: &FibreSample<DynPoint>) -> Vec<(String, Pair)> {
    if s.pairs.is_empty() && s.sequences.is_empty() {
        return labelled("", sample);
    }
    let mut out = s.pairs.clone();
    for q in &s.sequences {
        for (k, p) in q.pairs.iter().enumerate() {
            out.push((format!("{}.{k}", q.id), p.clone()));
        }
        if let Some(p) = &q.limit {
            out.push((format!("{}.limit", q.id), p.clone()));
        }
    }
    out
}

fn factor_run(s: &Scenario, seed: u64) -> FactorRun {
    FactorRun { tol: s.tolerances, sched: s.schedule.clone(), seed, scan: s.scan.clone(), sample: user_sample(s) }
}

/// Per-window series and summaries for every pair of a factor sample.
fn sample_series(s: &Scenario, labels: &[(String, Pair)], rows: &mut Vec<Row>) -> weylab::Result<Vec<Value>> {
    let estimates = estimate_all(s, labels)?;
    let mut out = Vec::new();
    for ((id, p), e) in labels.iter().zip(&estimates) {
        estimate_rows(id, e, rows);
        out.push(summary(id, p, e));
    }
    Ok(out)
}

fn header(s: &Scenario, seed: Option<u64>) -> Value {
    json!({
        "scenario": s.name,
        "operation": s.operation.as_str(),
        "target": s.target.label(),
        "seed": seed,
        "schedule": {
            "family": s.schedule.family().to_string(),
            "windows": s.schedule.windows().iter().map(|w| [w.lo(), w.hi()]).collect::<Vec<_>>(),
            "translate_radius": s.schedule.translate_radius(),
            "tail_start": s.schedule.tail_start(),
        },
        "tolerances": s.tolerances,
        "scan": s.scan,
    })
}

fn value_of(e: &PairEstimates, kind: weylab::EstimateKind) -> f64 {
    use weylab::EstimateKind::*;
    match kind {
        Check => e.check.value,
        Hat => e.hat.value,
        Besicovitch => e.besicovitch.value,
        Weyl | BanachDensity => e.weyl.value,
    }
}

pub fn execute(s: &Scenario, seed: Option<u64>) -> weylab::Result<Outcome> {
    let mut rows = Vec::new();
    let mut doc = header(s, seed);
    let seed_or_zero = seed.unwrap_or(0);
    let mut verdict: Option<bool> = None;
    let mut checks_out = Vec::new();
    let mut checks_ok = true;

    match (&s.operation, &s.target) {
        (Operation::Estimate | Operation::Classify, Target::System(_)) => {
            let estimates = estimate_all(s, &s.pairs)?;
            let mut pairs = Vec::new();
            let mut classes: Vec<Option<Vec<PairClass>>> = Vec::new();
            for ((id, p), e) in s.pairs.iter().zip(&estimates) {
                estimate_rows(id, e, &mut rows);
                let mut v = summary(id, p, e);
                if s.operation == Operation::Classify {
                    let verdict = registry::classify(&p.0, &p.1, &s.tolerances, &s.schedule)?;
                    let cs: Vec<PairClass> = verdict.classes.iter().copied().collect();
                    v["classes"] = json!(cs);
                    classes.push(Some(cs));
                } else {
                    classes.push(None);
                }
                pairs.push(v);
            }
            for c in &s.checks {
                let i = s.pairs.iter().position(|(id, _)| *id == c.pair).expect("validated pair id");
                let (ok, detail) = match &c.expect {
                    Expectation::Value { kind, value, abs_tol } => {
                        let got = value_of(&estimates[i], *kind);
                        (
                            (got - value).abs() <= *abs_tol,
                            json!({"kind": kind, "want": value, "abs_tol": abs_tol, "got": got}),
                        )
                    }
                    Expectation::Class(class) => {
                        let got = classes[i].clone().unwrap_or_default();
                        (got.contains(class), json!({"class": class, "got": got}))
                    }
                };
                checks_ok &= ok;
                checks_out.push(json!({"pair": c.pair, "passed": ok, "detail": detail}));
            }
            doc["pairs"] = Value::Array(pairs);
        }
        (Operation::Classify, Target::Factor(id)) => {
            let run = factor_run(s, seed_or_zero);
            let report = registry::classify_factor(*id, &run)?;
            let sample = registry::fibre_sample(*id, &run)?;
            doc["pairs"] = Value::Array(sample_series(s, &sample_labels(s, &sample), &mut rows)?);
            doc["report"] = json!(report);
        }
        (Operation::TestM, Target::Factor(id)) => {
            let run = factor_run(s, seed_or_zero);
            let report = registry::property_m(*id, &run)?;
            let sample = registry::fibre_sample(*id, &run)?;
            doc["pairs"] = Value::Array(sample_series(s, &sample_labels(s, &sample), &mut rows)?);
            verdict = Some(report.holds);
            doc["report"] = json!(report);
        }
        (Operation::TestMeq, Target::Factor(id)) => {
            let run = factor_run(s, seed_or_zero);
            let report = registry::mean_equicontinuity(*id, &run)?;
            let sample = registry::fibre_sample(*id, &run)?;
            doc["pairs"] = Value::Array(sample_series(s, &sample_labels(s, &sample), &mut rows)?);
            verdict = Some(report.holds);
            doc["report"] = json!(report);
        }
        (Operation::VerifyDecomposition, Target::Factor(id)) => {
            let run = factor_run(s, seed_or_zero);
            let report = registry::decomposition(*id, &run)?;
            let (phi, psi) = match id {
                FactorId::TmPi => (FactorId::TmPhi, FactorId::TmPsi),
                _ => (FactorId::SturmPhi, FactorId::SturmPsi),
            };
            let mut pairs = Vec::new();
            for (prefix, half) in [("phi.", phi), ("psi.", psi)] {
                let sample = registry::fibre_sample(half, &run)?;
                pairs.extend(sample_series(s, &labelled(prefix, &sample), &mut rows)?);
            }
            doc["pairs"] = Value::Array(pairs);
            verdict = Some(report.verified);
            doc["report"] = json!(report);
        }
        (Operation::LanguageCheck, _) => {
            let mut last = None;
            for n in 1..=s.max_len {
                let r = toeplitz_language_check(n, s.radius)?;
                for (kind, value) in [
                    ("words", r.words_checked as f64),
                    ("missing_direct", r.missing_direct as f64),
                    ("missing_after_exchange", r.missing_after_exchange.len() as f64),
                ] {
                    rows.push(Row { pair_id: "gamma".into(), window_len: n as u64, translate: 0, kind, value });
                }
                last = Some(r);
            }
            let r = last.expect("max_len >= 1");
            verdict = Some(r.holds);
            doc["radius"] = json!(s.radius);
            doc["report"] = json!(r);
        }
        _ => unreachable!("operation and target validated at parse time"),
    }

    let verdict_ok = match verdict {
        Some(v) => v == s.expect.unwrap_or(true),
        None => true,
    };
    doc["verdict"] = json!(verdict);
    doc["expect"] = json!(verdict.map(|_| s.expect.unwrap_or(true)));
    doc["checks"] = Value::Array(checks_out);
    let passed = verdict_ok && checks_ok;
    doc["passed"] = json!(passed);
    Ok(Outcome { rows, document: doc, passed })
}
