//! Browser bindings: each function returns a JSON string for the demo page.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use weylab::estimators::PairEstimates;
use weylab::systems::registry::{parse_point, DynPoint, SystemId};
use weylab::systems::{Interval61, IntervalPoint, Level, ShellPoint, Shells62};
use weylab::{FolnerSchedule, System, WindowFamily};

/// Largest window exponent the page may ask for.
const MAX_EXPONENT: u32 = 14;

#[derive(Serialize)]
struct Series {
    window_len: Vec<u64>,
    check: Vec<f64>,
    besicovitch: Vec<f64>,
    weyl: Vec<f64>,
    weyl_value: f64,
}

impl Series {
    fn from_estimates(e: &PairEstimates) -> Self {
        let values = |est: &weylab::PseudometricEstimate| est.per_window.iter().map(|w| w.value).collect();
        Series {
            window_len: e.weyl.per_window.iter().map(|w| w.window.len()).collect(),
            check: values(&e.check),
            besicovitch: values(&e.besicovitch),
            weyl: values(&e.weyl),
            weyl_value: e.weyl.value,
        }
    }
}

fn schedule(family: WindowFamily, max_exponent: u32) -> Result<FolnerSchedule, JsError> {
    FolnerSchedule::dyadic(family, 0, max_exponent.clamp(1, MAX_EXPONENT)).map_err(|e| JsError::new(&e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Series for the two branches over `y` in the interval example, on
/// one-sided windows. `expected` is `2/n` for `y` in `(1/(n+1), 1/n)`.
#[wasm_bindgen]
pub fn interval_series(y: f64, max_exponent: u32) -> Result<String, JsError> {
    if !(y > 0.0 && y < 1.0) {
        return Err(JsError::new("y must lie in (0, 1)"));
    }
    let sched = schedule(WindowFamily::OneSided, max_exponent)?;
    let e = PairEstimates::compute(&Interval61, &IntervalPoint::hat(y), &IntervalPoint::check(y), &sched);
    #[derive(Serialize)]
    struct Out {
        series: Series,
        euclidean: f64,
        expected: f64,
    }
    let euclidean = Interval61.dist(&IntervalPoint::hat(y), &IntervalPoint::check(y));
    Ok(to_json(&Out { series: Series::from_estimates(&e), euclidean, expected: 2.0 / (1.0 / y).floor() }))
}

/// Series for two points on the shell `level` (0 for the limit circle).
#[wasm_bindgen]
pub fn shell_series(level: u32, angle_a: f64, angle_b: f64, max_exponent: u32) -> Result<String, JsError> {
    if !(angle_a.is_finite() && angle_b.is_finite()) {
        return Err(JsError::new("angles must be finite"));
    }
    let level = if level == 0 { Level::Limit } else { Level::Finite(level) };
    let (a, b) = (ShellPoint::new(level, angle_a), ShellPoint::new(level, angle_b));
    let sched = schedule(WindowFamily::Symmetric, max_exponent)?;
    let e = PairEstimates::compute(&Shells62, &a, &b, &sched);
    #[derive(Serialize)]
    struct Out {
        series: Series,
        euclidean: f64,
        orbit_a: Vec<[f64; 3]>,
    }
    let orbit_a = (-200..=200).step_by(4).map(|g| Shells62.act(&a, weylab::GroupElement(g)).embed()).collect();
    Ok(to_json(&Out { series: Series::from_estimates(&e), euclidean: Shells62.dist(&a, &b), orbit_a }))
}

/// Coordinates `lo..=hi` of a Thue-Morse point, of its negation and of its
/// Toeplitz image, with the series of the pair (point, negation).
#[wasm_bindgen]
pub fn thue_morse_strip(literal: &str, lo: i32, hi: i32, max_exponent: u32) -> Result<String, JsError> {
    let x = match parse_point(SystemId::Thuemorse, literal).map_err(|e| JsError::new(&e.to_string()))? {
        DynPoint::ThueMorse(x) => x,
        _ => unreachable!("parsed as thuemorse"),
    };
    if hi < lo || hi - lo > 4096 {
        return Err(JsError::new("need lo <= hi and at most 4097 coordinates"));
    }
    let (lo, hi) = (i64::from(lo), i64::from(hi));
    let neg = x.negation();
    let sched = schedule(WindowFamily::Symmetric, max_exponent)?;
    let e = PairEstimates::compute(&weylab::systems::ThueMorse, &x, &neg, &sched);
    #[derive(Serialize)]
    struct Out {
        point: String,
        x: Vec<u8>,
        negation: Vec<u8>,
        toeplitz: Vec<u8>,
        series: Series,
    }
    Ok(to_json(&Out {
        point: x.to_string(),
        x: x.coordinates(lo, hi),
        negation: neg.coordinates(lo, hi),
        toeplitz: x.base().coordinates(lo, hi),
        series: Series::from_estimates(&e),
    }))
}
