use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn weylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylab")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, scenario: &str, extra: &[&str]) -> Output {
    let out = dir.join("out");
    let mut args = vec!["run", scenario, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    weylab(&args)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// `(pair_id, window_len, kind, value)` rows.
fn rows(csv: &str) -> Vec<(String, u64, String, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 6, "{l}");
            (f[1].to_string(), f[2].parse().unwrap(), f[4].to_string(), f[5].parse().unwrap())
        })
        .collect()
}

fn last_value(rows: &[(String, u64, String, f64)], pair: &str, kind: &str) -> f64 {
    rows.iter().filter(|r| r.0 == pair && r.2 == kind).max_by_key(|r| r.1).expect("series present").3
}

#[test]
fn list_is_sorted_and_complete() {
    let o = weylab(&["list"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert!(text.contains("thuemorse"));
    assert!(text.contains("tm.pi"));
    assert!(text.contains("scenario tm-fibre-D"));
}

#[test]
fn tm_fibre_d_is_one() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), "tm-fibre-D", &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("out/tm-fibre-D.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("scenario,pair_id,window_len,translate,kind,value"));
    let rows = rows(&csv);
    for pair in ["third", "fifth", "zero"] {
        assert_eq!(last_value(&rows, pair, "weyl"), 1.0);
    }
    assert!(dir.path().join("out/tm-fibre-D.json").exists());
}

#[test]
fn ex61_weyl_near_two_thirds() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), "ex61-weyl", &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = rows(&fs::read_to_string(dir.path().join("out/ex61-weyl.csv")).unwrap());
    let v = last_value(&rows, "y0.3", "weyl");
    // y = 0.3 lies in (1/4, 1/3), whose backward limit is 1/3 with gap 2/3
    let n = (1.0f64 / 0.3).floor();
    assert!((v - 2.0 / n).abs() <= 0.05 * 2.0 / n, "{v}");
}

#[test]
fn empty_scenario_list_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "empty.toml", "# nothing to do\n");
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn syntax_error_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "bad.toml", "[[scenario]]\nname = \"a\"\noperation = = \"estimate\"\n");
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.toml:3:"), "{}", stderr(&o));
}

#[test]
fn bad_literal_reports_its_position() {
    let dir = TempDir::new().unwrap();
    let text = "[[scenario]]\nname = \"a\"\noperation = \"estimate\"\nsystem = \"interval61\"\n\n\
                [[scenario.pairs]]\nid = \"p\"\nx = \"y=2, branch=hat\"\ny = \"y=0.5, branch=hat\"\n";
    let file = write(dir.path(), "lit.toml", text);
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("lit.toml:8:5:"), "{}", stderr(&o));
}

#[test]
fn unknown_system_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let text = "[[scenario]]\nname = \"a\"\noperation = \"estimate\"\nsystem = \"baker\"\n";
    let file = write(dir.path(), "sys.toml", text);
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("sys.toml:4:10:"), "{}", stderr(&o));
}

#[test]
fn failed_decomposition_exits_two() {
    let dir = TempDir::new().unwrap();
    let text = "[[scenario]]\nname = \"tm\"\noperation = \"verify-decomposition\"\nfactor = \"tm.pi\"\nseed = 1\n\
                [scenario.schedule]\nmax-exponent = 10\n";
    let file = write(dir.path(), "dec.toml", text);
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/tm.json")).unwrap()).unwrap();
    assert_eq!(doc["verdict"], serde_json::Value::Bool(false));
    assert!(dir.path().join("out/tm.csv").exists());
}

#[test]
fn failed_check_exits_two() {
    let dir = TempDir::new().unwrap();
    let text = "[[scenario]]\nname = \"rot\"\noperation = \"estimate\"\nsystem = \"rotation\"\n\
                [scenario.schedule]\nmax-exponent = 6\n\
                [[scenario.pairs]]\nid = \"p\"\nx = \"0.1\"\ny = \"0.3\"\n\
                [[scenario.check]]\npair = \"p\"\nkind = \"weyl\"\nvalue = 0.5\nabs-tol = 0.01\n";
    let file = write(dir.path(), "chk.toml", text);
    let o = run_in(dir.path(), &file, &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sampled_scenario_needs_a_seed() {
    let dir = TempDir::new().unwrap();
    let text = "[[scenario]]\nname = \"psi\"\noperation = \"classify\"\nfactor = \"tm.psi\"\n\
                [scenario.schedule]\nmax-exponent = 6\n";
    let file = write(dir.path(), "seed.toml", text);
    assert_eq!(run_in(dir.path(), &file, &[]).status.code(), Some(1));
    let o = run_in(dir.path(), &file, &["--seed", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/psi.json")).unwrap()).unwrap();
    assert_eq!(doc["seed"], serde_json::json!(3));
}

#[test]
fn csv_is_bit_identical_across_runs_and_thread_counts() {
    let text = "[[scenario]]\nname = \"phi\"\noperation = \"classify\"\nfactor = \"tm.phi\"\nseed = 9\n\
                [scenario.schedule]\nmax-exponent = 9\n\n\
                [[scenario]]\nname = \"ex61\"\noperation = \"estimate\"\nsystem = \"interval61\"\n\
                [scenario.schedule]\nmax-exponent = 9\nfamily = \"one-sided\"\n\
                [[scenario.pairs]]\nid = \"a\"\nx = \"y=0.22, branch=hat\"\ny = \"y=0.22, branch=check\"\n\
                [[scenario.pairs]]\nid = \"b\"\nx = \"y=0.6, branch=hat, steps=3\"\ny = \"y=0.1, branch=check\"\n";
    let mut outputs = Vec::new();
    for threads in ["1", "4", "4"] {
        let dir = TempDir::new().unwrap();
        let file = write(dir.path(), "det.toml", text);
        let o = run_in(dir.path(), &file, &["--threads", threads]);
        assert!(o.status.success(), "{}", stderr(&o));
        let phi = fs::read(dir.path().join("out/phi.csv")).unwrap();
        let ex61 = fs::read(dir.path().join("out/ex61.csv")).unwrap();
        outputs.push((phi, ex61));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn language_check_passes() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), "toeplitz-language", &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = rows(&fs::read_to_string(dir.path().join("out/toeplitz-language.csv")).unwrap());
    assert_eq!(last_value(&rows, "gamma", "missing_after_exchange"), 0.0);
    assert!(last_value(&rows, "gamma", "missing_direct") > 0.0);
}

#[test]
fn unknown_bundled_name_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run_in(dir.path(), "no-such-scenario", &[]).status.code(), Some(1));
    assert_eq!(weylab(&["frobnicate"]).status.code(), Some(1));
}
