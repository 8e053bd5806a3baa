//! `weylab run <scenario>` and `weylab list`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a scenario's verdict
//! or checks failed.

mod exec;
mod scenario;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weylab::systems::registry;

const BUNDLED: &[(&str, &str, &str)] = &[
    ("ex61-weyl", "weyl pseudometric of the interval example, y = 0.3", include_str!("../scenarios/ex61-weyl.toml")),
    (
        "ex62-meq",
        "shell example: property (M) holds, mean equicontinuity fails",
        include_str!("../scenarios/ex62-meq.toml"),
    ),
    (
        "sturm-decomposition",
        "Sturmian chain: coding is Banach proximal, rotation equicontinuous",
        include_str!("../scenarios/sturm-decomposition.toml"),
    ),
    ("tm-decomposition", "Thue-Morse chain table: phi, psi and pi", include_str!("../scenarios/tm-decomposition.toml")),
    ("tm-fibre-D", "weyl pseudometric on Thue-Morse negation pairs", include_str!("../scenarios/tm-fibre-D.toml")),
    (
        "toeplitz-language",
        "Toeplitz windows against the period-doubling language",
        include_str!("../scenarios/toeplitz-language.toml"),
    ),
];

#[derive(Parser)]
#[command(name = "weylab", version, about = "Finite-window experiments on Weyl pseudometrics of Z-actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled scenario by name.
    Run {
        scenario: String,
        /// Directory for the CSV and JSON artifacts.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Overrides every scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List systems, factor maps and bundled scenarios.
    List,
}

enum Failure {
    Usage(String),
    Verdict(String),
}

fn listing() -> Vec<String> {
    let mut lines = registry::listing();
    lines.extend(BUNDLED.iter().map(|(name, desc, _)| format!("scenario {name}  {desc}")));
    lines.sort();
    lines
}

fn load(arg: &str) -> Result<(String, String), Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return Ok((arg.to_string(), text));
    }
    match BUNDLED.iter().find(|(name, _, _)| *name == arg) {
        Some((name, _, text)) => Ok((format!("<bundled {name}>"), text.to_string())),
        None => Err(Failure::Usage(format!("{arg}: no such file or bundled scenario (see `weylab list`)"))),
    }
}

fn run(arg: &str, out: &Path, threads: usize, seed: Option<u64>) -> Result<(), Failure> {
    let (origin, text) = load(arg)?;
    let scenarios = scenario::parse(&text).map_err(|e| Failure::Usage(e.render(&origin, &text)))?;
    if scenarios.is_empty() {
        return Ok(());
    }
    for s in &scenarios {
        if s.is_sampled() && seed.or(s.seed).is_none() {
            return Err(Failure::Usage(format!("{origin}: scenario `{}` samples pairs and needs a seed", s.name)));
        }
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    fs::create_dir_all(out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;

    let mut failed = Vec::new();
    for s in &scenarios {
        let seed = seed.or(s.seed);
        let outcome =
            exec::execute(s, seed).map_err(|e| Failure::Usage(format!("{origin}: scenario `{}`: {e}", s.name)))?;
        let csv_path = out.join(format!("{}.csv", s.output));
        let json_path = out.join(format!("{}.json", s.output));
        let doc = serde_json::to_string_pretty(&outcome.document).expect("json values serialize");
        fs::write(&csv_path, exec::csv(&s.name, &outcome.rows))
            .and_then(|_| fs::write(&json_path, doc + "\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
        let status = if outcome.passed { "ok" } else { "FAILED" };
        println!("{} {}: {status} ({} rows, {})", s.operation.as_str(), s.name, outcome.rows.len(), csv_path.display());
        if !outcome.passed {
            failed.push(s.name.clone());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verdict(format!("verdict failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::List => {
            for line in listing() {
                println!("{line}");
            }
            Ok(())
        }
        Command::Run { scenario, out, threads, seed } => run(&scenario, &out, threads, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
