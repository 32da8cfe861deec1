//! Batch verification driver: runs the identity suites and emits reports.
//!
//! Exit codes: 0 when every theorem-backed check passes (claim failures are
//! reported but do not gate), 1 on a theorem failure, 2 on usage errors,
//! 3 on I/O errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use welding_core::collapse::verify_collapse;
use welding_core::compat::{verify_compat, verify_cubical_compat};
use welding_core::cube_dupont::verify_cubical;
use welding_core::dupont::verify_dupont;
use welding_core::report::Report;
use welding_core::stellar::verify_stellar;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Dupont,
    Cubical,
    Stellar,
    Compat,
    CubicalCompat,
    Collapse,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "verify", about = "Exact verification suites for the chain-level calculus")]
struct Cli {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: Suite,

    /// Simplex or cube dimension.
    #[arg(long)]
    n: Option<usize>,

    /// Subdivided face as a comma-separated vertex list, e.g. 0,1.
    #[arg(long)]
    face: Option<String>,

    /// Number of subdivided interval factors for cubical suites.
    #[arg(long)]
    k: Option<usize>,

    /// Number of random probe forms per check.
    #[arg(long, default_value_t = 6)]
    probes: usize,

    /// Maximum polynomial degree of random probes.
    #[arg(long, default_value_t = 2)]
    degree: u32,

    /// Seed for the probe generator.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    #[arg(long, value_enum, default_value_t)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Include wall-clock timing in the report (breaks byte-for-byte
    /// reproducibility across runs).
    #[arg(long)]
    timing: bool,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_face(raw: &Option<String>, n: usize) -> Result<Vec<u32>, String> {
    let mut face = match raw {
        None => (0..=n as u32).collect::<Vec<u32>>(),
        Some(s) => {
            let mut out = Vec::new();
            for piece in s.split(',') {
                let v: u32 = piece
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad vertex {piece:?} in --face"))?;
                out.push(v);
            }
            out
        }
    };
    face.sort_unstable();
    face.dedup();
    if face.is_empty() {
        return Err("--face must name at least one vertex".to_string());
    }
    if face.iter().any(|&v| v as usize > n) {
        return Err(format!("--face vertices must lie in 0..={n}"));
    }
    Ok(face)
}

fn run(cli: &Cli) -> Result<Vec<Report>, String> {
    let probes = cli.probes;
    let degree = cli.degree;
    let seed = cli.seed;
    match cli.suite {
        Suite::Dupont => {
            let n = cli.n.unwrap_or(2);
            if !(1..=3).contains(&n) {
                return Err(format!("dupont supports n in 1..=3, got {n}"));
            }
            Ok(vec![verify_dupont(n, probes, degree, seed)])
        }
        Suite::Cubical => {
            let n = cli.n.unwrap_or(2);
            if n > 3 {
                return Err(format!("cubical supports n in 0..=3, got {n}"));
            }
            Ok(vec![verify_cubical(n, probes, seed)])
        }
        Suite::Stellar => {
            let n = cli.n.unwrap_or(2);
            if !(1..=4).contains(&n) {
                return Err(format!("stellar supports n in 1..=4, got {n}"));
            }
            let face = parse_face(&cli.face, n)?;
            let k = cli.k.unwrap_or_else(|| n.min(3));
            if !(1..=n.min(3)).contains(&k) {
                return Err(format!("stellar supports k in 1..={}, got {k}", n.min(3)));
            }
            Ok(vec![verify_stellar(n, &face, k)])
        }
        Suite::Compat => {
            let n = cli.n.unwrap_or(2);
            if !(1..=3).contains(&n) {
                return Err(format!("compat supports n in 1..=3, got {n}"));
            }
            let face = parse_face(&cli.face, n)?;
            Ok(vec![verify_compat(n, &face, probes, degree, seed)])
        }
        Suite::CubicalCompat => {
            let n = cli.n.unwrap_or(2);
            if !(1..=3).contains(&n) {
                return Err(format!("cubical-compat supports n in 1..=3, got {n}"));
            }
            let k = cli.k.unwrap_or(n);
            if !(1..=n).contains(&k) {
                return Err(format!("cubical-compat supports k in 1..={n}, got {k}"));
            }
            Ok(vec![verify_cubical_compat(n, k, probes, seed)])
        }
        Suite::Collapse => {
            let n = cli.n.unwrap_or(2);
            if !(1..=4).contains(&n) {
                return Err(format!("collapse supports n in 1..=4, got {n}"));
            }
            let face = parse_face(&cli.face, n)?;
            Ok(vec![verify_collapse(n, &face)])
        }
        Suite::All => {
            if cli.n.is_some() || cli.face.is_some() || cli.k.is_some() {
                return Err("--n/--face/--k are fixed by the `all` battery".to_string());
            }
            let mut reports = Vec::new();
            for n in 1..=3 {
                reports.push(verify_dupont(n, probes, degree, seed));
            }
            for n in 1..=2 {
                reports.push(verify_cubical(n, probes, seed));
            }
            for (n, face, k) in [
                (1usize, vec![0u32, 1], 1usize),
                (2, vec![0, 1, 2], 2),
                (2, vec![0, 1], 1),
                (3, vec![0, 1, 2, 3], 3),
            ] {
                reports.push(verify_stellar(n, &face, k));
            }
            for (n, face) in [(1usize, vec![0u32, 1]), (2, vec![0, 1, 2]), (2, vec![0, 1])] {
                reports.push(verify_compat(n, &face, probes, degree, seed));
            }
            for (n, k) in [(1usize, 1usize), (2, 1), (2, 2)] {
                reports.push(verify_cubical_compat(n, k, probes, seed));
            }
            for (n, face) in [
                (1usize, vec![0u32, 1]),
                (2, vec![0, 1, 2]),
                (3, vec![0, 1, 2, 3]),
                (2, vec![0, 1]),
                (3, vec![0, 1]),
                (3, vec![0, 1, 2]),
            ] {
                reports.push(verify_collapse(n, &face));
            }
            Ok(reports)
        }
    }
}

fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            if reports.len() == 1 {
                let mut s = reports[0].to_json();
                s.push('\n');
                s
            } else {
                let mut s =
                    serde_json::to_string_pretty(reports).expect("report serialization");
                s.push('\n');
                s
            }
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&r.to_text());
                if let Some(ms) = r.elapsed_ms {
                    let _ = writeln!(out, "  elapsed_ms: {ms}");
                }
                out.push('\n');
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut reports = match run(&cli) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    if cli.timing {
        let total = started.elapsed().as_millis() as u64;
        // attribute the whole run to the last report; per-suite timing is
        // not tracked
        if let Some(last) = reports.last_mut() {
            last.elapsed_ms = Some(total);
        }
    }
    let rendered = render(&reports, cli.format);
    match &cli.out {
        None => print!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
    }
    if reports.iter().all(|r| r.theorems_pass()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
