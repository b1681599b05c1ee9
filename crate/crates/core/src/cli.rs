//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a computed result disagrees with its closed form,
//! 2 invalid usage or parameters.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{self, SuiteResult};
use crate::error::Error;
use crate::homology::{verify_weight_piece, weight_homology, WeightHomology, WeightPieceCheck};
use crate::tate_tp::{lambda_dim, nil_invariance_report, relative_tp, Prime, TpReport, Verdicts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tpnil",
    version,
    about = "Cyclic bar homology of Π_k and relative TP of F_p[x]/(x^k)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for independent weight pieces.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced integral homology of weight pieces.
    Homology {
        #[arg(long)]
        k: u32,
        /// A weight `i` or an inclusive range `a..b`.
        #[arg(long)]
        i: WeightRange,
    },
    /// Check weight-piece homology against the sphere-smash closed form for all i ≤ max-i, i ∉ kN.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long = "max-i")]
        max_i: u64,
    },
    /// Factor table of TP_j(F_p[x]/(x^k), (x)).
    Tp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long = "truncate", default_value_t = 20)]
        truncation: u64,
    },
    /// Nil-invariance verdicts for TP.
    Verdict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Run the full property suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRange {
    pub start: u64,
    pub end: u64,
}

impl FromStr for WeightRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad weight {t:?}: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let i = parse(s)?;
                (i, i)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { start, end })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Homology,
    Verify,
    Tp,
    Verdict,
    Selftest,
}

/// Validated parameters of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<Prime>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<WeightRange>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_i: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub truncation: Option<u64>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Error> {
        let mut cfg = RunConfig {
            command: CommandKind::Selftest,
            k: None,
            p: None,
            i: None,
            j: None,
            max_i: None,
            truncation: None,
            format: cli.format,
        };
        let check_k = |k: u32| {
            if k < 2 {
                Err(Error::TruncationTooSmall(k))
            } else {
                Ok(k)
            }
        };
        match &cli.command {
            Command::Homology { k, i } => {
                cfg.command = CommandKind::Homology;
                cfg.k = Some(check_k(*k)?);
                cfg.i = Some(*i);
            }
            Command::Verify { k, max_i } => {
                cfg.command = CommandKind::Verify;
                cfg.k = Some(check_k(*k)?);
                cfg.max_i = Some(*max_i);
            }
            Command::Tp { p, k, j, truncation } => {
                cfg.command = CommandKind::Tp;
                cfg.p = Some(Prime::new(*p)?);
                cfg.k = Some(check_k(*k)?);
                cfg.j = Some(*j);
                if *truncation == 0 {
                    return Err(Error::ZeroTruncation);
                }
                cfg.truncation = Some(*truncation);
            }
            Command::Verdict { p, k } => {
                cfg.command = CommandKind::Verdict;
                cfg.p = Some(Prime::new(*p)?);
                cfg.k = Some(check_k(*k)?);
            }
            Command::Selftest => {}
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checks: Vec<WeightPieceCheck>,
    /// Weights in `kN`, where no closed form is asserted.
    pub skipped: Vec<u64>,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestSummary {
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

/// The whole structured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub homology: Vec<WeightHomology>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify: Option<VerifySummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tp: Option<TpReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<Verdicts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub selftest: Option<SelftestSummary>,
    pub pass: bool,
}

impl Output {
    fn new(config: RunConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            homology: Vec::new(),
            verify: None,
            tp: None,
            verdict: None,
            selftest: None,
            pass: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        }
    }
}

pub fn render_json(out: &Output) -> String {
    let mut s = serde_json::to_string_pretty(out).expect("output is always serializable");
    s.push('\n');
    s
}

pub fn parse_json(s: &str) -> serde_json::Result<Output> {
    serde_json::from_str(s)
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Executes a validated configuration.
pub fn execute(cfg: &RunConfig, jobs: Option<usize>) -> Result<Output, Error> {
    let mut out = Output::new(cfg.clone());
    match cfg.command {
        CommandKind::Homology => {
            let k = cfg.k.expect("validated");
            let range = cfg.i.expect("validated");
            let weights: Vec<u64> = (range.start..=range.end).collect();
            out.homology = in_pool(jobs, || {
                weights
                    .par_iter()
                    .map(|&i| weight_homology(k, i))
                    .collect::<Result<_, _>>()
            })?;
            out.pass = out.homology.iter().all(|h| h.boundary_squared_zero);
        }
        CommandKind::Verify => {
            let k = cfg.k.expect("validated");
            let max_i = cfg.max_i.expect("validated");
            let (checked, skipped): (Vec<u64>, Vec<u64>) = (1..=max_i).partition(|i| i % k as u64 != 0);
            let checks: Vec<WeightPieceCheck> = in_pool(jobs, || {
                checked
                    .par_iter()
                    .map(|&i| verify_weight_piece(k, i))
                    .collect::<Result<_, _>>()
            })?;
            let suites = vec![
                checks::euler_suite(k..=k, 1..=max_i)?,
                checks::identity_suite(k..=k, 1..=max_i, max_i as usize)?,
                checks::boundary_suite(k..=k, 1..=max_i)?,
            ];
            let pass = checks.iter().all(|c| c.matches && c.boundary_squared_zero) && suites.iter().all(|s| s.pass);
            out.pass = pass;
            out.verify = Some(VerifySummary {
                checks,
                skipped,
                suites,
                pass,
            });
        }
        CommandKind::Tp => {
            let report = relative_tp(
                cfg.p.expect("validated"),
                cfg.k.expect("validated"),
                cfg.j.expect("validated"),
                cfg.truncation.expect("validated"),
            )?;
            out.pass = report.verdicts.exponent_sup.scan_consistent;
            out.tp = Some(report);
        }
        CommandKind::Verdict => {
            let v = nil_invariance_report(cfg.p.expect("validated"), cfg.k.expect("validated"))?;
            out.pass = v.exponent_sup.scan_consistent;
            out.verdict = Some(v);
        }
        CommandKind::Selftest => {
            let suites = in_pool(jobs, selftest_suites)?;
            let pass = suites.iter().all(|s| s.pass);
            out.pass = pass;
            out.selftest = Some(SelftestSummary { suites, pass });
        }
    }
    Ok(out)
}

fn selftest_suites() -> Result<Vec<SuiteResult>, Error> {
    let jobs: Vec<Box<dyn Fn() -> Result<SuiteResult, Error> + Send + Sync>> = vec![
        Box::new(|| checks::identity_suite(2..=5, 1..=10, 8)),
        Box::new(|| checks::boundary_suite(2..=4, 1..=10)),
        Box::new(|| checks::euler_suite(2..=5, 1..=20)),
        Box::new(|| checks::sphere_smash_suite(2..=4, 1..=10)),
        Box::new(|| checks::generated_subset_suite(2..=4, 1..=8)),
    ];
    jobs.par_iter().map(|job| job()).collect()
}

pub fn render_text(out: &Output) -> String {
    let mut s = String::new();
    for h in &out.homology {
        render_homology(&mut s, h);
    }
    if let Some(v) = &out.verify {
        render_verify(&mut s, v);
    }
    if let Some(tp) = &out.tp {
        render_tp(&mut s, tp);
    }
    if let Some(v) = &out.verdict {
        render_verdicts(&mut s, out.config.p.map_or(0, Prime::get), out.config.k.unwrap_or(0), v);
    }
    if let Some(st) = &out.selftest {
        for suite in &st.suites {
            render_suite(&mut s, suite);
        }
        let _ = writeln!(s, "selftest: {}", if st.pass { "PASS" } else { "FAIL" });
    }
    s
}

fn render_homology(s: &mut String, h: &WeightHomology) {
    let d = if h.weight >= 1 {
        lambda_dim(h.weight, h.k).ok().map(|l| l.d)
    } else {
        None
    };
    let _ = write!(s, "k={} i={}", h.k, h.weight);
    if let Some(d) = d {
        let _ = write!(s, " d={d}");
    }
    if h.weight >= 1 && h.weight.is_multiple_of(h.k as u64) {
        let _ = write!(s, " (i ∈ kN)");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "  {:>6}  {:>8}  reduced homology", "degree", "cells");
    for g in &h.groups {
        let _ = writeln!(s, "  {:>6}  {:>8}  {}", g.degree, h.basis_sizes[g.degree], g.group);
    }
    if !h.boundary_squared_zero {
        let _ = writeln!(s, "  WARNING: boundary does not square to zero");
    }
}

fn render_verify(s: &mut String, v: &VerifySummary) {
    for c in &v.checks {
        let support: Vec<String> = c
            .degrees
            .iter()
            .filter(|g| !g.computed.is_trivial())
            .map(|g| format!("H{}={}", g.degree, g.computed))
            .collect();
        let _ = writeln!(
            s,
            "{} k={} i={} d={}: {}",
            if c.matches { "match   " } else { "MISMATCH" },
            c.k,
            c.weight,
            c.d,
            if support.is_empty() {
                "0".to_string()
            } else {
                support.join(", ")
            }
        );
    }
    if !v.skipped.is_empty() {
        let skipped: Vec<String> = v.skipped.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "skipped (i ∈ kN): {}", skipped.join(" "));
    }
    for suite in &v.suites {
        render_suite(s, suite);
    }
    let _ = writeln!(s, "verify: {}", if v.pass { "PASS" } else { "FAIL" });
}

fn render_suite(s: &mut String, suite: &SuiteResult) {
    let _ = write!(
        s,
        "{} {}: {} cases, {} violations",
        if suite.pass { "PASS" } else { "FAIL" },
        suite.name,
        suite.cases,
        suite.violations
    );
    if let Some(f) = &suite.first_failure {
        let _ = write!(s, " (first: {f})");
    }
    let _ = writeln!(s);
}

fn render_tp(s: &mut String, tp: &TpReport) {
    let _ = writeln!(s, "TP_{}(F_{}[x]/(x^{}), (x))", tp.degree, tp.p, tp.k);
    if tp.is_zero() {
        let _ = writeln!(s, "0 (even degree)");
    } else {
        let _ = writeln!(s, "  {:>4}  {:<7}  {:>8}  group", "i", "branch", "exponent");
        for f in &tp.factors {
            let _ = writeln!(
                s,
                "  {:>4}  {:<7}  {:>8}  {}",
                f.source_weight,
                f.branch.to_string(),
                f.exponent,
                f.group()
            );
        }
        let exps: Vec<String> = tp.exponents().iter().map(u32::to_string).collect();
        let _ = writeln!(s, "exponents: [{}]", exps.join(","));
        let _ = writeln!(
            s,
            "truncated: factors for i ≤ {} shown; the group is the infinite product over all i ≥ 1",
            tp.truncation
        );
    }
    render_verdicts(s, tp.p.get(), tp.k, &tp.verdicts);
}

fn render_verdicts(s: &mut String, p: u64, k: u32, v: &Verdicts) {
    let _ = writeln!(
        s,
        "integral: {} (witness i={} gives Z/{}^{})",
        if v.integral_iso { "iso" } else { "not iso" },
        v.witness_weight,
        p,
        v.witness_exponent
    );
    let _ = writeln!(
        s,
        "after inverting {p}: {}",
        if v.p_inverted_iso { "iso" } else { "not iso" }
    );
    let _ = write!(
        s,
        "exponent sup for k={k}: {} (scan i ≤ {} max {}",
        v.exponent_sup.value, v.exponent_sup.scan_limit, v.exponent_sup.scan_max
    );
    if let Some(w) = v.exponent_sup.witness_weight {
        let _ = write!(s, ", unbounded from i={w}");
    }
    let _ = writeln!(s, ")");
    let _ = writeln!(s, "{}", v.remark);
}

/// Parses arguments, runs, writes output and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let out = match execute(&cfg, cli.jobs) {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let rendered = match cfg.format {
        Format::Text => render_text(&out),
        Format::Json => render_json(&out),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => stdout.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    out.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("tpnil").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn failed_checks_exit_one() {
        let cfg =
            RunConfig::from_cli(&Cli::try_parse_from(["tpnil", "verdict", "--p", "2", "--k", "3"]).unwrap()).unwrap();
        let mut out = execute(&cfg, None).unwrap();
        assert_eq!(out.exit_code(), EXIT_OK);
        out.pass = false;
        assert_eq!(out.exit_code(), EXIT_MISMATCH);
    }

    #[test]
    fn weight_ranges() {
        assert_eq!("3".parse::<WeightRange>().unwrap(), WeightRange { start: 3, end: 3 });
        assert_eq!(
            "1..12".parse::<WeightRange>().unwrap(),
            WeightRange { start: 1, end: 12 }
        );
        assert_eq!(
            "1..=4".parse::<WeightRange>().unwrap(),
            WeightRange { start: 1, end: 4 }
        );
        assert!("5..2".parse::<WeightRange>().is_err());
        assert!("x".parse::<WeightRange>().is_err());
    }

    #[test]
    fn homology_text() {
        let (code, out, _) = run_capture(&["homology", "--k", "2", "--i", "3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("       2         1  Z\n"), "{out}");
        assert!(out.contains("       3         1  Z\n"), "{out}");
        let (_, out, _) = run_capture(&["homology", "--k", "2", "--i", "2"]);
        assert!(out.contains("Z/2"), "{out}");
        let (code, out, _) = run_capture(&["homology", "--k", "3", "--i", "0"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("k=3 i=0\n"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["verify", "--k", "1", "--max-i", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["tp", "--p", "4", "--k", "3", "--j", "1"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["tp", "--p", "2", "--k", "3", "--j", "1", "--truncate", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["verdict", "--p", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn tp_text() {
        let (code, out, _) = run_capture(&["tp", "--p", "2", "--k", "3", "--j", "1", "--truncate", "10"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("exponents: [0,1,0,2,0,0,0,3,0,1]"), "{out}");
        let (_, out, _) = run_capture(&["tp", "--p", "2", "--k", "3", "--j", "2", "--truncate", "10"]);
        assert!(out.contains("0 (even degree)"));
        let (_, out, _) = run_capture(&["tp", "--p", "2", "--k", "4", "--j", "-1", "--truncate", "8"]);
        assert!(out.contains("exponents: [0,1,0,2,0,1,0,2]"), "{out}");
    }

    #[test]
    fn verdict_text() {
        let (_, out, _) = run_capture(&["verdict", "--p", "2", "--k", "3"]);
        assert!(out.contains("integral: not iso") && out.contains("after inverting 2: not iso"));
        let (_, out, _) = run_capture(&["verdict", "--p", "2", "--k", "8"]);
        assert!(out.contains("integral: not iso") && out.contains("after inverting 2: iso"));
        let (_, out, _) = run_capture(&["verdict", "--p", "3", "--k", "6"]);
        assert!(out.contains("after inverting 3: not iso"));
        assert!(out.contains("negative cyclic"));
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = run_capture(&["verify", "--k", "3", "--max-i", "7", "--jobs", "2"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("skipped (i ∈ kN): 3 6"));
        assert!(out.ends_with("verify: PASS\n"));
    }
}
