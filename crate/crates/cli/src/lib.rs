//! Command implementations for the `qalg` binary. Each command returns its
//! machine-readable output, a human summary and an exit code, so the binary
//! stays a thin shell and the commands are testable in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qalg_core::groebner::{complete, default_truncation};
use qalg_core::verify::{lemma_truncation, omega_conjugation};
use qalg_core::{
    automorphism_suite, build, check_conditions, fixtures, frobenius_suite, nakayama_a, nakayama_dual, nakayama_t1,
    nakayama_t2, normal_suite, verify_lemmas, AlgebraKind, ConditionReport, LinearGeneratorMap, NakayamaError, Params,
    VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qalg", version, about = "Nakayama automorphisms of quadratic algebras A(Q,C,s), computed exactly")]
pub struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the admissibility conditions on a fixture.
    Check { file: PathBuf },
    /// Print a closed-form Nakayama automorphism as a matrix.
    Nakayama {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "A")]
        which: Algebra,
    },
    /// Print the Hilbert function for degrees 0..=max-degree.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "A")]
        algebra: Algebra,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Run a verification suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Truncation degree for the rewriting systems.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// List or print the bundled fixtures.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Emit { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    #[value(name = "A")]
    A,
    #[value(name = "dual")]
    Dual,
    #[value(name = "T1")]
    T1,
    #[value(name = "T2")]
    T2,
}

impl Algebra {
    fn kind(self) -> AlgebraKind {
        match self {
            Algebra::A => AlgebraKind::A,
            Algebra::Dual => AlgebraKind::Dual,
            Algebra::T1 => AlgebraKind::T1,
            Algebra::T2 => AlgebraKind::T2,
        }
    }

    fn generator(self) -> &'static str {
        match self {
            Algebra::A => "t",
            _ => "x",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Automorphism,
    Normal,
    Lemmas,
    Frobenius,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub summary: String,
}

impl Output {
    fn json(code: i32, value: &serde_json::Value, summary: String) -> Self {
        Output { code, stdout: serde_json::to_string_pretty(value).expect("serializable"), summary }
    }

    fn input_error(err: anyhow::Error) -> Self {
        Output { code: EXIT_INPUT, stdout: String::new(), summary: format!("error: {err:#}") }
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Check { file } => load(file).map(|p| cmd_check(&p)),
        Command::Nakayama { file, which } => load(file).map(|p| cmd_nakayama(&p, *which)),
        Command::Hilbert { file, algebra, max_degree } => load(file).map(|p| cmd_hilbert(&p, *algebra, *max_degree)),
        Command::Verify { file, suite, max_degree } => load(file).map(|p| cmd_verify(&p, *suite, *max_degree)),
        Command::Examples { action } => cmd_examples(action),
    };
    result.unwrap_or_else(Output::input_error)
}

pub fn load(path: &Path) -> anyhow::Result<Params> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Params::from_fixture_json(&text).with_context(|| format!("invalid fixture {}", path.display()))
}

fn condition_summary(report: &ConditionReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        match &e.witness {
            None => writeln!(out, "{}: holds", e.condition.id()).unwrap(),
            Some(w) if w.indices.is_empty() => {
                writeln!(out, "{}: FAILS (value {} must differ from {})", e.condition.id(), w.lhs, w.rhs).unwrap()
            }
            Some(w) => {
                let at: Vec<String> =
                    e.condition.index_names().iter().zip(&w.indices).map(|(n, i)| format!("{n}={}", i + 1)).collect();
                writeln!(out, "{}: FAILS at {} (lhs {}, rhs {})", e.condition.id(), at.join(", "), w.lhs, w.rhs).unwrap()
            }
        }
    }
    out
}

pub fn cmd_check(p: &Params) -> Output {
    let report = check_conditions(p);
    let code = if report.all_hold() { EXIT_OK } else { EXIT_FAILED };
    Output::json(code, &report.to_json(), condition_summary(&report))
}

fn conditions_failed(report: &ConditionReport) -> Output {
    let summary = format!("parameter conditions fail\n{}", condition_summary(report));
    Output::json(EXIT_FAILED, &report.to_json(), summary)
}

fn map_summary(m: &LinearGeneratorMap, gen: &str) -> String {
    let mut out = String::new();
    for j in 0..m.size() {
        let image = m.image(j);
        let terms: Vec<String> = image
            .terms()
            .iter()
            .rev()
            .map(|(w, c)| {
                let g = w.letters().next().expect("degree one") + 1;
                if c.is_real() {
                    format!("{c}*{gen}{g}")
                } else {
                    format!("({c})*{gen}{g}")
                }
            })
            .collect();
        let image = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        writeln!(out, "{gen}{} -> {image}", j + 1).unwrap();
    }
    out
}

pub fn cmd_nakayama(p: &Params, which: Algebra) -> Output {
    let map = match which {
        Algebra::A => nakayama_a(p),
        Algebra::Dual => nakayama_dual(p),
        Algebra::T1 => nakayama_t1(p),
        Algebra::T2 => nakayama_t2(p),
    };
    match map {
        Ok(m) => Output::json(EXIT_OK, &m.to_json(), map_summary(&m, which.generator())),
        Err(e) => failure(e),
    }
}

fn failure(e: NakayamaError) -> Output {
    match e {
        NakayamaError::ConditionsFailed(report) => conditions_failed(&report),
        other => Output { code: EXIT_FAILED, stdout: String::new(), summary: format!("error: {other}") },
    }
}

pub fn cmd_hilbert(p: &Params, algebra: Algebra, max_degree: usize) -> Output {
    match complete(&build(p, algebra.kind()), (max_degree + 1).max(2)) {
        Ok(rs) => {
            let dims: Vec<usize> = rs.hilbert().dims.into_iter().take(max_degree + 1).collect();
            let summary = format!("{} rules; dims {:?}\n", rs.rules().len(), dims);
            Output::json(EXIT_OK, &serde_json::json!(dims), summary)
        }
        Err(e) => Output { code: EXIT_FAILED, stdout: String::new(), summary: format!("error: {e}") },
    }
}

fn suite_summary(name: &str, report: &VerificationReport, out: &mut String) {
    let passed = report.items.iter().filter(|i| i.passed()).count();
    writeln!(out, "{name}: {passed}/{} pass", report.items.len()).unwrap();
    for item in report.failing() {
        let residue = item.residue.as_ref().map(|r| r.to_text()).unwrap_or_default();
        writeln!(out, "  FAIL {}: {residue}", item.item).unwrap();
    }
}

pub fn cmd_verify(p: &Params, suite: Suite, max_degree: Option<usize>) -> Output {
    let n = p.n();
    let d = max_degree.unwrap_or_else(|| default_truncation(n)).max(lemma_truncation(n));
    match run_suites(p, suite, d) {
        Ok((report, summary)) => {
            let code = if report.all_pass() { EXIT_OK } else { EXIT_FAILED };
            Output::json(code, &report.to_json(), summary)
        }
        Err(e) => failure(e),
    }
}

fn run_suites(p: &Params, suite: Suite, d: usize) -> Result<(VerificationReport, String), NakayamaError> {
    let wanted = |s: Suite| suite == s || suite == Suite::All;
    let mut report = VerificationReport::default();
    let mut summary = format!("truncation degree {d}\n");
    if wanted(Suite::Automorphism) {
        let r = automorphism_suite(p, d)?;
        suite_summary("automorphism", &r, &mut summary);
        report.extend_prefixed("automorphism/", r);
    }
    if wanted(Suite::Normal) {
        let r = normal_suite(p, d)?;
        suite_summary("normal", &r, &mut summary);
        if let Ok(m) = omega_conjugation(p, d) {
            write!(summary, "  Omega conjugation in A:\n{}", indent(&map_summary(&m, "t"))).unwrap();
        }
        report.extend_prefixed("normal/", r);
    }
    if wanted(Suite::Lemmas) {
        let r = verify_lemmas(p, d)?;
        suite_summary("lemmas", &r, &mut summary);
        report.extend_prefixed("lemmas/", r);
    }
    if wanted(Suite::Frobenius) {
        let (r, branch) = frobenius_suite(p, d)?;
        suite_summary("frobenius", &r, &mut summary);
        let branch = branch.map_or("none", |b| b.name());
        writeln!(summary, "  inverse Frobenius Nakayama vs dual formula: {branch}").unwrap();
        report.extend_prefixed("frobenius/", r);
    }
    Ok((report, summary))
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

pub fn cmd_examples(action: &ExamplesAction) -> anyhow::Result<Output> {
    match action {
        ExamplesAction::List => {
            let all = fixtures::bundled();
            let list: Vec<_> = all
                .iter()
                .map(|f| {
                    let inst: serde_json::Map<_, _> =
                        f.instantiations.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
                    serde_json::json!({ "name": f.name, "n": f.params.n(), "s": f.params.s(), "instantiations": inst })
                })
                .collect();
            let summary = all
                .iter()
                .map(|f| {
                    let inst: Vec<String> = f.instantiations.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!("{:7} n={} s={} {}\n", f.name, f.params.n(), f.params.s(), inst.join(", "))
                })
                .collect();
            Ok(Output::json(EXIT_OK, &serde_json::json!(list), summary))
        }
        ExamplesAction::Emit { name } => {
            let f = fixtures::by_name(name).ok_or_else(|| anyhow!("unknown fixture {name:?}"))?;
            Ok(Output::json(EXIT_OK, &f.to_json(), String::new()))
        }
    }
}
