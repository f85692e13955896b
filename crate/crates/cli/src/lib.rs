//! Command implementations behind the `linvol` binary. Each command returns
//! its full report as text so that output is deterministic and testable.

pub mod render;
pub mod spec;

use std::fmt::Write as _;

use linvol::fgroup::{even_subgroup, free_group, is_symmetric_basis, BasisVerdict, FGroupError, Index, SubgroupGraph};
use linvol::induce::{default_horizon, induce, rauzy_step, InduceWindow};
use linvol::involution::{Coherence, Cylinder, LinearInvolution, Orientation};
use linvol::lang::language;
use linvol::returns::{complete_returns, mixed_returns, prime_words, returns_of_kind, Budget, ReturnKind, ReturnsError};
use linvol::word::{RWord, SignedLetter, Substitution};
use linvol::InvolutionError;
use thiserror::Error;

pub use spec::SpecError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Connection(String),
    #[error("{0}")]
    Incomplete(String),
}

impl CliError {
    /// 2 for invalid input, 3 for a connection or singular orbit, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec(_) | CliError::Input(_) => 2,
            CliError::Connection(_) => 3,
            CliError::Incomplete(_) => 1,
        }
    }
}

impl From<InvolutionError> for CliError {
    fn from(e: InvolutionError) -> Self {
        match e {
            InvolutionError::SingularPoint(_)
            | InvolutionError::HorizonExhausted { .. }
            | InvolutionError::EqualLastLengths => CliError::Connection(e.to_string()),
            InvolutionError::NotInLanguage(_) | InvolutionError::InvalidRegion(_) => CliError::Input(e.to_string()),
            other => CliError::Incomplete(other.to_string()),
        }
    }
}

impl From<ReturnsError> for CliError {
    fn from(e: ReturnsError) -> Self {
        match e {
            ReturnsError::NotInLanguage(_) | ReturnsError::EmptyAnchor => CliError::Input(e.to_string()),
            ReturnsError::Involution(inner) => inner.into(),
            ReturnsError::Group(inner) => inner.into(),
            other => CliError::Incomplete(other.to_string()),
        }
    }
}

impl From<FGroupError> for CliError {
    fn from(e: FGroupError) -> Self {
        match e {
            FGroupError::Involution(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Search limits shared by the dynamical commands.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub connection_horizon: usize,
    pub budget: Budget,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { connection_horizon: 256, budget: Budget::default() }
    }
}

impl Limits {
    fn horizon(&self, t: &LinearInvolution) -> usize {
        self.budget.horizon.unwrap_or_else(|| default_horizon(t.k(), self.budget.max_len))
    }
}

/// Fails with a connection error if one is found within the horizon.
pub fn ensure_connection_free(t: &LinearInvolution, limits: &Limits) -> Result<()> {
    match t.detect_connection(limits.connection_horizon) {
        Some(c) => Err(CliError::Connection(format!("connection: T^{} {} = {}", c.steps, c.from, c.to))),
        None => Ok(()),
    }
}

pub fn parse_word(src: &str) -> Result<RWord> {
    src.parse().map_err(|e| CliError::Input(format!("word {src:?}: {e}")))
}

fn describe(out: &mut String, t: &LinearInvolution) {
    let lengths: Vec<String> =
        (0..t.k()).map(|i| format!("{} = {}", SignedLetter::pos(i as u8), t.lengths()[i])).collect();
    let flips: String = t.flips().iter().map(|&b| SignedLetter::pos(b).to_char()).collect();
    let _ = writeln!(out, "permutation: {}", t.perm());
    let _ = writeln!(out, "lengths: {}", lengths.join(", "));
    let _ = writeln!(out, "interval length: {}", t.interval_length());
    let _ = writeln!(out, "flips: {}", if flips.is_empty() { "none" } else { &flips });
}

pub fn info(t: &LinearInvolution, limits: &Limits) -> String {
    let (orientation, coherence) = t.classify();
    let even: Vec<String> =
        (0..t.k() as u8).map(SignedLetter::pos).filter(|&x| t.is_even_letter(x)).map(|x| x.to_string()).collect();
    let mut out = format!(
        "{}, {}, k={}, even letters: {}\n",
        match orientation {
            Orientation::Orientable => "orientable",
            Orientation::Nonorientable => "nonorientable",
        },
        match coherence {
            Coherence::Coherent => "coherent",
            Coherence::Noncoherent => "noncoherent",
        },
        t.k(),
        if even.is_empty() { "none".to_string() } else { even.join(", ") },
    );
    describe(&mut out, t);
    let _ = match t.detect_connection(limits.connection_horizon) {
        Some(c) => writeln!(out, "connection: T^{} {} = {}", c.steps, c.from, c.to),
        None => writeln!(out, "connection: none within {} steps", limits.connection_horizon),
    };
    out
}

fn word_lines<'a>(words: impl IntoIterator<Item = &'a RWord>) -> String {
    words.into_iter().map(|w| format!("{w}\n")).collect()
}

pub fn language_cmd(t: &LinearInvolution, max_len: usize, limits: &Limits) -> Result<String> {
    ensure_connection_free(t, limits)?;
    Ok(word_lines(language(t, max_len).words()))
}

pub fn returns_cmd(t: &LinearInvolution, w: &RWord, kind: ReturnKind, limits: &Limits) -> Result<String> {
    ensure_connection_free(t, limits)?;
    Ok(word_lines(&returns_of_kind(t, w, kind, &limits.budget)?.words))
}

/// `even` or `@path` to a graph file.
pub fn load_subgroup(t: &LinearInvolution, arg: &str) -> Result<SubgroupGraph> {
    let g = match arg.strip_prefix('@') {
        None if arg == "even" => even_subgroup(t),
        None => return Err(CliError::Input(format!("subgroup {arg:?}: expected \"even\" or @file"))),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{path}: {e}")))?
            .parse::<SubgroupGraph>()
            .map_err(|e| CliError::Input(format!("{path}: {e}")))?,
    };
    if g.alphabet_size() != t.k() {
        return Err(CliError::Input(format!("subgroup is over {} letters, involution over {}", g.alphabet_size(), t.k())));
    }
    if g.index() == Index::Infinite {
        return Err(FGroupError::InfiniteIndex.into());
    }
    Ok(g)
}

pub fn prime_cmd(t: &LinearInvolution, g: &SubgroupGraph, limits: &Limits) -> Result<String> {
    ensure_connection_free(t, limits)?;
    Ok(word_lines(&prime_words(t, g, &limits.budget)?.words))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Check {
    Returns,
    Group,
    Cardinality,
    InverseInterval,
}

/// A verification run: one line per case and a closing tally.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    fn record(&mut self, case: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                self.passed += 1;
                self.lines.push(format!("pass {case}"));
            }
            Err(msg) => {
                self.failed += 1;
                self.lines.push(format!("FAIL {case}: {msg}"));
            }
        }
    }

    fn skip(&mut self, case: &str, why: &str) {
        self.skipped += 1;
        self.lines.push(format!("SKIP {case}: {why}"));
    }

    /// Success requires every case to have run and passed.
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.skipped == 0
    }

    pub fn render(&self, check: &str) -> String {
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        let _ = writeln!(
            out,
            "{check}: {} passed, {} failed, {} skipped",
            self.passed, self.failed, self.skipped
        );
        out
    }
}

/// Search limits ran out before the computation closed.
fn is_budget(e: &ReturnsError) -> bool {
    matches!(
        e,
        ReturnsError::BudgetExhausted(_)
            | ReturnsError::Involution(InvolutionError::HorizonExhausted { .. })
            | ReturnsError::Group(FGroupError::Involution(InvolutionError::HorizonExhausted { .. }))
    )
}

/// Runs a per-word case, turning budget exhaustion into a skip.
fn per_word(report: &mut Report, w: &RWord, case: impl FnOnce() -> Result<Result<(), String>, ReturnsError>) -> Result<()> {
    match case() {
        Ok(outcome) => report.record(&w.to_string(), outcome),
        Err(e) if is_budget(&e) => report.skip(&w.to_string(), &e.to_string()),
        Err(ReturnsError::RouteMismatch { .. }) | Err(ReturnsError::NotInLanguage(_)) => {
            report.record(&w.to_string(), Err("computation routes disagree".into()))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn verify(t: &LinearInvolution, check: Check, max_word_len: usize, subgroup: &str, limits: &Limits) -> Result<Report> {
    ensure_connection_free(t, limits)?;
    let b = &limits.budget;
    let words: Vec<RWord> = language(t, max_word_len).words().iter().filter(|w| !w.is_empty()).cloned().collect();
    let mut report = Report::default();
    match check {
        Check::Returns => {
            let fa = free_group(t.k());
            for w in &words {
                per_word(&mut report, w, || {
                    let mr = mixed_returns(t, w, b)?;
                    Ok(match is_symmetric_basis(&mr.words, &fa) {
                        BasisVerdict::Yes => Ok(()),
                        v => Err(format!("mixed returns: {v}")),
                    })
                })?;
            }
        }
        Check::Cardinality => {
            for w in &words {
                per_word(&mut report, w, || {
                    let n = complete_returns(t, w, b)?.len();
                    Ok(if n == 2 * t.k() { Ok(()) } else { Err(format!("{n} complete returns, expected {}", 2 * t.k())) })
                })?;
            }
        }
        Check::InverseInterval => {
            for w in &words {
                let end = Cylinder::of_word(t, w).ok_or_else(|| CliError::Incomplete(format!("{w} has no cylinder")))?;
                let image = t.sigma1_interval(end.end())?;
                let target = t.interval_of_word(&w.inverse());
                let outcome = match target {
                    Some(iv) if iv.same_span(&image) => Ok(()),
                    Some(iv) => Err(format!("({}, {}) vs ({}, {})", image.lo, image.hi, iv.lo, iv.hi)),
                    None => Err("inverse word has empty interval".into()),
                };
                report.record(&w.to_string(), outcome);
            }
        }
        Check::Group => {
            let g = load_subgroup(t, subgroup)?;
            let Index::Finite(d) = g.index() else { unreachable!("load_subgroup rejects infinite index") };
            let case = format!("subgroup of index {d}");
            match prime_words(t, &g, b) {
                Ok(p) => {
                    let want = 2 * d * (t.k() - 1) + 2;
                    report.record(
                        &format!("{case}, cardinality"),
                        if p.len() == want { Ok(()) } else { Err(format!("{} prime words, expected {want}", p.len())) },
                    );
                    report.record(
                        &format!("{case}, basis"),
                        match is_symmetric_basis(&p.words, &g) {
                            BasisVerdict::Yes => Ok(()),
                            v => Err(format!("prime words: {v}")),
                        },
                    );
                }
                Err(e) if is_budget(&e) => report.skip(&case, &e.to_string()),
                Err(ReturnsError::RouteMismatch { .. }) => report.record(&case, Err("computation routes disagree".into())),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(report)
}

pub fn rauzy_cmd(t: &LinearInvolution, steps: usize, limits: &Limits) -> Result<String> {
    ensure_connection_free(t, limits)?;
    let mut out = String::new();
    let mut cur = t.clone();
    let mut total = Substitution::identity(t.k());
    for i in 1..=steps {
        let (next, tau) = rauzy_step(&cur, limits.horizon(&cur))?;
        total = total.compose(&tau);
        let _ = writeln!(out, "step {i}");
        describe(&mut out, &next);
        let _ = writeln!(out, "substitution: {tau}");
        cur = next;
    }
    let _ = writeln!(out, "composed: {total}");
    Ok(out)
}

pub fn induce_cmd(t: &LinearInvolution, w: &RWord, limits: &Limits) -> Result<String> {
    ensure_connection_free(t, limits)?;
    let induced = induce(t, &InduceWindow::Word(w.clone()), limits.horizon(t))?;
    let j = &induced.involution;
    let mut out = format!("window: ({}, {})\n", induced.offset, &induced.offset + j.interval_length());
    describe(&mut out, j);
    let _ = writeln!(out, "letters: {}", induced.letter_map);
    Ok(out)
}
