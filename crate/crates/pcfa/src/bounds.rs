//! Empirical communication-bound reports.
//!
//! The exact communication degree of an arbitrary system is not computable,
//! so this module only measures: run a batch of words, compare each
//! accepted word's communication count against a named reference function
//! of the word length, and report the ratios. Rejected words are kept in
//! the report but marked skipped; they say nothing about the bound.

use std::fmt;
use std::str::FromStr;

use crate::engine::{decide, EngineError, Verdict};
use crate::system::ValidatedSystem;
use crate::word::Word;

/// Reference growth functions for communication counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    /// f(n) = log2(n)
    Log2,
    /// f(n) = sqrt(n)
    Sqrt,
    /// f(n) = n
    Linear,
    /// f(n) = log2(n)^r
    PolyLog(u32),
    /// f(n) = c
    Constant(f64),
}

impl BoundKind {
    /// Evaluates the reference function at word length `n`.
    pub fn eval(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            BoundKind::Log2 => x.max(1.0).log2(),
            BoundKind::Sqrt => x.sqrt(),
            BoundKind::Linear => x,
            BoundKind::PolyLog(r) => x.max(1.0).log2().powi(*r as i32),
            BoundKind::Constant(c) => *c,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Log2 => write!(f, "log2"),
            BoundKind::Sqrt => write!(f, "sqrt"),
            BoundKind::Linear => write!(f, "linear"),
            BoundKind::PolyLog(r) => write!(f, "polylog({r})"),
            BoundKind::Constant(c) => write!(f, "constant({c})"),
        }
    }
}

impl FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "log2" => return Ok(BoundKind::Log2),
            "sqrt" => return Ok(BoundKind::Sqrt),
            "linear" => return Ok(BoundKind::Linear),
            _ => {}
        }
        let arg = |prefix: &str| -> Option<&str> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
        };
        if let Some(r) = arg("polylog") {
            return r
                .parse::<u32>()
                .map(BoundKind::PolyLog)
                .map_err(|e| format!("bad polylog exponent '{r}': {e}"));
        }
        if let Some(c) = arg("constant") {
            return c
                .parse::<f64>()
                .map(BoundKind::Constant)
                .map_err(|e| format!("bad constant '{c}': {e}"));
        }
        Err(format!(
            "unknown bound '{s}' (expected log2, sqrt, linear, polylog(r), constant(c))"
        ))
    }
}

/// One measured word. `allowed` is `scale * f(len)`; `ratio` is
/// `comm_count / allowed` (infinite when the allowance is zero but
/// communications happened).
#[derive(Debug, Clone)]
pub struct BoundRow {
    pub word: Word,
    pub len: usize,
    pub verdict: Verdict,
    pub steps: u64,
    pub comm_count: usize,
    pub allowed: f64,
    pub ratio: f64,
    /// True when the word was rejected and therefore excluded from the verdict.
    pub skipped: bool,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound: BoundKind,
    pub scale: f64,
    pub rows: Vec<BoundRow>,
    /// True iff every accepted word stayed within its allowance.
    pub all_within: bool,
    pub skipped: usize,
}

impl BoundReport {
    /// Largest ratio among accepted words, if any were accepted.
    pub fn max_ratio(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| !r.skipped)
            .map(|r| r.ratio)
            .fold(None, |m, r| Some(m.map_or(r, |m: f64| m.max(r))))
    }

    /// Smallest ratio among accepted words, if any were accepted.
    pub fn min_ratio(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| !r.skipped)
            .map(|r| r.ratio)
            .fold(None, |m, r| Some(m.map_or(r, |m: f64| m.min(r))))
    }
}

/// Runs every word through [`decide`] and reports communication counts
/// against `scale * bound(len)`.
pub fn check_comm_bound(
    sys: &ValidatedSystem,
    words: &[Word],
    bound: BoundKind,
    scale: f64,
) -> Result<BoundReport, EngineError> {
    let mut rows = Vec::with_capacity(words.len());
    let mut all_within = true;
    let mut skipped = 0;
    for word in words {
        let res = decide(sys, word)?;
        let len = word.len();
        let allowed = scale * bound.eval(len);
        let comm = res.comm_count;
        let ratio = if allowed == 0.0 {
            if comm == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            comm as f64 / allowed
        };
        let skip = res.verdict != Verdict::Accept;
        if skip {
            skipped += 1;
        } else if ratio > 1.0 + 1e-9 {
            all_within = false;
        }
        rows.push(BoundRow {
            word: word.clone(),
            len,
            verdict: res.verdict,
            steps: res.steps,
            comm_count: comm,
            allowed,
            ratio,
            skipped: skip,
        });
    }
    Ok(BoundReport {
        bound,
        scale,
        rows,
        all_within,
        skipped,
    })
}
