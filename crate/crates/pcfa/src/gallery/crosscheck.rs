//! Exhaustive comparison of a system against a membership oracle.
//!
//! Every word over a given alphabet up to a length bound is decided by
//! the engine and judged by the oracle; any verdict mismatch is recorded.
//! Words the system cannot even read (symbols outside its input alphabet)
//! count as rejected, so a system can be checked against a language over
//! a different alphabet and the result is the sensible one: it accepts
//! nothing there.

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{decide, EngineError, Verdict};
use crate::system::ValidatedSystem;
use crate::word::Word;

/// Ceiling on the number of words a single crosscheck may enumerate.
pub const DEFAULT_WORD_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub word: Word,
    pub system_verdict: Verdict,
    pub oracle_accepts: bool,
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub alphabet: Vec<String>,
    pub max_len: usize,
    pub total_words: u64,
    pub system_accepts: u64,
    pub oracle_accepts: u64,
    pub disagreements: Vec<Disagreement>,
}

impl CrosscheckReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum CrosscheckError {
    #[error("enumerating {required} words exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The word of the given length whose base-|alphabet| digits spell `rank`.
fn word_at(alphabet: &[String], len: usize, mut rank: u64) -> Word {
    let base = alphabet.len() as u64;
    let mut tokens = vec![String::new(); len];
    for slot in tokens.iter_mut().rev() {
        *slot = alphabet[(rank % base) as usize].clone();
        rank /= base;
    }
    Word::from_tokens(tokens)
}

/// Runs the engine and the oracle over every word of length 0..=max_len
/// and reports all disagreements, in enumeration order.
pub fn crosscheck(
    sys: &ValidatedSystem,
    oracle: &(dyn Fn(&Word) -> bool + Sync),
    alphabet: &[String],
    max_len: usize,
    budget: u64,
) -> Result<CrosscheckReport, CrosscheckError> {
    let base = alphabet.len() as u128;
    let mut required: u128 = 0;
    let mut per_len = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let count = if len == 0 {
            1
        } else {
            base.checked_pow(len as u32).unwrap_or(u128::MAX)
        };
        required = required.saturating_add(count);
        per_len.push(count);
    }
    if required > budget as u128 {
        return Err(CrosscheckError::BudgetExceeded { required, budget });
    }

    let mut report = CrosscheckReport {
        alphabet: alphabet.to_vec(),
        max_len,
        total_words: required as u64,
        system_accepts: 0,
        oracle_accepts: 0,
        disagreements: Vec::new(),
    };
    for (len, &count) in per_len.iter().enumerate() {
        let outcomes: Result<Vec<(bool, bool, Option<Disagreement>)>, EngineError> = (0..count
            as u64)
            .into_par_iter()
            .map(|rank| {
                let word = word_at(alphabet, len, rank);
                let verdict = match decide(sys, &word) {
                    Ok(res) => res.verdict,
                    // A word the system cannot read is a word it rejects.
                    Err(EngineError::AlphabetViolation(_)) => Verdict::RejectHalt,
                    Err(e) => return Err(e),
                };
                let sys_accepts = verdict == Verdict::Accept;
                let ora_accepts = oracle(&word);
                let disagreement = (sys_accepts != ora_accepts).then(|| Disagreement {
                    word,
                    system_verdict: verdict,
                    oracle_accepts: ora_accepts,
                });
                Ok((sys_accepts, ora_accepts, disagreement))
            })
            .collect();
        for (sys_accepts, ora_accepts, disagreement) in outcomes? {
            report.system_accepts += sys_accepts as u64;
            report.oracle_accepts += ora_accepts as u64;
            report.disagreements.extend(disagreement);
        }
    }
    Ok(report)
}

/// [`crosscheck`] with the default word budget.
pub fn crosscheck_default(
    sys: &ValidatedSystem,
    oracle: &(dyn Fn(&Word) -> bool + Sync),
    alphabet: &[String],
    max_len: usize,
) -> Result<CrosscheckReport, CrosscheckError> {
    crosscheck(sys, oracle, alphabet, max_len, DEFAULT_WORD_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{oracle, systems};

    fn strs(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn wbw_system_matches_its_oracle_on_short_words() {
        let sys = systems::build_wbw();
        let report = crosscheck_default(&sys, &oracle::is_wbw, &strs(&["0", "1", "b"]), 7).unwrap();
        assert!(report.agreed(), "first: {:?}", report.disagreements.first());
        assert_eq!(report.total_words, (3u64.pow(8) - 1) / 2);
        // Members of length 3, 5, 7: 2 + 4 + 8.
        assert_eq!(report.oracle_accepts, 14);
        assert_eq!(report.system_accepts, 14);
    }

    #[test]
    fn a_wrong_oracle_is_caught() {
        let sys = systems::build_wbw();
        // Claims the center marker can be any symbol.
        let sloppy = |w: &Word| {
            let t = w.symbols();
            t.len() >= 3
                && t.len() % 2 == 1
                && t[..t.len() / 2] == t[t.len() / 2 + 1..]
                && t[..t.len() / 2].iter().all(|s| s == "0" || s == "1")
        };
        let report = crosscheck_default(&sys, &sloppy, &strs(&["0", "1", "b"]), 5).unwrap();
        assert!(!report.agreed());
        assert!(report
            .disagreements
            .iter()
            .all(|d| !matches!(d.system_verdict, Verdict::Accept) && d.oracle_accepts));
        // 0 0 0 and friends: w-sym-w with a non-b center.
        assert!(report
            .disagreements
            .iter()
            .any(|d| d.word.symbols() == ["0", "0", "0"]));
    }

    #[test]
    fn foreign_alphabets_reject_on_both_sides() {
        let sys = systems::build_expo();
        let report =
            crosscheck_default(&sys, &oracle::is_wbw, &strs(&["0", "1", "b"]), 4).unwrap();
        // The expo system reads none of these words; the wbw oracle
        // accepts some, so every member shows up as a disagreement.
        assert_eq!(report.system_accepts, 0);
        assert_eq!(report.oracle_accepts, 2);
        assert_eq!(report.disagreements.len(), 2);
    }

    #[test]
    fn the_budget_is_enforced() {
        let sys = systems::build_wbw();
        let err = crosscheck(&sys, &oracle::is_wbw, &strs(&["0", "1", "b"]), 20, 1000)
            .err()
            .expect("budget should trip");
        match err {
            CrosscheckError::BudgetExceeded { required, budget } => {
                assert_eq!(budget, 1000);
                assert!(required > 1000);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
