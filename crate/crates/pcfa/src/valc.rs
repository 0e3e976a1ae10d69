//! Valid-computation encodings for one-way cellular automata.
//!
//! A complete accepting run of an automaton can be flattened into a single
//! string: the primed initial row, then for each time step one subrow per
//! cell, where subrow `i` carries the new states up to cell `i-1`, a
//! two-track pair `(new, old)` at cell `i`, and the old states after it.
//! Every subrow starts with the boundary marker `#`, so the string is
//! self-delimiting. Finally adjacent symbols are fused into overlapping
//! pairs `[x, y]`, which makes any single-token corruption detectable:
//! interior symbols are witnessed by two tokens that would both have to
//! change consistently.
//!
//! [`encode_valc`] produces the string for an accepted input;
//! [`is_valid_computation`] checks an arbitrary pair string by decoding it
//! and re-simulating the automaton.

use std::fmt;
use thiserror::Error;

use crate::format::ParseError;
use crate::oca::{default_horizon, CellId, Oca, OcaRunError};
use crate::word::Word;

/// One track symbol of the flattened computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellSym {
    /// Subrow delimiter, always written `#`.
    Boundary,
    /// A cell state of the current or previous row.
    Plain(String),
    /// A primed input symbol; these occur only in the initial row.
    Primed(String),
    /// Two-track symbol `(new, old)` marking the active cell of a subrow.
    Pair(String, String),
}

impl fmt::Display for CellSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellSym::Boundary => write!(f, "#"),
            CellSym::Plain(s) => write!(f, "{s}"),
            CellSym::Primed(s) => write!(f, "{s}'"),
            CellSym::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl CellSym {
    /// Parses one track symbol: `#`, `s`, `s'`, or `(s,t)`.
    pub fn parse(text: &str) -> Option<CellSym> {
        if text == "#" {
            return Some(CellSym::Boundary);
        }
        if let Some(inner) = text.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let mut parts = inner.splitn(2, ',');
            let a = parts.next()?.trim();
            let b = parts.next()?.trim();
            if a.is_empty() || b.is_empty() || b.contains(',') {
                return None;
            }
            return Some(CellSym::Pair(a.to_string(), b.to_string()));
        }
        if let Some(base) = text.strip_suffix('\'') {
            if base.is_empty() || base.contains('\'') {
                return None;
            }
            return Some(CellSym::Primed(base.to_string()));
        }
        if text.is_empty() || text.chars().any(|c| "()[],'# \t".contains(c)) {
            return None;
        }
        Some(CellSym::Plain(text.to_string()))
    }
}

/// A string of overlapping symbol pairs, the candidate input of the
/// validity check. No coherence is assumed: arbitrary pair sequences can
/// be represented, parsed, and rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValcString {
    pairs: Vec<(CellSym, CellSym)>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("the automaton does not accept this input within {max_t} steps")]
    NotAccepted { max_t: u64 },
    #[error("acceptance at t = {t} is too early to encode; at least 3 steps are required")]
    TooShort { t: u64 },
    #[error(transparent)]
    Run(#[from] OcaRunError),
}

impl ValcString {
    pub fn new(pairs: Vec<(CellSym, CellSym)>) -> ValcString {
        ValcString { pairs }
    }

    /// Fuses a symbol sequence into overlapping adjacent pairs; needs at
    /// least two symbols.
    pub fn from_symbols(symbols: &[CellSym]) -> Option<ValcString> {
        if symbols.len() < 2 {
            return None;
        }
        Some(ValcString {
            pairs: symbols.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect(),
        })
    }

    pub fn pairs(&self) -> &[(CellSym, CellSym)] {
        &self.pairs
    }

    /// Number of pair tokens.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Length of the underlying symbol sequence, if coherent.
    pub fn source_len(&self) -> Option<usize> {
        self.unpair().map(|s| s.len())
    }

    /// Undoes the pairing when adjacent tokens overlap consistently:
    /// the second coordinate of each token must equal the first coordinate
    /// of the next. Returns the flattened symbol sequence.
    pub fn unpair(&self) -> Option<Vec<CellSym>> {
        let first = match self.pairs.first() {
            Some(p) => p,
            None => return Some(Vec::new()),
        };
        let mut out = Vec::with_capacity(self.pairs.len() + 1);
        out.push(first.0.clone());
        out.push(first.1.clone());
        for w in self.pairs.windows(2) {
            if w[0].1 != w[1].0 {
                return None;
            }
            out.push(w[1].1.clone());
        }
        Some(out)
    }

    /// Parses whitespace-separated `[x,y]` tokens.
    pub fn parse(text: &str) -> Result<ValcString, ParseError> {
        let mut pairs = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            let err = |message: String| ParseError {
                line: i + 1,
                message,
            };
            let inner = tok
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| err(format!("expected '[x,y]', found '{tok}'")))?;
            // The comma separating the two symbols is the one outside any
            // parenthesized two-track symbol.
            let mut depth = 0usize;
            let mut split = None;
            for (pos, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        split = Some(pos);
                        break;
                    }
                    _ => {}
                }
            }
            let pos = split.ok_or_else(|| err(format!("missing separator in '{tok}'")))?;
            let a = CellSym::parse(&inner[..pos])
                .ok_or_else(|| err(format!("bad symbol '{}'", &inner[..pos])))?;
            let b = CellSym::parse(&inner[pos + 1..])
                .ok_or_else(|| err(format!("bad symbol '{}'", &inner[pos + 1..])))?;
            pairs.push((a, b));
        }
        Ok(ValcString { pairs })
    }
}

impl fmt::Display for ValcString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        Ok(())
    }
}

/// Number of pair tokens in the encoding of an accepting run on `n` cells
/// that halts at time `t`: the flattened string has `(n+1)(1 + n*t)`
/// symbols, one fewer pairs.
pub fn valc_length(n: u64, t: u64) -> u128 {
    let n = n as u128;
    let t = t as u128;
    n + (n + 1) * n * t
}

/// Flattens the accepting run of `oca` on `word` (up to its first
/// acceptance) into a pair string. Runs shorter than 3 steps are rejected;
/// they do not leave enough structure to be worth encoding.
pub fn encode_valc(oca: &Oca, word: &Word) -> Result<ValcString, EncodeError> {
    let max_t = default_horizon(word.len());
    let m = oca
        .accepted_at(word, max_t)?
        .ok_or(EncodeError::NotAccepted { max_t })?;
    if m < 3 {
        return Err(EncodeError::TooShort { t: m });
    }
    let trace = oca.trace(word, m)?;
    let n = word.len();
    let name = |id: CellId| oca.cell_name(id).to_string();
    let mut symbols = Vec::with_capacity((n + 1) * (1 + n * m as usize));
    symbols.push(CellSym::Boundary);
    for &c in &trace[0].cells {
        symbols.push(CellSym::Primed(name(c)));
    }
    for t in 1..=m as usize {
        let (old, new) = (&trace[t - 1].cells, &trace[t].cells);
        for i in 0..n {
            symbols.push(CellSym::Boundary);
            for j in 0..n {
                symbols.push(match j.cmp(&i) {
                    std::cmp::Ordering::Less => CellSym::Plain(name(new[j])),
                    std::cmp::Ordering::Equal => CellSym::Pair(name(new[i]), name(old[i])),
                    std::cmp::Ordering::Greater => CellSym::Plain(name(old[j])),
                });
            }
        }
    }
    Ok(ValcString::from_symbols(&symbols).expect("encoding has at least two symbols"))
}

/// Decodes a candidate pair string and, when it is the flattening of a
/// complete accepting run of `oca`, returns the input word it started
/// from. Every structural requirement is re-checked against a fresh
/// simulation: pairing coherence, the primed initial row, subrow framing,
/// the two-track diagonal, successor rows, and final acceptance after at
/// least 3 steps.
pub fn validated_input(oca: &Oca, s: &ValcString) -> Option<Word> {
    let symbols = s.unpair()?;
    if symbols.first() != Some(&CellSym::Boundary) {
        return None;
    }
    // Split into subrows at each boundary marker; the marker itself is
    // dropped, so every block is the cell payload of one subrow.
    let mut blocks: Vec<&[CellSym]> = Vec::new();
    let mut start = 1;
    for (i, sym) in symbols.iter().enumerate().skip(1) {
        if *sym == CellSym::Boundary {
            blocks.push(&symbols[start..i]);
            start = i + 1;
        }
    }
    blocks.push(&symbols[start..]);

    let initial = blocks[0];
    if initial.is_empty() {
        return None;
    }
    let mut input_names = Vec::with_capacity(initial.len());
    let mut prev: Vec<CellId> = Vec::with_capacity(initial.len());
    for sym in initial {
        match sym {
            CellSym::Primed(base) => {
                let id = oca.cell_id(base)?;
                if !oca.is_input_symbol(id) {
                    return None;
                }
                input_names.push(base.clone());
                prev.push(id);
            }
            _ => return None,
        }
    }
    let n = prev.len();

    let rest = blocks.len() - 1;
    if rest == 0 || rest % n != 0 {
        return None;
    }
    let m = rest / n;
    if m < 3 {
        return None;
    }

    for t in 0..m {
        let mut next = Vec::with_capacity(n);
        let mut left = oca.boundary_id();
        for &cell in &prev {
            next.push(oca.delta(left, cell)?);
            left = cell;
        }
        for i in 0..n {
            let block = blocks[1 + t * n + i];
            if block.len() != n {
                return None;
            }
            for j in 0..n {
                let expected = match j.cmp(&i) {
                    std::cmp::Ordering::Less => CellSym::Plain(oca.cell_name(next[j]).to_string()),
                    std::cmp::Ordering::Equal => CellSym::Pair(
                        oca.cell_name(next[i]).to_string(),
                        oca.cell_name(prev[i]).to_string(),
                    ),
                    std::cmp::Ordering::Greater => {
                        CellSym::Plain(oca.cell_name(prev[j]).to_string())
                    }
                };
                if block[j] != expected {
                    return None;
                }
            }
        }
        prev = next;
    }
    if !oca.is_accepting(prev[n - 1]) {
        return None;
    }
    Some(Word::from_tokens(input_names))
}

/// True iff the pair string is the flattening of some complete accepting
/// run of `oca`.
pub fn is_valid_computation(oca: &Oca, s: &ValcString) -> bool {
    validated_input(oca, s).is_some()
}
