//! One-way cellular automata.
//!
//! A row of `n` cells updates synchronously; cell 1 sees a boundary symbol
//! on its left, every other cell sees its left neighbor:
//! `c_{t+1}(1) = delta(boundary, c_t(1))` and
//! `c_{t+1}(i) = delta(c_t(i-1), c_t(i))`. Information flows one way, left
//! to right. A word over the input alphabet is accepted when the rightmost
//! cell enters an accepting state at some time `t >= 1`.
//!
//! The transition table may be partial; stepping onto an undefined pair is
//! a runtime error rather than a validation error, so tables only need to
//! cover the pairs a run actually reaches.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

use crate::format::ParseError;
use crate::word::Word;

/// Raw definition: cell states, the boundary symbol (not a state), the
/// input alphabet and accepting set (both subsets of the states), and the
/// local transition table keyed by (left neighbor, own state).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OcaDef {
    pub states: BTreeSet<String>,
    pub boundary: String,
    pub inputs: BTreeSet<String>,
    pub accepting: BTreeSet<String>,
    pub transitions: BTreeMap<(String, String), String>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid cellular automaton: {0}")]
pub struct OcaValidateError(pub String);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OcaRunError {
    #[error("transition undefined for ({left}, {cell})")]
    DeltaUndefined { left: String, cell: String },
    #[error("input symbol '{0}' is not in the input alphabet")]
    BadInput(String),
    #[error("input must have at least one cell")]
    EmptyInput,
}

/// Identifier of a cell state; the boundary gets the one-past-the-end id.
pub type CellId = usize;

/// One row of the computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OcaConfiguration {
    pub time: u64,
    pub cells: Vec<CellId>,
}

/// A validated automaton with dense lookup tables.
#[derive(Debug, Clone)]
pub struct Oca {
    def: OcaDef,
    names: Vec<String>,
    index: HashMap<String, CellId>,
    is_input: Vec<bool>,
    is_accepting: Vec<bool>,
    /// Indexed by left * |S| + cell, with left ranging over 0..=|S|
    /// (the last row is the boundary).
    delta: Vec<Option<CellId>>,
}

fn check_cell_name(kind: &str, name: &str) -> Result<(), OcaValidateError> {
    if name.is_empty() {
        return Err(OcaValidateError(format!("empty {kind} name")));
    }
    let forbidden = |c: char| c.is_whitespace() || "()[],'".contains(c);
    if name.chars().any(forbidden) {
        return Err(OcaValidateError(format!(
            "{kind} name '{name}' contains whitespace or one of ( ) [ ] , '"
        )));
    }
    // '#' is reserved for the boundary in the textual computation encoding.
    if kind == "state" && name.contains('#') {
        return Err(OcaValidateError(format!(
            "state name '{name}' contains the reserved character #"
        )));
    }
    Ok(())
}

impl Oca {
    pub fn new(def: OcaDef) -> Result<Oca, OcaValidateError> {
        if def.states.is_empty() {
            return Err(OcaValidateError("no cell states".into()));
        }
        check_cell_name("boundary", &def.boundary)?;
        if def.states.contains(&def.boundary) {
            return Err(OcaValidateError(format!(
                "boundary symbol '{}' must not be a cell state",
                def.boundary
            )));
        }
        let mut names = Vec::with_capacity(def.states.len());
        let mut index = HashMap::new();
        for s in &def.states {
            check_cell_name("state", s)?;
            index.insert(s.clone(), names.len());
            names.push(s.clone());
        }
        let n = names.len();
        let resolve = |kind: &str, s: &String| {
            index
                .get(s.as_str())
                .copied()
                .ok_or_else(|| OcaValidateError(format!("{kind} '{s}' is not a declared state")))
        };
        let mut is_input = vec![false; n];
        for s in &def.inputs {
            is_input[resolve("input symbol", s)?] = true;
        }
        let mut is_accepting = vec![false; n];
        for s in &def.accepting {
            is_accepting[resolve("accepting state", s)?] = true;
        }
        let boundary_id = n;
        let mut delta = vec![None; (n + 1) * n];
        for ((left, cell), next) in &def.transitions {
            let l = if *left == def.boundary {
                boundary_id
            } else {
                resolve("left state", left)?
            };
            let c = resolve("cell state", cell)?;
            let nx = resolve("successor state", next)?;
            delta[l * n + c] = Some(nx);
        }
        Ok(Oca {
            def,
            names,
            index,
            is_input,
            is_accepting,
            delta,
        })
    }

    pub fn def(&self) -> &OcaDef {
        &self.def
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn boundary_id(&self) -> CellId {
        self.names.len()
    }

    /// Name of a cell state or the boundary.
    pub fn cell_name(&self, id: CellId) -> &str {
        if id == self.boundary_id() {
            &self.def.boundary
        } else {
            &self.names[id]
        }
    }

    pub fn cell_id(&self, name: &str) -> Option<CellId> {
        self.index.get(name).copied()
    }

    pub fn is_accepting(&self, id: CellId) -> bool {
        id < self.names.len() && self.is_accepting[id]
    }

    pub fn is_input_symbol(&self, id: CellId) -> bool {
        id < self.names.len() && self.is_input[id]
    }

    pub fn delta(&self, left: CellId, cell: CellId) -> Option<CellId> {
        self.delta[left * self.names.len() + cell]
    }

    /// The configuration at time 0 for an input word over the input alphabet.
    pub fn initial(&self, word: &Word) -> Result<OcaConfiguration, OcaRunError> {
        if word.is_empty() {
            return Err(OcaRunError::EmptyInput);
        }
        let cells = word
            .symbols()
            .iter()
            .map(|s| {
                self.cell_id(s)
                    .filter(|&id| self.is_input[id])
                    .ok_or_else(|| OcaRunError::BadInput(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OcaConfiguration { time: 0, cells })
    }

    pub fn step(&self, cfg: &OcaConfiguration) -> Result<OcaConfiguration, OcaRunError> {
        let mut cells = Vec::with_capacity(cfg.cells.len());
        let mut left = self.boundary_id();
        for &cell in &cfg.cells {
            match self.delta(left, cell) {
                Some(next) => cells.push(next),
                None => {
                    return Err(OcaRunError::DeltaUndefined {
                        left: self.cell_name(left).to_string(),
                        cell: self.cell_name(cell).to_string(),
                    })
                }
            }
            left = cell;
        }
        Ok(OcaConfiguration {
            time: cfg.time + 1,
            cells,
        })
    }

    /// Least `t >= 1` at which the rightmost cell is accepting, or `None`
    /// if that does not happen within `max_t` steps. The time-0 row is
    /// never consulted; acceptance starts with the first step.
    pub fn accepted_at(&self, word: &Word, max_t: u64) -> Result<Option<u64>, OcaRunError> {
        let mut cfg = self.initial(word)?;
        while cfg.time < max_t {
            cfg = self.step(&cfg)?;
            if self.is_accepting(*cfg.cells.last().expect("nonempty row")) {
                return Ok(Some(cfg.time));
            }
        }
        Ok(None)
    }

    /// All configurations from time 0 through `upto_t` inclusive.
    pub fn trace(&self, word: &Word, upto_t: u64) -> Result<Vec<OcaConfiguration>, OcaRunError> {
        let mut out = vec![self.initial(word)?];
        while out.last().unwrap().time < upto_t {
            let next = self.step(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    /// Renders one row as space-separated state names.
    pub fn render_row(&self, cfg: &OcaConfiguration) -> String {
        cfg.cells
            .iter()
            .map(|&c| self.cell_name(c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Step budget used when no explicit horizon is given: generous for every
/// desk-scale experiment here.
pub fn default_horizon(n: usize) -> u64 {
    4 * (n as u64) * (n as u64)
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TimeComputeError {
    #[error("no acceptance within {max_t} steps")]
    NotComputed { max_t: u64 },
    #[error("input alphabet has no symbol 'a' to build unary inputs from")]
    NoUnarySymbol,
    #[error(transparent)]
    Run(#[from] OcaRunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeComputation {
    /// First time step at which the rightmost cell accepts on input a^n.
    pub value: u64,
    /// True iff the rightmost cell was non-accepting at every earlier step
    /// from 1 on; re-verified against the trace rather than assumed.
    pub strict: bool,
}

/// Measures the acceptance time of the unary input a^n.
pub fn time_compute(oca: &Oca, n: usize, max_t: u64) -> Result<TimeComputation, TimeComputeError> {
    if oca.cell_id("a").map_or(true, |id| !oca.is_input_symbol(id)) {
        return Err(TimeComputeError::NoUnarySymbol);
    }
    if n == 0 {
        return Err(TimeComputeError::Run(OcaRunError::EmptyInput));
    }
    let word = Word::from_tokens(vec!["a".to_string(); n]);
    let value = oca
        .accepted_at(&word, max_t)?
        .ok_or(TimeComputeError::NotComputed { max_t })?;
    let trace = oca.trace(&word, value)?;
    let strict = trace
        .iter()
        .filter(|cfg| cfg.time >= 1 && cfg.time < value)
        .all(|cfg| !oca.is_accepting(*cfg.cells.last().unwrap()));
    Ok(TimeComputation { value, strict })
}

/// Parses the line-oriented automaton format:
///
/// ```text
/// oca
/// states: a g x
/// boundary: #
/// inputs: a
/// accepting: g
/// # , a -> g
/// a , a -> a
/// g , a -> g
/// ```
///
/// There is no comment syntax; the boundary symbol is conventionally `#`.
pub fn parse_oca(text: &str) -> Result<OcaDef, ParseError> {
    let err = |line: usize, message: String| ParseError { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty input, expected 'oca' header".into()))?;
    if header != "oca" {
        return Err(err(hline, format!("expected 'oca' header, found '{header}'")));
    }
    let mut field = |name: &str| -> Result<(usize, Vec<String>), ParseError> {
        let (line_no, body) = lines
            .next()
            .ok_or_else(|| err(hline, format!("missing '{name}:' line")))?;
        let rest = body
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| err(line_no, format!("expected '{name}:' line, found '{body}'")))?;
        Ok((line_no, rest.split_whitespace().map(str::to_string).collect()))
    };
    let (_, states) = field("states")?;
    let (bline, boundary) = field("boundary")?;
    if boundary.len() != 1 {
        return Err(err(bline, "expected exactly one boundary symbol".into()));
    }
    let (_, inputs) = field("inputs")?;
    let (_, accepting) = field("accepting")?;

    let mut transitions = BTreeMap::new();
    for (line_no, body) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 5 || tokens[1] != "," || tokens[3] != "->" {
            return Err(err(
                line_no,
                "expected transition '<left> , <self> -> <next>'".into(),
            ));
        }
        let key = (tokens[0].to_string(), tokens[2].to_string());
        if transitions.insert(key, tokens[4].to_string()).is_some() {
            return Err(err(
                line_no,
                format!("duplicate transition for ({}, {})", tokens[0], tokens[2]),
            ));
        }
    }
    Ok(OcaDef {
        states: states.into_iter().collect(),
        boundary: boundary.into_iter().next().unwrap(),
        inputs: inputs.into_iter().collect(),
        accepting: accepting.into_iter().collect(),
        transitions,
    })
}

/// Serializes a definition in the format [`parse_oca`] reads.
pub fn print_oca(def: &OcaDef) -> String {
    use std::fmt::Write as _;
    let join = |set: &BTreeSet<String>| set.iter().cloned().collect::<Vec<_>>().join(" ");
    let mut out = String::from("oca\n");
    let _ = writeln!(out, "states: {}", join(&def.states));
    let _ = writeln!(out, "boundary: {}", def.boundary);
    let _ = writeln!(out, "inputs: {}", join(&def.inputs));
    let _ = writeln!(out, "accepting: {}", join(&def.accepting));
    for ((left, cell), next) in &def.transitions {
        let _ = writeln!(out, "{left} , {cell} -> {next}");
    }
    out
}

/// Ready-made automata used in tests, documentation, and the demo commands.
pub mod demo {
    use super::OcaDef;
    use std::collections::BTreeMap;

    /// A three-state automaton over inputs {c, d} whose run on "cdd" walks
    /// through three fully distinct rows and accepts exactly at t = 3:
    ///
    /// ```text
    /// t=0   c  d  d
    /// t=1   p1 r1 s1
    /// t=2   p2 r2 s2
    /// t=3   p3 r3 s3   (s3 accepting)
    /// ```
    ///
    /// Every pair not on that trajectory maps to the dead state `z`, so the
    /// table is total. The run makes a compact worked example for the
    /// computation encoding: every cell state is distinct, which keeps the
    /// encoded string readable.
    pub fn encoding_demo() -> OcaDef {
        let states: Vec<&str> = vec![
            "c", "d", "p1", "r1", "s1", "p2", "r2", "s2", "p3", "r3", "s3", "z",
        ];
        let chain = [
            ("#", "c", "p1"),
            ("c", "d", "r1"),
            ("d", "d", "s1"),
            ("#", "p1", "p2"),
            ("p1", "r1", "r2"),
            ("r1", "s1", "s2"),
            ("#", "p2", "p3"),
            ("p2", "r2", "r3"),
            ("r2", "s2", "s3"),
        ];
        let mut transitions = BTreeMap::new();
        for left in states.iter().copied().chain(["#"]) {
            for cell in states.iter().copied() {
                transitions.insert((left.to_string(), cell.to_string()), "z".to_string());
            }
        }
        for (left, cell, next) in chain {
            transitions.insert((left.to_string(), cell.to_string()), next.to_string());
        }
        OcaDef {
            states: states.iter().map(|s| s.to_string()).collect(),
            boundary: "#".into(),
            inputs: ["c", "d"].iter().map(|s| s.to_string()).collect(),
            accepting: ["s3"].iter().map(|s| s.to_string()).collect(),
            transitions,
        }
    }

    /// A signal automaton computing f(n) = n: on input a^n a marker `g`
    /// enters at the left edge and moves right one cell per step, leaving
    /// dead cells `x` behind, so the rightmost cell accepts exactly at
    /// t = n and never again.
    pub fn linear_clock() -> OcaDef {
        let states = ["a", "g", "x"];
        let mut transitions = BTreeMap::new();
        for left in states.iter().copied().chain(["#"]) {
            for cell in states.iter().copied() {
                transitions.insert((left.to_string(), cell.to_string()), "x".to_string());
            }
        }
        transitions.insert(("#".into(), "a".into()), "g".into());
        transitions.insert(("a".into(), "a".into()), "a".into());
        transitions.insert(("g".into(), "a".into()), "g".into());
        OcaDef {
            states: states.iter().map(|s| s.to_string()).collect(),
            boundary: "#".into(),
            inputs: ["a"].iter().map(|s| s.to_string()).collect(),
            accepting: ["g"].iter().map(|s| s.to_string()).collect(),
            transitions,
        }
    }
}
