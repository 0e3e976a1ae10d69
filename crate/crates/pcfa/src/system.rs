//! System definitions and validation.
//!
//! A system couples `k` deterministic finite automata that scan the same
//! input tape independently. Designated query states let one component
//! request the current state of another; see [`crate::engine`] for the step
//! semantics. Definitions are plain data ([`SystemDef`]); running anything
//! first requires [`validate_system`], which checks the well-formedness rules
//! and compiles lookup tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

use crate::word::Word;

/// Reserved label token for the endmarker in transition tables and files.
pub const ENDMARKER: &str = "END";
/// Reserved label token for moves that do not consume input.
pub const LAMBDA: &str = "LAMBDA";

/// What happens to a sender after it answers a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// The sender is reset to its initial state.
    Returning,
    /// The sender keeps its current state.
    NonReturning,
}

/// A transition label. Ordering puts symbol moves first, which fixes the
/// printing order of transition tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Sym(String),
    Lambda,
    End,
}

impl Label {
    pub fn sym(s: &str) -> Label {
        Label::Sym(s.to_string())
    }
}

/// One component automaton. `states` must contain every state the component
/// can ever hold, including states of other components it may receive
/// through queries and wants to act from afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDef {
    pub states: BTreeSet<String>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
    pub transitions: BTreeMap<(String, Label), String>,
}

impl ComponentDef {
    /// Builds a component from a rule list, collecting the state set from
    /// everything mentioned.
    pub fn from_rules<'a, I>(initial: &str, accepting: &[&str], rules: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, Label, &'a str)>,
    {
        let mut states: BTreeSet<String> = BTreeSet::new();
        states.insert(initial.to_string());
        for a in accepting {
            states.insert(a.to_string());
        }
        let mut transitions = BTreeMap::new();
        for (src, label, dst) in rules {
            states.insert(src.to_string());
            states.insert(dst.to_string());
            transitions.insert((src.to_string(), label), dst.to_string());
        }
        ComponentDef {
            states,
            initial: initial.to_string(),
            accepting: accepting.iter().map(|s| s.to_string()).collect(),
            transitions,
        }
    }
}

/// A complete system definition: shared input alphabet, component automata,
/// and the ordered query states (`query_states[i]` requests component `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDef {
    pub input_alphabet: Vec<String>,
    pub components: Vec<ComponentDef>,
    pub query_states: Vec<String>,
    pub mode: Mode,
    pub centralized: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("component {comp}: state '{state}' has a lambda move next to symbol moves")]
    LambdaConflict { comp: usize, state: String },
    #[error("component {comp}: transition defined from query state '{state}'")]
    QuerySource { comp: usize, state: String },
    #[error("component {comp}: query state '{state}' reachable by a non-master component of a centralized system")]
    NoncentralQuery { comp: usize, state: String },
    #[error("{0}")]
    BadReference(String),
}

fn bad(msg: impl Into<String>) -> ValidateError {
    ValidateError::BadReference(msg.into())
}

/// Identifier of a state in the system-wide name space.
pub type StateId = usize;
/// Identifier of an input symbol.
pub type SymId = usize;

/// Label index layout: `0..num_symbols` are symbols, then lambda, then the
/// endmarker.
pub(crate) type LabelId = usize;

#[derive(Debug)]
pub(crate) struct CompiledComponent {
    /// Dense table over (global state, label).
    pub delta: Vec<Option<StateId>>,
    pub initial: StateId,
    pub accepting: Vec<bool>,
}

/// A validated, compiled system ready for execution.
#[derive(Debug)]
pub struct ValidatedSystem {
    def: SystemDef,
    state_names: Vec<String>,
    state_index: HashMap<String, StateId>,
    sym_index: HashMap<String, SymId>,
    pub(crate) components: Vec<CompiledComponent>,
    /// Query state ids in component order.
    pub(crate) query_ids: Vec<StateId>,
    pub(crate) is_query: Vec<bool>,
    state_counts: Vec<usize>,
}

impl ValidatedSystem {
    pub fn def(&self) -> &SystemDef {
        &self.def
    }

    /// Number of components.
    pub fn degree(&self) -> usize {
        self.def.components.len()
    }

    pub fn mode(&self) -> Mode {
        self.def.mode
    }

    pub fn centralized(&self) -> bool {
        self.def.centralized
    }

    pub fn num_symbols(&self) -> usize {
        self.def.input_alphabet.len()
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.state_names[id]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn symbol_name(&self, id: SymId) -> &str {
        &self.def.input_alphabet[id]
    }

    /// True if `id` is one of the query states.
    pub fn is_query_state(&self, id: StateId) -> bool {
        self.is_query[id]
    }

    /// Size of component `comp`'s declared state set.
    pub fn state_count(&self, comp: usize) -> usize {
        self.state_counts[comp]
    }

    /// Product of all component state set sizes, the per-word factor of the
    /// decision cutoff. `None` on overflow.
    pub fn state_product(&self) -> Option<u128> {
        let mut p: u128 = 1;
        for &c in &self.state_counts {
            p = p.checked_mul(c as u128)?;
        }
        Some(p)
    }

    /// Steps after which an accepted word must already have been accepted:
    /// the product of the state set sizes times `word_len + 1`. A run that
    /// reaches this clock without halting can be rejected soundly.
    pub fn decision_cutoff(&self, word_len: usize) -> Option<u128> {
        self.state_product()?.checked_mul(word_len as u128 + 1)
    }

    /// Encodes a word into symbol ids, rejecting foreign symbols.
    pub fn encode_word(&self, word: &Word) -> Result<Vec<SymId>, String> {
        word.symbols()
            .iter()
            .map(|s| {
                self.sym_index
                    .get(s.as_str())
                    .copied()
                    .ok_or_else(|| s.clone())
            })
            .collect()
    }

    pub(crate) fn lambda_label(&self) -> LabelId {
        self.num_symbols()
    }

    pub(crate) fn end_label(&self) -> LabelId {
        self.num_symbols() + 1
    }

    pub(crate) fn num_labels(&self) -> usize {
        self.num_symbols() + 2
    }

    pub(crate) fn delta(&self, comp: usize, state: StateId, label: LabelId) -> Option<StateId> {
        self.components[comp].delta[state * self.num_labels() + label]
    }

    /// Component index a query state requests, if the state is one.
    pub fn query_target(&self, state: StateId) -> Option<usize> {
        self.query_ids.iter().position(|&q| q == state)
    }
}

fn check_name(kind: &str, name: &str) -> Result<(), ValidateError> {
    if name.is_empty() {
        return Err(bad(format!("empty {kind} name")));
    }
    if name == ENDMARKER || name == LAMBDA {
        return Err(bad(format!("{kind} name '{name}' is reserved")));
    }
    if name == "," || name == "->" {
        return Err(bad(format!("{kind} name '{name}' collides with file punctuation")));
    }
    if name.chars().any(char::is_whitespace) || name.contains('#') {
        return Err(bad(format!("{kind} name '{name}' contains whitespace or '#'")));
    }
    Ok(())
}

/// Checks a definition and compiles it for execution.
///
/// Well-formedness rules:
/// - alphabet symbols and state names are non-empty, unreserved tokens;
/// - exactly one query state per component, all distinct, each present in
///   some component's state set;
/// - transitions only mention declared states and alphabet symbols;
/// - a state with a lambda move has no symbol or endmarker move (the move
///   phase stays deterministic);
/// - no transition leaves a query state;
/// - in a centralized system no component other than the first can reach a
///   query state (neither by transition target nor as its initial state).
pub fn validate_system(def: SystemDef) -> Result<ValidatedSystem, ValidateError> {
    if def.components.is_empty() {
        return Err(bad("system has no components"));
    }
    let k = def.components.len();
    if def.query_states.len() != k {
        return Err(bad(format!(
            "query list has {} entries for {} components",
            def.query_states.len(),
            k
        )));
    }

    let mut sym_index = HashMap::new();
    for s in &def.input_alphabet {
        check_name("symbol", s)?;
        if sym_index.insert(s.clone(), sym_index.len()).is_some() {
            return Err(bad(format!("duplicate alphabet symbol '{s}'")));
        }
    }

    // Global state name space.
    let mut state_names: Vec<String> = Vec::new();
    let mut state_index: HashMap<String, StateId> = HashMap::new();
    let intern = |name: &str, names: &mut Vec<String>, index: &mut HashMap<String, StateId>| {
        if let Some(&id) = index.get(name) {
            id
        } else {
            let id = names.len();
            names.push(name.to_string());
            index.insert(name.to_string(), id);
            id
        }
    };
    for comp in &def.components {
        for s in &comp.states {
            check_name("state", s)?;
            if sym_index.contains_key(s.as_str()) {
                // Shared tokens would make transition lines ambiguous to read.
                return Err(bad(format!("state '{s}' is also an alphabet symbol")));
            }
            intern(s, &mut state_names, &mut state_index);
        }
    }

    let mut query_ids = Vec::with_capacity(k);
    let mut seen_queries = BTreeSet::new();
    for q in &def.query_states {
        check_name("state", q)?;
        if !seen_queries.insert(q.clone()) {
            return Err(bad(format!("duplicate query state '{q}'")));
        }
        let id = state_index
            .get(q.as_str())
            .copied()
            .ok_or_else(|| bad(format!("query state '{q}' is not in any component's state set")))?;
        query_ids.push(id);
    }
    let mut is_query = vec![false; state_names.len()];
    for &q in &query_ids {
        is_query[q] = true;
    }

    let num_labels = def.input_alphabet.len() + 2;
    let lambda_label = def.input_alphabet.len();
    let end_label = lambda_label + 1;

    let mut components = Vec::with_capacity(k);
    let mut state_counts = Vec::with_capacity(k);
    for (ci, comp) in def.components.iter().enumerate() {
        let comp_no = ci + 1;
        if !comp.states.contains(&comp.initial) {
            return Err(bad(format!(
                "component {comp_no}: initial state '{}' not in its state set",
                comp.initial
            )));
        }
        for a in &comp.accepting {
            if !comp.states.contains(a) {
                return Err(bad(format!(
                    "component {comp_no}: accepting state '{a}' not in its state set"
                )));
            }
        }
        let mut delta = vec![None; state_names.len() * num_labels];
        let mut has_lambda = vec![false; state_names.len()];
        for ((src, label), dst) in &comp.transitions {
            if !comp.states.contains(src) {
                return Err(bad(format!(
                    "component {comp_no}: transition from undeclared state '{src}'"
                )));
            }
            if !comp.states.contains(dst) {
                return Err(bad(format!(
                    "component {comp_no}: transition into undeclared state '{dst}'"
                )));
            }
            let src_id = state_index[src.as_str()];
            let dst_id = state_index[dst.as_str()];
            if is_query[src_id] {
                return Err(ValidateError::QuerySource {
                    comp: comp_no,
                    state: src.clone(),
                });
            }
            let label_id = match label {
                Label::Sym(s) => *sym_index.get(s.as_str()).ok_or_else(|| {
                    bad(format!(
                        "component {comp_no}: unknown symbol '{s}' in transition from '{src}'"
                    ))
                })?,
                Label::Lambda => lambda_label,
                Label::End => end_label,
            };
            if *label == Label::Lambda {
                has_lambda[src_id] = true;
            }
            delta[src_id * num_labels + label_id] = Some(dst_id);
        }
        // Lambda exclusivity.
        for s in &comp.states {
            let sid = state_index[s.as_str()];
            if has_lambda[sid] {
                let symbol_or_end = (0..num_labels)
                    .filter(|&l| l != lambda_label)
                    .any(|l| delta[sid * num_labels + l].is_some());
                if symbol_or_end {
                    return Err(ValidateError::LambdaConflict {
                        comp: comp_no,
                        state: s.clone(),
                    });
                }
            }
        }
        if def.centralized && ci > 0 {
            let initial_id = state_index[comp.initial.as_str()];
            if is_query[initial_id] {
                return Err(ValidateError::NoncentralQuery {
                    comp: comp_no,
                    state: comp.initial.clone(),
                });
            }
            for ((_, _), dst) in &comp.transitions {
                if is_query[state_index[dst.as_str()]] {
                    return Err(ValidateError::NoncentralQuery {
                        comp: comp_no,
                        state: dst.clone(),
                    });
                }
            }
        }
        components.push(CompiledComponent {
            delta,
            initial: state_index[comp.initial.as_str()],
            accepting: {
                let mut acc = vec![false; state_names.len()];
                for a in &comp.accepting {
                    acc[state_index[a.as_str()]] = true;
                }
                acc
            },
        });
        state_counts.push(comp.states.len());
    }

    Ok(ValidatedSystem {
        def,
        state_names,
        state_index,
        sym_index,
        components,
        query_ids,
        is_query,
        state_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(rules1: Vec<(&'static str, Label, &'static str)>) -> SystemDef {
        SystemDef {
            input_alphabet: vec!["a".into(), "b".into()],
            components: vec![
                {
                    let mut c = ComponentDef::from_rules("s0", &["s0"], rules1);
                    c.states.insert("q1".into());
                    c.states.insert("q2".into());
                    c
                },
                ComponentDef::from_rules("t0", &[], vec![("t0", Label::sym("a"), "t0")]),
            ],
            query_states: vec!["q1".into(), "q2".into()],
            mode: Mode::Returning,
            centralized: true,
        }
    }

    #[test]
    fn accepts_a_small_system() {
        let sys = validate_system(tiny(vec![("s0", Label::sym("a"), "s0")])).unwrap();
        assert_eq!(sys.degree(), 2);
        assert_eq!(sys.state_count(0), 3);
        assert_eq!(sys.state_product(), Some(3));
    }

    #[test]
    fn lambda_conflict_is_rejected() {
        let err = validate_system(tiny(vec![
            ("s0", Label::sym("a"), "s0"),
            ("s0", Label::Lambda, "s0"),
        ]))
        .unwrap_err();
        assert!(matches!(err, ValidateError::LambdaConflict { comp: 1, .. }));
    }

    #[test]
    fn query_source_is_rejected() {
        let err = validate_system(tiny(vec![("q2", Label::sym("a"), "s0")])).unwrap_err();
        assert!(matches!(err, ValidateError::QuerySource { comp: 1, .. }));
    }

    #[test]
    fn noncentral_query_target_is_rejected() {
        let mut def = tiny(vec![("s0", Label::sym("a"), "s0")]);
        def.components[1]
            .transitions
            .insert(("t0".into(), Label::sym("b")), "q1".into());
        def.components[1].states.insert("q1".into());
        let err = validate_system(def).unwrap_err();
        assert!(matches!(err, ValidateError::NoncentralQuery { comp: 2, .. }));
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let err = validate_system(tiny(vec![("s0", Label::sym("z"), "s0")])).unwrap_err();
        assert!(matches!(err, ValidateError::BadReference(_)));
    }

    #[test]
    fn duplicate_query_states_are_rejected() {
        let mut def = tiny(vec![("s0", Label::sym("a"), "s0")]);
        def.query_states = vec!["q1".into(), "q1".into()];
        assert!(validate_system(def).is_err());
    }

    #[test]
    fn cutoff_grows_with_word_length() {
        let sys = validate_system(tiny(vec![("s0", Label::sym("a"), "s0")])).unwrap();
        assert_eq!(sys.decision_cutoff(0), Some(3));
        assert_eq!(sys.decision_cutoff(5), Some(18));
    }
}
