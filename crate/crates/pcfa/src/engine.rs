//! Step semantics, runs, and communication metering.
//!
//! A configuration advances by exactly one of two step kinds, each costing
//! one clock tick:
//!
//! - **Move**: taken only when no component is in a query state. Every
//!   component applies its own transition on its current label (a lambda
//!   move when defined, otherwise the tape symbol under its head or the
//!   endmarker). If any component has no defined move, the system halts.
//! - **Communicate**: taken when at least one component is in a query state.
//!   Every request whose sender is not itself querying resolves: the
//!   requester receives the sender's current state, and in returning mode
//!   the sender snaps back to its initial state. Components not involved
//!   keep their state and position. If no request resolves, the system
//!   halts.
//!
//! Non-querying components freeze during communication steps; positions
//! never move there. That freeze is what keeps lockstep constructions
//! synchronized across communication rounds.

use thiserror::Error;

use crate::system::{LabelId, Mode, StateId, ValidatedSystem};
use crate::word::Word;

/// Hard ceiling on `decide`'s step budget unless the caller raises it.
pub const DEFAULT_STEP_CEILING: u64 = 100_000_000;

/// A snapshot of the whole system: one state and one head position per
/// component. Positions count consumed input symbols; position `|w|` means
/// the head sits on the endmarker and stays there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub clock: u64,
    pub states: Vec<StateId>,
    pub positions: Vec<usize>,
}

/// Why the system stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    /// A move step was due but some component had no defined transition.
    StuckComponent,
    /// A communication step was due but every requested sender was itself
    /// in a query state.
    CyclicQuery,
}

impl std::fmt::Display for HaltReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HaltReason::StuckComponent => "STUCK_COMPONENT",
            HaltReason::CyclicQuery => "CYCLIC_QUERY",
        })
    }
}

/// One resolved query request. `clock` is the clock of the configuration
/// the communication step departed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommEvent {
    pub clock: u64,
    pub requester: usize,
    pub sender: usize,
    pub delivered: StateId,
    pub sender_reset: bool,
}

/// Result of one step attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Move(Configuration),
    Communicate(Configuration, Vec<CommEvent>),
    Halt(HaltReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    RejectHalt,
    RejectCutoff,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "ACCEPT",
            Verdict::RejectHalt => "REJECT_HALT",
            Verdict::RejectCutoff => "REJECT_CUTOFF",
        })
    }
}

/// Outcome of a full run.
///
/// `comm_count` counts the pairs (t, i) at which component i is in a query
/// state at time t but was not at time t-1, including components that start
/// in a query state at t = 0. For centralized systems it equals
/// `comm_events.len()` plus the number of components left sitting in a
/// query state when the run stops: an entered query either resolves on the
/// next tick and emits one event, or it is still pending at a cutoff or a
/// cyclic-query halt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub verdict: Verdict,
    pub steps: u64,
    pub comm_count: usize,
    pub comm_events: Vec<CommEvent>,
    pub final_config: Configuration,
    pub halt_reason: Option<HaltReason>,
    pub trace: Option<Vec<Configuration>>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("input symbol '{0}' is not in the system's alphabet")]
    AlphabetViolation(String),
    #[error("decision bound {required} exceeds the step ceiling {ceiling}")]
    Overflow { required: u128, ceiling: u64 },
}

/// A system paired with an encoded input tape.
pub struct Execution<'a> {
    sys: &'a ValidatedSystem,
    tape: Vec<usize>,
}

impl<'a> Execution<'a> {
    pub fn new(sys: &'a ValidatedSystem, word: &Word) -> Result<Self, EngineError> {
        let tape = sys
            .encode_word(word)
            .map_err(EngineError::AlphabetViolation)?;
        Ok(Execution { sys, tape })
    }

    pub fn system(&self) -> &ValidatedSystem {
        self.sys
    }

    pub fn tape_len(&self) -> usize {
        self.tape.len()
    }

    pub fn initial(&self) -> Configuration {
        let k = self.sys.degree();
        Configuration {
            clock: 0,
            states: (0..k).map(|i| self.sys.components[i].initial).collect(),
            positions: vec![0; k],
        }
    }

    fn current_label(&self, pos: usize) -> LabelId {
        if pos < self.tape.len() {
            self.tape[pos]
        } else {
            self.sys.end_label()
        }
    }

    /// Computes the successor of `cfg`, or the halt reason if none exists.
    pub fn step(&self, cfg: &Configuration) -> StepOutcome {
        let sys = self.sys;
        let k = sys.degree();
        let querying: Vec<usize> = (0..k)
            .filter(|&i| sys.is_query[cfg.states[i]])
            .collect();

        if querying.is_empty() {
            let mut states = cfg.states.clone();
            let mut positions = cfg.positions.clone();
            for i in 0..k {
                let s = cfg.states[i];
                if let Some(t) = sys.delta(i, s, sys.lambda_label()) {
                    states[i] = t;
                    continue;
                }
                let label = self.current_label(cfg.positions[i]);
                match sys.delta(i, s, label) {
                    Some(t) => {
                        states[i] = t;
                        if label != sys.end_label() {
                            positions[i] += 1;
                        }
                    }
                    None => return StepOutcome::Halt(HaltReason::StuckComponent),
                }
            }
            return StepOutcome::Move(Configuration {
                clock: cfg.clock + 1,
                states,
                positions,
            });
        }

        // Requests resolve against the pre-round configuration, so requester
        // updates and sender resets commute: a resolved sender is never a
        // querying component and vice versa.
        let mut resolved: Vec<(usize, usize)> = Vec::new();
        for &i in &querying {
            let j = sys
                .query_target(cfg.states[i])
                .expect("querying state has a target");
            if !sys.is_query[cfg.states[j]] {
                resolved.push((i, j));
            }
        }
        if resolved.is_empty() {
            return StepOutcome::Halt(HaltReason::CyclicQuery);
        }
        let returning = sys.mode() == Mode::Returning;
        let mut states = cfg.states.clone();
        let mut events = Vec::with_capacity(resolved.len());
        for &(i, j) in &resolved {
            let delivered = cfg.states[j];
            states[i] = delivered;
            events.push(CommEvent {
                clock: cfg.clock,
                requester: i,
                sender: j,
                delivered,
                sender_reset: returning,
            });
        }
        if returning {
            for &(_, j) in &resolved {
                states[j] = sys.components[j].initial;
            }
        }
        StepOutcome::Communicate(
            Configuration {
                clock: cfg.clock + 1,
                states,
                positions: cfg.positions.clone(),
            },
            events,
        )
    }

    /// True if `cfg` satisfies the acceptance predicate: some component sits
    /// in an accepting state with no defined move, neither on its current
    /// label nor on lambda. Applied whenever the system halts, including
    /// cyclic-query halts.
    pub fn accepting(&self, cfg: &Configuration) -> bool {
        let sys = self.sys;
        (0..sys.degree()).any(|i| {
            let s = cfg.states[i];
            sys.components[i].accepting[s]
                && sys.delta(i, s, sys.lambda_label()).is_none()
                && sys.delta(i, s, self.current_label(cfg.positions[i])).is_none()
        })
    }

    /// Steps from the initial configuration until the system halts or the
    /// clock reaches `max_steps`. A configuration that halts exactly at the
    /// budget still gets its verdict; the cutoff only fires when a further
    /// step would be needed.
    pub fn run(&self, max_steps: u64, keep_trace: bool) -> RunResult {
        let sys = self.sys;
        let k = sys.degree();
        let mut cfg = self.initial();
        let mut comm_count = (0..k).filter(|&i| sys.is_query[cfg.states[i]]).count();
        let mut comm_events: Vec<CommEvent> = Vec::new();
        let mut trace = if keep_trace { Some(vec![cfg.clone()]) } else { None };

        loop {
            match self.step(&cfg) {
                StepOutcome::Halt(reason) => {
                    let verdict = if self.accepting(&cfg) {
                        Verdict::Accept
                    } else {
                        Verdict::RejectHalt
                    };
                    return RunResult {
                        verdict,
                        steps: cfg.clock,
                        comm_count,
                        comm_events,
                        final_config: cfg,
                        halt_reason: Some(reason),
                        trace,
                    };
                }
                outcome => {
                    if cfg.clock >= max_steps {
                        return RunResult {
                            verdict: Verdict::RejectCutoff,
                            steps: cfg.clock,
                            comm_count,
                            comm_events,
                            final_config: cfg,
                            halt_reason: None,
                            trace,
                        };
                    }
                    let (next, mut events) = match outcome {
                        StepOutcome::Move(n) => (n, Vec::new()),
                        StepOutcome::Communicate(n, e) => (n, e),
                        StepOutcome::Halt(_) => unreachable!(),
                    };
                    for i in 0..k {
                        if sys.is_query[next.states[i]] && !sys.is_query[cfg.states[i]] {
                            comm_count += 1;
                        }
                    }
                    comm_events.append(&mut events);
                    if let Some(t) = trace.as_mut() {
                        t.push(next.clone());
                    }
                    cfg = next;
                }
            }
        }
    }
}

/// The configuration every run starts from: clock 0, all components in
/// their initial states at position 0.
pub fn initial_configuration(
    sys: &ValidatedSystem,
    word: &Word,
) -> Result<Configuration, EngineError> {
    Ok(Execution::new(sys, word)?.initial())
}

/// Runs `sys` on `word` with an explicit step budget.
pub fn run(
    sys: &ValidatedSystem,
    word: &Word,
    max_steps: u64,
    keep_trace: bool,
) -> Result<RunResult, EngineError> {
    Ok(Execution::new(sys, word)?.run(max_steps, keep_trace))
}

/// Decides membership: runs with the sound cutoff of (product of state set
/// sizes) times (word length + 1) steps. A `RejectCutoff` verdict from this
/// budget is a definite rejection, because every accepted word halts
/// within it.
pub fn decide(sys: &ValidatedSystem, word: &Word) -> Result<RunResult, EngineError> {
    decide_with_ceiling(sys, word, DEFAULT_STEP_CEILING)
}

/// Like [`decide`] but with a caller-chosen ceiling on the step budget.
/// Fails with [`EngineError::Overflow`] instead of attempting a run that
/// would exceed it.
pub fn decide_with_ceiling(
    sys: &ValidatedSystem,
    word: &Word,
    ceiling: u64,
) -> Result<RunResult, EngineError> {
    let exec = Execution::new(sys, word)?;
    let required = sys.decision_cutoff(word.len()).unwrap_or(u128::MAX);
    if required > ceiling as u128 {
        return Err(EngineError::Overflow { required, ceiling });
    }
    Ok(exec.run(required as u64, false))
}

/// Recounts query-state entries from a trace. Always equals the
/// `comm_count` of the run the trace came from.
pub fn comm_entries(sys: &ValidatedSystem, trace: &[Configuration]) -> usize {
    let mut n = 0;
    for (t, cfg) in trace.iter().enumerate() {
        for (i, &s) in cfg.states.iter().enumerate() {
            let now = sys.is_query_state(s);
            let before = t > 0 && sys.is_query_state(trace[t - 1].states[i]);
            if now && !before {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{validate_system, ComponentDef, Label, SystemDef};

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    /// Master reads one `a`, queries A_2, then must act from the delivered
    /// state; A_2 loops on `a` through two states.
    fn ping() -> SystemDef {
        let mut master = ComponentDef::from_rules(
            "m0",
            &["acc"],
            vec![
                ("m0", Label::sym("a"), "q2"),
                ("t1", Label::sym("a"), "acc"),
            ],
        );
        master.states.insert("q1".into());
        master.states.insert("q2".into());
        let helper = ComponentDef::from_rules(
            "t0",
            &[],
            vec![
                ("t0", Label::sym("a"), "t1"),
                ("t1", Label::sym("a"), "t0"),
            ],
        );
        SystemDef {
            input_alphabet: vec!["a".into()],
            components: vec![master, helper],
            query_states: vec!["q1".into(), "q2".into()],
            mode: Mode::Returning,
            centralized: true,
        }
    }

    #[test]
    fn communication_freezes_bystanders_and_resets_sender() {
        let sys = validate_system(ping()).unwrap();
        let exec = Execution::new(&sys, &w("aaa")).unwrap();
        let c0 = exec.initial();
        // Move: master m0 -> q2, helper t0 -> t1, both consume one a.
        let c1 = match exec.step(&c0) {
            StepOutcome::Move(c) => c,
            o => panic!("expected move, got {o:?}"),
        };
        assert_eq!(c1.positions, vec![1, 1]);
        assert_eq!(sys.state_name(c1.states[0]), "q2");
        // Communicate: master receives t1, helper resets to t0, positions freeze.
        let (c2, events) = match exec.step(&c1) {
            StepOutcome::Communicate(c, e) => (c, e),
            o => panic!("expected communicate, got {o:?}"),
        };
        assert_eq!(c2.positions, vec![1, 1]);
        assert_eq!(sys.state_name(c2.states[0]), "t1");
        assert_eq!(sys.state_name(c2.states[1]), "t0");
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].clock, 1);
        assert_eq!(events[0].requester, 0);
        assert_eq!(events[0].sender, 1);
        assert!(events[0].sender_reset);
    }

    #[test]
    fn run_accepts_when_a_stuck_component_is_accepting() {
        let sys = validate_system(ping()).unwrap();
        let res = run(&sys, &w("aa"), 100, true).unwrap();
        // t0 move, t1 comm, t2 move: master t1 -a-> acc, helper t0 -a-> t1.
        // At t3 the tape is exhausted; acc has no END and no lambda move.
        assert_eq!(res.verdict, Verdict::Accept);
        assert_eq!(res.steps, 3);
        assert_eq!(res.comm_count, 1);
        assert_eq!(res.comm_events.len(), 1);
        let trace = res.trace.as_ref().unwrap();
        assert_eq!(trace.len(), 4);
        assert_eq!(comm_entries(&sys, trace), res.comm_count);
    }

    #[test]
    fn rejecting_halt_when_no_acceptor_is_stuck() {
        let sys = validate_system(ping()).unwrap();
        // On "a" the comm round happens, then master (in t1) needs an `a`
        // but the tape is exhausted: stuck in a non-accepting state.
        let res = run(&sys, &w("a"), 100, false).unwrap();
        assert_eq!(res.verdict, Verdict::RejectHalt);
        assert_eq!(res.halt_reason, Some(HaltReason::StuckComponent));
    }

    #[test]
    fn self_query_halts_cyclically() {
        let mut def = ping();
        // Retarget the master's query to itself.
        def.components[0]
            .transitions
            .insert(("m0".into(), Label::sym("a")), "q1".into());
        let sys = validate_system(def).unwrap();
        let res = run(&sys, &w("aa"), 100, false).unwrap();
        assert_eq!(res.halt_reason, Some(HaltReason::CyclicQuery));
        assert_eq!(res.verdict, Verdict::RejectHalt);
        // The entry into q1 is still metered even though it never resolves.
        assert_eq!(res.comm_count, 1);
        assert_eq!(res.comm_events.len(), 0);
    }

    #[test]
    fn accepting_query_state_accepts_on_cyclic_halt() {
        let mut def = ping();
        def.components[0]
            .transitions
            .insert(("m0".into(), Label::sym("a")), "q1".into());
        def.components[0].accepting.insert("q1".into());
        let sys = validate_system(def).unwrap();
        let res = run(&sys, &w("aa"), 100, false).unwrap();
        assert_eq!(res.halt_reason, Some(HaltReason::CyclicQuery));
        assert_eq!(res.verdict, Verdict::Accept);
    }

    #[test]
    fn chained_requests_resolve_one_level_per_tick() {
        // A_1 asks A_2 while A_2 asks A_3: round one serves only A_2,
        // round two serves A_1 with A_2's delivered state.
        let mut c1 = ComponentDef::from_rules("a0", &[], vec![("a0", Label::sym("x"), "q2")]);
        c1.states.insert("q1".into());
        let mut c2 = ComponentDef::from_rules("b0", &[], vec![("b0", Label::sym("x"), "q3")]);
        c2.states.insert("q2".into());
        let mut c3 = ComponentDef::from_rules("c0", &[], vec![("c0", Label::sym("x"), "c1")]);
        c3.states.insert("q3".into());
        let def = SystemDef {
            input_alphabet: vec!["x".into()],
            components: vec![c1, c2, c3],
            query_states: vec!["q1".into(), "q2".into(), "q3".into()],
            mode: Mode::NonReturning,
            centralized: false,
        };
        let sys = validate_system(def).unwrap();
        let exec = Execution::new(&sys, &w("x")).unwrap();
        let c_move = match exec.step(&exec.initial()) {
            StepOutcome::Move(c) => c,
            o => panic!("{o:?}"),
        };
        let (c_r1, e1) = match exec.step(&c_move) {
            StepOutcome::Communicate(c, e) => (c, e),
            o => panic!("{o:?}"),
        };
        assert_eq!(e1.len(), 1);
        assert_eq!((e1[0].requester, e1[0].sender), (1, 2));
        assert!(!e1[0].sender_reset);
        assert_eq!(sys.state_name(c_r1.states[1]), "c1");
        let (c_r2, e2) = match exec.step(&c_r1) {
            StepOutcome::Communicate(c, e) => (c, e),
            o => panic!("{o:?}"),
        };
        assert_eq!(e2.len(), 1);
        assert_eq!((e2[0].requester, e2[0].sender), (0, 1));
        assert_eq!(sys.state_name(c_r2.states[0]), "c1");
    }

    #[test]
    fn decide_overflow_reports_required_budget() {
        let sys = validate_system(ping()).unwrap();
        let err = decide_with_ceiling(&sys, &w("aaaa"), 3).unwrap_err();
        match err {
            EngineError::Overflow { required, ceiling } => {
                assert_eq!(required, sys.decision_cutoff(4).unwrap());
                assert_eq!(ceiling, 3);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn lambda_loop_hits_cutoff() {
        let mut master = ComponentDef::from_rules("m0", &[], vec![("m0", Label::Lambda, "m0")]);
        master.states.insert("q1".into());
        let def = SystemDef {
            input_alphabet: vec!["a".into()],
            components: vec![master],
            query_states: vec!["q1".into()],
            mode: Mode::Returning,
            centralized: true,
        };
        let sys = validate_system(def).unwrap();
        let res = decide(&sys, &w("a")).unwrap();
        assert_eq!(res.verdict, Verdict::RejectCutoff);
        assert_eq!(res.steps as u128, sys.decision_cutoff(1).unwrap());
    }

    #[test]
    fn alphabet_violation_is_reported() {
        let sys = validate_system(ping()).unwrap();
        let err = run(&sys, &w("ab"), 10, false).unwrap_err();
        assert_eq!(err, EngineError::AlphabetViolation("b".into()));
    }
}
