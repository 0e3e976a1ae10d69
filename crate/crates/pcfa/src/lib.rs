//! Deterministic systems of communicating finite automata, with the
//! machinery to measure how much they communicate.
//!
//! Several read-only automata scan one shared input in lockstep. A
//! component can spend a step querying another by entering a query state;
//! the answering component's whole state is handed over in that step.
//! Counting those query steps gives a resource, communication, that can
//! be held against the input length. The interesting systems are the ones
//! in [`gallery`]: languages whose members need only logarithmically or
//! square-root many queries, plus membership oracles and an exhaustive
//! crosscheck to keep the constructions honest.
//!
//! The crate also contains a one-way cellular automaton toolkit ([`oca`])
//! and an encoding of their accepting runs as self-delimiting strings
//! ([`valc`]), the raw material for languages that separate communication
//! budgets.
//!
//! Quick taste:
//!
//! ```
//! use pcfa::engine::{decide, Verdict};
//! use pcfa::gallery::systems::build_expo;
//! use pcfa::word::Word;
//!
//! let sys = build_expo();
//! let run = decide(&sys, &Word::parse("$abaabaaaa&")).unwrap();
//! assert_eq!(run.verdict, Verdict::Accept);
//! // Three queries for a word of length 11; members only ever need
//! // one query more than their block count.
//! assert_eq!(run.comm_count, 3);
//! ```

pub mod bounds;
pub mod engine;
pub mod format;
pub mod gallery;
pub mod guide;
pub mod oca;
pub mod system;
pub mod valc;
pub mod word;

pub use engine::{
    decide, decide_with_ceiling, run, CommEvent, Configuration, EngineError, HaltReason,
    RunResult, StepOutcome, Verdict, DEFAULT_STEP_CEILING,
};
pub use system::{
    validate_system, ComponentDef, Label, Mode, SystemDef, ValidateError, ValidatedSystem,
};
pub use word::Word;
