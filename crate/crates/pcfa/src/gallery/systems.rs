//! Hand-built two- and three-component systems whose communication demand
//! grows much slower than their input length.
//!
//! All systems here are centralized and returning: only the first
//! component (the master) ever queries, and a queried helper restarts from
//! its initial state afterwards. The common trick is a helper that reads
//! ahead of the master; when the master reaches a checkpoint it queries
//! the helper, and the helper's current state tells the master what the
//! upcoming stretch of input looks like without spelling out any of it.
//!
//! State names are shared deliberately across components: a helper parks
//! in a state such as `s_b` or `s_amp`, and the master owns the rules
//! leaving that state, which fire after the state is delivered to it.

use crate::system::Label::{End, Lambda};
use crate::system::{
    validate_system, ComponentDef, Label, Mode, SystemDef, ValidatedSystem,
};

fn sym(s: &str) -> Label {
    Label::sym(s)
}

fn assemble(
    alphabet: &[&str],
    queries: &[&str],
    mut components: Vec<ComponentDef>,
) -> ValidatedSystem {
    // The master never queries itself, so its own query state is unused;
    // it still has to exist somewhere for the addressing to be total.
    components[0].states.insert(queries[0].to_string());
    let def = SystemDef {
        input_alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
        components,
        query_states: queries.iter().map(|s| s.to_string()).collect(),
        mode: Mode::Returning,
        centralized: true,
    };
    validate_system(def).expect("gallery table is internally consistent")
}

/// Accepts `$ a b aa b aaaa b ... a^(2^m) &` for m >= 1: consecutive
/// `a`-blocks double in length. The helper runs one block ahead at full
/// speed while the master re-reads the previous block at half speed
/// (one lambda between consecutive `a` reads), so both hit their block
/// ends simultaneously and one query per boundary settles whether the
/// helper saw exactly the doubled length. The answer state is `s_b`
/// (another block follows) or `s_amp` (the helper already consumed the
/// final block); the master then re-reads the final block itself and
/// checks the end marker directly. A helper that ran off the end parks
/// in `s_end`, which the master has no rule for: a boundary query
/// answered that way strands the run, which is exactly right, since the
/// word ended where a block should have started. The master begins in
/// its query state, so the initial tick is the first communication and
/// both automata effectively start one tick later, in step.
/// Communication on a member with m blocks: m + 1 queries for a word of
/// length 2^(m+1) + m + 1.
pub fn build_expo() -> ValidatedSystem {
    let master = ComponentDef::from_rules(
        "q2",
        &["accept"],
        [
            // The opening query hands back the helper's untouched initial
            // state; both components then read the $ together.
            ("s0_2", sym("$"), "s1_1"),
            // Two idle ticks line the master up half a block behind.
            ("s1_1", Lambda, "s2_1"),
            ("s2_1", Lambda, "s3_1"),
            // Half-speed sweep: read an a, idle one tick.
            ("s3_1", sym("a"), "s4_1"),
            ("s4_1", Lambda, "s3_1"),
            ("s3_1", sym("b"), "q2"),
            // Block verified, next block pending: resume the half-speed sweep.
            ("s_b", sym("a"), "s4_1"),
            // Helper consumed the last block: the master re-reads it at
            // full speed and must find the end marker, then the end of
            // the tape.
            ("s_amp", sym("a"), "s_amp"),
            ("s_amp", sym("&"), "s5_1"),
            ("s5_1", End, "accept"),
        ],
    );
    let helper = ComponentDef::from_rules(
        "s0_2",
        &[],
        [
            ("s0_2", sym("$"), "s1_2"),
            ("s1_2", sym("a"), "s2_2"),
            ("s2_2", sym("b"), "s3_2"),
            ("s3_2", sym("a"), "s3_2"),
            ("s3_2", sym("b"), "s_b"),
            ("s3_2", sym("&"), "s_amp"),
            // After a reset the helper is mid-word: skip the block the
            // master is about to verify and park at its far end.
            ("s0_2", sym("a"), "s3_2"),
            ("s0_2", End, "s_end"),
            ("s_end", Lambda, "s_end"),
        ],
    );
    assemble(&["$", "a", "b", "&"], &["q1", "q2"], vec![master, helper])
}

/// Accepts `$ a b aaa b aaaaa ... a^(2m+1) &` for m >= 0: consecutive
/// `a`-blocks grow by two. Same ahead-runner scheme as [`build_expo`],
/// but the master re-reads each block at full speed after a fixed
/// two-tick delay, which is exactly the +2 length difference. The master
/// again opens with a query from its initial state and closes by reading
/// the final block, the end marker and the end of the tape itself; the
/// one-block member `$ a &` is short enough that the master verifies it
/// alone, so the opening query is its only communication.
/// Communication on a member with m + 1 blocks: m + 1 queries for a word
/// of length (m+1)^2 + m + 2.
pub fn build_poly() -> ValidatedSystem {
    let master = ComponentDef::from_rules(
        "q2",
        &["accept"],
        [
            ("s0_2", sym("$"), "p1"),
            // Four idle ticks put the master one block behind the helper.
            ("p1", Lambda, "p2"),
            ("p2", Lambda, "p3"),
            ("p3", Lambda, "p4"),
            ("p4", Lambda, "p5"),
            ("p5", sym("a"), "p6"),
            ("p6", sym("b"), "q2"),
            // The word was a single block: the master has read `$ a &`
            // in full by itself, so only the tape end is left to check.
            ("p6", sym("&"), "g_fin"),
            ("g_fin", End, "accept"),
            // Another block follows: two idle ticks, then full speed.
            ("s_b", Lambda, "w1"),
            ("w1", Lambda, "w2"),
            ("w2", sym("a"), "w3"),
            ("w3", sym("a"), "w3"),
            ("w3", sym("b"), "q2"),
            // The helper consumed the final block; re-read it and finish.
            ("s_amp", sym("a"), "s_amp"),
            ("s_amp", sym("&"), "fin"),
            ("fin", End, "accept"),
        ],
    );
    let helper = ComponentDef::from_rules(
        "s0_2",
        &[],
        [
            ("s0_2", sym("$"), "s1_2"),
            ("s1_2", sym("a"), "s2_2"),
            ("s2_2", sym("b"), "s3_2"),
            ("s2_2", sym("&"), "h_amp"),
            ("h_amp", Lambda, "h_amp"),
            ("s3_2", sym("a"), "s3_2"),
            ("s3_2", sym("b"), "s_b"),
            ("s3_2", sym("&"), "s_amp"),
            ("s0_2", sym("a"), "s3_2"),
            ("s0_2", End, "s_end"),
            ("s_end", Lambda, "s_end"),
        ],
    );
    assemble(&["$", "a", "b", "&"], &["q1", "q2"], vec![master, helper])
}

/// Accepts `w b w` for nonempty `w` over {0, 1}. The helper stays one
/// symbol ahead and holds that symbol; once the master passes the center
/// `b` it queries before every symbol of the second half and checks it
/// against the held first-half symbol. Communication on a member with
/// |w| = m: m + 1 queries for a word of length 2m + 1, a constant
/// fraction, which is the high end of what any such system can need.
pub fn build_wbw() -> ValidatedSystem {
    let master = ComponentDef::from_rules(
        "m0",
        &["accept"],
        [
            ("m0", sym("0"), "m1"),
            ("m0", sym("1"), "m1"),
            ("m1", sym("0"), "m1"),
            ("m1", sym("1"), "m1"),
            ("m1", sym("b"), "q2"),
            ("h_0", sym("0"), "q2"),
            ("h_1", sym("1"), "q2"),
            ("h_b", End, "accept"),
        ],
    );
    let helper = ComponentDef::from_rules(
        "n0",
        &[],
        [
            ("n0", sym("0"), "h_0"),
            ("n0", sym("1"), "h_1"),
            ("n0", sym("b"), "h_b"),
            ("h_0", Lambda, "h_0"),
            ("h_1", Lambda, "h_1"),
            ("h_b", Lambda, "h_b"),
        ],
    );
    assemble(&["0", "1", "b"], &["q1", "q2"], vec![master, helper])
}

/// Helper shared by the two doubled-pair systems: races ahead to the next
/// `w_i w_i` pair, verifies the two symbols match, and parks in `s_ww`
/// (pair confirmed), `s_amp` (hit the end marker instead), or `s_end`.
/// After a reset, `s0_2` re-synchronizes from mid-word: an `a` puts it
/// back into block-skipping, `&`/end park it.
fn doubled_pair_scanner() -> ComponentDef {
    ComponentDef::from_rules(
        "s0_2",
        &[],
        [
            ("s0_2", sym("$"), "s1_2"),
            ("s1_2", sym("0"), "s1_2"),
            ("s1_2", sym("1"), "s1_2"),
            ("s1_2", sym("b"), "s2_2"),
            ("s2_2", sym("a"), "s3_2"),
            ("s3_2", sym("0"), "s4_0_2"),
            ("s3_2", sym("1"), "s4_1_2"),
            ("s4_0_2", sym("0"), "s5_2"),
            ("s4_1_2", sym("1"), "s5_2"),
            ("s5_2", sym("a"), "s5_2"),
            ("s5_2", sym("0"), "s6_0_2"),
            ("s5_2", sym("1"), "s6_1_2"),
            ("s6_0_2", sym("0"), "s_ww"),
            ("s6_1_2", sym("1"), "s_ww"),
            ("s0_2", sym("a"), "s5_2"),
            ("s0_2", sym("&"), "s_amp"),
            ("s_amp", Lambda, "s_amp"),
            ("s0_2", End, "s_end"),
            ("s_end", Lambda, "s_end"),
            // A single-pair word ends while this helper is still in its
            // first sweep; hand the end marker over like any block end.
            ("s5_2", sym("&"), "s_amp"),
        ],
    )
}

/// Helper shared by the doubled-pair systems: after every reset it grabs
/// the symbol under its head (or the kind of marker there) and holds it
/// in a lambda-loop until queried.
fn lookahead_holder() -> ComponentDef {
    ComponentDef::from_rules(
        "s0_3",
        &[],
        [
            ("s0_3", sym("$"), "s1_3"),
            ("s1_3", sym("0"), "s_0"),
            ("s1_3", sym("1"), "s_1"),
            ("s0_3", sym("0"), "s_0"),
            ("s0_3", sym("1"), "s_1"),
            ("s0_3", sym("b"), "s_b"),
            ("s0_3", sym("a"), "s_a"),
            ("s_0", Lambda, "s_0"),
            ("s_1", Lambda, "s_1"),
            ("s_b", Lambda, "s_b"),
            ("s_a", Lambda, "s_a"),
        ],
    )
}

/// Accepts `$ w_1..w_m b a^(2^0) w_1 w_1 a^(2^1) w_2 w_2 ... a^(2^(m-1))
/// w_m w_m &` for m >= 1 and w over {0, 1}: the prefix is replayed with
/// doubling `a`-gaps between doubled symbols. Three components: one
/// helper confirms each doubled pair, the other holds the next expected
/// prefix symbol, and the master interleaves queries to both while
/// pacing the doubling blocks at half speed. Communication on a member
/// with |w| = m: 2m + 1 queries for a word of length 2^m + 3m + 2.
pub fn build_expo_wbw() -> ValidatedSystem {
    let master = ComponentDef::from_rules(
        "s0_1",
        &["accept"],
        [
            ("s0_1", sym("$"), "s1_1"),
            ("s1_1", sym("0"), "s1_1"),
            ("s1_1", sym("1"), "s1_1"),
            ("s1_1", sym("b"), "s2_1"),
            // Three idle ticks cover the helper's head start.
            ("s2_1", Lambda, "s3_1"),
            ("s3_1", Lambda, "s4_1"),
            ("s4_1", Lambda, "s5_1"),
            // Half-speed sweep over an a-block.
            ("s5_1", sym("a"), "s6_1"),
            ("s6_1", Lambda, "s5_1"),
            // First symbol of a doubled pair: ask the holder what the
            // prefix said here.
            ("s5_1", sym("0"), "q3"),
            ("s5_1", sym("1"), "q3"),
            // Second symbol: ask the scanner whether the pair matched.
            ("s_0", sym("0"), "q2"),
            ("s_1", sym("1"), "q2"),
            ("s_ww", sym("a"), "s6_1"),
            ("s_amp", sym("&"), "q3"),
            ("s_b", End, "accept"),
        ],
    );
    assemble(
        &["$", "0", "1", "a", "b", "&"],
        &["q1", "q2", "q3"],
        vec![master, doubled_pair_scanner(), lookahead_holder()],
    )
}

/// Accepts `$ w_1..w_m b a^1 w_1 w_1 a^3 w_2 w_2 ... a^(2m-1) w_m w_m &`
/// for m >= 1 and w over {0, 1}: like [`build_expo_wbw`] but the
/// `a`-gaps grow by two, so members have quadratic length. The helpers
/// are identical; only the master's pacing differs (full speed with a
/// fixed two-tick delay per block). Communication on a member with
/// |w| = m: 2m + 1 queries for a word of length m^2 + 3m + 3.
pub fn build_poly_wbw() -> ValidatedSystem {
    let master = ComponentDef::from_rules(
        "g0",
        &["accept"],
        [
            ("g0", sym("$"), "g1"),
            ("g1", sym("0"), "g1"),
            ("g1", sym("1"), "g1"),
            ("g1", sym("b"), "g2"),
            // Five idle ticks cover the helper's head start.
            ("g2", Lambda, "g3"),
            ("g3", Lambda, "g4"),
            ("g4", Lambda, "g5"),
            ("g5", Lambda, "g6"),
            ("g6", Lambda, "g7"),
            ("g7", sym("a"), "g8"),
            ("g8", sym("0"), "q3"),
            ("g8", sym("1"), "q3"),
            ("s_0", sym("0"), "q2"),
            ("s_1", sym("1"), "q2"),
            // Pair confirmed: two idle ticks, then the next a-block at
            // full speed.
            ("s_ww", Lambda, "g9"),
            ("g9", Lambda, "g10"),
            ("g10", sym("a"), "g10"),
            ("g10", sym("0"), "q3"),
            ("g10", sym("1"), "q3"),
            ("s_amp", sym("&"), "q3"),
            ("s_b", End, "accept"),
        ],
    );
    assemble(
        &["$", "0", "1", "a", "b", "&"],
        &["q1", "q2", "q3"],
        vec![master, doubled_pair_scanner(), lookahead_holder()],
    )
}
