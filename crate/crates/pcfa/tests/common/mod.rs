//! Shared helpers for the integration suites.

#![allow(dead_code)]

use pcfa::oca::{Oca, OcaDef};
use pcfa::word::Word;
use rand::rngs::StdRng;
use rand::Rng;
use std::collections::BTreeMap;

/// Random bit string of length m.
pub fn random_bits(rng: &mut StdRng, m: usize) -> String {
    (0..m)
        .map(|_| if rng.gen_bool(0.5) { '1' } else { '0' })
        .collect()
}

/// A random layered automaton together with the input it accepts.
///
/// The construction guarantees an exact first acceptance: the input row is
/// a word over {c, d} whose adjacent pairs are all distinct (so the
/// transition keys never collide), and every later row holds fresh states
/// unique to its time step and cell. Only the rightmost state of the last
/// row accepts, hence the automaton accepts the input at exactly `steps`
/// and the rightmost cell is non-accepting before that.
pub struct LayeredOca {
    pub oca: Oca,
    pub input: Word,
    pub n: usize,
    pub steps: u64,
}

pub fn random_layered_oca(rng: &mut StdRng, max_n: usize, max_t: u64) -> LayeredOca {
    let n = rng.gen_range(1..=max_n);
    // Stay inside the default run horizon of 4n^2.
    let t_cap = max_t.min(4 * (n as u64) * (n as u64)).max(3);
    let steps = rng.gen_range(3..=t_cap);
    // Input over {c, d} with pairwise-distinct adjacent pairs, boundary
    // included; resample until the keys are unique (cheap for n <= 4).
    let input: Vec<String> = loop {
        let cand: Vec<String> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { "c" } else { "d" })
            .map(str::to_string)
            .collect();
        let mut keys: Vec<(String, String)> = Vec::new();
        let mut left = "#".to_string();
        for s in &cand {
            keys.push((left.clone(), s.clone()));
            left = s.clone();
        }
        keys.sort();
        keys.dedup();
        if keys.len() == n {
            break cand;
        }
    };
    let mut states: Vec<String> = vec!["c".into(), "d".into()];
    let mut transitions = BTreeMap::new();
    let mut prev: Vec<String> = input.clone();
    for t in 1..=steps {
        let row: Vec<String> = (0..n).map(|i| format!("x{t}_{i}")).collect();
        states.extend(row.iter().cloned());
        let mut left = "#".to_string();
        for i in 0..n {
            transitions.insert((left.clone(), prev[i].clone()), row[i].clone());
            left = prev[i].clone();
        }
        prev = row;
    }
    let def = OcaDef {
        states: states.into_iter().collect(),
        boundary: "#".into(),
        inputs: ["c", "d"].iter().map(|s| s.to_string()).collect(),
        accepting: [prev[n - 1].clone()].into_iter().collect(),
        transitions,
    };
    LayeredOca {
        oca: Oca::new(def).expect("layered construction is valid"),
        input: Word::from_tokens(input),
        n,
        steps,
    }
}
