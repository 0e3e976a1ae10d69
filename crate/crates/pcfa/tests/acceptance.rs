//! The acceptance gate: one test per claimed property of the shipped
//! artifacts, each printing a single PASS line (run with
//! `cargo test --test acceptance -- --nocapture` to see them). Every
//! numeric claim is exact; the timing limits are generous but asserted.

mod common;

use std::time::{Duration, Instant};

use pcfa::bounds::{check_comm_bound, BoundKind};
use pcfa::engine::{decide, RunResult, Verdict};
use pcfa::gallery::crosscheck::crosscheck_default;
use pcfa::gallery::{oracle, systems, LanguageId};
use pcfa::system::ValidatedSystem;
use pcfa::valc::{encode_valc, is_valid_computation, valc_length, CellSym, ValcString};
use pcfa::word::Word;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn within(start: Instant, limit: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, over the {limit:?} budget"
    );
}

/// Decides and enforces the product-automaton cutoff argument on every
/// accepted run: acceptance must land within (prod of state counts) *
/// (|w| + 1) steps.
fn decide_bounded(sys: &ValidatedSystem, word: &Word) -> RunResult {
    let res = decide(sys, word).expect("word fits the system alphabet");
    if res.verdict == Verdict::Accept {
        let cutoff = sys
            .decision_cutoff(word.len())
            .expect("cutoff fits in u128");
        assert!(
            (res.steps as u128) <= cutoff,
            "accepting run used {} steps, over the {} cutoff",
            res.steps,
            cutoff
        );
    }
    res
}

#[test]
fn doubling_block_members_use_one_query_per_block() {
    let start = Instant::now();
    let sys = systems::build_expo();
    for m in 1..=12usize {
        let word = LanguageId::Expo.generate(m, None).unwrap();
        assert_eq!(word.len(), (1 << (m + 1)) + m + 1, "length at m = {m}");
        let res = decide_bounded(&sys, &word);
        assert_eq!(res.verdict, Verdict::Accept, "verdict at m = {m}");
        assert_eq!(res.comm_count, m + 1, "queries at m = {m}");
    }
    within(start, Duration::from_secs(5), "doubling-block sweep");
    println!("PASS: doubling-block members, m = 1..12: accepted with m+1 queries at length 2^(m+1)+m+1");
}

#[test]
fn prefix_replay_members_use_two_queries_per_pair() {
    let start = Instant::now();
    let sys = systems::build_expo_wbw();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for m in 1..=10usize {
        for _ in 0..20 {
            let payload = common::random_bits(&mut rng, m);
            let word = LanguageId::ExpoWbw.generate(m, Some(&payload)).unwrap();
            assert_eq!(word.len(), (1 << m) + 3 * m + 2, "length at m = {m}");
            let res = decide_bounded(&sys, &word);
            assert_eq!(
                res.verdict,
                Verdict::Accept,
                "verdict at m = {m}, payload {payload}"
            );
            assert_eq!(res.comm_count, 2 * m + 1, "queries at m = {m}");
        }
    }
    within(start, Duration::from_secs(10), "prefix-replay sweep");
    println!("PASS: prefix-replay members, m = 1..10 x 20 payloads: accepted with 2m+1 queries at length 2^m+3m+2");
}

#[test]
fn half_copy_members_use_one_query_per_symbol() {
    let start = Instant::now();
    let sys = systems::build_wbw();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for m in 1..=14usize {
        for _ in 0..20 {
            let payload = common::random_bits(&mut rng, m);
            let word = LanguageId::Wbw.generate(m, Some(&payload)).unwrap();
            assert_eq!(word.len(), 2 * m + 1);
            let res = decide_bounded(&sys, &word);
            assert_eq!(
                res.verdict,
                Verdict::Accept,
                "verdict at m = {m}, payload {payload}"
            );
            assert_eq!(res.comm_count, m + 1, "queries at m = {m}");
        }
    }
    within(start, Duration::from_secs(5), "half-copy sweep");
    println!("PASS: half-copy members, m = 1..14 x 20 payloads: accepted with m+1 queries");
}

#[test]
fn systems_agree_with_their_oracles_exhaustively() {
    let start = Instant::now();
    let strs = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let expo = crosscheck_default(
        &systems::build_expo(),
        &oracle::is_expo,
        &strs(&["$", "a", "b", "&"]),
        8,
    )
    .unwrap();
    assert!(
        expo.agreed(),
        "doubling-block system disagrees: {:?}",
        expo.disagreements.first()
    );

    let wbw = crosscheck_default(
        &systems::build_wbw(),
        &oracle::is_wbw,
        &strs(&["0", "1", "b"]),
        9,
    )
    .unwrap();
    assert!(
        wbw.agreed(),
        "half-copy system disagrees: {:?}",
        wbw.disagreements.first()
    );

    let replay = crosscheck_default(
        &systems::build_expo_wbw(),
        &oracle::is_expo_wbw,
        &strs(&["$", "0", "1", "a", "b", "&"]),
        7,
    )
    .unwrap();
    assert!(
        replay.agreed(),
        "prefix-replay system disagrees: {:?}",
        replay.disagreements.first()
    );

    within(start, Duration::from_secs(120), "exhaustive crosschecks");
    println!(
        "PASS: exhaustive oracle agreement: doubling-block to length 8 ({} words), half-copy to length 9 ({} words), prefix-replay to length 7 ({} words), zero disagreements",
        expo.total_words, wbw.total_words, replay.total_words
    );
}

#[test]
fn query_growth_stays_in_its_class() {
    let words = |lang: LanguageId, ms: std::ops::RangeInclusive<usize>| {
        ms.map(|m| lang.generate(m, None).unwrap()).collect::<Vec<_>>()
    };

    let expo = check_comm_bound(
        &systems::build_expo(),
        &words(LanguageId::Expo, 1..=12),
        BoundKind::Log2,
        1.0,
    )
    .unwrap();
    assert_eq!(expo.skipped, 0, "every member must be accepted");
    let expo_max = expo.max_ratio().unwrap();
    assert!(expo_max <= 2.0, "queries/log2(len) peaked at {expo_max}");

    let poly = check_comm_bound(
        &systems::build_poly(),
        &words(LanguageId::Poly, 0..=30),
        BoundKind::Sqrt,
        1.0,
    )
    .unwrap();
    assert_eq!(poly.skipped, 0);
    let poly_max = poly.max_ratio().unwrap();
    assert!(poly_max <= 2.0, "queries/sqrt(len) peaked at {poly_max}");

    let wbw_members: Vec<Word> = (1..=14)
        .map(|m| LanguageId::Wbw.generate(m, None).unwrap())
        .collect();
    let wbw = check_comm_bound(&systems::build_wbw(), &wbw_members, BoundKind::Linear, 1.0).unwrap();
    assert_eq!(wbw.skipped, 0);
    let wbw_min = wbw.min_ratio().unwrap();
    assert!(wbw_min >= 0.4, "queries/len bottomed out at {wbw_min}");

    println!(
        "PASS: growth classes: doubling-block max queries/log2(len) = {expo_max:.3} <= 2, \
         square-gap max queries/sqrt(len) = {poly_max:.3} <= 2, half-copy min queries/len = {wbw_min:.3} >= 0.4"
    );
}

#[test]
fn accepting_runs_respect_the_product_cutoff() {
    let mut accepted = 0u32;
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut sweep = |sys: &ValidatedSystem, words: Vec<Word>| {
        for word in words {
            // decide_bounded panics if an accept overruns the cutoff.
            if decide_bounded(sys, &word).verdict == Verdict::Accept {
                accepted += 1;
            }
        }
    };
    sweep(
        &systems::build_expo(),
        (1..=12).map(|m| LanguageId::Expo.generate(m, None).unwrap()).collect(),
    );
    sweep(
        &systems::build_poly(),
        (0..=30).map(|m| LanguageId::Poly.generate(m, None).unwrap()).collect(),
    );
    sweep(
        &systems::build_wbw(),
        (1..=14).map(|m| LanguageId::Wbw.generate(m, None).unwrap()).collect(),
    );
    sweep(
        &systems::build_expo_wbw(),
        (1..=10)
            .map(|m| {
                let p = common::random_bits(&mut rng, m);
                LanguageId::ExpoWbw.generate(m, Some(&p)).unwrap()
            })
            .collect(),
    );
    sweep(
        &systems::build_poly_wbw(),
        (1..=10)
            .map(|m| {
                let p = common::random_bits(&mut rng, m);
                LanguageId::PolyWbw.generate(m, Some(&p)).unwrap()
            })
            .collect(),
    );
    assert_eq!(accepted, 12 + 31 + 14 + 10 + 10, "every member accepted");
    println!("PASS: all {accepted} accepting runs landed within the product-automaton step cutoff");
}

#[test]
fn run_encodings_have_the_closed_form_length() {
    let start = Instant::now();
    let oca = pcfa::oca::Oca::new(pcfa::oca::demo::encoding_demo()).unwrap();
    let s = encode_valc(&oca, &Word::parse("cdd")).unwrap();
    assert_eq!(s.len(), 39, "demo encoding length");
    assert_eq!(s.len() as u128, valc_length(3, 3));
    let tokens: Vec<String> = s.pairs().iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    assert_eq!(
        &tokens[..5],
        &["[#,c']", "[c',d']", "[d',d']", "[d',#]", "[#,(p1,c)]"],
        "demo encoding prefix"
    );

    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for i in 0..5 {
        let layered = common::random_layered_oca(&mut rng, 4, 6);
        let s = encode_valc(&layered.oca, &layered.input)
            .unwrap_or_else(|e| panic!("sample {i} failed to encode: {e}"));
        assert_eq!(
            s.len() as u128,
            valc_length(layered.n as u64, layered.steps),
            "sample {i}: n = {}, t = {}",
            layered.n,
            layered.steps
        );
        assert!(is_valid_computation(&layered.oca, &s));
    }
    within(start, Duration::from_secs(5), "encoding length suite");
    println!("PASS: run encodings: demo string is the 39-token flattening with the documented prefix; 5 random automata match n+(n+1)*n*t");
}

#[test]
fn validator_rejects_every_single_symbol_mutation() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);

    let mut suites: Vec<(pcfa::oca::Oca, Word)> = vec![(
        pcfa::oca::Oca::new(pcfa::oca::demo::encoding_demo()).unwrap(),
        Word::parse("cdd"),
    )];
    for _ in 0..5 {
        let layered = common::random_layered_oca(&mut rng, 4, 6);
        suites.push((layered.oca, layered.input));
    }

    let mut mutations = 0u64;
    for (oca, input) in &suites {
        let s = encode_valc(oca, input).unwrap();
        assert!(is_valid_computation(oca, &s), "the untouched encoding must pass");
        let symbols = s.unpair().expect("encodings are coherent");

        // Alternative symbols: the boundary, every state plain and primed,
        // and every two-track pair over states seen in this string.
        let mut seen: Vec<String> = Vec::new();
        for sym in &symbols {
            match sym {
                CellSym::Plain(x) => seen.push(x.clone()),
                CellSym::Primed(x) => seen.push(x.clone()),
                CellSym::Pair(x, y) => {
                    seen.push(x.clone());
                    seen.push(y.clone());
                }
                CellSym::Boundary => {}
            }
        }
        seen.sort();
        seen.dedup();
        let mut alternatives = vec![CellSym::Boundary];
        for x in &seen {
            alternatives.push(CellSym::Plain(x.clone()));
            alternatives.push(CellSym::Primed(x.clone()));
        }
        for x in &seen {
            for y in &seen {
                alternatives.push(CellSym::Pair(x.clone(), y.clone()));
            }
        }

        // Coherent re-pairings: mutate one underlying symbol and re-fuse,
        // so both covering tokens change consistently.
        for j in 0..symbols.len() {
            for alt in &alternatives {
                if *alt == symbols[j] {
                    continue;
                }
                let mut mutated = symbols.clone();
                mutated[j] = alt.clone();
                let candidate = ValcString::from_symbols(&mutated).unwrap();
                assert!(
                    !is_valid_computation(oca, &candidate),
                    "symbol {j} -> {alt} slipped through"
                );
                mutations += 1;
            }
        }

        // Incoherent corruptions: overwrite one pair token with another
        // token drawn from the same string.
        let mut distinct = s.pairs().to_vec();
        distinct.sort_by_key(|p| format!("[{},{}]", p.0, p.1));
        distinct.dedup();
        for j in 0..s.len() {
            for alt in &distinct {
                if *alt == s.pairs()[j] {
                    continue;
                }
                let mut mutated = s.pairs().to_vec();
                mutated[j] = alt.clone();
                assert!(
                    !is_valid_computation(oca, &ValcString::new(mutated)),
                    "token {j} -> [{},{}] slipped through",
                    alt.0,
                    alt.1
                );
                mutations += 1;
            }
        }
    }
    within(start, Duration::from_secs(30), "mutation suite");
    println!("PASS: validator rejected all {mutations} single-symbol mutations across 6 encodings");
}
