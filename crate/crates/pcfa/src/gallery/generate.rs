//! Member generators for the witness languages.
//!
//! Each language has a size parameter m; the payload-carrying languages
//! additionally take the payload explicitly or default to an alternating
//! bit pattern. Generators build members directly from the language
//! definitions and are tested against the oracles, not against the
//! systems, so the two verification routes stay independent.

use thiserror::Error;

use super::LanguageId;
use crate::oca::Oca;
use crate::valc::encode_valc;
use crate::word::Word;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{0}")]
    BadParam(String),
}

fn bad(msg: impl Into<String>) -> GenerateError {
    GenerateError::BadParam(msg.into())
}

/// Largest exponent allowed in a doubling section; 2^20 tokens is already
/// a megabyte-scale word.
const MAX_DOUBLING: usize = 20;

fn bits_payload(m: usize, payload: Option<&str>) -> Result<Vec<String>, GenerateError> {
    match payload {
        None => Ok((0..m)
            .map(|i| if i % 2 == 0 { "0".into() } else { "1".into() })
            .collect()),
        Some(p) => {
            let bits: Vec<String> = p.chars().map(|c| c.to_string()).collect();
            if bits.len() != m {
                return Err(bad(format!(
                    "payload must supply exactly {m} bits, got {}",
                    bits.len()
                )));
            }
            if let Some(c) = bits.iter().find(|b| *b != "0" && *b != "1") {
                return Err(bad(format!("payload contains '{c}', expected bits")));
            }
            Ok(bits)
        }
    }
}

fn no_payload(lang: &str, payload: Option<&str>) -> Result<(), GenerateError> {
    if payload.is_some() {
        Err(bad(format!("{lang} takes no payload")))
    } else {
        Ok(())
    }
}

fn push_run(tokens: &mut Vec<String>, sym: &str, count: usize) {
    tokens.extend(std::iter::repeat(sym.to_string()).take(count));
}

fn doubling_bb_section(tokens: &mut Vec<String>, blocks: usize) {
    for j in 0..blocks {
        push_run(tokens, "a", 1usize << j);
        push_run(tokens, "b", 2);
    }
}

fn gen_expo(m: usize) -> Result<Word, GenerateError> {
    if m < 1 {
        return Err(bad("m must be at least 1"));
    }
    if m > MAX_DOUBLING {
        return Err(bad(format!("m = {m} would be a gigantic word; max is {MAX_DOUBLING}")));
    }
    let mut tokens = vec!["$".to_string()];
    for i in 0..=m {
        if i > 0 {
            tokens.push("b".into());
        }
        push_run(&mut tokens, "a", 1usize << i);
    }
    tokens.push("&".into());
    Ok(Word::from_tokens(tokens))
}

fn gen_poly(m: usize) -> Result<Word, GenerateError> {
    let mut tokens = vec!["$".to_string()];
    for i in 0..=m {
        if i > 0 {
            tokens.push("b".into());
        }
        push_run(&mut tokens, "a", 2 * i + 1);
    }
    tokens.push("&".into());
    Ok(Word::from_tokens(tokens))
}

fn gen_wbw(m: usize, payload: Option<&str>) -> Result<Word, GenerateError> {
    if m < 1 {
        return Err(bad("m must be at least 1"));
    }
    let w = bits_payload(m, payload)?;
    let mut tokens = w.clone();
    tokens.push("b".into());
    tokens.extend(w);
    Ok(Word::from_tokens(tokens))
}

fn gen_replay(
    m: usize,
    payload: Option<&str>,
    gap: impl Fn(usize) -> usize,
) -> Result<Word, GenerateError> {
    if m < 1 {
        return Err(bad("m must be at least 1"));
    }
    let w = bits_payload(m, payload)?;
    let mut tokens = vec!["$".to_string()];
    tokens.extend(w.iter().cloned());
    tokens.push("b".into());
    for (j, bit) in w.iter().enumerate() {
        push_run(&mut tokens, "a", gap(j));
        tokens.push(bit.clone());
        tokens.push(bit.clone());
    }
    tokens.push("&".into());
    Ok(Word::from_tokens(tokens))
}

/// Encodes the accepting run of `oca` on `input` as pair tokens.
fn encoded_run(oca: &Oca, input: &Word) -> Result<Vec<String>, GenerateError> {
    let x = encode_valc(oca, input).map_err(|e| bad(e.to_string()))?;
    Ok(x.pairs()
        .iter()
        .map(|(a, b)| format!("[{a},{b}]"))
        .collect())
}

fn default_oca_input(oca: &Oca, m: usize) -> Result<Word, GenerateError> {
    let sym = if oca.cell_id("a").map_or(false, |id| oca.is_input_symbol(id)) {
        "a".to_string()
    } else {
        oca.def()
            .inputs
            .iter()
            .next()
            .cloned()
            .ok_or_else(|| bad("automaton has no input symbols"))?
    };
    Ok(Word::from_tokens(vec![sym; m]))
}

fn gen_valc_prime(oca: &Oca, m: usize, payload: Option<&str>) -> Result<Word, GenerateError> {
    if m < 1 {
        return Err(bad("m must be at least 1"));
    }
    let input = match payload {
        Some(p) => {
            let word = Word::parse(p);
            if word.len() != m {
                return Err(bad(format!(
                    "payload must be an input word of length {m}, got length {}",
                    word.len()
                )));
            }
            word
        }
        None => default_oca_input(oca, m)?,
    };
    let x = encoded_run(oca, &input)?;
    if x.len() > MAX_DOUBLING {
        return Err(bad(format!(
            "the run encoding has {} pair tokens, so the doubling section would exceed 2^{MAX_DOUBLING} symbols",
            x.len()
        )));
    }
    let mut tokens = vec!["$1".to_string()];
    let l = x.len();
    tokens.extend(x);
    tokens.push("$2".into());
    doubling_bb_section(&mut tokens, l);
    tokens.push("&".into());
    Ok(Word::from_tokens(tokens))
}

fn gen_lr(oca: &Oca, m: usize, payload: Option<&str>) -> Result<Word, GenerateError> {
    if m < 1 {
        return Err(bad("m must be at least 1"));
    }
    if m > MAX_DOUBLING {
        return Err(bad(format!("m = {m} would be a gigantic word; max is {MAX_DOUBLING}")));
    }
    if oca.cell_id("a").map_or(true, |id| !oca.is_input_symbol(id)) {
        return Err(bad("the automaton must accept unary inputs over 'a'"));
    }
    let input = Word::from_tokens(vec!["a".to_string(); m]);
    let x = encoded_run(oca, &input)?;
    let l = x.len();
    let bits = bits_payload(l, payload)?;
    let block: Vec<String> = bits
        .iter()
        .enumerate()
        .map(|(i, b)| if i < m { format!("{b}'") } else { b.clone() })
        .collect();
    let mut tokens = vec!["$1".to_string()];
    tokens.extend(x);
    tokens.push("$2".into());
    tokens.extend(block.iter().cloned());
    tokens.push("$3".into());
    tokens.extend(block);
    tokens.push("$4".into());
    doubling_bb_section(&mut tokens, m);
    tokens.push("&".into());
    Ok(Word::from_tokens(tokens))
}

/// Builds the member of `lang` with size parameter `m`.
///
/// Payload semantics: the replay languages and `wbw` accept a bit string
/// of length m (default alternating). `valc-prime` accepts an input word
/// for the automaton with m symbols (default unary). `l-r` runs the
/// automaton on `a^m` and accepts a bit string with one bit per pair
/// token of the resulting encoding. `expo` and `poly` take none.
pub fn generate_member(
    lang: &LanguageId,
    m: usize,
    payload: Option<&str>,
) -> Result<Word, GenerateError> {
    match lang {
        LanguageId::Expo => {
            no_payload("expo", payload)?;
            gen_expo(m)
        }
        LanguageId::Poly => {
            no_payload("poly", payload)?;
            gen_poly(m)
        }
        LanguageId::Wbw => gen_wbw(m, payload),
        LanguageId::ExpoWbw => {
            if m > MAX_DOUBLING {
                return Err(bad(format!(
                    "m = {m} would be a gigantic word; max is {MAX_DOUBLING}"
                )));
            }
            gen_replay(m, payload, |j| 1usize << j)
        }
        LanguageId::PolyWbw => gen_replay(m, payload, |j| 2 * j + 1),
        LanguageId::ValcPrime(oca) => gen_valc_prime(oca, m, payload),
        LanguageId::LR(oca) => gen_lr(oca, m, payload),
    }
}
