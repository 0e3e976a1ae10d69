//! Independent membership oracles for the witness languages.
//!
//! These are plain string predicates: they scan token sequences and never
//! touch the step engine, so they can serve as the reference side of a
//! crosscheck. Keep them that way.

use crate::oca::Oca;
use crate::valc::{validated_input, ValcString};
use crate::word::Word;

/// Splits `tokens` into maximal runs of `unit` separated by single `sep`
/// tokens and returns the run lengths. `None` if any token is foreign,
/// any run is empty, or the sequence is empty.
fn block_lengths(tokens: &[String], unit: &str, sep: &str) -> Option<Vec<usize>> {
    let mut lengths = vec![0usize];
    for t in tokens {
        if t == unit {
            *lengths.last_mut().unwrap() += 1;
        } else if t == sep {
            if *lengths.last().unwrap() == 0 {
                return None;
            }
            lengths.push(0);
        } else {
            return None;
        }
    }
    if *lengths.last().unwrap() == 0 {
        return None;
    }
    Some(lengths)
}

fn dollar_ampersand_inner(word: &Word) -> Option<&[String]> {
    let t = word.symbols();
    if t.len() < 2 || t[0] != "$" || t[t.len() - 1] != "&" {
        return None;
    }
    Some(&t[1..t.len() - 1])
}

/// `$ a b aa b aaaa ... a^(2^m) &` with m >= 1: block i has length 2^i.
pub fn is_expo(word: &Word) -> bool {
    let inner = match dollar_ampersand_inner(word) {
        Some(i) => i,
        None => return false,
    };
    match block_lengths(inner, "a", "b") {
        Some(ls) => {
            ls.len() >= 2
                && ls
                    .iter()
                    .enumerate()
                    .all(|(i, &l)| i < 64 && l as u128 == 1u128 << i)
        }
        None => false,
    }
}

/// `$ a b aaa b aaaaa ... a^(2m+1) & ` with m >= 0: block i has length
/// 2i + 1.
pub fn is_poly(word: &Word) -> bool {
    let inner = match dollar_ampersand_inner(word) {
        Some(i) => i,
        None => return false,
    };
    match block_lengths(inner, "a", "b") {
        Some(ls) => !ls.is_empty() && ls.iter().enumerate().all(|(i, &l)| l == 2 * i + 1),
        None => false,
    }
}

/// `w b w` for nonempty `w` over {0, 1}.
pub fn is_wbw(word: &Word) -> bool {
    let t = word.symbols();
    let n = t.len();
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let m = n / 2;
    let bit = |s: &String| s == "0" || s == "1";
    t[m] == "b" && t[..m].iter().all(bit) && t[..m] == t[m + 1..]
}

/// Common shape of the two prefix-replay languages:
/// `$ w_1..w_m b ( a^gap(j) w_j w_j )_{j=1..m} &` with m >= 1 and the
/// j-th gap given by `gap` (0-indexed).
fn is_doubled_pair_replay(word: &Word, gap: impl Fn(usize) -> Option<u128>) -> bool {
    let inner = match dollar_ampersand_inner(word) {
        Some(i) => i,
        None => return false,
    };
    let bit = |s: &str| s == "0" || s == "1";
    let mut i = 0;
    while i < inner.len() && bit(&inner[i]) {
        i += 1;
    }
    let w = &inner[..i];
    let m = w.len();
    if m < 1 || i >= inner.len() || inner[i] != "b" {
        return false;
    }
    let mut pos = i + 1;
    for j in 0..m {
        let need = match gap(j) {
            Some(v) => v,
            None => return false,
        };
        let mut run: u128 = 0;
        while pos < inner.len() && inner[pos] == "a" {
            run += 1;
            pos += 1;
            if run > need {
                return false;
            }
        }
        if run != need {
            return false;
        }
        for _ in 0..2 {
            if pos >= inner.len() || inner[pos] != w[j] {
                return false;
            }
            pos += 1;
        }
    }
    pos == inner.len()
}

/// `$ w b a^(2^0) w_1 w_1 a^(2^1) w_2 w_2 ... a^(2^(m-1)) w_m w_m &` with
/// m = |w| >= 1 and w over {0, 1}.
pub fn is_expo_wbw(word: &Word) -> bool {
    is_doubled_pair_replay(word, |j| 1u128.checked_shl(j as u32))
}

/// `$ w b a^1 w_1 w_1 a^3 w_2 w_2 ... a^(2m-1) w_m w_m &` with
/// m = |w| >= 1 and w over {0, 1}.
pub fn is_poly_wbw(word: &Word) -> bool {
    is_doubled_pair_replay(word, |j| Some(2 * j as u128 + 1))
}

/// Consumes `a^(2^0) b b a^(2^1) b b ... a^(2^(m-1)) b b` and returns m.
/// `None` unless the token slice is exactly that shape with m >= 1.
fn doubling_bb_blocks(tokens: &[String]) -> Option<usize> {
    let mut pos = 0;
    let mut m = 0usize;
    while pos < tokens.len() {
        let need = 1u128.checked_shl(m as u32)?;
        let mut run: u128 = 0;
        while pos < tokens.len() && tokens[pos] == "a" {
            run += 1;
            pos += 1;
            if run > need {
                return None;
            }
        }
        if run != need {
            return None;
        }
        for _ in 0..2 {
            if pos >= tokens.len() || tokens[pos] != "b" {
                return None;
            }
            pos += 1;
        }
        m += 1;
    }
    if m >= 1 {
        Some(m)
    } else {
        None
    }
}

/// `$1 x $2 a^(2^0) bb a^(2^1) bb ... a^(2^(l-1)) bb &` where x is a
/// flattened accepting run of `oca` written as pair tokens and l = |x|.
pub fn is_valc_prime(oca: &Oca, word: &Word) -> bool {
    let t = word.symbols();
    if t.len() < 2 || t[0] != "$1" || t[t.len() - 1] != "&" {
        return false;
    }
    let inner = &t[1..t.len() - 1];
    let sep = match inner.iter().position(|s| s == "$2") {
        Some(p) => p,
        None => return false,
    };
    let x_tokens = &inner[..sep];
    let blocks = match doubling_bb_blocks(&inner[sep + 1..]) {
        Some(b) => b,
        None => return false,
    };
    if blocks != x_tokens.len() {
        return false;
    }
    let x = match ValcString::parse(&x_tokens.join(" ")) {
        Ok(x) => x,
        Err(_) => return false,
    };
    validated_input(oca, &x).is_some()
}

/// `$1 x $2 u $3 u $4 a^(2^0) bb ... a^(2^(m-1)) bb &` where x is a
/// flattened accepting run of `oca` on `a^m`, and u is any block of
/// |x| payload symbols whose first m are primed bits (`0'`/`1'`) and
/// whose remainder are plain bits, repeated identically.
pub fn is_lr(oca: &Oca, word: &Word) -> bool {
    let t = word.symbols();
    if t.len() < 2 || t[0] != "$1" || t[t.len() - 1] != "&" {
        return false;
    }
    let inner = &t[1..t.len() - 1];
    let find = |from: usize, marker: &str| {
        inner[from..]
            .iter()
            .position(|s| s == marker)
            .map(|p| from + p)
    };
    let p2 = match find(0, "$2") {
        Some(p) => p,
        None => return false,
    };
    let p3 = match find(p2 + 1, "$3") {
        Some(p) => p,
        None => return false,
    };
    let p4 = match find(p3 + 1, "$4") {
        Some(p) => p,
        None => return false,
    };
    let x_tokens = &inner[..p2];
    let u1 = &inner[p2 + 1..p3];
    let u2 = &inner[p3 + 1..p4];
    let m = match doubling_bb_blocks(&inner[p4 + 1..]) {
        Some(m) => m,
        None => return false,
    };
    let l = x_tokens.len();
    if u1.len() != l || u1 != u2 || l < m {
        return false;
    }
    for (i, s) in u1.iter().enumerate() {
        let ok = if i < m {
            s == "0'" || s == "1'"
        } else {
            s == "0" || s == "1"
        };
        if !ok {
            return false;
        }
    }
    let x = match ValcString::parse(&x_tokens.join(" ")) {
        Ok(x) => x,
        Err(_) => return false,
    };
    match validated_input(oca, &x) {
        Some(input) => {
            input.len() == m && input.symbols().iter().all(|s| s == "a")
        }
        None => false,
    }
}
