//! Line-oriented text format for system definitions.
//!
//! ```text
//! pcfa 2 mode=returning centralized=true
//! alphabet: $ a b &
//! queries: q1 q2
//!
//! component 1
//! initial s0
//! accepting acc
//! s0 , $ -> s1        # comments run to end of line
//! s1 , LAMBDA -> s2
//! s2 , END -> acc
//! ```
//!
//! Tokens are whitespace-separated, so multi-character symbol and state
//! names are fine. `LAMBDA` and `END` are reserved label names. Component
//! state sets are reconstructed from every name a block mentions; declared
//! query states that no block mentions are attached to component 1, which
//! makes printing followed by parsing the identity on definitions built by
//! this crate.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

use crate::system::{ComponentDef, Label, Mode, SystemDef, ENDMARKER, LAMBDA};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

struct PendingComponent {
    initial: Option<String>,
    accepting: Vec<String>,
    rules: Vec<(String, Label, String)>,
}

/// Parses a definition. The result is plain data; run
/// [`crate::system::validate_system`] before executing it.
pub fn parse_system(text: &str) -> Result<SystemDef, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (i + 1, body)
        })
        .filter(|(_, body)| !body.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty input, expected 'pcfa' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "pcfa" {
        return Err(err(
            hline,
            "header must be 'pcfa <k> mode=<returning|nonreturning> centralized=<true|false>'",
        ));
    }
    let k: usize = tokens[1]
        .parse()
        .map_err(|_| err(hline, format!("bad component count '{}'", tokens[1])))?;
    if k == 0 {
        return Err(err(hline, "component count must be at least 1"));
    }
    let mode = match tokens[2] {
        "mode=returning" => Mode::Returning,
        "mode=nonreturning" => Mode::NonReturning,
        t => return Err(err(hline, format!("bad mode field '{t}'"))),
    };
    let centralized = match tokens[3] {
        "centralized=true" => true,
        "centralized=false" => false,
        t => return Err(err(hline, format!("bad centralized field '{t}'"))),
    };

    let (aline, alpha) = lines
        .next()
        .ok_or_else(|| err(hline, "missing 'alphabet:' line"))?;
    let input_alphabet: Vec<String> = alpha
        .strip_prefix("alphabet:")
        .ok_or_else(|| err(aline, "expected 'alphabet:' line"))?
        .split_whitespace()
        .map(str::to_string)
        .collect();

    let (qline, queries) = lines
        .next()
        .ok_or_else(|| err(aline, "missing 'queries:' line"))?;
    let query_states: Vec<String> = queries
        .strip_prefix("queries:")
        .ok_or_else(|| err(qline, "expected 'queries:' line"))?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if query_states.len() != k {
        return Err(err(
            qline,
            format!("expected {k} query states, found {}", query_states.len()),
        ));
    }

    let mut comps: Vec<PendingComponent> = Vec::with_capacity(k);
    let mut last_line = qline;
    for (line_no, body) in lines {
        last_line = line_no;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "component" => {
                let want = comps.len() + 1;
                if tokens.len() != 2 || tokens[1] != want.to_string() {
                    return Err(err(
                        line_no,
                        format!("expected 'component {want}', found '{body}'"),
                    ));
                }
                if want > k {
                    return Err(err(line_no, format!("more than {k} component blocks")));
                }
                comps.push(PendingComponent {
                    initial: None,
                    accepting: Vec::new(),
                    rules: Vec::new(),
                });
            }
            "initial" => {
                let comp = comps
                    .last_mut()
                    .ok_or_else(|| err(line_no, "'initial' before any 'component' block"))?;
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected 'initial <state>'"));
                }
                if comp.initial.replace(tokens[1].to_string()).is_some() {
                    return Err(err(line_no, "duplicate 'initial' line"));
                }
            }
            "accepting" => {
                let comp = comps
                    .last_mut()
                    .ok_or_else(|| err(line_no, "'accepting' before any 'component' block"))?;
                if !comp.accepting.is_empty() {
                    return Err(err(line_no, "duplicate 'accepting' line"));
                }
                comp.accepting = tokens[1..].iter().map(|s| s.to_string()).collect();
            }
            _ => {
                let comp = comps
                    .last_mut()
                    .ok_or_else(|| err(line_no, "transition before any 'component' block"))?;
                if tokens.len() != 5 || tokens[1] != "," || tokens[3] != "->" {
                    return Err(err(
                        line_no,
                        "expected transition '<state> , <label> -> <state>'",
                    ));
                }
                let label = match tokens[2] {
                    LAMBDA => Label::Lambda,
                    ENDMARKER => Label::End,
                    s => Label::Sym(s.to_string()),
                };
                if comp
                    .rules
                    .iter()
                    .any(|(src, l, _)| src == tokens[0] && *l == label)
                {
                    return Err(err(
                        line_no,
                        format!("duplicate transition from '{}' on '{}'", tokens[0], tokens[2]),
                    ));
                }
                comp.rules
                    .push((tokens[0].to_string(), label, tokens[4].to_string()));
            }
        }
    }
    if comps.len() != k {
        return Err(err(
            last_line,
            format!("expected {k} component blocks, found {}", comps.len()),
        ));
    }

    let mut components = Vec::with_capacity(k);
    let mut mentioned: BTreeSet<String> = BTreeSet::new();
    for (idx, pc) in comps.into_iter().enumerate() {
        let initial = pc
            .initial
            .ok_or_else(|| err(last_line, format!("component {} has no 'initial' line", idx + 1)))?;
        let mut states: BTreeSet<String> = BTreeSet::new();
        states.insert(initial.clone());
        states.extend(pc.accepting.iter().cloned());
        for (src, _, dst) in &pc.rules {
            states.insert(src.clone());
            states.insert(dst.clone());
        }
        mentioned.extend(states.iter().cloned());
        let transitions = pc
            .rules
            .into_iter()
            .map(|(src, label, dst)| ((src, label), dst))
            .collect();
        components.push(ComponentDef {
            states,
            initial,
            accepting: pc.accepting.into_iter().collect(),
            transitions,
        });
    }
    // A declared query state nobody mentions still has to live somewhere.
    for q in &query_states {
        if !mentioned.contains(q) {
            components[0].states.insert(q.clone());
        }
    }

    Ok(SystemDef {
        input_alphabet,
        components,
        query_states,
        mode,
        centralized,
    })
}

fn label_token(label: &Label) -> &str {
    match label {
        Label::Sym(s) => s,
        Label::Lambda => LAMBDA,
        Label::End => ENDMARKER,
    }
}

/// Serializes a definition in the format [`parse_system`] reads.
pub fn print_system(def: &SystemDef) -> String {
    let mut out = String::new();
    let mode = match def.mode {
        Mode::Returning => "returning",
        Mode::NonReturning => "nonreturning",
    };
    let _ = writeln!(
        out,
        "pcfa {} mode={} centralized={}",
        def.components.len(),
        mode,
        def.centralized
    );
    let _ = writeln!(out, "alphabet: {}", def.input_alphabet.join(" "));
    let _ = writeln!(out, "queries: {}", def.query_states.join(" "));
    for (i, comp) in def.components.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "component {}", i + 1);
        let _ = writeln!(out, "initial {}", comp.initial);
        let accepting: Vec<&str> = comp.accepting.iter().map(String::as_str).collect();
        if accepting.is_empty() {
            let _ = writeln!(out, "accepting");
        } else {
            let _ = writeln!(out, "accepting {}", accepting.join(" "));
        }
        for ((src, label), dst) in &comp.transitions {
            let _ = writeln!(out, "{src} , {} -> {dst}", label_token(label));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two components, master queries the helper
pcfa 2 mode=returning centralized=true
alphabet: a b
queries: q1 q2

component 1
initial m0
accepting acc
m0 , a -> q2          # ask the helper
h1 , b -> acc
acc , LAMBDA -> acc   # never fires: acc is reached at the end

component 2
initial h0
accepting
h0 , a -> h1
h1 , b -> h1
";

    #[test]
    fn parses_and_round_trips() {
        let def = parse_system(SAMPLE).unwrap();
        assert_eq!(def.components.len(), 2);
        assert_eq!(def.input_alphabet, vec!["a", "b"]);
        assert_eq!(def.query_states, vec!["q1", "q2"]);
        // q2 is mentioned by the master; q1 is attached to component 1.
        assert!(def.components[0].states.contains("q1"));
        assert!(def.components[0].states.contains("q2"));
        assert!(!def.components[1].states.contains("q1"));
        let printed = print_system(&def);
        let reparsed = parse_system(&printed).unwrap();
        assert_eq!(def, reparsed);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases: Vec<(&str, &str)> = vec![
            ("", "empty input"),
            ("pcfa x mode=returning centralized=true", "bad component count"),
            (
                "pcfa 1 mode=sideways centralized=true\nalphabet: a\nqueries: q1",
                "bad mode",
            ),
            (
                "pcfa 2 mode=returning centralized=true\nalphabet: a\nqueries: q1",
                "expected 2 query states",
            ),
            (
                "pcfa 1 mode=returning centralized=true\nalphabet: a\nqueries: q1\ncomponent 1\ninitial s0\ns0 , a ->",
                "expected transition",
            ),
            (
                "pcfa 1 mode=returning centralized=true\nalphabet: a\nqueries: q1\ncomponent 1\ninitial s0\ns0 , a -> s1\ns0 , a -> s2",
                "duplicate transition",
            ),
            (
                "pcfa 1 mode=returning centralized=true\nalphabet: a\nqueries: q1\ncomponent 2\ninitial s0",
                "expected 'component 1'",
            ),
            (
                "pcfa 1 mode=returning centralized=true\nalphabet: a\nqueries: q1\ncomponent 1",
                "no 'initial'",
            ),
        ];
        for (text, needle) in cases {
            let e = parse_system(text).unwrap_err();
            assert!(
                e.message.contains(needle) || e.to_string().contains(needle),
                "error '{e}' should mention '{needle}'"
            );
        }
    }

    #[test]
    fn lambda_and_end_labels_survive() {
        let text = "pcfa 1 mode=nonreturning centralized=false\nalphabet: a\nqueries: q1\ncomponent 1\ninitial s0\naccepting s2\ns0 , LAMBDA -> s1\ns1 , END -> s2\n";
        let def = parse_system(text).unwrap();
        let t = &def.components[0].transitions;
        assert_eq!(t[&("s0".to_string(), Label::Lambda)], "s1");
        assert_eq!(t[&("s1".to_string(), Label::End)], "s2");
        assert_eq!(parse_system(&print_system(&def)).unwrap(), def);
    }
}
