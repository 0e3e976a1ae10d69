//! Input words as sequences of symbol tokens.
//!
//! Alphabets may contain multi-character symbol names (for example the pair
//! tokens produced by the cellular automaton toolkit), so a word is a list of
//! tokens rather than a plain string.

use std::fmt;

/// A word over some input alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from explicit symbol tokens.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word(tokens.into_iter().map(Into::into).collect())
    }

    /// Builds a word treating every character as one symbol.
    pub fn from_chars(s: &str) -> Self {
        Word(s.chars().map(|c| c.to_string()).collect())
    }

    /// Parses user input: if the string contains whitespace it is split into
    /// tokens, otherwise every character is one symbol.
    pub fn parse(s: &str) -> Self {
        if s.chars().any(char::is_whitespace) {
            Word::from_tokens(s.split_whitespace())
        } else {
            Word::from_chars(s)
        }
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push<S: Into<String>>(&mut self, sym: S) {
        self.0.push(sym.into());
    }

    pub fn extend_with(&mut self, other: &Word) {
        self.0.extend(other.0.iter().cloned());
    }
}

impl fmt::Display for Word {
    /// Single-character symbols are concatenated; anything else is joined
    /// with spaces so that `Word::parse` round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|s| s.chars().count() == 1) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.join(" "))
        }
    }
}

impl<S: Into<String>> FromIterator<S> for Word {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word::from_tokens(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_chars_and_tokens() {
        assert_eq!(Word::parse("$abaa&").len(), 6);
        assert_eq!(Word::parse("ab cd").symbols(), ["ab", "cd"]);
        assert!(Word::parse("").is_empty());
    }

    #[test]
    fn display_round_trips() {
        for s in ["$abaa&", "0b0", ""] {
            let w = Word::parse(s);
            assert_eq!(Word::parse(&w.to_string()), w);
        }
        let w = Word::from_tokens(["[#,c']", "[c',d']"]);
        assert_eq!(Word::parse(&w.to_string()), w);
    }
}
