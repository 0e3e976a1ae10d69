//! A gallery of witness languages: each comes with an independent
//! string-level membership oracle, a member generator, and (for the five
//! fixed languages) a hand-built system whose communication demand on
//! members is far below their length. The oracles never consult the
//! engine, so [`crosscheck::crosscheck`] can compare the two routes
//! word by word.

pub mod crosscheck;
pub mod generate;
pub mod oracle;
pub mod systems;

use crate::oca::Oca;
use crate::system::ValidatedSystem;
use crate::word::Word;

pub use crosscheck::{crosscheck, CrosscheckError, CrosscheckReport, Disagreement};
pub use generate::{generate_member, GenerateError};

/// Names one witness language. The first five are fixed; the last two are
/// parameterized by a one-way cellular automaton whose accepting runs they
/// embed.
#[derive(Debug, Clone)]
pub enum LanguageId {
    /// `$ a b aa b aaaa ... a^(2^m) &`, doubling blocks.
    Expo,
    /// `$ a b aaa b aaaaa ... a^(2m+1) &`, blocks growing by two.
    Poly,
    /// `w b w` over {0, 1}.
    Wbw,
    /// Prefix replayed as doubled pairs behind doubling gaps.
    ExpoWbw,
    /// Prefix replayed as doubled pairs behind odd-length gaps.
    PolyWbw,
    /// A flattened accepting run of the automaton, then doubling `a`
    /// blocks, one per pair token of the run.
    ValcPrime(Oca),
    /// A flattened run on `a^m`, two identical half-primed payload blocks,
    /// then m doubling `a` blocks.
    LR(Oca),
}

impl LanguageId {
    /// Stable command-line token.
    pub fn token(&self) -> &'static str {
        match self {
            LanguageId::Expo => "expo",
            LanguageId::Poly => "poly",
            LanguageId::Wbw => "wbw",
            LanguageId::ExpoWbw => "expo-wbw",
            LanguageId::PolyWbw => "poly-wbw",
            LanguageId::ValcPrime(_) => "valc-prime",
            LanguageId::LR(_) => "l-r",
        }
    }

    /// Resolves a token naming one of the five fixed languages.
    pub fn builtin(token: &str) -> Option<LanguageId> {
        match token {
            "expo" => Some(LanguageId::Expo),
            "poly" => Some(LanguageId::Poly),
            "wbw" => Some(LanguageId::Wbw),
            "expo-wbw" => Some(LanguageId::ExpoWbw),
            "poly-wbw" => Some(LanguageId::PolyWbw),
            _ => None,
        }
    }

    /// Tokens of the five fixed languages, in gallery order.
    pub fn builtin_tokens() -> [&'static str; 5] {
        ["expo", "poly", "wbw", "expo-wbw", "poly-wbw"]
    }

    /// The string-level membership oracle.
    pub fn contains(&self, word: &Word) -> bool {
        match self {
            LanguageId::Expo => oracle::is_expo(word),
            LanguageId::Poly => oracle::is_poly(word),
            LanguageId::Wbw => oracle::is_wbw(word),
            LanguageId::ExpoWbw => oracle::is_expo_wbw(word),
            LanguageId::PolyWbw => oracle::is_poly_wbw(word),
            LanguageId::ValcPrime(oca) => oracle::is_valc_prime(oca, word),
            LanguageId::LR(oca) => oracle::is_lr(oca, word),
        }
    }

    /// The gallery system recognizing this language, where one exists.
    pub fn system(&self) -> Option<ValidatedSystem> {
        match self {
            LanguageId::Expo => Some(systems::build_expo()),
            LanguageId::Poly => Some(systems::build_poly()),
            LanguageId::Wbw => Some(systems::build_wbw()),
            LanguageId::ExpoWbw => Some(systems::build_expo_wbw()),
            LanguageId::PolyWbw => Some(systems::build_poly_wbw()),
            LanguageId::ValcPrime(_) | LanguageId::LR(_) => None,
        }
    }

    /// The m-th member, optionally shaped by a payload; see
    /// [`generate::generate_member`].
    pub fn generate(&self, m: usize, payload: Option<&str>) -> Result<Word, GenerateError> {
        generate_member(self, m, payload)
    }
}
