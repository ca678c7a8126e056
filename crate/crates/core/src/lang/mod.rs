//! Regular languages of words over cell alphabets.

pub mod automaton;
pub mod classify;
pub mod languages;
pub mod regex;
pub mod weighted;

pub use automaton::{Dfa, Nfa};
pub use classify::{classify, ClassifiedWord, Label, WordType};
pub use languages::{builtin_dfa, builtin_language, compile_language, LanguageDef, LanguageName};
pub use regex::Regex;
pub use weighted::{displayed_gfs, MultiGf, Polynomial};

/// Default cap on the number of words `Dfa::enumerate_words` may produce.
pub const DEFAULT_WORD_BUDGET: u64 = 1_000_000;
