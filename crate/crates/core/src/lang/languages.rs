//! The six hand-built languages: one canonical word per permutation of each
//! grid class (`L1`, `L2`, `L3`) and one per simple permutation (`S1`, `S2`,
//! `S3`). Each is given by the patterns it forbids.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::automaton::{Dfa, Nfa};
use super::regex::Regex;
use crate::error::{Error, Result};
use crate::grid::BuiltinGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LanguageName {
    L1,
    S1,
    L2,
    S2,
    L3,
    S3,
}

impl LanguageName {
    pub const ALL: [LanguageName; 6] = [
        LanguageName::L1,
        LanguageName::S1,
        LanguageName::L2,
        LanguageName::S2,
        LanguageName::L3,
        LanguageName::S3,
    ];

    pub fn grid(self) -> BuiltinGrid {
        match self {
            LanguageName::L1 | LanguageName::S1 => BuiltinGrid::G1,
            LanguageName::L2 | LanguageName::S2 => BuiltinGrid::G2,
            LanguageName::L3 | LanguageName::S3 => BuiltinGrid::G3,
        }
    }

    pub fn is_simple_language(self) -> bool {
        matches!(self, LanguageName::S1 | LanguageName::S2 | LanguageName::S3)
    }

    /// The whole-class language of a grid.
    pub fn class_language(grid: BuiltinGrid) -> LanguageName {
        match grid {
            BuiltinGrid::G1 => LanguageName::L1,
            BuiltinGrid::G2 => LanguageName::L2,
            BuiltinGrid::G3 => LanguageName::L3,
        }
    }

    /// The simple-permutation language of a grid.
    pub fn simple_language(grid: BuiltinGrid) -> LanguageName {
        match grid {
            BuiltinGrid::G1 => LanguageName::S1,
            BuiltinGrid::G2 => LanguageName::S2,
            BuiltinGrid::G3 => LanguageName::S3,
        }
    }
}

impl fmt::Display for LanguageName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LanguageName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LanguageName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Argument(format!("unknown language {s:?}; expected one of L1, S1, L2, S2, L3, S3")))
    }
}

/// Nonempty words over `alphabet` matching none of `forbidden` in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageDef {
    pub name: String,
    pub alphabet: Vec<char>,
    pub forbidden: Vec<Regex>,
}

impl LanguageDef {
    pub fn new(name: impl Into<String>, alphabet: &[char], patterns: &[&str]) -> Result<Self> {
        let forbidden = patterns
            .iter()
            .map(|p| Regex::parse(p, alphabet))
            .collect::<Result<Vec<_>>>()?;
        Ok(LanguageDef {
            name: name.into(),
            alphabet: alphabet.to_vec(),
            forbidden,
        })
    }

    /// Membership straight from the definition, without an automaton.
    pub fn contains(&self, word: &str) -> bool {
        !word.is_empty()
            && word.chars().all(|c| self.alphabet.contains(&c))
            && !self.forbidden.iter().any(|re| re.matches(word))
    }
}

const L1: &[&str] = &["Σ*caΣ*", "Σ*daΣ*", "Σ*dbΣ*", "bΣ*", "a*cΣ*", "Σ*d", "d[ab]*", "a*[cd]+"];

const S1_EXTRA: &[&str] = &[
    "Σ*aaΣ*",
    "Σ*bbΣ*",
    "Σ*ccΣ*",
    "Σ*ddΣ*",
    "[abc][abc]Σ*",
    "Σ*ca*da*",
    "Σ*d[ab]*ca*",
    "Σ*a[cd]*",
    "dcb",
];

const L2: &[&str] = &[
    "Σ*[bcd][aef]Σ*",
    "Σ*faΣ*",
    "Σ*dbΣ*",
    "eΣ*",
    "[abde]*d[abcde]*",
    "[abcde]*b[abcde]*",
    "Σ*b[aef]*d*[abcef]*",
    "[adf]*f[adef]*",
    "[aef]*cΣ*",
];

const S2_EXTRA: &[&str] = &[
    "Σ*aaΣ*",
    "Σ*bbΣ*",
    "Σ*ccΣ*",
    "Σ*ddΣ*",
    "Σ*eeΣ*",
    "Σ*ffΣ*",
    "Σ*a[abcdf]*",
    "Σ*e[bcde]*",
    "[abcef]*f[abc]*",
    "[abcef]*b[abcef]*cΣ*",
    "[adf]*f[adef]*c[acef]*",
];

const L3: &[&str] = &[
    "Σ*dΣ*dΣ*",
    "Σ*caΣ*",
    "Σ*daΣ*",
    "Σ*dbΣ*",
    "Σ*dcΣ*",
    "bΣ*",
    "a*c[abc]*",
    "[acd]*[cd][acd]*",
    "[abd]*d[abd]*",
];

const S3_EXTRA: &[&str] = &["Σ*aaΣ*", "Σ*bbΣ*", "Σ*ccΣ*", "Σ*a[cd]*", "abΣ*", "cbd"];

pub fn builtin_language(name: LanguageName) -> LanguageDef {
    let (base, extra): (&[&str], &[&str]) = match name {
        LanguageName::L1 => (L1, &[]),
        LanguageName::S1 => (L1, S1_EXTRA),
        LanguageName::L2 => (L2, &[]),
        LanguageName::S2 => (L2, S2_EXTRA),
        LanguageName::L3 => (L3, &[]),
        LanguageName::S3 => (L3, S3_EXTRA),
    };
    let patterns: Vec<&str> = base.iter().chain(extra).copied().collect();
    let alphabet = name.grid().spec().alphabet();
    LanguageDef::new(name.to_string(), &alphabet, &patterns).expect("builtin patterns parse")
}

/// Nonempty words avoiding every forbidden pattern. Each pattern is
/// determinized and minimized on its own and the complements are intersected
/// one at a time; determinizing the union in one go produces hundreds of
/// thousands of subset states for the larger languages.
pub fn compile_language(def: &LanguageDef) -> Result<Dfa> {
    let mut allowed = Dfa::nonempty_words(&def.alphabet);
    for re in &def.forbidden {
        let banned = Nfa::from_regex(re, &def.alphabet)?.determinize().minimize();
        allowed = allowed.intersect(&banned.complement())?.minimize();
    }
    Ok(allowed)
}

/// Compiled automaton for a built-in language, built once per process.
pub fn builtin_dfa(name: LanguageName) -> Dfa {
    static CACHE: [OnceLock<Dfa>; 6] = [const { OnceLock::new() }; 6];
    CACHE[name as usize]
        .get_or_init(|| compile_language(&builtin_language(name)).expect("builtin languages compile"))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use num_traits::ToPrimitive;

    fn counts(name: LanguageName, n: usize) -> Vec<u64> {
        builtin_dfa(name).count_by_length(n)[1..]
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn membership_examples() {
        let l1 = builtin_dfa(LanguageName::L1);
        assert!(l1.accepts("aab"));
        assert!(!l1.accepts("adb"));
        assert!(!l1.accepts(""));
        assert!(!builtin_dfa(LanguageName::L3).accepts("dad"));
    }

    #[test]
    fn small_words() {
        let l1 = builtin_dfa(LanguageName::L1);
        let words = l1.enumerate_words(2, 1000).unwrap();
        assert_eq!(words[&1], vec!["a"]);
        assert_eq!(words[&2], vec!["aa", "ab"]);
        assert_eq!(counts(LanguageName::L3, 1), vec![1]);
        let s3 = builtin_dfa(LanguageName::S3).count_by_length(3);
        assert!(s3.iter().all(|c| c.to_u64() == Some(0)));
    }

    #[test]
    fn class_counts() {
        assert_eq!(counts(LanguageName::L1, 5), vec![1, 2, 6, 20, 66]);
        assert_eq!(counts(LanguageName::S1, 7)[3..], [2, 4, 8, 16]);
    }

    #[test]
    fn automaton_agrees_with_definition() {
        for name in LanguageName::ALL {
            let def = builtin_language(name);
            let dfa = compile_language(&def).unwrap();
            for len in 0..=6 {
                for w in std::iter::repeat_n(def.alphabet.iter(), len).multi_cartesian_product() {
                    let w: String = w.into_iter().collect();
                    assert_eq!(dfa.accepts(&w), def.contains(&w), "{name} {w:?}");
                }
            }
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("s2".parse::<LanguageName>().unwrap(), LanguageName::S2);
        assert!("L4".parse::<LanguageName>().is_err());
    }
}
