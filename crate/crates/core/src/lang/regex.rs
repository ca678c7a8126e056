//! Regular expressions over a finite letter alphabet.
//!
//! Concrete syntax, whitespace ignored:
//!
//! ```text
//! union  := concat ('|' concat)*
//! concat := repeat*
//! repeat := atom ('*' | '+')*
//! atom   := letter | '[' letter+ ']' | 'Σ' | '.' | 'ε' | '(' union ')'
//! ```
//!
//! `Σ` (or `.`) is any letter of the alphabet. Patterns always match whole
//! words; "contains the factor `xy`" is written `Σ*xyΣ*`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    Literal(char),
    Class(BTreeSet<char>),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    /// Parses `src`, expanding `Σ` to the given alphabet and rejecting
    /// letters outside it.
    pub fn parse(src: &str, alphabet: &[char]) -> Result<Regex> {
        let tokens: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut parser = Parser {
            tokens,
            pos: 0,
            alphabet,
        };
        let re = parser.union()?;
        if let Some(&(at, ch)) = parser.tokens.get(parser.pos) {
            return Err(Error::Syntax {
                pos: at,
                msg: format!("unexpected {ch:?}"),
            });
        }
        Ok(re)
    }

    /// Every letter mentioned by the expression.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Epsilon => {}
            Regex::Literal(c) => {
                out.insert(*c);
            }
            Regex::Class(set) => out.extend(set.iter().copied()),
            Regex::Concat(items) | Regex::Union(items) => items.iter().for_each(|r| r.collect_letters(out)),
            Regex::Star(inner) | Regex::Plus(inner) => inner.collect_letters(out),
        }
    }

    /// Direct backtracking matcher, independent of the automaton route.
    /// Exponential in the worst case; meant for checking short words.
    pub fn matches(&self, word: &str) -> bool {
        let letters: Vec<char> = word.chars().collect();
        self.ends(&letters, 0).contains(&letters.len())
    }

    /// All positions where a match starting at `start` can end.
    fn ends(&self, w: &[char], start: usize) -> BTreeSet<usize> {
        match self {
            Regex::Epsilon => BTreeSet::from([start]),
            Regex::Literal(c) => match w.get(start) {
                Some(x) if x == c => BTreeSet::from([start + 1]),
                _ => BTreeSet::new(),
            },
            Regex::Class(set) => match w.get(start) {
                Some(x) if set.contains(x) => BTreeSet::from([start + 1]),
                _ => BTreeSet::new(),
            },
            Regex::Concat(items) => {
                let mut current = BTreeSet::from([start]);
                for item in items {
                    current = current.iter().flat_map(|&s| item.ends(w, s)).collect();
                }
                current
            }
            Regex::Union(items) => items.iter().flat_map(|r| r.ends(w, start)).collect(),
            Regex::Star(inner) | Regex::Plus(inner) => {
                let mut reached = if matches!(self, Regex::Star(_)) {
                    BTreeSet::from([start])
                } else {
                    BTreeSet::new()
                };
                let mut frontier = vec![start];
                let mut seen = BTreeSet::from([start]);
                while let Some(s) = frontier.pop() {
                    for e in inner.ends(w, s) {
                        reached.insert(e);
                        if seen.insert(e) {
                            frontier.push(e);
                        }
                    }
                }
                reached
            }
        }
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a [char],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(usize::MAX, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn letter(&self, ch: char) -> Result<char> {
        if self.alphabet.contains(&ch) {
            Ok(ch)
        } else {
            self.err(format!("{ch:?} is not in the alphabet"))
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Regex::Union(alts) })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut items = Vec::new();
        while let Some(ch) = self.peek() {
            if ch == '|' || ch == ')' {
                break;
            }
            items.push(self.repeat()?);
        }
        Ok(match items.len() {
            0 => Regex::Epsilon,
            1 => items.pop().unwrap(),
            _ => Regex::Concat(items),
        })
    }

    fn repeat(&mut self) -> Result<Regex> {
        let mut atom = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => atom = Regex::Star(Box::new(atom)),
                Some('+') => atom = Regex::Plus(Box::new(atom)),
                _ => return Ok(atom),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(ch) = self.peek() else {
            return self.err("unexpected end of pattern");
        };
        self.pos += 1;
        match ch {
            'Σ' | '.' => Ok(Regex::Class(self.alphabet.iter().copied().collect())),
            'ε' => Ok(Regex::Epsilon),
            '(' => {
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            '[' => {
                let mut set = BTreeSet::new();
                loop {
                    match self.peek() {
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => {
                            set.insert(self.letter(c)?);
                            self.pos += 1;
                        }
                        None => return self.err("unterminated class"),
                    }
                }
                if set.is_empty() {
                    return self.err("empty class");
                }
                Ok(Regex::Class(set))
            }
            '*' | '+' | ')' | '|' | ']' => {
                self.pos -= 1;
                self.err(format!("unexpected {ch:?}"))
            }
            c => {
                self.pos -= 1;
                let letter = self.letter(c)?;
                self.pos += 1;
                Ok(Regex::Literal(letter))
            }
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Epsilon => f.write_str("ε"),
            Regex::Literal(c) => write!(f, "{c}"),
            Regex::Class(set) => {
                f.write_str("[")?;
                for c in set {
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
            Regex::Concat(items) => {
                for item in items {
                    match item {
                        Regex::Union(_) => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            Regex::Union(items) => {
                let parts: Vec<String> = items.iter().map(|r| r.to_string()).collect();
                f.write_str(&parts.join("|"))
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let op = if matches!(self, Regex::Star(_)) { '*' } else { '+' };
                match **inner {
                    Regex::Literal(_) | Regex::Class(_) => write!(f, "{inner}{op}"),
                    _ => write!(f, "({inner}){op}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABCD: [char; 4] = ['a', 'b', 'c', 'd'];

    #[test]
    fn parses_forbidden_patterns() {
        let re = Regex::parse("Σ*caΣ*", &ABCD).unwrap();
        assert!(re.matches("ca"));
        assert!(re.matches("bcad"));
        assert!(!re.matches("acb"));

        let re = Regex::parse("a*[cd]+", &ABCD).unwrap();
        assert!(re.matches("c"));
        assert!(re.matches("aadcd"));
        assert!(!re.matches("aa"));
        assert!(!re.matches("acb"));
    }

    #[test]
    fn union_and_groups() {
        let re = Regex::parse("ab | (cd)*", &ABCD).unwrap();
        assert!(re.matches("ab"));
        assert!(re.matches(""));
        assert!(re.matches("cdcd"));
        assert!(!re.matches("abcd"));
    }

    #[test]
    fn syntax_errors() {
        assert!(Regex::parse("a(b", &ABCD).is_err());
        assert!(Regex::parse("ax", &ABCD).is_err());
        assert!(Regex::parse("*a", &ABCD).is_err());
        assert!(Regex::parse("[]", &ABCD).is_err());
        assert!(Regex::parse("a)", &ABCD).is_err());
    }

    #[test]
    fn display_reparses() {
        for src in ["Σ*caΣ*", "d[ab]*", "a*[cd]+", "ab|(cd)*c", "[abde]*d[abcde]*"] {
            let re = Regex::parse(src, &ABCD.iter().copied().chain(['e']).collect::<Vec<_>>()).unwrap();
            let again = Regex::parse(&re.to_string(), &['a', 'b', 'c', 'd', 'e']).unwrap();
            assert_eq!(re, again, "{src}");
        }
    }
}
