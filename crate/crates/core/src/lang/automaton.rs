//! Thompson NFAs, subset construction, and total DFAs with the product,
//! complement, minimization, counting and enumeration operations the
//! language definitions need.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::regex::Regex;
use crate::error::{Error, Result};

/// Nondeterministic automaton with epsilon moves over letter indices.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Vec<char>,
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
    start: usize,
    accepting: Vec<bool>,
}

impl Nfa {
    fn empty(alphabet: &[char]) -> Self {
        Nfa {
            alphabet: alphabet.to_vec(),
            eps: Vec::new(),
            moves: Vec::new(),
            start: 0,
            accepting: Vec::new(),
        }
    }

    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.accepting.push(false);
        self.eps.len() - 1
    }

    fn letter_index(&self, c: char) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|&a| a == c)
            .ok_or_else(|| Error::InvalidWord(format!("letter {c:?} is not in the alphabet")))
    }

    /// Thompson construction for one expression.
    pub fn from_regex(re: &Regex, alphabet: &[char]) -> Result<Self> {
        Self::union_of(std::slice::from_ref(re), alphabet)
    }

    /// NFA for the union of several expressions: a fresh start state with
    /// epsilon moves into each expression's fragment.
    pub fn union_of(res: &[Regex], alphabet: &[char]) -> Result<Self> {
        let mut nfa = Nfa::empty(alphabet);
        let start = nfa.state();
        nfa.start = start;
        for re in res {
            let (s, e) = nfa.fragment(re)?;
            nfa.eps[start].push(s);
            nfa.accepting[e] = true;
        }
        Ok(nfa)
    }

    fn fragment(&mut self, re: &Regex) -> Result<(usize, usize)> {
        let s = self.state();
        let e = self.state();
        match re {
            Regex::Epsilon => self.eps[s].push(e),
            Regex::Literal(c) => {
                let i = self.letter_index(*c)?;
                self.moves[s].push((i, e));
            }
            Regex::Class(set) => {
                for &c in set {
                    let i = self.letter_index(c)?;
                    self.moves[s].push((i, e));
                }
            }
            Regex::Concat(items) => {
                let mut at = s;
                for item in items {
                    let (fs, fe) = self.fragment(item)?;
                    self.eps[at].push(fs);
                    at = fe;
                }
                self.eps[at].push(e);
            }
            Regex::Union(items) => {
                for item in items {
                    let (fs, fe) = self.fragment(item)?;
                    self.eps[s].push(fs);
                    self.eps[fe].push(e);
                }
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let (fs, fe) = self.fragment(inner)?;
                self.eps[s].push(fs);
                self.eps[fe].push(fs);
                self.eps[fe].push(e);
                if matches!(re, Regex::Star(_)) {
                    self.eps[s].push(e);
                }
            }
        }
        Ok((s, e))
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = set.clone();
        for &q in set.iter() {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        set.sort_unstable();
    }

    /// Subset construction. The empty subset becomes an ordinary
    /// (rejecting, self-looping) state, so the result is total.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut start = vec![self.start];
        self.closure(&mut start);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for letter in 0..k {
                let mut next: Vec<usize> = subsets[i]
                    .iter()
                    .flat_map(|&q| self.moves[q].iter().filter(|m| m.0 == letter).map(|m| m.1))
                    .collect();
                next.sort_unstable();
                next.dedup();
                self.closure(&mut next);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                row.push(id);
            }
            trans.push(row);
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            trans,
            accepting,
        }
    }
}

/// Total deterministic automaton: `trans[state][letter]` is always defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    start: usize,
    trans: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.trans[state][letter]
    }

    fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == c)
    }

    /// Accepts exactly the nonempty words.
    pub fn nonempty_words(alphabet: &[char]) -> Dfa {
        let k = alphabet.len();
        Dfa {
            alphabet: alphabet.to_vec(),
            start: 0,
            trans: vec![vec![1; k], vec![1; k]],
            accepting: vec![false, true],
        }
    }

    /// False for words with letters outside the alphabet.
    pub fn accepts(&self, word: &str) -> bool {
        let mut q = self.start;
        for c in word.chars() {
            match self.letter_index(c) {
                Some(i) => q = self.trans[q][i],
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    /// Product automaton on the reachable pairs.
    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::Argument("intersecting automata over different alphabets".into()));
        }
        let k = self.alphabet.len();
        let mut index = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert((self.start, other.start), 0usize);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let row = (0..k)
                .map(|l| {
                    let pair = (self.trans[p][l], other.trans[q][l]);
                    *index.entry(pair).or_insert_with(|| {
                        pairs.push(pair);
                        pairs.len() - 1
                    })
                })
                .collect();
            trans.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| self.accepting[p] && other.accepting[q])
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            trans,
            accepting,
        })
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.trans.len();
        let mut reverse = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for &r in row {
                reverse[r].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &reverse[q] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Moore partition refinement over the reachable states.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        // reachable states in BFS order
        let mut order = vec![self.start];
        let mut seen = vec![false; self.trans.len()];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            for &r in &self.trans[order[i]] {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        let mut class: HashMap<usize, usize> = order
            .iter()
            .map(|&q| (q, usize::from(self.accepting[q])))
            .collect();
        let mut classes = 0;
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = HashMap::new();
            for &q in &order {
                let sig = (class[&q], self.trans[q].iter().map(|r| class[r]).collect::<Vec<_>>());
                let n = sig_index.len();
                let id = *sig_index.entry(sig).or_insert(n);
                next.insert(q, id);
            }
            let count = sig_index.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        // renumber classes in BFS order of their first member
        let mut renumber = HashMap::new();
        for &q in &order {
            let n = renumber.len();
            renumber.entry(class[&q]).or_insert(n);
        }
        let mut trans = vec![vec![0; k]; renumber.len()];
        let mut accepting = vec![false; renumber.len()];
        for &q in &order {
            let id = renumber[&class[&q]];
            accepting[id] = self.accepting[q];
            for l in 0..k {
                trans[id][l] = renumber[&class[&self.trans[q][l]]];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            start: renumber[&class[&self.start]],
            trans,
            accepting,
        }
    }

    /// Number of accepted words of each length `0..=max_n`, by dynamic
    /// programming over states.
    pub fn count_by_length(&self, max_n: usize) -> Vec<BigUint> {
        let mut weights = vec![BigUint::zero(); self.trans.len()];
        weights[self.start] = BigUint::from(1u8);
        let mut counts = Vec::with_capacity(max_n + 1);
        for len in 0..=max_n {
            let accepted = weights
                .iter()
                .zip(&self.accepting)
                .filter(|(_, &a)| a)
                .fold(BigUint::zero(), |acc, (w, _)| acc + w);
            counts.push(accepted);
            if len == max_n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.trans.len()];
            for (q, w) in weights.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &r in &self.trans[q] {
                    next[r] += w;
                }
            }
            weights = next;
        }
        counts
    }

    /// All accepted words of lengths `1..=max_n`, grouped by length, each
    /// group in lexicographic order of the alphabet. Fails if more than
    /// `budget` words would be produced.
    pub fn enumerate_words(&self, max_n: usize, budget: u64) -> Result<BTreeMap<usize, Vec<String>>> {
        let total: BigUint = self.count_by_length(max_n).iter().skip(1).sum();
        if total > BigUint::from(budget) {
            return Err(Error::Budget(format!(
                "{total} words up to length {max_n} exceeds the budget of {budget}"
            )));
        }
        let live = self.live_states();
        let mut grouped = BTreeMap::new();
        let mut frontier: Vec<(String, usize)> = if live[self.start] {
            vec![(String::new(), self.start)]
        } else {
            Vec::new()
        };
        for len in 1..=max_n {
            let mut next = Vec::new();
            for (word, q) in &frontier {
                for (l, &c) in self.alphabet.iter().enumerate() {
                    let r = self.trans[*q][l];
                    if live[r] {
                        let mut w = word.clone();
                        w.push(c);
                        next.push((w, r));
                    }
                }
            }
            let words: Vec<String> = next
                .iter()
                .filter(|(_, q)| self.accepting[*q])
                .map(|(w, _)| w.clone())
                .collect();
            grouped.insert(len, words);
            frontier = next;
            if frontier.is_empty() {
                for rest in len + 1..=max_n {
                    grouped.insert(rest, Vec::new());
                }
                break;
            }
        }
        Ok(grouped)
    }

    /// Plain-text transition table: a header row with the alphabet, then
    /// one row per state marked `->` for the start and `*` when accepting.
    pub fn to_table(&self) -> String {
        let mut out = String::from("       ");
        for c in &self.alphabet {
            let _ = write!(out, " {c:>4}");
        }
        out.push('\n');
        for (q, row) in self.trans.iter().enumerate() {
            let start = if q == self.start { "->" } else { "  " };
            let acc = if self.accepting[q] { "*" } else { " " };
            let _ = write!(out, "{start}{acc}{:>4}", q);
            for r in row {
                let _ = write!(out, " {r:>4}");
            }
            out.push('\n');
        }
        out
    }

    /// Count of accepted words of length exactly `n`, as a `u64` if it fits.
    pub fn count_exact(&self, n: usize) -> Option<u64> {
        self.count_by_length(n)[n].to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AB: [char; 2] = ['a', 'b'];

    fn dfa(src: &str) -> Dfa {
        Nfa::from_regex(&Regex::parse(src, &AB).unwrap(), &AB).unwrap().determinize()
    }

    #[test]
    fn subset_construction_matches_regex() {
        let re = Regex::parse("Σ*abΣ*|b+", &AB).unwrap();
        let d = Nfa::from_regex(&re, &AB).unwrap().determinize();
        for len in 0..7 {
            for bits in 0..(1u32 << len) {
                let w: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                assert_eq!(d.accepts(&w), re.matches(&w), "{w}");
            }
        }
    }

    #[test]
    fn complement_and_intersection() {
        let no_aa = dfa("Σ*aaΣ*").complement();
        let lang = no_aa.intersect(&Dfa::nonempty_words(&AB)).unwrap();
        assert!(!lang.accepts(""));
        assert!(lang.accepts("aba"));
        assert!(!lang.accepts("baab"));
        // words avoiding aa are counted by Fibonacci numbers
        let counts: Vec<u64> = lang.count_by_length(6).iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(counts, vec![0, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn minimization_preserves_counts() {
        let d = dfa("(Σ*aaΣ*)|(Σ*bbΣ*)|a*");
        let m = d.minimize();
        assert!(m.state_count() <= d.state_count());
        assert_eq!(m.count_by_length(10), d.count_by_length(10));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let d = dfa("a*b");
        let words = d.enumerate_words(3, 100).unwrap();
        assert_eq!(words[&1], vec!["b"]);
        assert_eq!(words[&2], vec!["ab"]);
        assert_eq!(words[&3], vec!["aab"]);
        assert!(d.enumerate_words(0, 100).unwrap().is_empty());
        assert!(matches!(dfa("Σ*").enumerate_words(10, 100), Err(Error::Budget(_))));
    }

    #[test]
    fn table_export_marks_start_and_accepting() {
        let table = dfa("a").minimize().to_table();
        assert!(table.lines().nth(1).unwrap().starts_with("->"));
        assert!(table.contains('*'));
    }
}
