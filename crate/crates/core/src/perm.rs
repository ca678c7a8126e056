//! Permutations in one-line notation, pattern containment, intervals,
//! simplicity, inflation and substitution decomposition.
//!
//! Positions and values are 1-based on the public surface. A permutation of
//! length `n` is a rearrangement of `1..=n`; the empty permutation is not
//! representable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, `n >= 1`, in one-line notation.
///
/// The derived ordering is lexicographic on the value sequence, which is the
/// order listings are stored in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

/// A run of consecutive positions whose values are consecutive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    /// First position, 1-based.
    pub start: usize,
    pub length: usize,
}

impl Interval {
    /// Last position covered, 1-based and inclusive.
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

/// Whether a permutation is a sum `12[σ, τ]`, a skew sum `21[σ, τ]`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumSkewStatus {
    SumDecomposable,
    SkewDecomposable,
    IndecomposableBoth,
}

/// Result of [`Permutation::substitution_decompose`]: `perm = skeleton[blocks...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking that they form
    /// a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation(values))
    }

    /// The increasing permutation `12…n`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        Ok(Permutation((1..=n as u32).collect()))
    }

    /// The decreasing permutation `n…21`.
    pub fn decreasing(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        Ok(Permutation((1..=n as u32).rev().collect()))
    }

    /// The permutation order-isomorphic to a sequence of distinct keys.
    pub fn standardize<K: Ord>(keys: &[K]) -> Result<Self> {
        if keys.is_empty() {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&i, &j| keys[i].cmp(&keys[j]));
        if order.windows(2).any(|w| keys[w[0]] == keys[w[1]]) {
            return Err(Error::InvalidPermutation(
                "cannot standardize a sequence with repeated keys".into(),
            ));
        }
        let mut values = vec![0u32; keys.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Ok(Permutation(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The one-line notation as a slice of 1-based values.
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Value at a 1-based position.
    pub fn at(&self, position: usize) -> u32 {
        self.0[position - 1]
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        embeds(&self.0, &pattern.0, None)
    }

    /// True iff `self` contains none of the basis patterns.
    pub fn avoids_all(&self, basis: &[Permutation]) -> bool {
        basis.iter().all(|b| !self.contains(b))
    }

    /// Like [`contains`](Self::contains) but only considers occurrences that
    /// use the entry at 0-based `position` as the image of the pattern's
    /// maximum. When `position` holds the global maximum, every occurrence
    /// using that entry has this shape.
    pub(crate) fn contains_with_max_at(&self, pattern: &Permutation, position: usize) -> bool {
        let top = pattern.0.len() as u32;
        let q = pattern.0.iter().position(|&v| v == top).unwrap();
        embeds(&self.0, &pattern.0, Some((q, position)))
    }

    /// Inserts the value `n + 1` before 0-based `position` (`position == n`
    /// appends).
    pub fn insert_max(&self, position: usize) -> Permutation {
        let mut values = Vec::with_capacity(self.0.len() + 1);
        values.extend_from_slice(&self.0[..position]);
        values.push(self.0.len() as u32 + 1);
        values.extend_from_slice(&self.0[position..]);
        Permutation(values)
    }

    /// Deletes the entry at 1-based `position` and renormalizes ranks.
    /// Returns `None` for a length-1 permutation or a position out of range.
    pub fn delete(&self, position: usize) -> Option<Permutation> {
        if self.0.len() == 1 || position == 0 || position > self.0.len() {
            return None;
        }
        let removed = self.0[position - 1];
        let values = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != position - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Some(Permutation(values))
    }

    /// True iff positions `start..start+length` (1-based) form an interval.
    pub fn is_interval(&self, start: usize, length: usize) -> bool {
        if length == 0 || start == 0 || start + length - 1 > self.0.len() {
            return false;
        }
        let window = &self.0[start - 1..start - 1 + length];
        let lo = *window.iter().min().unwrap();
        let hi = *window.iter().max().unwrap();
        (hi - lo) as usize + 1 == length
    }

    /// Some interval with `1 < length < n`, choosing the smallest start and
    /// then the smallest length.
    pub fn find_nontrivial_interval(&self) -> Option<Interval> {
        let n = self.0.len();
        for s in 0..n {
            let mut lo = self.0[s];
            let mut hi = self.0[s];
            for e in s + 1..n {
                lo = lo.min(self.0[e]);
                hi = hi.max(self.0[e]);
                let length = e - s + 1;
                if length == n {
                    break;
                }
                if (hi - lo) as usize + 1 == length {
                    return Some(Interval { start: s + 1, length });
                }
            }
        }
        None
    }

    /// Simple means the only intervals are singletons and the whole
    /// permutation, so `1`, `12` and `21` count as simple.
    pub fn is_simple(&self) -> bool {
        self.find_nontrivial_interval().is_none()
    }

    pub fn sum_skew_status(&self) -> SumSkewStatus {
        let n = self.0.len();
        let mut hi = 0;
        let mut lo = u32::MAX;
        for j in 1..n {
            hi = hi.max(self.0[j - 1]);
            lo = lo.min(self.0[j - 1]);
            if hi as usize == j {
                return SumSkewStatus::SumDecomposable;
            }
            if lo as usize == n - j + 1 {
                return SumSkewStatus::SkewDecomposable;
            }
        }
        SumSkewStatus::IndecomposableBoth
    }

    pub fn is_sum_decomposable(&self) -> bool {
        self.sum_skew_status() == SumSkewStatus::SumDecomposable
    }

    pub fn is_skew_decomposable(&self) -> bool {
        self.sum_skew_status() == SumSkewStatus::SkewDecomposable
    }

    /// `skeleton[blocks...]`: every entry of the skeleton is replaced by a
    /// block of consecutive positions and values, order-isomorphic to the
    /// corresponding block permutation.
    pub fn inflate(skeleton: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
        let k = skeleton.len();
        if blocks.len() != k {
            return Err(Error::Argument(format!(
                "skeleton of length {k} needs {k} blocks, got {}",
                blocks.len()
            )));
        }
        // offset[v] = total size of blocks whose skeleton value is below v
        let mut size_by_value = vec![0u32; k + 1];
        for (i, &v) in skeleton.0.iter().enumerate() {
            size_by_value[v as usize] = blocks[i].len() as u32;
        }
        let mut offset = vec![0u32; k + 1];
        for v in 2..=k {
            offset[v] = offset[v - 1] + size_by_value[v - 1];
        }
        let values = skeleton
            .0
            .iter()
            .zip(blocks)
            .flat_map(|(&v, block)| {
                let shift = offset[v as usize];
                block.0.iter().map(move |&b| b + shift)
            })
            .collect();
        Ok(Permutation(values))
    }

    /// The unique simple skeleton and its blocks. For skeleton `12`
    /// (resp. `21`) the first block is sum (resp. skew) indecomposable;
    /// for longer skeletons the blocks are the maximal proper intervals.
    pub fn substitution_decompose(&self) -> Result<Decomposition> {
        let n = self.0.len();
        if n < 2 {
            return Err(Error::Argument(
                "substitution decomposition needs length at least 2".into(),
            ));
        }
        let mut hi = 0;
        let mut lo = u32::MAX;
        for j in 1..n {
            hi = hi.max(self.0[j - 1]);
            lo = lo.min(self.0[j - 1]);
            if hi as usize == j {
                return Ok(self.split_at(j, Permutation(vec![1, 2])));
            }
            if lo as usize == n - j + 1 {
                return Ok(self.split_at(j, Permutation(vec![2, 1])));
            }
        }

        // Neither sum nor skew decomposable: the maximal proper intervals
        // partition the positions, and the one starting at s is the longest
        // proper interval starting at s.
        let mut bounds = Vec::new();
        let mut s = 0;
        while s < n {
            let mut best = 1;
            let mut lo = self.0[s];
            let mut hi = self.0[s];
            for e in s + 1..n {
                lo = lo.min(self.0[e]);
                hi = hi.max(self.0[e]);
                let length = e - s + 1;
                if length < n && (hi - lo) as usize + 1 == length {
                    best = length;
                }
            }
            bounds.push((s, best));
            s += best;
        }
        let reps: Vec<u32> = bounds.iter().map(|&(s, _)| self.0[s]).collect();
        let skeleton = Permutation::standardize(&reps)?;
        let blocks = bounds
            .iter()
            .map(|&(s, len)| Permutation::standardize(&self.0[s..s + len]))
            .collect::<Result<Vec<_>>>()?;
        if !skeleton.is_simple() || skeleton.len() < 4 {
            return Err(Error::Internal(format!(
                "decomposition of {self} produced non-simple skeleton {skeleton}"
            )));
        }
        Ok(Decomposition { skeleton, blocks })
    }

    fn split_at(&self, j: usize, skeleton: Permutation) -> Decomposition {
        let first = Permutation::standardize(&self.0[..j]).unwrap();
        let second = Permutation::standardize(&self.0[j..]).unwrap();
        Decomposition {
            skeleton,
            blocks: vec![first, second],
        }
    }
}

/// Backtracking search for an occurrence of `pattern` in `hay`. `forced`
/// pins pattern index `q` to haystack index `p`.
fn embeds(hay: &[u32], pattern: &[u32], forced: Option<(usize, usize)>) -> bool {
    fn go(
        hay: &[u32],
        pattern: &[u32],
        forced: Option<(usize, usize)>,
        k: usize,
        start: usize,
        chosen: &mut Vec<u32>,
    ) -> bool {
        if k == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - k;
        if hay.len() < start + remaining {
            return false;
        }
        let (lo, hi) = match forced {
            Some((q, p)) if k == q => (p.max(start), p + 1),
            Some((q, p)) if k < q => (start, p),
            Some((_, p)) => (start.max(p + 1), hay.len()),
            None => (start, hay.len()),
        };
        let hi = hi.min(hay.len() + 1 - remaining);
        for j in lo..hi {
            let v = hay[j];
            let consistent = chosen
                .iter()
                .zip(pattern)
                .all(|(&c, &pv)| (pv < pattern[k]) == (c < v));
            if consistent {
                chosen.push(v);
                if go(hay, pattern, forced, k + 1, j + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if pattern.len() > hay.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    go(hay, pattern, forced, 0, 0, &mut chosen)
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9` (e.g. `234165`), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::InvalidPermutation(format!("{s:?}: bad digit {ch:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated basis such as `3124,4312`.
pub fn parse_basis(s: &str) -> Result<Vec<Permutation>> {
    let basis = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Permutation>>>()?;
    if basis.is_empty() {
        return Err(Error::Argument("empty basis".into()));
    }
    Ok(basis)
}

/// The basis `{3124, 4312}` of the class this crate is about.
pub fn main_basis() -> Vec<Permutation> {
    vec![
        Permutation(vec![3, 1, 2, 4]),
        Permutation(vec![4, 3, 1, 2]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("120".parse::<Permutation>().is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(p("4756231").contains(&p("4312")));
        assert!(!p("123").contains(&p("21")));
        assert!(p("2413").contains(&p("1")));
        assert!(!p("12").contains(&p("123")));
    }

    #[test]
    fn avoidance_examples() {
        let basis = main_basis();
        assert!(p("2413").avoids_all(&basis));
        assert!(!p("3124").avoids_all(&basis));
        assert!(p("1").avoids_all(&basis));
    }

    #[test]
    fn forced_containment_uses_the_pinned_entry() {
        // 31245: the 3124 occurrence 3,1,2,4 uses position 3 (0-based) as its max,
        // 3,1,2,5 uses position 4.
        let hay = p("31245");
        let pat = p("3124");
        assert!(hay.contains_with_max_at(&pat, 3));
        assert!(hay.contains_with_max_at(&pat, 4));
        assert!(!p("53124").contains_with_max_at(&pat, 0));
    }

    #[test]
    fn interval_examples() {
        let tau = p("31468572");
        // positions 4..=7 hold 6,8,5,7, but 4,6,8,5,7 at 3..=7 starts earlier
        assert!(tau.is_interval(4, 4));
        let mut entries: Vec<u32> = (4..=7).map(|i| tau.at(i)).collect();
        entries.sort();
        assert_eq!(entries, vec![5, 6, 7, 8]);
        assert_eq!(tau.find_nontrivial_interval(), Some(Interval { start: 3, length: 5 }));
        assert_eq!(p("63814725").find_nontrivial_interval(), None);
        assert_eq!(p("1").find_nontrivial_interval(), None);
    }

    #[test]
    fn simplicity_examples() {
        assert!(p("2413").is_simple());
        assert!(!p("123").is_simple());
        assert!(p("12").is_simple());
        assert!(p("21").is_simple());
        assert!(p("1").is_simple());
        assert!(p("63814725").is_simple());
    }

    #[test]
    fn inflation_examples() {
        let got = Permutation::inflate(&p("3142"), &[p("231"), p("21"), p("123"), p("1")]).unwrap();
        assert_eq!(got, p("564217893"));
        assert_eq!(Permutation::inflate(&p("1"), &[p("2413")]).unwrap(), p("2413"));
        assert_eq!(Permutation::inflate(&p("12"), &[p("1"), p("1")]).unwrap(), p("12"));
        assert!(Permutation::inflate(&p("12"), &[p("1")]).is_err());
    }

    #[test]
    fn sum_skew_examples() {
        assert_eq!(p("12").sum_skew_status(), SumSkewStatus::SumDecomposable);
        assert_eq!(p("231").sum_skew_status(), SumSkewStatus::SkewDecomposable);
        assert_eq!(p("2413").sum_skew_status(), SumSkewStatus::IndecomposableBoth);
        assert_eq!(p("1").sum_skew_status(), SumSkewStatus::IndecomposableBoth);
        assert_eq!(p("21").sum_skew_status(), SumSkewStatus::SkewDecomposable);
    }

    #[test]
    fn decomposition_examples() {
        let d = p("564217893").substitution_decompose().unwrap();
        assert_eq!(d.skeleton, p("3142"));
        assert_eq!(d.blocks, vec![p("231"), p("21"), p("123"), p("1")]);

        let d = p("123").substitution_decompose().unwrap();
        assert_eq!(d.skeleton, p("12"));
        assert_eq!(d.blocks, vec![p("1"), p("12")]);

        let d = p("2413").substitution_decompose().unwrap();
        assert_eq!(d.skeleton, p("2413"));
        assert_eq!(d.blocks, vec![p("1"); 4]);

        // first block of a skew sum is skew indecomposable
        let d = p("321").substitution_decompose().unwrap();
        assert_eq!(d.skeleton, p("21"));
        assert_eq!(d.blocks, vec![p("1"), p("21")]);

        assert!(p("1").substitution_decompose().is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("234165").to_string(), "234165");
        let long = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
    }

    #[test]
    fn delete_and_insert() {
        assert_eq!(p("2413").delete(2), Some(p("213")));
        assert_eq!(p("1").delete(1), None);
        assert_eq!(p("213").insert_max(1), p("2413"));
        assert_eq!(p("1").insert_max(1), p("12"));
    }

    #[test]
    fn standardize_rejects_ties() {
        assert_eq!(Permutation::standardize(&[10, 30, 20]).unwrap(), p("132"));
        assert!(Permutation::standardize(&[1, 1]).is_err());
    }
}
