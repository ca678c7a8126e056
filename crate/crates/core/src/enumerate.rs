//! Brute-force listings of pattern-avoidance classes.
//!
//! Listings are grown one length at a time by inserting the new maximum at
//! every position of every avoider of the previous length. Avoidance classes
//! are closed under deleting the maximum entry, so this reaches every
//! avoider, and each child has a unique parent, so it produces no duplicates.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Permutation, SumSkewStatus};

/// All avoiders of a basis, by length, each level sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassListing {
    basis: Vec<Permutation>,
    levels: Vec<Vec<Permutation>>,
}

impl ClassListing {
    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn max_length(&self) -> usize {
        self.levels.len()
    }

    /// The sorted avoiders of length `n`, `1 <= n <= max_length`.
    pub fn by_length(&self, n: usize) -> Result<&[Permutation]> {
        if n == 0 || n > self.levels.len() {
            return Err(Error::Argument(format!(
                "length {n} outside the enumerated range 1..={}",
                self.levels.len()
            )));
        }
        Ok(&self.levels[n - 1])
    }

    /// Number of avoiders of each length `1..=max_length`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.levels
            .get(perm.len().wrapping_sub(1))
            .is_some_and(|level| level.binary_search(perm).is_ok())
    }

    /// The simple permutations of length `n` in the listing, sorted.
    pub fn simples_of(&self, n: usize) -> Result<Vec<Permutation>> {
        Ok(self
            .by_length(n)?
            .iter()
            .filter(|p| p.is_simple())
            .cloned()
            .collect())
    }

    /// `(sum decomposable, skew decomposable)` counts at length `n`.
    pub fn decomposable_counts(&self, n: usize) -> Result<(usize, usize)> {
        let mut sum = 0;
        let mut skew = 0;
        for p in self.by_length(n)? {
            match p.sum_skew_status() {
                SumSkewStatus::SumDecomposable => sum += 1,
                SumSkewStatus::SkewDecomposable => skew += 1,
                SumSkewStatus::IndecomposableBoth => {}
            }
        }
        Ok((sum, skew))
    }

    /// Extends the listing by one length.
    fn grow(&mut self) {
        let basis = &self.basis;
        let prev = self.levels.last().expect("listing always has length 1");
        let mut next: Vec<Permutation> = prev
            .par_iter()
            .flat_map_iter(|parent| {
                (0..=parent.len()).filter_map(move |pos| {
                    let child = parent.insert_max(pos);
                    // the parent avoids the basis, so a new occurrence must use the new maximum
                    let ok = basis.iter().all(|b| !child.contains_with_max_at(b, pos));
                    ok.then_some(child)
                })
            })
            .collect();
        next.par_sort_unstable();
        self.levels.push(next);
    }
}

/// Lists every permutation of length `1..=max_len` avoiding `basis`.
pub fn enumerate_class(basis: &[Permutation], max_len: usize) -> Result<ClassListing> {
    if max_len < 1 {
        return Err(Error::Argument("max_len must be at least 1".into()));
    }
    if basis.is_empty() {
        return Err(Error::Argument("basis must be nonempty".into()));
    }
    if let Some(b) = basis.iter().find(|b| b.len() < 2) {
        return Err(Error::Argument(format!(
            "basis pattern {b} is too short; patterns need length at least 2"
        )));
    }
    let mut basis = basis.to_vec();
    basis.sort();
    basis.dedup();
    let mut listing = ClassListing {
        basis,
        levels: vec![vec![Permutation::identity(1)?]],
    };
    while listing.levels.len() < max_len {
        listing.grow();
    }
    Ok(listing)
}

/// Number of avoiders of length `n` that are not sum decomposable.
pub fn sum_indecomposable_count(basis: &[Permutation], n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let listing = enumerate_class(basis, n)?;
    Ok(listing
        .by_length(n)?
        .iter()
        .filter(|p| !p.is_sum_decomposable())
        .count())
}

/// On-disk cache of listing levels: one plain-text file per basis and
/// length, holding a `basis=<patterns> n=<len>` header and then one
/// permutation per line. The cache only saves recomputation; a missing or
/// malformed file is recomputed.
#[derive(Clone, Debug)]
pub struct ListingCache {
    dir: PathBuf,
}

impl ListingCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ListingCache { dir: dir.into() }
    }

    fn basis_key(basis: &[Permutation]) -> String {
        let mut parts: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        parts.sort();
        parts.join(",")
    }

    fn file_for(&self, basis: &[Permutation], n: usize) -> PathBuf {
        let key = Self::basis_key(basis).replace(',', "_");
        self.dir.join(format!("av_{key}_n{n}.txt"))
    }

    fn header(basis: &[Permutation], n: usize) -> String {
        format!("basis={} n={n}", Self::basis_key(basis))
    }

    /// Writes every level of the listing.
    pub fn store(&self, listing: &ClassListing) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        for n in 1..=listing.max_length() {
            let path = self.file_for(listing.basis(), n);
            let mut out = std::io::BufWriter::new(fs::File::create(&path)?);
            writeln!(out, "{}", Self::header(listing.basis(), n))?;
            for p in listing.by_length(n)? {
                writeln!(out, "{p}")?;
            }
            out.flush()?;
        }
        Ok(())
    }

    /// Reads one level, or `None` if the file is absent or does not match.
    pub fn load_level(&self, basis: &[Permutation], n: usize) -> Option<Vec<Permutation>> {
        let file = fs::File::open(self.file_for(basis, n)).ok()?;
        let mut lines = BufReader::new(file).lines();
        if lines.next()?.ok()? != Self::header(basis, n) {
            return None;
        }
        let mut level = Vec::new();
        for line in lines {
            let p: Permutation = line.ok()?.parse().ok()?;
            if p.len() != n {
                return None;
            }
            level.push(p);
        }
        level.windows(2).all(|w| w[0] < w[1]).then_some(level)
    }

    /// Lists the class, reusing cached levels and extending past them.
    pub fn enumerate(&self, basis: &[Permutation], max_len: usize) -> Result<ClassListing> {
        let mut sorted = basis.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut levels = Vec::new();
        for n in 1..=max_len {
            match self.load_level(&sorted, n) {
                Some(level) => levels.push(level),
                None => break,
            }
        }
        let listing = if levels.is_empty() {
            enumerate_class(&sorted, max_len)?
        } else {
            let mut listing = ClassListing { basis: sorted, levels };
            while listing.levels.len() < max_len {
                listing.grow();
            }
            listing
        };
        self.store(&listing)?;
        Ok(listing)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::main_basis;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn main_class_counts() {
        let listing = enumerate_class(&main_basis(), 6).unwrap();
        assert_eq!(listing.counts(), vec![1, 2, 6, 22, 88, 363]);
    }

    #[test]
    fn trivial_and_catalan_classes() {
        assert_eq!(enumerate_class(&[p("21")], 5).unwrap().counts(), vec![1; 5]);
        assert_eq!(
            enumerate_class(&[p("312")], 6).unwrap().counts(),
            vec![1, 2, 5, 14, 42, 132]
        );
    }

    #[test]
    fn argument_errors() {
        assert!(enumerate_class(&main_basis(), 0).is_err());
        assert!(enumerate_class(&[p("1")], 3).is_err());
        let listing = enumerate_class(&main_basis(), 3).unwrap();
        assert!(listing.by_length(4).is_err());
        assert!(listing.simples_of(0).is_err());
    }

    #[test]
    fn simples_and_decomposables() {
        let listing = enumerate_class(&main_basis(), 8).unwrap();
        assert_eq!(listing.simples_of(4).unwrap(), vec![p("2413"), p("3142")]);
        assert!(listing.simples_of(3).unwrap().is_empty());
        assert_eq!(listing.decomposable_counts(2).unwrap(), (1, 1));
        assert_eq!(listing.decomposable_counts(4).unwrap(), (10, 10));
        assert_eq!(listing.decomposable_counts(8).unwrap(), (2456, 1935));
    }

    #[test]
    fn shifted_catalan() {
        assert_eq!(sum_indecomposable_count(&[p("312")], 1).unwrap(), 1);
        assert_eq!(sum_indecomposable_count(&[p("312")], 4).unwrap(), 5);
        assert_eq!(sum_indecomposable_count(&[p("312")], 6).unwrap(), 42);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ListingCache::new(dir.path());
        let first = cache.enumerate(&main_basis(), 5).unwrap();
        let text = fs::read_to_string(dir.path().join("av_3124_4312_n4.txt")).unwrap();
        assert!(text.starts_with("basis=3124,4312 n=4\n"));
        assert_eq!(text.lines().count(), 23);
        // reuses the stored levels and extends past them
        let second = cache.enumerate(&main_basis(), 6).unwrap();
        assert_eq!(second.counts(), vec![1, 2, 6, 22, 88, 363]);
        assert_eq!(second.by_length(5).unwrap(), first.by_length(5).unwrap());
    }

    #[test]
    fn corrupt_cache_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ListingCache::new(dir.path());
        fs::write(dir.path().join("av_3124_4312_n1.txt"), "basis=3124,4312 n=1\n21\n").unwrap();
        assert!(cache.load_level(&main_basis(), 1).is_none());
        assert_eq!(cache.enumerate(&main_basis(), 4).unwrap().counts(), vec![1, 2, 6, 22]);
    }
}
