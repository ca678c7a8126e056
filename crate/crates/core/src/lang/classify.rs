//! Refined letter labels deciding how each entry of a simple permutation
//! may be inflated.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::BuiltinGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A,
    B,
    B1,
    B2,
    C1,
    C2,
    D,
    D1,
    D2,
    E,
    F,
}

impl Label {
    /// The refined labels used by a grid, in variable order.
    pub fn for_grid(grid: BuiltinGrid) -> &'static [Label] {
        use Label::*;
        match grid {
            BuiltinGrid::G1 => &[A, B, C1, C2, D],
            BuiltinGrid::G2 => &[A, B, C1, C2, D1, D2, E, F],
            BuiltinGrid::G3 => &[A, B1, B2, C1, C2, D],
        }
    }

    /// The cell letter the label refines.
    pub fn letter(self) -> char {
        use Label::*;
        match self {
            A => 'a',
            B | B1 | B2 => 'b',
            C1 | C2 => 'c',
            D | D1 | D2 => 'd',
            E => 'e',
            F => 'f',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format!("{self:?}").to_lowercase())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordType {
    TypeA,
    TypeB,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedWord {
    pub grid: BuiltinGrid,
    pub word: String,
    pub labels: Vec<Label>,
    /// Only set for G1.
    pub word_type: Option<WordType>,
    /// 0-based positions of the first `b` and first `d`, if any.
    pub first_b: Option<usize>,
    pub first_d: Option<usize>,
}

impl ClassifiedWord {
    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn has(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }

    /// Checks the at-most-one facts that hold for words of the simple
    /// languages.
    pub fn check_multiplicity(&self) -> Result<()> {
        let limited: &[Label] = match self.grid {
            BuiltinGrid::G1 => &[Label::C2],
            BuiltinGrid::G2 => &[Label::D2],
            BuiltinGrid::G3 => &[Label::B2, Label::C2],
        };
        for &label in limited {
            if self.count(label) > 1 {
                return Err(Error::Classification(format!(
                    "{} word {:?} has {} letters labelled {label}",
                    self.grid,
                    self.word,
                    self.count(label)
                )));
            }
        }
        Ok(())
    }
}

pub fn classify(grid: BuiltinGrid, word: &str) -> Result<ClassifiedWord> {
    let w: Vec<char> = word.chars().collect();
    let alphabet = grid.spec().alphabet();
    if let Some(bad) = w.iter().find(|c| !alphabet.contains(c)) {
        return Err(Error::InvalidWord(format!("letter {bad:?} is not in the {grid} alphabet")));
    }
    let before = |i: usize, c: char| w[..i].contains(&c);
    let after = |i: usize, c: char| w[i + 1..].contains(&c);
    let first_b = w.iter().position(|&c| c == 'b');
    let first_d = w.iter().position(|&c| c == 'd');
    let mut word_type = None;

    let labels: Vec<Label> = match grid {
        BuiltinGrid::G1 => {
            let labels = (0..w.len())
                .map(|i| match w[i] {
                    'a' => Label::A,
                    'b' => Label::B,
                    'c' if after(i, 'b') => Label::C1,
                    'c' => Label::C2,
                    _ => Label::D,
                })
                .collect();
            let no_c_after_b = first_b.is_none_or(|i| !after(i, 'c'));
            let first_c = w.iter().position(|&c| c == 'c');
            let no_d_after_c = first_c.is_none_or(|i| !after(i, 'd'));
            let b_before_a = match (first_b, w.iter().position(|&c| c == 'a')) {
                (_, None) => true,
                (Some(b), Some(a)) => b < a,
                (None, Some(_)) => false,
            };
            word_type = Some(if no_c_after_b && no_d_after_c && b_before_a {
                WordType::TypeA
            } else {
                WordType::TypeB
            });
            labels
        }
        BuiltinGrid::G2 => {
            let no_e = !w.contains(&'e');
            let few_f = w.iter().filter(|&&c| c == 'f').count() <= 1;
            (0..w.len())
                .map(|i| match w[i] {
                    'a' => Label::A,
                    'b' => Label::B,
                    'c' => {
                        let free = !before(i, 'b') && !before(i, 'c');
                        let straddled = before(i, 'd') && after(i, 'd');
                        if free && !straddled {
                            Label::C2
                        } else {
                            Label::C1
                        }
                    }
                    'd' if no_e && few_f && !after(i, 'c') => Label::D2,
                    'd' => Label::D1,
                    'e' => Label::E,
                    _ => Label::F,
                })
                .collect()
        }
        BuiltinGrid::G3 => {
            let c_label = |i: usize| if after(i, 'b') { Label::C1 } else { Label::C2 };
            let c2_before = |i: usize| (0..i).any(|j| w[j] == 'c' && c_label(j) == Label::C2);
            (0..w.len())
                .map(|i| match w[i] {
                    'a' => Label::A,
                    'b' => {
                        let clear = !before(i, 'a') && !before(i, 'b') && !c2_before(i);
                        if clear && !after(i, 'c') {
                            Label::B2
                        } else {
                            Label::B1
                        }
                    }
                    'c' => c_label(i),
                    _ => Label::D,
                })
                .collect()
        }
    };

    Ok(ClassifiedWord {
        grid,
        word: word.to_string(),
        labels,
        word_type,
        first_b,
        first_d,
    })
}
