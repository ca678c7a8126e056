//! Geometric grid classes: standard figures with a consistent orientation,
//! and the map from words over the cell alphabet to permutations.
//!
//! Cells are indexed Cartesian-style from 1, first by column (left to right)
//! then by row (bottom to top). Cell `(k, l)` occupies `[k-1, k] x [l-1, l]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Contents of one cell of a grid matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellContent {
    Empty,
    /// Segment of slope +1 from `(k-1, l-1)` to `(k, l)`.
    Inc,
    /// Segment of slope -1 from `(k-1, l)` to `(k, l-1)`.
    Dec,
    /// Single point at the cell center.
    Point,
}

impl CellContent {
    fn token(self) -> &'static str {
        match self {
            CellContent::Empty => "empty",
            CellContent::Inc => "inc",
            CellContent::Dec => "dec",
            CellContent::Point => "point",
        }
    }
}

/// Directed traversal of a segment cell: start corner and unit diagonal step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    pub base: (i64, i64),
    pub dir: (i64, i64),
}

/// One nonempty cell and its letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub letter: char,
    pub col: i64,
    pub row: i64,
    pub content: CellContent,
    /// Present exactly for segment cells.
    pub orientation: Option<Orientation>,
}

/// The three grid classes used to cover the simple permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BuiltinGrid {
    G1,
    G2,
    G3,
}

impl BuiltinGrid {
    pub const ALL: [BuiltinGrid; 3] = [BuiltinGrid::G1, BuiltinGrid::G2, BuiltinGrid::G3];

    pub fn spec(self) -> GridSpec {
        builtin_spec(self)
    }
}

impl fmt::Display for BuiltinGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinGrid::G1 => "G1",
            BuiltinGrid::G2 => "G2",
            BuiltinGrid::G3 => "G3",
        })
    }
}

impl FromStr for BuiltinGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G1" => Ok(BuiltinGrid::G1),
            "G2" => Ok(BuiltinGrid::G2),
            "G3" => Ok(BuiltinGrid::G3),
            _ => Err(Error::Argument(format!("unknown grid {s:?}; expected g1, g2 or g3"))),
        }
    }
}

/// A grid matrix with a consistent orientation and an ordered cell alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub cols: i64,
    pub rows: i64,
    /// Nonempty cells in alphabet order.
    pub cells: Vec<Cell>,
}

fn seg(letter: char, col: i64, row: i64, content: CellContent, base: (i64, i64), dir: (i64, i64)) -> Cell {
    Cell {
        letter,
        col,
        row,
        content,
        orientation: Some(Orientation { base, dir }),
    }
}

fn point(letter: char, col: i64, row: i64) -> Cell {
    Cell {
        letter,
        col,
        row,
        content: CellContent::Point,
        orientation: None,
    }
}

/// The fixed grids G1, G2, G3 with the orientations their languages assume.
pub fn builtin_spec(grid: BuiltinGrid) -> GridSpec {
    use CellContent::{Dec, Inc};
    match grid {
        BuiltinGrid::G1 => GridSpec {
            cols: 3,
            rows: 2,
            cells: vec![
                seg('a', 1, 1, Inc, (1, 1), (-1, -1)),
                seg('b', 2, 1, Dec, (1, 1), (1, -1)),
                seg('c', 2, 2, Inc, (1, 1), (1, 1)),
                seg('d', 3, 2, Dec, (3, 1), (-1, 1)),
            ],
        },
        BuiltinGrid::G2 => GridSpec {
            cols: 4,
            rows: 4,
            cells: vec![
                seg('a', 1, 1, Inc, (1, 1), (-1, -1)),
                seg('b', 2, 2, Inc, (2, 2), (-1, -1)),
                seg('c', 3, 2, Dec, (2, 2), (1, -1)),
                seg('d', 3, 4, Inc, (2, 3), (1, 1)),
                seg('e', 4, 1, Dec, (3, 1), (1, -1)),
                seg('f', 4, 3, Inc, (3, 2), (1, 1)),
            ],
        },
        BuiltinGrid::G3 => GridSpec {
            cols: 3,
            rows: 3,
            cells: vec![
                seg('a', 1, 1, Inc, (1, 1), (-1, -1)),
                seg('b', 2, 1, Dec, (1, 1), (1, -1)),
                seg('c', 2, 3, Inc, (1, 2), (1, 1)),
                point('d', 3, 2),
            ],
        },
    }
}

impl GridSpec {
    pub fn alphabet(&self) -> Vec<char> {
        self.cells.iter().map(|c| c.letter).collect()
    }

    pub fn cell(&self, letter: char) -> Option<&Cell> {
        self.cells.iter().find(|c| c.letter == letter)
    }

    /// Content at `(col, row)`; cells not listed are empty.
    pub fn content_at(&self, col: i64, row: i64) -> CellContent {
        self.cells
            .iter()
            .find(|c| c.col == col && c.row == row)
            .map_or(CellContent::Empty, |c| c.content)
    }

    /// Every violated structural rule; empty iff the spec is valid.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut letters = BTreeSet::new();
        let mut places = BTreeSet::new();
        for cell in &self.cells {
            let at = format!("cell {} at ({}, {})", cell.letter, cell.col, cell.row);
            if !letters.insert(cell.letter) {
                problems.push(format!("{at}: letter used twice"));
            }
            if !places.insert((cell.col, cell.row)) {
                problems.push(format!("{at}: position used twice"));
            }
            if cell.col < 1 || cell.col > self.cols || cell.row < 1 || cell.row > self.rows {
                problems.push(format!("{at}: outside the {}x{} grid", self.cols, self.rows));
            }
            match (cell.content, cell.orientation) {
                (CellContent::Empty, _) => problems.push(format!("{at}: listed cell is empty")),
                (CellContent::Point, Some(_)) => {
                    problems.push(format!("{at}: point cell carries an orientation"))
                }
                (CellContent::Point, None) => {
                    let shares = self.cells.iter().any(|o| {
                        o.letter != cell.letter && (o.col == cell.col || o.row == cell.row)
                    });
                    if shares {
                        problems.push(format!("{at}: point cell shares its row or column"));
                    }
                }
                (_, None) => problems.push(format!("{at}: segment cell has no orientation")),
                (content, Some(o)) => {
                    let (k, l) = (cell.col, cell.row);
                    let ends = if content == CellContent::Inc {
                        [(k - 1, l - 1), (k, l)]
                    } else {
                        [(k - 1, l), (k, l - 1)]
                    };
                    let tip = (o.base.0 + o.dir.0, o.base.1 + o.dir.1);
                    if o.dir.0.abs() != 1 || o.dir.1.abs() != 1 {
                        problems.push(format!("{at}: direction is not a unit diagonal step"));
                    }
                    let slope_ok = match content {
                        CellContent::Inc => o.dir.0 * o.dir.1 == 1,
                        _ => o.dir.0 * o.dir.1 == -1,
                    };
                    if !slope_ok {
                        problems.push(format!("{at}: direction does not match the slope"));
                    }
                    if !((o.base == ends[0] && tip == ends[1]) || (o.base == ends[1] && tip == ends[0])) {
                        problems.push(format!("{at}: base and direction do not traverse the segment"));
                    }
                }
            }
        }
        for a in &self.cells {
            for b in &self.cells {
                let (Some(oa), Some(ob)) = (a.orientation, b.orientation) else {
                    continue;
                };
                if a.letter >= b.letter {
                    continue;
                }
                if a.row == b.row && oa.dir.1 != ob.dir.1 {
                    problems.push(format!(
                        "cells {} and {} share row {} but point in different vertical directions",
                        a.letter, b.letter, a.row
                    ));
                }
                if a.col == b.col && oa.dir.0 != ob.dir.0 {
                    problems.push(format!(
                        "cells {} and {} share column {} but point in different horizontal directions",
                        a.letter, b.letter, a.col
                    ));
                }
            }
        }
        problems
    }

    pub fn validate(&self) -> bool {
        self.diagnostics().is_empty()
    }

    /// Maps a word to the permutation drawn by it: the `i`-th letter is placed
    /// at distance `i/(n+1)` from its cell's base point (point cells use the
    /// cell center), then entries are ranked bottom to top and read left to
    /// right.
    ///
    /// Coordinates are exact rationals over the common denominator `2(n+1)`,
    /// stored as their integer numerators.
    pub fn decode(&self, word: &str) -> Result<Permutation> {
        let letters: Vec<char> = word.chars().collect();
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let n = letters.len() as i64;
        let scale = 2 * (n + 1);
        let mut points = Vec::with_capacity(letters.len());
        let mut used_points = BTreeSet::new();
        for (i, &ch) in letters.iter().enumerate() {
            let cell = self
                .cell(ch)
                .ok_or_else(|| Error::InvalidWord(format!("letter {ch:?} is not in the alphabet")))?;
            let t = i as i64 + 1;
            let xy = match cell.orientation {
                Some(o) => (
                    scale * o.base.0 + 2 * t * o.dir.0,
                    scale * o.base.1 + 2 * t * o.dir.1,
                ),
                None => {
                    if !used_points.insert(ch) {
                        return Err(Error::InvalidWord(format!(
                            "{word:?} uses point cell {ch:?} more than once"
                        )));
                    }
                    ((2 * cell.col - 1) * (n + 1), (2 * cell.row - 1) * (n + 1))
                }
            };
            points.push(xy);
        }
        points.sort_unstable_by_key(|p| p.0);
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Internal(format!("{word:?}: two entries share an x-coordinate")));
        }
        let ys: Vec<i64> = points.iter().map(|p| p.1).collect();
        Permutation::standardize(&ys)
            .map_err(|_| Error::Internal(format!("{word:?}: two entries share a y-coordinate")))
    }

    /// The image of every valid word of length `n`, i.e. the class at length `n`.
    pub fn class_by_decode(&self, n: usize, budget: u64) -> Result<BTreeSet<Permutation>> {
        if n < 1 {
            return Err(Error::Argument("length must be at least 1".into()));
        }
        let alphabet = self.alphabet();
        let k = alphabet.len() as u64;
        let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(k));
        match total {
            Some(t) if t <= budget => {}
            _ => {
                return Err(Error::Budget(format!(
                    "{}^{n} words exceeds the budget of {budget}",
                    alphabet.len()
                )))
            }
        }
        let total = total.unwrap();
        let points: Vec<char> = self
            .cells
            .iter()
            .filter(|c| c.content == CellContent::Point)
            .map(|c| c.letter)
            .collect();
        (0..total)
            .into_par_iter()
            .try_fold(BTreeSet::new, |mut acc, mut index| {
                let mut word = String::with_capacity(n);
                for _ in 0..n {
                    word.push(alphabet[(index % k) as usize]);
                    index /= k;
                }
                if !points.iter().any(|&p| word.chars().filter(|&c| c == p).count() > 1) {
                    acc.insert(self.decode(&word)?);
                }
                Ok(acc)
            })
            .try_reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                Ok(a)
            })
    }

    /// Line format: `letter col row content base_x base_y dir_x dir_y`, with
    /// base and direction omitted for point cells. A leading
    /// `grid <cols> <rows>` line records the dimensions.
    pub fn to_text(&self) -> String {
        let mut out = format!("grid {} {}\n", self.cols, self.rows);
        for c in &self.cells {
            match c.orientation {
                Some(o) => out.push_str(&format!(
                    "{} {} {} {} {} {} {} {}\n",
                    c.letter,
                    c.col,
                    c.row,
                    c.content.token(),
                    o.base.0,
                    o.base.1,
                    o.dir.0,
                    o.dir.1
                )),
                None => out.push_str(&format!("{} {} {} {}\n", c.letter, c.col, c.row, c.content.token())),
            }
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output. Without a `grid` line the
    /// dimensions are the largest column and row used.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |line: &str, why: &str| Error::Argument(format!("grid line {line:?}: {why}"));
        let int = |line: &str, s: &str| s.parse::<i64>().map_err(|_| bad(line, "expected an integer"));
        let mut dims = None;
        let mut cells = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts[0] == "grid" {
                if parts.len() != 3 {
                    return Err(bad(line, "expected `grid <cols> <rows>`"));
                }
                dims = Some((int(line, parts[1])?, int(line, parts[2])?));
                continue;
            }
            let mut chars = parts[0].chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(ch), None) => ch,
                _ => return Err(bad(line, "letter must be a single character")),
            };
            if parts.len() < 4 {
                return Err(bad(line, "too few fields"));
            }
            let col = int(line, parts[1])?;
            let row = int(line, parts[2])?;
            let content = match parts[3] {
                "inc" | "+1" => CellContent::Inc,
                "dec" | "-1" => CellContent::Dec,
                "point" | "•" => CellContent::Point,
                _ => return Err(bad(line, "content must be inc, dec or point")),
            };
            let orientation = match (content, parts.len()) {
                (CellContent::Point, 4) => None,
                (CellContent::Point, _) => return Err(bad(line, "point cells take no orientation")),
                (_, 8) => Some(Orientation {
                    base: (int(line, parts[4])?, int(line, parts[5])?),
                    dir: (int(line, parts[6])?, int(line, parts[7])?),
                }),
                _ => return Err(bad(line, "segment cells need base_x base_y dir_x dir_y")),
            };
            cells.push(Cell {
                letter,
                col,
                row,
                content,
                orientation,
            });
        }
        let (cols, rows) = dims.unwrap_or_else(|| {
            (
                cells.iter().map(|c| c.col).max().unwrap_or(0),
                cells.iter().map(|c| c.row).max().unwrap_or(0),
            )
        });
        Ok(GridSpec { cols, rows, cells })
    }
}

/// Default cap on `|alphabet|^n` for [`GridSpec::class_by_decode`]; admits
/// G2 up to length 8 and G1/G3 up to length 10.
pub const DEFAULT_DECODE_BUDGET: u64 = 1 << 21;

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_alphabets() {
        assert_eq!(builtin_spec(BuiltinGrid::G1).alphabet(), vec!['a', 'b', 'c', 'd']);
        assert_eq!(
            builtin_spec(BuiltinGrid::G2).alphabet(),
            vec!['a', 'b', 'c', 'd', 'e', 'f']
        );
        let g3 = builtin_spec(BuiltinGrid::G3);
        let points = g3.cells.iter().filter(|c| c.content == CellContent::Point).count();
        assert_eq!(points, 1);
        assert_eq!(g3.content_at(3, 2), CellContent::Point);
        assert!("g4".parse::<BuiltinGrid>().is_err());
    }

    #[test]
    fn builtins_validate() {
        for g in BuiltinGrid::ALL {
            assert!(g.spec().validate(), "{g}: {:?}", g.spec().diagnostics());
        }
    }

    #[test]
    fn flipped_direction_is_rejected() {
        let mut spec = builtin_spec(BuiltinGrid::G1);
        spec.cells[1].orientation.as_mut().unwrap().dir = (-1, 1);
        assert!(!spec.validate());
    }

    #[test]
    fn point_sharing_a_row_is_rejected() {
        let mut spec = builtin_spec(BuiltinGrid::G3);
        // move the point into row 1, alongside a and b
        spec.cells[3].row = 1;
        assert!(!spec.validate());
        assert!(spec.diagnostics().iter().any(|d| d.contains("shares its row")));
    }

    #[test]
    fn decode_examples() {
        let g1 = builtin_spec(BuiltinGrid::G1);
        assert_eq!(g1.decode("bacddb").unwrap(), p("234165"));
        assert_eq!(g1.decode("a").unwrap(), p("1"));
        assert_eq!(g1.decode("aa").unwrap(), p("12"));
        assert_eq!(g1.decode("aaaa").unwrap(), p("1234"));
        assert_eq!(g1.decode("bbbb").unwrap(), p("4321"));
        assert!(g1.decode("").is_err());
        assert!(g1.decode("ax").is_err());
    }

    #[test]
    fn point_cell_used_twice() {
        let g3 = builtin_spec(BuiltinGrid::G3);
        assert!(matches!(g3.decode("dad"), Err(Error::InvalidWord(_))));
        assert!(g3.decode("abcd").is_ok());
    }

    #[test]
    fn small_classes() {
        let g1 = builtin_spec(BuiltinGrid::G1);
        let one = g1.class_by_decode(1, DEFAULT_DECODE_BUDGET).unwrap();
        assert_eq!(one.into_iter().collect::<Vec<_>>(), vec![p("1")]);
        let two = g1.class_by_decode(2, DEFAULT_DECODE_BUDGET).unwrap();
        assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![p("12"), p("21")]);
        let g3 = builtin_spec(BuiltinGrid::G3).class_by_decode(4, DEFAULT_DECODE_BUDGET).unwrap();
        assert!(!g3.contains(&p("3124")));
        assert!(!g3.contains(&p("4312")));
    }

    #[test]
    fn budget_is_enforced() {
        let g2 = builtin_spec(BuiltinGrid::G2);
        assert!(matches!(
            g2.class_by_decode(9, DEFAULT_DECODE_BUDGET),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        for g in BuiltinGrid::ALL {
            let spec = g.spec();
            assert_eq!(GridSpec::from_text(&spec.to_text()).unwrap(), spec);
        }
        let g1 = builtin_spec(BuiltinGrid::G1).to_text();
        assert!(g1.contains("b 2 1 dec 1 1 1 -1\n"));
        assert!(builtin_spec(BuiltinGrid::G3).to_text().contains("d 3 2 point\n"));
    }
}
