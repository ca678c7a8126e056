//! Inflations of simple permutations that stay inside `Av(3124, 4312)`.
//!
//! Each word of a simple language stands for one simple permutation. A
//! branch of the rule table says which series may inflate each refined
//! letter: `c` (any 312-avoider), `m` (a monotone run), `f - m` (a class
//! member with a descent) or nothing. A word's contribution is the sum over
//! the branches that apply to it of the product of its letters' series.
//!
//! Contributions only depend on how many letters get each series, so words
//! are tallied by that signature once and the tally is evaluated against
//! whatever `f` is in play.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::BuiltinGrid;
use crate::lang::{builtin_dfa, classify, ClassifiedWord, Label, LanguageName, WordType, DEFAULT_WORD_BUDGET};
use crate::series::{catalan_c, m_series, TruncatedSeries};

/// Series substituted for an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subst {
    Catalan,
    Monotone,
    FMinusM,
    Zero,
}

/// Which words a branch applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Any,
    Type(WordType),
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub guard: Guard,
    /// The branch applies only to words with (resp. without) this label.
    pub requires: Option<Label>,
    pub forbids: Option<Label>,
    pub rules: Vec<(Label, Subst)>,
    /// Overrides for the first `b` and the first `d` of the word.
    pub first_b: Option<Subst>,
    pub first_d: Option<Subst>,
}

impl Branch {
    fn new(guard: Guard, requires: Option<Label>, forbids: Option<Label>, labels: &[Label], substs: &[Subst]) -> Self {
        Branch {
            guard,
            requires,
            forbids,
            rules: labels.iter().copied().zip(substs.iter().copied()).collect(),
            first_b: None,
            first_d: None,
        }
    }

    pub fn applies(&self, word: &ClassifiedWord) -> bool {
        let guard = match self.guard {
            Guard::Any => true,
            Guard::Type(t) => word.word_type == Some(t),
        };
        guard && self.requires.is_none_or(|l| word.has(l)) && self.forbids.is_none_or(|l| !word.has(l))
    }

    pub fn subst(&self, label: Label) -> Subst {
        self.rules
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, s)| *s)
            .expect("every label of the grid has a rule")
    }

    /// `(#c, #m, #(f-m))` for a word, or `None` when some letter gets zero.
    pub fn signature(&self, word: &ClassifiedWord) -> Option<(usize, usize, usize)> {
        let mut sig = (0, 0, 0);
        for (i, &label) in word.labels.iter().enumerate() {
            let s = match (self.first_b, self.first_d) {
                (Some(s), _) if word.first_b == Some(i) => s,
                (_, Some(s)) if word.first_d == Some(i) => s,
                _ => self.subst(label),
            };
            match s {
                Subst::Catalan => sig.0 += 1,
                Subst::Monotone => sig.1 += 1,
                Subst::FMinusM => sig.2 += 1,
                Subst::Zero => return None,
            }
        }
        Some(sig)
    }
}

#[derive(Clone, Debug)]
pub struct InflationRuleTable {
    pub grid: BuiltinGrid,
    pub branches: Vec<Branch>,
}

impl InflationRuleTable {
    pub fn for_grid(grid: BuiltinGrid) -> Self {
        use Label::*;
        use Subst::{Catalan as C, FMinusM as G, Monotone as M, Zero as Z};
        let labels = Label::for_grid(grid);
        let branches = match grid {
            BuiltinGrid::G1 => {
                // labels a, b, c1, c2, d
                let mut type_a = Branch::new(Guard::Type(WordType::TypeA), None, None, labels, &[C, M, M, Z, C]);
                type_a.first_b = Some(C);
                let mut type_b = Branch::new(Guard::Type(WordType::TypeB), None, None, labels, &[C, M, M, M, M]);
                type_b.first_d = Some(C);
                let type_b_desc = Branch::new(Guard::Type(WordType::TypeB), Some(C2), None, labels, &[C, M, M, G, M]);
                vec![type_a, type_b, type_b_desc]
            }
            // labels a, b, c1, c2, d1, d2, e, f
            BuiltinGrid::G2 => vec![
                Branch::new(Guard::Any, None, Some(D2), labels, &[C, C, M, C, M, Z, M, C]),
                Branch::new(Guard::Any, Some(D2), None, labels, &[C, C, M, C, M, M, M, C]),
                Branch::new(Guard::Any, Some(D2), None, labels, &[C, C, M, C, M, G, M, M]),
            ],
            // labels a, b1, b2, c1, c2, d
            BuiltinGrid::G3 => vec![
                Branch::new(Guard::Any, None, Some(C2), labels, &[C, M, C, M, Z, C]),
                Branch::new(Guard::Any, Some(C2), None, labels, &[C, M, C, M, M, C]),
                Branch::new(Guard::Any, Some(C2), None, labels, &[C, M, C, M, G, M]),
            ],
        };
        InflationRuleTable { grid, branches }
    }
}

/// The basic series every contribution is built from.
#[derive(Clone, Debug)]
pub struct Ingredients {
    pub order: usize,
    pub x: TruncatedSeries,
    pub c: TruncatedSeries,
    pub m: TruncatedSeries,
}

impl Ingredients {
    pub fn new(order: usize) -> Result<Self> {
        Ok(Ingredients {
            order,
            x: TruncatedSeries::x(order),
            c: catalan_c(order)?,
            m: m_series(order),
        })
    }

    fn series(&self, s: Subst, f_minus_m: &TruncatedSeries) -> TruncatedSeries {
        match s {
            Subst::Catalan => self.c.clone(),
            Subst::Monotone => self.m.clone(),
            Subst::FMinusM => f_minus_m.clone(),
            Subst::Zero => TruncatedSeries::zero(self.order),
        }
    }
}

fn check_order(f: &TruncatedSeries, order: usize) -> Result<()> {
    if f.order() < order {
        return Err(Error::Argument(format!("f is known to order {} but {order} is needed", f.order())));
    }
    Ok(())
}

/// Sum over applicable branches of the product of the letters' series,
/// computed directly.
pub fn word_contribution(
    table: &InflationRuleTable,
    word: &ClassifiedWord,
    f: &TruncatedSeries,
    ing: &Ingredients,
) -> Result<TruncatedSeries> {
    if word.grid != table.grid {
        return Err(Error::Argument(format!(
            "word classified for {} but the rule table is for {}",
            word.grid, table.grid
        )));
    }
    check_order(f, ing.order)?;
    let g = &f.truncate(ing.order) - &ing.m;
    let mut total = TruncatedSeries::zero(ing.order);
    for branch in table.branches.iter().filter(|b| b.applies(word)) {
        let mut product = TruncatedSeries::one(ing.order);
        for (i, &label) in word.labels.iter().enumerate() {
            let s = match (branch.first_b, branch.first_d) {
                (Some(s), _) if word.first_b == Some(i) => s,
                (_, Some(s)) if word.first_d == Some(i) => s,
                _ => branch.subst(label),
            };
            product = &product * &ing.series(s, &g);
        }
        total = &total + &product;
    }
    Ok(total)
}

/// Classified words of a simple language, lengths `1..=max_len`, with the
/// at-most-one facts checked.
pub fn simple_words(grid: BuiltinGrid, max_len: usize) -> Result<Vec<ClassifiedWord>> {
    let words = builtin_dfa(LanguageName::simple_language(grid)).enumerate_words(max_len, DEFAULT_WORD_BUDGET)?;
    words
        .values()
        .flatten()
        .map(|w| {
            let cw = classify(grid, w)?;
            cw.check_multiplicity()?;
            Ok(cw)
        })
        .collect()
}

/// Signature counts over every branch of every word of a simple language.
#[derive(Clone, Debug)]
pub struct InflationTally {
    pub grid: BuiltinGrid,
    pub order: usize,
    pub counts: BTreeMap<(usize, usize, usize), u64>,
}

impl InflationTally {
    pub fn new(grid: BuiltinGrid, order: usize) -> Result<Self> {
        let table = InflationRuleTable::for_grid(grid);
        let mut counts = BTreeMap::new();
        for word in simple_words(grid, order)? {
            for branch in table.branches.iter().filter(|b| b.applies(&word)) {
                if let Some(sig) = branch.signature(&word) {
                    *counts.entry(sig).or_insert(0) += 1;
                }
            }
        }
        Ok(InflationTally { grid, order, counts })
    }

    /// Splits the tally by power of `f - m`: entry `k` is the sum of
    /// `count * c^i * m^j` over signatures `(i, j, k)`.
    fn f_free_parts(&self, ing: &Ingredients) -> Vec<TruncatedSeries> {
        let order = self.order;
        let max_k = self.counts.keys().map(|s| s.2).max().unwrap_or(0);
        let powers = |base: &TruncatedSeries| {
            let mut out = vec![TruncatedSeries::one(order)];
            for _ in 0..order {
                let next = out.last().unwrap() * base;
                out.push(next);
            }
            out
        };
        let c_pow = powers(&ing.c.truncate(order));
        let m_pow = powers(&ing.m.truncate(order));
        // inner[(i, k)] = sum_j count * m^j
        let mut inner: BTreeMap<(usize, usize), TruncatedSeries> = BTreeMap::new();
        for (&(i, j, k), &n) in &self.counts {
            if i + j + k > order {
                continue;
            }
            let term = m_pow[j].scale(&BigRational::from_integer(BigInt::from(n)));
            let slot = inner.entry((i, k)).or_insert_with(|| TruncatedSeries::zero(order));
            *slot = &*slot + &term;
        }
        let mut parts = vec![TruncatedSeries::zero(order); max_k + 1];
        for ((i, k), s) in inner {
            parts[k] = &parts[k] + &(&c_pow[i] * &s);
        }
        parts
    }
}

/// Evaluates the inflation series of the three grids for any `f`.
#[derive(Clone, Debug)]
pub struct InflationModel {
    pub ing: Ingredients,
    parts: [Vec<TruncatedSeries>; 3],
}

impl InflationModel {
    pub fn new(order: usize) -> Result<Self> {
        let ing = Ingredients::new(order)?;
        let part = |g| Ok::<_, Error>(InflationTally::new(g, order)?.f_free_parts(&ing));
        let parts = [part(BuiltinGrid::G1)?, part(BuiltinGrid::G2)?, part(BuiltinGrid::G3)?];
        Ok(InflationModel { ing, parts })
    }

    pub fn order(&self) -> usize {
        self.ing.order
    }

    /// The inflation series of one grid, by Horner's rule in `f - m`.
    pub fn i_series(&self, grid: BuiltinGrid, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order();
        check_order(f, order)?;
        let g = &f.truncate(order) - &self.ing.m;
        let parts = &self.parts[grid as usize];
        let mut acc = TruncatedSeries::zero(order);
        for p in parts.iter().rev() {
            acc = &(&acc * &g) + p;
        }
        Ok(acc)
    }

    /// `I1 + I2 - I3`: inflations of simple permutations of length at
    /// least 4, with the permutations common to G1 and G2 counted once.
    pub fn combined_i(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let i1 = self.i_series(BuiltinGrid::G1, f)?;
        let i2 = self.i_series(BuiltinGrid::G2, f)?;
        let i3 = self.i_series(BuiltinGrid::G3, f)?;
        Ok(&(&i1 + &i2) - &i3)
    }

    /// `x + (xc + x) f + m(f + c - m)/(1 + m) + I1 + I2 - I3`.
    pub fn rhs(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order();
        check_order(f, order)?;
        let f = f.truncate(order);
        let Ingredients { x, c, m, .. } = &self.ing;
        let sum = &(&(x * c) + x) * &f;
        let skew = (m * &(&(&f + c) - m)).div(&(&TruncatedSeries::one(order) + m))?;
        Ok(&(&(x + &sum) + &skew) + &self.combined_i(&f)?)
    }

    /// Fixes the coefficients of `f` one degree at a time. The degree `n`
    /// coefficient of the right-hand side only involves lower coefficients
    /// of `f`, so each pass settles one more.
    pub fn solve(&self) -> Result<TruncatedSeries> {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for n in 1..=order {
            let f = TruncatedSeries::new(coeffs.clone(), order);
            coeffs[n] = self.rhs(&f)?.coeff(n);
        }
        Ok(TruncatedSeries::new(coeffs, order))
    }
}

/// The inflation series of one grid for a given `f`, through `order`.
pub fn compute_i(grid: BuiltinGrid, f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let ing = Ingredients::new(order)?;
    let parts = InflationTally::new(grid, order)?.f_free_parts(&ing);
    check_order(f, order)?;
    let g = &f.truncate(order) - &ing.m;
    let mut acc = TruncatedSeries::zero(order);
    for p in parts.iter().rev() {
        acc = &(&acc * &g) + p;
    }
    Ok(acc)
}

/// The right-hand side of the functional equation at `f`.
pub fn rhs(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    InflationModel::new(order)?.rhs(f)
}

/// The class series by bootstrapping the functional equation.
pub fn solve_f(order: usize) -> Result<TruncatedSeries> {
    InflationModel::new(order)?.solve()
}
