//! Multivariate rational generating functions of the simple languages,
//! evaluated by substituting a univariate series for every variable, and
//! the matching weighted word tallies.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::classify::{classify, ClassifiedWord, WordType};
use super::languages::{builtin_dfa, LanguageName};
use crate::error::{Error, Result};
use crate::grid::BuiltinGrid;
use crate::series::TruncatedSeries;

/// One monomial: an integer coefficient times a product of variable powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i64,
    pub powers: Vec<(String, u32)>,
}

/// A sum of monomials, e.g. `1 - a*b - 2*c1^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn parse(src: &str) -> Result<Polynomial> {
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                msg: "empty polynomial".into(),
            });
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut offset = 0;
        while !rest.is_empty() {
            let (sign, body_start) = match rest.as_bytes()[0] {
                b'-' => (-1, 1),
                b'+' => (1, 1),
                _ if terms.is_empty() => (1, 0),
                _ => unreachable!("terms are split at signs"),
            };
            let body = &rest[body_start..];
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = Self::monomial(&body[..end], offset + body_start)?;
            terms.push(Monomial {
                coeff: sign * term.coeff,
                powers: term.powers,
            });
            offset += body_start + end;
            rest = &body[end..];
        }
        Ok(Polynomial { terms })
    }

    fn monomial(src: &str, pos: usize) -> Result<Monomial> {
        let syntax = |msg: String| Error::Syntax { pos, msg };
        if src.is_empty() {
            return Err(syntax("missing term".into()));
        }
        let mut coeff = 1i64;
        let mut powers = Vec::new();
        for factor in src.split('*') {
            if factor.is_empty() {
                return Err(syntax(format!("empty factor in {src:?}")));
            }
            if let Ok(k) = factor.parse::<i64>() {
                coeff *= k;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => (
                    name,
                    exp.parse::<u32>()
                        .map_err(|_| syntax(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(syntax(format!("bad variable {name:?}")));
            }
            powers.push((name.to_string(), exp));
        }
        Ok(Monomial { coeff, powers })
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self
            .terms
            .iter()
            .flat_map(|t| t.powers.iter().map(|(v, _)| v.as_str()))
            .collect();
        names.sort_unstable();
        names.dedup();
        names
    }

    /// Substitutes a series for every variable.
    pub fn evaluate(&self, assign: &BTreeMap<String, TruncatedSeries>, order: usize) -> Result<TruncatedSeries> {
        let mut total = TruncatedSeries::zero(order);
        for term in &self.terms {
            let mut value = TruncatedSeries::from_ints(&[term.coeff], order);
            for (name, exp) in &term.powers {
                let s = assign
                    .get(name)
                    .ok_or_else(|| Error::Argument(format!("no value for variable {name}")))?;
                value = &value * &s.pow(*exp);
            }
            total = &total + &value;
        }
        Ok(total)
    }
}

/// A displayed generating function: a product of numerator factors over a
/// product of denominator factors.
#[derive(Clone, Debug)]
pub struct MultiGf {
    pub name: &'static str,
    pub language: LanguageName,
    /// Variables are letters, or refined labels such as `c1` when split.
    pub split: bool,
    /// Restricts the tally to G1 words of one type.
    pub word_type: Option<WordType>,
    pub numerator: Vec<Polynomial>,
    pub denominator: Vec<Polynomial>,
}

impl MultiGf {
    fn new(
        name: &'static str,
        language: LanguageName,
        split: bool,
        word_type: Option<WordType>,
        numerator: &[&str],
        denominator: &[&str],
    ) -> Self {
        let parse = |fs: &[&str]| fs.iter().map(|f| Polynomial::parse(f).expect("builtin factor parses")).collect();
        MultiGf {
            name,
            language,
            split,
            word_type,
            numerator: parse(numerator),
            denominator: parse(denominator),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .numerator
            .iter()
            .chain(&self.denominator)
            .flat_map(|p| p.variables().into_iter().map(String::from))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    /// Substitutes a series for every variable. Variables missing from
    /// `assign` are an error.
    pub fn evaluate(&self, assign: &BTreeMap<String, TruncatedSeries>, order: usize) -> Result<TruncatedSeries> {
        let product = |fs: &[Polynomial]| -> Result<TruncatedSeries> {
            fs.iter()
                .try_fold(TruncatedSeries::one(order), |acc, p| Ok(&acc * &p.evaluate(assign, order)?))
        };
        product(&self.numerator)?.div(&product(&self.denominator)?)
    }

    /// Substitutes `x^w` for each variable with weight `w`.
    pub fn evaluate_powers(&self, weights: &BTreeMap<String, u32>, order: usize) -> Result<TruncatedSeries> {
        let assign = weights
            .iter()
            .map(|(v, &w)| {
                let mut coeffs = vec![0; w as usize + 1];
                coeffs[w as usize] = 1;
                (v.clone(), TruncatedSeries::from_ints(&coeffs, order))
            })
            .collect();
        self.evaluate(&assign, order)
    }

    /// Variable names of a classified word, one per letter.
    fn word_variables(&self, word: &ClassifiedWord) -> Vec<String> {
        if self.split {
            word.labels.iter().map(|l| l.to_string()).collect()
        } else {
            word.word.chars().map(String::from).collect()
        }
    }

    /// Sum over language words of `x^(total weight)`, through `order`.
    /// Every weight must be at least 1 so that words longer than `order`
    /// cannot contribute.
    pub fn tally(&self, weights: &BTreeMap<String, u32>, order: usize) -> Result<TruncatedSeries> {
        if weights.values().any(|&w| w == 0) {
            return Err(Error::Argument("weights must be positive".into()));
        }
        let grid: BuiltinGrid = self.language.grid();
        let words = builtin_dfa(self.language).enumerate_words(order, 1_000_000)?;
        let mut counts = vec![BigInt::from(0); order + 1];
        for word in words.values().flatten() {
            let classified = classify(grid, word)?;
            if self.word_type.is_some() && classified.word_type != self.word_type {
                continue;
            }
            let mut degree = 0usize;
            for v in self.word_variables(&classified) {
                degree += *weights
                    .get(&v)
                    .ok_or_else(|| Error::Argument(format!("no weight for variable {v}")))?
                    as usize;
            }
            if degree <= order {
                counts[degree] += 1;
            }
        }
        Ok(TruncatedSeries::from_bigints(&counts, order))
    }
}

/// The displayed generating functions that are checked against word tallies.
pub fn displayed_gfs() -> Vec<MultiGf> {
    vec![
        MultiGf::new(
            "S1",
            LanguageName::S1,
            false,
            None,
            &["b", "c", "d", "1 + b", "a + c + a*c + c*d"],
            &["1 - a*b - b*c - c*d - a*b*c - b*c*d"],
        ),
        // the displayed numerator has a variable e that G1 lacks; it stands for d
        MultiGf::new(
            "S1,1",
            LanguageName::S1,
            true,
            Some(WordType::TypeA),
            &["a*b^2*c1*d"],
            &["1 - a*b"],
        ),
        MultiGf::new(
            "S2",
            LanguageName::S2,
            false,
            None,
            &["d*f", "1 + c", "a*e + c*d + b*c*d - a*b*c*e - a*c*d*e - a*b*c*d*e"],
            &["1 - b*c - c*d - b*c*d", "1 - a*e - e*f - a*e*f"],
        ),
        MultiGf::new(
            "S3",
            LanguageName::S3,
            false,
            None,
            &["b*c*d", "1 + b", "a + c + a*c"],
            &["1 - a*b - b*c - a*b*c"],
        ),
    ]
}

/// Weight maps used by the spot-checks: uniform, then each variable in turn
/// raised to weight 2, then a spread of distinct weights.
pub fn standard_weightings(variables: &[String]) -> Vec<BTreeMap<String, u32>> {
    let uniform: BTreeMap<String, u32> = variables.iter().map(|v| (v.clone(), 1)).collect();
    let mut out = vec![uniform.clone()];
    for v in variables {
        let mut w = uniform.clone();
        w.insert(v.clone(), 2);
        out.push(w);
    }
    out.push(
        variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), 1 + (i % 3) as u32))
            .collect(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_parsing() {
        let p = Polynomial::parse("1 - a*b - 2*c1^2 + a").unwrap();
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.terms[2].coeff, -2);
        assert_eq!(p.terms[2].powers, vec![("c1".to_string(), 2)]);
        assert_eq!(p.variables(), vec!["a", "b", "c1"]);
        assert!(Polynomial::parse("").is_err());
        assert!(Polynomial::parse("a**b").is_err());
        assert!(Polynomial::parse("a^x").is_err());
        assert!(Polynomial::parse("a+").is_err());
    }

    #[test]
    fn uniform_substitution_gives_univariate_series() {
        let order = 10;
        for gf in displayed_gfs() {
            let vars = gf.variables();
            let weights = standard_weightings(&vars).remove(0);
            let series = gf.evaluate_powers(&weights, order).unwrap();
            assert_eq!(series, gf.tally(&weights, order).unwrap(), "{}", gf.name);
        }
    }

    #[test]
    fn tally_rejects_zero_weight() {
        let gf = &displayed_gfs()[0];
        let mut w = standard_weightings(&gf.variables()).remove(0);
        w.insert("a".into(), 0);
        assert!(gf.tally(&w, 6).is_err());
    }
}
