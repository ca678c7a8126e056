//! The consolidated verification report: every headline count recomputed
//! by at least two routes and compared.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_class, ClassListing};
use crate::error::Result;
use crate::grid::{BuiltinGrid, GridSpec, DEFAULT_DECODE_BUDGET};
use crate::inflation::InflationModel;
use crate::lang::weighted::standard_weightings;
use crate::lang::{builtin_dfa, classify, displayed_gfs, LanguageName, WordType, DEFAULT_WORD_BUDGET};
use crate::perm::{main_basis, Permutation};
use crate::series::{catalan_c, named_gf, sqrt_one_minus_4x, NamedGf, TruncatedSeries};

/// Class sizes for lengths 1 through 10.
pub const CLASS_COUNTS: [u64; 10] = [1, 2, 6, 22, 88, 363, 1507, 6241, 25721, 105485];
/// Sum decomposable members, lengths 2 through 9.
pub const SUM_DECOMPOSABLE: [u64; 8] = [1, 3, 10, 37, 146, 595, 2456, 10167];
/// Skew decomposable members, lengths 2 through 9.
pub const SKEW_DECOMPOSABLE: [u64; 8] = [1, 3, 10, 35, 129, 494, 1935, 7670];
/// The single Type A word of each odd length 5, 7, 9 decodes to these.
pub const TYPE_A_PERMS: [&str; 3] = ["25314", "2475316", "246975318"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    /// Largest permutation length and series order checked.
    pub fn limits(self) -> (usize, usize) {
        match self {
            Level::Quick => (8, 12),
            Level::Full => (10, 20),
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Published value.
    Published,
    /// Computed independently here.
    Derived,
    /// Follows from a definition.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub source: Source,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub level: Level,
    pub max_length: usize,
    pub order: usize,
    pub overall_pass: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verification ({:?}, lengths <= {}, order {})\n",
            self.level, self.max_length, self.order
        );
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} [{:>2}] {}", c.criterion, c.name));
            if let Some(ms) = c.runtime_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
            if !c.pass {
                out.push_str(&format!("      expected: {}\n      actual:   {}\n", c.expected, c.actual));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.checks.len() - failed,
            self.checks.len()
        ));
        out
    }
}

fn join<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Coefficients `from..=to` as strings, or the error text.
fn coeffs(s: &TruncatedSeries, from: usize, to: usize) -> Vec<String> {
    match s.to_integers() {
        Ok(ints) => (from..=to).map(|n| ints.get(n).map_or("?".into(), |c| c.to_string())).collect(),
        Err(e) => vec![e.to_string()],
    }
}

/// Shared, lazily computed ingredients.
struct Context {
    n: usize,
    order: usize,
    timings: bool,
    listing: ClassListing,
    specs: BTreeMap<BuiltinGrid, GridSpec>,
    classes: BTreeMap<(BuiltinGrid, usize), BTreeSet<Permutation>>,
    checks: Vec<Check>,
}

impl Context {
    fn push(
        &mut self,
        criterion: u8,
        name: impl Into<String>,
        source: Source,
        started: Instant,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) {
        let (expected, actual) = (expected.into(), actual.into());
        self.checks.push(Check {
            criterion,
            name: name.into(),
            source,
            pass: expected == actual,
            expected,
            actual,
            runtime_ms: self.timings.then(|| started.elapsed().as_millis() as u64),
        });
    }

    fn push_error(&mut self, criterion: u8, name: impl Into<String>, source: Source, err: crate::Error) {
        self.checks.push(Check {
            criterion,
            name: name.into(),
            source,
            expected: "no error".into(),
            actual: err.to_string(),
            pass: false,
            runtime_ms: None,
        });
    }

    fn class(&mut self, grid: BuiltinGrid, n: usize) -> Result<&BTreeSet<Permutation>> {
        if !self.classes.contains_key(&(grid, n)) {
            let set = self.specs[&grid].class_by_decode(n, DEFAULT_DECODE_BUDGET)?;
            self.classes.insert((grid, n), set);
        }
        Ok(&self.classes[&(grid, n)])
    }

    fn words(&self, name: LanguageName, n: usize) -> Result<Vec<String>> {
        let mut all = builtin_dfa(name).enumerate_words(n, DEFAULT_WORD_BUDGET)?;
        Ok(all.remove(&n).unwrap_or_default())
    }

    fn decode_all(&self, grid: BuiltinGrid, words: &[String]) -> Result<Vec<Permutation>> {
        words.iter().map(|w| self.specs[&grid].decode(w)).collect()
    }
}

/// Runs every check at the given level. Failures, including errors raised
/// while checking, become failed entries rather than errors.
type Section = fn(&mut Context) -> Result<()>;

pub fn verify(level: Level, timings: bool) -> VerificationReport {
    let (n, order) = level.limits();
    let listing = enumerate_class(&main_basis(), n).expect("valid basis and length");
    let mut ctx = Context {
        n,
        order,
        timings,
        listing,
        specs: BuiltinGrid::ALL.iter().map(|&g| (g, g.spec())).collect(),
        classes: BTreeMap::new(),
        checks: Vec::new(),
    };
    let sections: [(u8, &str, Section); 12] = [
        (1, "class counts", class_counts),
        (2, "closed form and bootstrap", closed_form_and_bootstrap),
        (3, "simple counts", simple_counts),
        (4, "grid class censuses", grid_censuses),
        (5, "intersection", intersection),
        (6, "simple language bijections", simple_bijections),
        (7, "worked decode", worked_decode),
        (8, "Type A census", type_a_census),
        (9, "decomposables", decomposables),
        (10, "functional equation", functional_equation),
        (11, "multivariate spot checks", multivariate),
        (12, "identities", identities),
    ];
    for (criterion, title, run) in sections {
        if let Err(e) = run(&mut ctx) {
            ctx.push_error(criterion, title, Source::Derived, e);
        }
    }
    let overall_pass = ctx.checks.iter().all(|c| c.pass);
    VerificationReport {
        level,
        max_length: n,
        order,
        overall_pass,
        checks: ctx.checks,
    }
}

fn class_counts(ctx: &mut Context) -> Result<()> {
    let t = Instant::now();
    let n = ctx.n;
    ctx.push(
        1,
        format!("|Av(3124,4312)_n| for n=1..{n}"),
        Source::Published,
        t,
        join(&CLASS_COUNTS[..n]),
        join(ctx.listing.counts()),
    );
    Ok(())
}

fn closed_form_and_bootstrap(ctx: &mut Context) -> Result<()> {
    let (n, order) = (ctx.n, ctx.order);
    let t = Instant::now();
    let closed = named_gf(NamedGf::FClosed, order)?;
    let solved = InflationModel::new(order)?.solve()?;
    ctx.push(
        2,
        format!("solve_f({order}) == f_closed({order})"),
        Source::Derived,
        t,
        join(coeffs(&closed, 1, order)),
        join(coeffs(&solved, 1, order)),
    );
    let t = Instant::now();
    let shared = n.min(order);
    ctx.push(
        2,
        format!("f_closed matches brute force, degrees 1..{shared}"),
        Source::Derived,
        t,
        join(&ctx.listing.counts()[..shared]),
        join(coeffs(&closed, 1, shared)),
    );
    Ok(())
}

fn simple_counts(ctx: &mut Context) -> Result<()> {
    let top = ctx.n.min(9);
    let t = Instant::now();
    let s = named_gf(NamedGf::S, top)?;
    let brute: Vec<usize> = (4..=top)
        .map(|k| ctx.listing.simples_of(k).map(|v| v.len()))
        .collect::<Result<_>>()?;
    ctx.push(
        3,
        format!("simples of Av(3124,4312) match S(x), n=4..{top}"),
        Source::Published,
        t,
        join(coeffs(&s, 4, top)),
        join(&brute),
    );

    let t = Instant::now();
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for k in 4..=top {
        let mut decoded = BTreeSet::new();
        for (name, grid) in [(LanguageName::S1, BuiltinGrid::G1), (LanguageName::S2, BuiltinGrid::G2)] {
            let words = ctx.words(name, k)?;
            decoded.extend(ctx.decode_all(grid, &words)?);
        }
        let brute: BTreeSet<Permutation> = ctx.listing.simples_of(k)?.into_iter().collect();
        expected.push(format!("{}", brute.len()));
        actual.push(if decoded == brute {
            format!("{}", decoded.len())
        } else {
            format!("{} (different set)", decoded.len())
        });
    }
    ctx.push(
        3,
        format!("simples(Av) = simples(G1 ∪ G2), n=4..{top}"),
        Source::Published,
        t,
        join(expected),
        join(actual),
    );
    let t = Instant::now();
    let four = join(ctx.listing.simples_of(4)?);
    ctx.push(3, "simples of length 4", Source::Published, t, "2413 3142", four);
    Ok(())
}

fn grid_censuses(ctx: &mut Context) -> Result<()> {
    let top = ctx.n.min(8);
    for (grid, gf) in [
        (BuiltinGrid::G1, NamedGf::G1Class),
        (BuiltinGrid::G2, NamedGf::G2Class),
        (BuiltinGrid::G3, NamedGf::G3Class),
    ] {
        let t = Instant::now();
        let series = named_gf(gf, top)?;
        let lang = LanguageName::class_language(grid);
        let lang_counts = builtin_dfa(lang).count_by_length(top);
        let mut by_decode = Vec::new();
        let mut by_language = Vec::new();
        let mut injective = true;
        let mut onto = true;
        for (k, count) in lang_counts.iter().enumerate().skip(1) {
            let class = ctx.class(grid, k)?.clone();
            by_decode.push(class.len().to_string());
            by_language.push(count.to_string());
            let images = ctx.decode_all(grid, &ctx.words(lang, k)?)?;
            let distinct: BTreeSet<Permutation> = images.iter().cloned().collect();
            injective &= distinct.len() == images.len();
            onto &= distinct == class;
        }
        let expected = join(coeffs(&series, 1, top));
        ctx.push(
            4,
            format!("|{grid} class| by decoding matches {gf}, n=1..{top}"),
            Source::Derived,
            t,
            expected.clone(),
            join(&by_decode),
        );
        ctx.push(
            4,
            format!("|{lang} ∩ Σ^n| matches {gf}, n=1..{top}"),
            Source::Derived,
            t,
            expected,
            join(&by_language),
        );
        ctx.push(
            4,
            format!("decode is a bijection from {lang} onto {grid}, n=1..{top}"),
            Source::Derived,
            t,
            "injective onto",
            format!(
                "{} {}",
                if injective { "injective" } else { "not-injective" },
                if onto { "onto" } else { "not-onto" }
            ),
        );
    }
    Ok(())
}

fn intersection(ctx: &mut Context) -> Result<()> {
    for k in 1..=ctx.n.min(8) {
        let t = Instant::now();
        let g1 = ctx.class(BuiltinGrid::G1, k)?.clone();
        let g2 = ctx.class(BuiltinGrid::G2, k)?.clone();
        let g3 = ctx.class(BuiltinGrid::G3, k)?.clone();
        let meet: BTreeSet<Permutation> = g1.intersection(&g2).cloned().collect();
        ctx.push(
            5,
            format!("G3 = G1 ∩ G2 at n={k}"),
            Source::Published,
            t,
            format!("{} common", meet.len()),
            if meet == g3 {
                format!("{} common", g3.len())
            } else {
                format!("{} in G3, sets differ", g3.len())
            },
        );
    }
    Ok(())
}

fn simple_bijections(ctx: &mut Context) -> Result<()> {
    let top = ctx.n.min(9);
    for (grid, gf) in [
        (BuiltinGrid::G1, NamedGf::M1),
        (BuiltinGrid::G2, NamedGf::M2),
        (BuiltinGrid::G3, NamedGf::M3),
    ] {
        let t = Instant::now();
        let series = named_gf(gf, top)?;
        let lang = LanguageName::simple_language(grid);
        let mut counts = Vec::new();
        let mut ok = true;
        for k in 4..=top {
            let images = ctx.decode_all(grid, &ctx.words(lang, k)?)?;
            let distinct: BTreeSet<Permutation> = images.iter().cloned().collect();
            // the class at length k, by decoding all words or, past the decode
            // budget, the class language
            let class: BTreeSet<Permutation> = if k <= 8 {
                ctx.class(grid, k)?.clone()
            } else {
                let words = ctx.words(LanguageName::class_language(grid), k)?;
                ctx.decode_all(grid, &words)?.into_iter().collect()
            };
            let simples: BTreeSet<Permutation> = class.into_iter().filter(|p| p.is_simple()).collect();
            ok &= distinct.len() == images.len() && distinct == simples;
            counts.push(images.len());
        }
        ctx.push(
            6,
            format!("decode maps {lang} onto the simples of {grid}, counts match {gf}, n=4..{top}"),
            Source::Derived,
            t,
            format!("{} bijective", join(coeffs(&series, 4, top))),
            format!("{} {}", join(&counts), if ok { "bijective" } else { "not-bijective" }),
        );
    }
    Ok(())
}

fn worked_decode(ctx: &mut Context) -> Result<()> {
    let t = Instant::now();
    let p = ctx.specs[&BuiltinGrid::G1].decode("bacddb")?;
    ctx.push(7, "decode(G1, bacddb)", Source::Published, t, "234165", p.to_string());
    Ok(())
}

fn type_a_census(ctx: &mut Context) -> Result<()> {
    for (i, len) in [5usize, 7, 9].into_iter().enumerate() {
        let t = Instant::now();
        let mut found = Vec::new();
        for w in ctx.words(LanguageName::S1, len)? {
            if classify(BuiltinGrid::G1, &w)?.word_type == Some(WordType::TypeA) {
                found.push(ctx.specs[&BuiltinGrid::G1].decode(&w)?.to_string());
            }
        }
        ctx.push(
            8,
            format!("Type A words of S1 at length {len}"),
            Source::Published,
            t,
            TYPE_A_PERMS[i],
            join(found),
        );
    }
    Ok(())
}

fn decomposables(ctx: &mut Context) -> Result<()> {
    let t = Instant::now();
    let sum = named_gf(NamedGf::FSum, 9)?;
    let skew = named_gf(NamedGf::FSkew, 9)?;
    ctx.push(9, "f_sum degrees 2..9", Source::Published, t, join(SUM_DECOMPOSABLE), join(coeffs(&sum, 2, 9)));
    ctx.push(9, "f_skew degrees 2..9", Source::Published, t, join(SKEW_DECOMPOSABLE), join(coeffs(&skew, 2, 9)));
    let top = ctx.n.min(8);
    let t = Instant::now();
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for k in 2..=top {
        expected.push(format!("{}/{}", sum.coeff(k), skew.coeff(k)));
        let (s, k2) = ctx.listing.decomposable_counts(k)?;
        actual.push(format!("{s}/{k2}"));
    }
    ctx.push(
        9,
        format!("f_sum/f_skew match brute-force decomposables, n=2..{top}"),
        Source::Derived,
        t,
        join(expected),
        join(actual),
    );
    Ok(())
}

fn functional_equation(ctx: &mut Context) -> Result<()> {
    let order = ctx.order;
    let t = Instant::now();
    let f = named_gf(NamedGf::FClosed, order)?;
    let residual = &InflationModel::new(order)?.rhs(&f)? - &f;
    ctx.push(
        10,
        format!("rhs(f_closed) - f_closed = 0 to order {order}"),
        Source::Derived,
        t,
        "0",
        if residual.is_zero() { "0".to_string() } else { residual.to_string() },
    );
    Ok(())
}

fn multivariate(ctx: &mut Context) -> Result<()> {
    let order = ctx.order.min(10);
    for gf in displayed_gfs() {
        let t = Instant::now();
        let weightings = standard_weightings(&gf.variables());
        let mut agree = 0;
        for w in &weightings {
            if gf.evaluate_powers(w, order)? == gf.tally(w, order)?.truncate(order) {
                agree += 1;
            }
        }
        ctx.push(
            11,
            format!("{} agrees with word tallies under {} substitutions, degree <= {order}", gf.name, weightings.len()),
            Source::Derived,
            t,
            weightings.len().to_string(),
            agree.to_string(),
        );
    }
    Ok(())
}

fn identities(ctx: &mut Context) -> Result<()> {
    let top = ctx.n.min(9);
    let t = Instant::now();
    let mut total = 0usize;
    let mut good = 0usize;
    for k in 2..=top {
        for p in ctx.listing.by_length(k)? {
            total += 1;
            let d = p.substitution_decompose()?;
            if Permutation::inflate(&d.skeleton, &d.blocks)? == *p && d.skeleton.is_simple() {
                good += 1;
            }
        }
    }
    ctx.push(
        12,
        format!("substitution decomposition round trip, n=2..{top}"),
        Source::Trivial,
        t,
        total.to_string(),
        good.to_string(),
    );

    let order = ctx.order;
    let t = Instant::now();
    let c = catalan_c(order)?;
    let x = TruncatedSeries::x(order);
    let one_plus_c = &TruncatedSeries::one(order) + &c;
    let fixed = &x * &(&one_plus_c * &one_plus_c);
    ctx.push(12, "c = x(1+c)^2", Source::Derived, t, c.to_string(), fixed.to_string());

    let t = Instant::now();
    let r = sqrt_one_minus_4x(order);
    ctx.push(
        12,
        "sqrt(1-4x)^2 = 1-4x",
        Source::Trivial,
        t,
        TruncatedSeries::from_ints(&[1, -4], order).to_string(),
        (&r * &r).to_string(),
    );

    let t = Instant::now();
    let s = named_gf(NamedGf::S, order)?;
    let parts = &(&named_gf(NamedGf::M1, order)? + &named_gf(NamedGf::M2, order)?) - &named_gf(NamedGf::M3, order)?;
    let rebuilt = &TruncatedSeries::from_ints(&[0, 1, 2], order) + &parts;
    ctx.push(12, "S = x + 2x^2 + M1 + M2 - M3", Source::Published, t, s.to_string(), rebuilt.to_string());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let report = VerificationReport {
            level: Level::Quick,
            max_length: 8,
            order: 12,
            overall_pass: false,
            checks: vec![Check {
                criterion: 7,
                name: "decode".into(),
                source: Source::Published,
                expected: "234165".into(),
                actual: "234165".into(),
                pass: true,
                runtime_ms: None,
            }],
        };
        let json = report.to_json();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), json);
        assert!(!json.contains("runtime_ms"));
    }

    #[test]
    fn text_lists_failures_with_values() {
        let mut report = VerificationReport {
            level: Level::Quick,
            max_length: 8,
            order: 12,
            overall_pass: false,
            checks: vec![],
        };
        report.checks.push(Check {
            criterion: 1,
            name: "x".into(),
            source: Source::Derived,
            expected: "1".into(),
            actual: "2".into(),
            pass: false,
            runtime_ms: Some(3),
        });
        let text = report.to_text();
        assert!(text.contains("FAIL [ 1] x (3 ms)"));
        assert!(text.contains("expected: 1"));
        assert!(text.contains("0 of 1 checks passed"));
    }
}
