//! Command-line front end. Exit codes: 0 success, 1 usage or argument
//! error, 2 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::enumerate::{enumerate_class, ClassListing, ListingCache};
use crate::error::{Error, Result};
use crate::grid::{BuiltinGrid, GridSpec};
use crate::inflation::{compute_i, solve_f};
use crate::lang::{builtin_dfa, LanguageName, DEFAULT_WORD_BUDGET};
use crate::perm::parse_basis;
use crate::report::{verify, Level};
use crate::series::{named_gf, NamedGf, TruncatedSeries};

#[derive(Parser, Debug)]
#[command(name = "permgrid", version, about = "Enumerate Av(3124, 4312) and verify its generating function")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (and optionally list) the avoiders of a basis by length.
    Enumerate(EnumerateArgs),
    /// List the simple permutations of a class by length.
    Simples(ClassArgs),
    /// Decode a word over a grid's cell alphabet into a permutation.
    Decode(DecodeArgs),
    /// Count or list the words of a built-in language.
    Language(LanguageArgs),
    /// Expand a named generating function.
    Gf(GfArgs),
    /// Inflation series of one grid, evaluated at the closed-form class series.
    Inflate(InflateArgs),
    /// Class series from the functional equation, one degree at a time.
    Solve(TermsArgs),
    /// Run the verification report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Comma-separated basis patterns.
    #[arg(long, default_value = "3124,4312")]
    basis: String,

    #[arg(long, default_value_t = 9)]
    max_len: usize,

    /// Directory for cached listings.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    class: ClassArgs,

    /// Print the permutations, not just the counts.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// One of g1, g2, g3.
    #[arg(long, conflicts_with = "grid_file", required_unless_present = "grid_file")]
    grid: Option<BuiltinGrid>,

    /// A grid in the text format written by `GridSpec::to_text`.
    #[arg(long)]
    grid_file: Option<PathBuf>,

    #[arg(long)]
    word: String,
}

#[derive(Args, Debug)]
struct LanguageArgs {
    /// One of L1, S1, L2, S2, L3, S3.
    #[arg(long)]
    name: LanguageName,

    /// Print word counts for lengths 1..=N.
    #[arg(long)]
    count_to: Option<usize>,

    /// Print the words of lengths 1..=N.
    #[arg(long)]
    list_to: Option<usize>,

    /// Print the minimal automaton's transition table.
    #[arg(long)]
    dfa: bool,
}

#[derive(Args, Debug)]
struct GfArgs {
    /// f, S, G1_class, G2_class, G3_class, M1, M2, M3, f_sum or f_skew.
    #[arg(long)]
    name: NamedGf,

    #[arg(long, default_value_t = 20)]
    terms: usize,
}

#[derive(Args, Debug)]
struct InflateArgs {
    #[arg(long)]
    grid: BuiltinGrid,

    #[arg(long, default_value_t = 12)]
    terms: usize,
}

#[derive(Args, Debug)]
struct TermsArgs {
    #[arg(long, default_value_t = 12)]
    terms: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Lengths up to 8, series order 12 (the default).
    #[arg(long, conflicts_with = "full")]
    quick: bool,

    /// Lengths up to 10, series order 20.
    #[arg(long)]
    full: bool,

    /// Record the runtime of each check.
    #[arg(long)]
    timings: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::Argument("--jobs must be at least 1".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Argument(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli, out))),
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate(a) => enumerate_cmd(a, format, out)?,
        Command::Simples(a) => simples_cmd(a, format, out)?,
        Command::Decode(a) => decode_cmd(a, format, out)?,
        Command::Language(a) => language_cmd(a, format, out)?,
        Command::Gf(a) => series_out(&named_gf(a.name, a.terms)?, a.terms, format, out)?,
        Command::Inflate(a) => {
            let f = named_gf(NamedGf::FClosed, a.terms)?;
            series_out(&compute_i(a.grid, &f, a.terms)?, a.terms, format, out)?
        }
        Command::Solve(a) => series_out(&solve_f(a.terms)?, a.terms, format, out)?,
        Command::Verify(a) => return verify_cmd(a, format, out),
    }
    Ok(0)
}

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn listing(a: &ClassArgs) -> Result<ClassListing> {
    let basis = parse_basis(&a.basis)?;
    match &a.cache_dir {
        Some(dir) => ListingCache::new(dir).enumerate(&basis, a.max_len),
        None => enumerate_class(&basis, a.max_len),
    }
}

fn enumerate_cmd(a: &EnumerateArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    let listing = listing(&a.class)?;
    let lengths = 1..=listing.max_length();
    match format {
        Format::Text => {
            for n in lengths {
                let level = listing.by_length(n)?;
                writeln!(out, "{n}\t{}", level.len())?;
                if a.list {
                    for p in level {
                        writeln!(out, "  {p}")?;
                    }
                }
            }
        }
        Format::Csv => {
            if a.list {
                writeln!(out, "length,permutation")?;
                for n in lengths {
                    for p in listing.by_length(n)? {
                        writeln!(out, "{n},\"{p}\"")?;
                    }
                }
            } else {
                writeln!(out, "length,count")?;
                for n in lengths {
                    writeln!(out, "{n},{}", listing.by_length(n)?.len())?;
                }
            }
        }
        Format::Json => {
            let basis: Vec<String> = listing.basis().iter().map(|b| b.to_string()).collect();
            let mut counts = Map::new();
            let mut perms = Map::new();
            for n in lengths {
                let level = listing.by_length(n)?;
                counts.insert(n.to_string(), json!(level.len()));
                if a.list {
                    perms.insert(n.to_string(), json!(level.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
                }
            }
            let mut doc = Map::new();
            doc.insert("basis".into(), json!(basis));
            doc.insert("counts".into(), Value::Object(counts));
            if a.list {
                doc.insert("permutations".into(), Value::Object(perms));
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("json"))?;
        }
    }
    Ok(())
}

fn simples_cmd(a: &ClassArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    let listing = listing(a)?;
    let mut rows = Vec::new();
    for n in 1..=listing.max_length() {
        rows.push((n, listing.simples_of(n)?));
    }
    match format {
        Format::Text => {
            for (n, simples) in &rows {
                let list: Vec<String> = simples.iter().map(|p| p.to_string()).collect();
                writeln!(out, "{n}\t{}\t{}", simples.len(), list.join(" "))?;
            }
        }
        Format::Csv => {
            writeln!(out, "length,permutation")?;
            for (n, simples) in &rows {
                for p in simples {
                    writeln!(out, "{n},\"{p}\"")?;
                }
            }
        }
        Format::Json => {
            let map: Map<String, Value> = rows
                .iter()
                .map(|(n, s)| (n.to_string(), json!(s.iter().map(|p| p.to_string()).collect::<Vec<_>>())))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(map)).expect("json"))?;
        }
    }
    Ok(())
}

fn decode_cmd(a: &DecodeArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    let spec = match (&a.grid, &a.grid_file) {
        (Some(g), _) => g.spec(),
        (None, Some(path)) => {
            let spec = GridSpec::from_text(&std::fs::read_to_string(path)?)?;
            if !spec.validate() {
                return Err(Error::Argument(format!(
                    "grid file is not a consistently oriented standard figure: {}",
                    spec.diagnostics().join("; ")
                )));
            }
            spec
        }
        (None, None) => return Err(Error::Argument("--grid or --grid-file is required".into())),
    };
    let p = spec.decode(&a.word)?;
    match format {
        Format::Json => writeln!(out, "{}", json!({ "word": a.word, "permutation": p.to_string() }))?,
        Format::Csv => writeln!(out, "word,permutation\n{},\"{p}\"", a.word)?,
        Format::Text => writeln!(out, "{p}")?,
    }
    Ok(())
}

fn language_cmd(a: &LanguageArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    let dfa = builtin_dfa(a.name);
    if a.count_to.is_none() && a.list_to.is_none() && !a.dfa {
        return Err(Error::Argument("give at least one of --count-to, --list-to, --dfa".into()));
    }
    let counts = a.count_to.map(|n| dfa.count_by_length(n));
    let words = a.list_to.map(|n| dfa.enumerate_words(n, DEFAULT_WORD_BUDGET)).transpose()?;
    match format {
        Format::Text => {
            if let Some(counts) = &counts {
                let line: Vec<String> = counts[1..].iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
            if let Some(words) = &words {
                for (n, ws) in words {
                    writeln!(out, "{n}\t{}", ws.join(" "))?;
                }
            }
            if a.dfa {
                write!(out, "{}", dfa.to_table())?;
            }
        }
        Format::Csv => {
            if let Some(counts) = &counts {
                writeln!(out, "length,count")?;
                for (n, c) in counts.iter().enumerate().skip(1) {
                    writeln!(out, "{n},{c}")?;
                }
            }
            if let Some(words) = &words {
                writeln!(out, "length,word")?;
                for (n, ws) in words {
                    for w in ws {
                        writeln!(out, "{n},{w}")?;
                    }
                }
            }
            if a.dfa {
                write!(out, "{}", dfa.to_table())?;
            }
        }
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("name".into(), json!(a.name.to_string()));
            if let Some(counts) = &counts {
                let map: Map<String, Value> = counts
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(n, c)| (n.to_string(), big(&BigInt::from(c.clone()))))
                    .collect();
                doc.insert("counts".into(), Value::Object(map));
            }
            if let Some(words) = &words {
                let map: Map<String, Value> = words.iter().map(|(n, ws)| (n.to_string(), json!(ws))).collect();
                doc.insert("words".into(), Value::Object(map));
            }
            if a.dfa {
                doc.insert("dfa".into(), json!(dfa.to_table()));
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("json"))?;
        }
    }
    Ok(())
}

/// Coefficients of degrees `1..=terms`.
fn series_out(s: &TruncatedSeries, terms: usize, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    let ints = s.to_integers()?;
    let degrees = 1..=terms.min(s.order());
    match format {
        Format::Text => {
            let line: Vec<String> = degrees.map(|n| ints[n].to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Format::Csv => {
            writeln!(out, "degree,coefficient")?;
            for n in degrees {
                writeln!(out, "{n},{}", ints[n])?;
            }
        }
        Format::Json => {
            let map: Map<String, Value> = degrees.map(|n| (n.to_string(), big(&ints[n]))).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(map)).expect("json"))?;
        }
    }
    Ok(())
}

fn verify_cmd(a: &VerifyArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let level = if a.full { Level::Full } else { Level::Quick };
    let report = verify(level, a.timings);
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            writeln!(out, "criterion,name,source,status,expected,actual")?;
            for c in &report.checks {
                let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.criterion,
                    quote(&c.name),
                    serde_json::to_value(c.source).expect("json").as_str().unwrap_or_default(),
                    if c.pass { "pass" } else { "fail" },
                    quote(&c.expected),
                    quote(&c.actual)
                )?;
            }
        }
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(if report.overall_pass { 0 } else { 2 })
}
