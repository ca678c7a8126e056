//! Compiles the six regular languages, prints automaton sizes and word
//! counts, and lists the shortest words of S1.

use permgrid::lang::{builtin_dfa, LanguageName};

fn main() -> permgrid::Result<()> {
    for name in LanguageName::ALL {
        let dfa = builtin_dfa(name);
        let counts: Vec<String> = dfa.count_by_length(12)[1..].iter().map(|c| c.to_string()).collect();
        println!("{name}: {} states; {}", dfa.state_count(), counts.join(" "));
    }
    let s1 = builtin_dfa(LanguageName::S1).enumerate_words(6, 1000)?;
    for (len, words) in s1.into_iter().filter(|(_, w)| !w.is_empty()) {
        println!("S1 length {len}: {}", words.join(" "));
    }
    Ok(())
}
