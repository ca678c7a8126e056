//! Counts Av(3124, 4312) by length and splits each level into simple,
//! sum-decomposable and skew-decomposable permutations.
//!
//! ```text
//! cargo run --release --example enumerate_class -- 10
//! ```

use permgrid::enumerate::enumerate_class;
use permgrid::perm::main_basis;

fn main() -> permgrid::Result<()> {
    let max_len = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let listing = enumerate_class(&main_basis(), max_len)?;
    println!("n\ttotal\tsimple\tsum\tskew");
    for n in 1..=max_len {
        let (sum, skew) = listing.decomposable_counts(n)?;
        let total = listing.by_length(n)?.len();
        println!("{n}\t{total}\t{}\t{sum}\t{skew}", listing.simples_of(n)?.len());
    }
    Ok(())
}
