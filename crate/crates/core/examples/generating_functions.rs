//! Expands every named generating function to 15 terms and checks the
//! closed form of f against brute-force counts.

use permgrid::enumerate::enumerate_class;
use permgrid::perm::main_basis;
use permgrid::series::{named_gf, NamedGf};

fn main() -> permgrid::Result<()> {
    for name in NamedGf::ALL {
        let s = named_gf(name, 15)?;
        let terms: Vec<String> = s.int_coeffs(1, 14)?.iter().map(|c| c.to_string()).collect();
        println!("{:>8}: {}", name.name(), terms.join(" "));
    }
    let brute = enumerate_class(&main_basis(), 9)?.counts();
    let closed = named_gf(NamedGf::FClosed, 10)?.int_coeffs(1, 9)?;
    let agree = brute.iter().zip(&closed).all(|(&b, &c)| b as i128 == c);
    println!("closed form agrees with brute force through n=9: {agree}");
    Ok(())
}
