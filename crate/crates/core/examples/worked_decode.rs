//! Decodes a word on each built-in grid and prints the grid layout.

use permgrid::grid::BuiltinGrid;

fn main() -> permgrid::Result<()> {
    let g1 = BuiltinGrid::G1.spec();
    print!("{}", g1.to_text());
    println!("bacddb -> {}", g1.decode("bacddb")?);

    for (grid, word) in [(BuiltinGrid::G2, "adcfe"), (BuiltinGrid::G3, "acdb")] {
        match grid.spec().decode(word) {
            Ok(p) => println!("{grid}: {word} -> {p}"),
            Err(e) => println!("{grid}: {word} rejected: {e}"),
        }
    }
    Ok(())
}
