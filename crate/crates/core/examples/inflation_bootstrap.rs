//! Recovers f from the inflation equation alone, degree by degree, and
//! prints the I-series of each grid at the solution.

use permgrid::grid::BuiltinGrid;
use permgrid::inflation::{compute_i, rhs, solve_f};

fn main() -> permgrid::Result<()> {
    let order = 16;
    let f = solve_f(order)?;
    println!("f = {f}");
    for grid in BuiltinGrid::ALL {
        println!("I_{grid} = {}", compute_i(grid, &f, order)?);
    }
    let residual = &rhs(&f, order)? - &f;
    println!("residual is zero: {}", residual.is_zero());
    Ok(())
}
