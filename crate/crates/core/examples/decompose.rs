//! Substitution decomposition of a few permutations, rebuilt by inflation.

use permgrid::Permutation;

fn main() -> permgrid::Result<()> {
    for s in ["25314", "3142", "2143", "4321", "53412", "246975318"] {
        let p: Permutation = s.parse()?;
        let d = p.substitution_decompose()?;
        let blocks: Vec<String> = d.blocks.iter().map(|b| b.to_string()).collect();
        let back = Permutation::inflate(&d.skeleton, &d.blocks)?;
        println!("{p} = {}[{}]  simple: {}", d.skeleton, blocks.join(", "), p.is_simple());
        assert_eq!(back, p);
    }
    Ok(())
}
