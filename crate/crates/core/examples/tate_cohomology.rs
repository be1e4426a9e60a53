//! Tate cohomology of exterior powers, compared against the direct
//! subquotient computation.

use tbi::cohomology::{exterior_profile, tate_cohomology_by_subquotient};
use tbi::{TypeSignature, ZpLattice};

fn main() -> tbi::Result<()> {
    let l = ZpLattice::canonical(3, TypeSignature::new(2, 1, 1))?;
    println!("L of type (2,1,1), rank {}", l.rank());
    println!("| r | Ĥ^0(Λ^r L) | Ĥ^1(Λ^r L) |");
    for r in 0..=l.rank() {
        let prof = exterior_profile(&l, r)?;
        println!("| {r} | {} | {} |", prof.tate(0), prof.tate(1));
    }

    let small = ZpLattice::canonical(3, TypeSignature::new(1, 0, 1))?;
    for i in -2..=2 {
        println!("Ĥ^{i}(type (1,0,1)) = {}", tate_cohomology_by_subquotient(&small, i));
    }
    Ok(())
}
