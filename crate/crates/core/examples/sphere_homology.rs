//! Z/p-equivariant homology of a free linear sphere with lattice coefficients.

use tbi::cohomology::{sphere_equivariant_homology, Coefficients};
use tbi::ZpLattice;

fn show(name: &str, l: &ZpLattice, ell: usize, coeff: Coefficients) -> tbi::Result<()> {
    let groups = sphere_equivariant_homology(l, ell, coeff)?;
    let text: Vec<String> = groups.iter().map(ToString::to_string).collect();
    println!("{name}, ℓ = {ell}, {coeff:?}: [{}]", text.join(", "));
    Ok(())
}

fn main() -> tbi::Result<()> {
    let trivial = ZpLattice::trivial(5, 1)?;
    show("trivial", &trivial, 5, Coefficients::Integral)?;
    show("trivial", &trivial, 5, Coefficients::Mod2)?;
    show("regular", &ZpLattice::regular(5)?, 3, Coefficients::Integral)?;
    show("cyclotomic", &ZpLattice::cyclotomic(3)?, 3, Coefficients::Integral)?;
    Ok(())
}
