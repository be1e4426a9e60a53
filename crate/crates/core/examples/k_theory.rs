//! Topological K-theory and K-homology of BΓ for a few types.

use tbi::invariants::{k_homology_bgamma, k_theory_bgamma};
use tbi::{GammaDescriptor, TypeSignature};

fn main() -> tbi::Result<()> {
    for (p, sig) in [(3, TypeSignature::new(0, 0, 1)), (3, TypeSignature::new(1, 1, 0)), (5, TypeSignature::new(2, 0, 1))] {
        let g = GammaDescriptor::canonical(p, sig)?;
        for m in 0..2 {
            println!("p={p} type={sig}: K^{m}(BΓ) = {}, K_{m}(BΓ) = {}",
                k_theory_bgamma(&g, m)?, k_homology_bgamma(&g, m)?);
        }
    }
    Ok(())
}
