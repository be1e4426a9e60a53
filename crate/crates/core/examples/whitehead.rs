//! Whitehead groups of Γ in low degrees.

use tbi::invariants::whitehead_gamma;
use tbi::{GammaDescriptor, TypeSignature};

fn main() -> tbi::Result<()> {
    for sig in [TypeSignature::new(1, 0, 0), TypeSignature::new(0, 2, 1)] {
        let g = GammaDescriptor::canonical(5, sig)?;
        for m in -2..=1 {
            println!("type {sig}: Wh_{m}(Γ) = {}", whitehead_gamma(&g, m)?);
        }
    }
    Ok(())
}
