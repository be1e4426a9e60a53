//! L-groups of the group ring with s, h and -inf decorations.

use tbi::cli::{l_table_markdown, DegreeRange};
use tbi::invariants::l_groups_gamma;
use tbi::{Decoration, GammaDescriptor, TypeSignature};

fn main() -> tbi::Result<()> {
    let g = GammaDescriptor::canonical(3, TypeSignature::new(1, 0, 0))?;
    for m in 0..4 {
        println!("L^<-inf>_{m} = {}", l_groups_gamma(&g, Decoration::MinusInfinity, m)?);
    }
    println!();
    let wider = GammaDescriptor::canonical(5, TypeSignature::new(1, 1, 1))?;
    print!("{}", l_table_markdown(&wider, DegreeRange { start: 0, end: 3 })?);
    Ok(())
}
