//! E2 pages of the K-theory and L-homology spectral sequences, plus the
//! consistency check against the closed forms.

use tbi::spectral::{consistency_check, e2_page, E2Variant};
use tbi::{TypeSignature, ZpLattice};

fn main() -> tbi::Result<()> {
    let l = ZpLattice::canonical(3, TypeSignature::new(1, 1, 0))?;
    print!("{}", e2_page(&l, 0, E2Variant::KCohomology, 6)?.to_markdown());
    println!();
    print!("{}", e2_page(&l, 2, E2Variant::LHomologyM, 3)?.to_markdown());
    println!();
    let report = consistency_check(&l, 0, 6)?;
    print!("{}", report.to_markdown());
    Ok(())
}
