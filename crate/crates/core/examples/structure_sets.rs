//! Structure sets of BΓ and of the torus bundle over a sphere.

use tbi::invariants::structure_set_bgamma;
use tbi::invariants::structure_set;
use tbi::{BundleDescriptor, Decoration, GammaDescriptor, StructureKind, TypeSignature};

fn main() -> tbi::Result<()> {
    let g = GammaDescriptor::canonical(3, TypeSignature::new(1, 0, 1))?;
    for m in 0..4 {
        println!("S_{m}(BΓ) = {}", structure_set_bgamma(&g, Decoration::S, m)?);
    }
    let bundle = BundleDescriptor::new(g, 3)?;
    for kind in [StructureKind::Periodic, StructureKind::Geometric] {
        println!("S^s({kind:?}) of the bundle = {}", structure_set(&bundle, Decoration::S, kind)?);
    }
    Ok(())
}
