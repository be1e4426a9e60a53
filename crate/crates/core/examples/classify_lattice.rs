//! Build Z/p-lattices in several ways and recover their type (a,b,c).

use num_bigint::BigInt;
use tbi::{TypeSignature, ZpLattice};

fn main() -> tbi::Result<()> {
    let p = 5;
    let cyc = ZpLattice::cyclotomic(p)?;
    let mut b0 = vec![BigInt::from(0); cyc.rank()];
    b0[0] = BigInt::from(1);
    let ext = ZpLattice::ideal_extension(&cyc, &b0)?;
    let l = ZpLattice::direct_sum(&[cyc, ext, ZpLattice::trivial(p, 2)?])?;

    println!("rank {} lattice, component ranks {:?}", l.rank(),
        l.components().iter().map(Vec::len).collect::<Vec<_>>());
    println!("type: {}", l.detect_type()?);
    println!("dual type: {}", l.dual().detect_type()?);

    let canonical = ZpLattice::canonical(p, TypeSignature::new(2, 1, 0))?;
    let report = canonical.subgroup_structure()?;
    println!("type (2,1,0): {} classes of order-{p} subgroups, normalizer rank {}",
        report.max_finite_classes, report.normalizer_free_rank);
    println!("{}", serde_json::to_string(&l.to_json()?)?);
    Ok(())
}
