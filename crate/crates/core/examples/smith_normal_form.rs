//! Smith normal form, kernels and cokernels of integer matrices.

use tbi::linalg::{cokernel, invariant_factors, kernel_basis, snf, IntegerMatrix};

fn main() -> tbi::Result<()> {
    let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let dec = snf(&a);
    println!("A =\n{a:?}");
    println!("invariant factors: {:?}", invariant_factors(&a));
    println!("cokernel: {}", cokernel(&a));
    // U A V = D
    assert_eq!(dec.u.mul(&a)?.mul(&dec.v)?, dec.d);

    let b = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let k = kernel_basis(&b);
    println!("kernel of B has rank {}: {:?}", k.cols(), k.to_rows());
    Ok(())
}
