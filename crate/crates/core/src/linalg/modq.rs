use super::matrix::IntegerMatrix;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of `A mod q` over the field `F_q`.
pub fn rank_mod_q(a: &IntegerMatrix, q: u64) -> Result<usize> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q > u32::MAX as u64 {
        return Err(Error::UnsupportedPrime {
            p: q,
            reason: "modulus must fit in 32 bits".into(),
        });
    }
    Ok(SparseMatrix::from_dense(a).rank_mod(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf::invariant_factors;
    use num_integer::Integer;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn rank_mod_matches_invariant_factors() {
        let a = IntegerMatrix::from_rows(&[[2, 4, 0], [6, 8, 3], [0, 3, 9]]);
        let f = invariant_factors(&a);
        for q in [2, 3, 5, 7] {
            let units = f.iter().filter(|d| !d.is_multiple_of(&q.into())).count();
            assert_eq!(rank_mod_q(&a, q).unwrap(), units, "q = {q}");
        }
        assert!(matches!(rank_mod_q(&a, 4), Err(Error::NotPrime(4))));
    }
}
