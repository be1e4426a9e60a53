//! Multilinear functors on matrices: tensor (Kronecker) products and exterior
//! powers, plus the determinants they are built from.
//!
//! Basis conventions are fixed here once for the whole crate:
//! - `A ⊗ B` uses the left-major lexicographic basis `e_i ⊗ f_k ↦ i * dim(B) + k`;
//! - `Λ^r(A)` uses strictly increasing index tuples in lexicographic order, and
//!   its `(I, J)` entry is the minor `det A[I, J]`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

pub fn kron_tensor(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = IntegerMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * br + k, j * bc + l, x * y);
                    }
                }
            }
        }
    }
    out
}

/// Strictly increasing `r`-subsets of `0..n` in lexicographic order.
pub fn index_tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - r + i {
                cur[i] += 1;
                for k in i + 1..r {
                    cur[k] = cur[k - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn exterior_power_matrix(a: &IntegerMatrix, r: usize) -> Result<IntegerMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if r > n {
        return Err(Error::ExteriorDegree { r, n });
    }
    let tuples = index_tuples(n, r);
    let dim = tuples.len();
    let mut out = IntegerMatrix::zeros(dim, dim);
    let small = a.to_i64_rows();
    for (cj, cols) in tuples.iter().enumerate() {
        // rows that are entirely zero in these columns give vanishing minors
        let live: Vec<bool> = (0..n)
            .map(|i| cols.iter().any(|&j| !a.get(i, j).is_zero()))
            .collect();
        for (ri, rows) in tuples.iter().enumerate() {
            if rows.iter().any(|&i| !live[i]) {
                continue;
            }
            let minor = match &small {
                Some(s) => {
                    let sub: Vec<Vec<i128>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| s[i][j] as i128).collect())
                        .collect();
                    match det_i128(sub) {
                        Some(d) => BigInt::from(d),
                        None => determinant_rows(&a.submatrix(rows, cols).to_rows()),
                    }
                }
                None => determinant_rows(&a.submatrix(rows, cols).to_rows()),
            };
            if !minor.is_zero() {
                out.set(ri, cj, minor);
            }
        }
    }
    Ok(out)
}

pub(crate) fn determinant_rows(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if let Some(small) = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
    {
        if let Some(d) = det_i128(small) {
            return BigInt::from(d);
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(s) => {
                    m.swap(k, s);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Fraction-free Gaussian elimination in `i128`; `None` on overflow.
fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(s) => {
                    m.swap(k, s);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(
            index_tuples(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(index_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(index_tuples(2, 3).is_empty());
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn kron_small_cases() {
        let i2 = IntegerMatrix::identity(2);
        let i3 = IntegerMatrix::identity(3);
        assert_eq!(kron_tensor(&i2, &i3), IntegerMatrix::identity(6));
        let a = IntegerMatrix::from_rows(&[[2]]);
        let b = IntegerMatrix::from_rows(&[[3]]);
        assert_eq!(kron_tensor(&a, &b), IntegerMatrix::from_rows(&[[6]]));
    }

    #[test]
    fn kron_of_regular_actions_is_diagonal_permutation() {
        // t e_i = e_{i+1 mod 3}; on the tensor square t acts as e_i ⊗ e_k ↦ e_{i+1} ⊗ e_{k+1}
        let t = IntegerMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let tt = kron_tensor(&t, &t);
        for i in 0..3 {
            for k in 0..3 {
                let src = i * 3 + k;
                let dst = ((i + 1) % 3) * 3 + (k + 1) % 3;
                for row in 0..9 {
                    let expected = if row == dst { 1 } else { 0 };
                    assert_eq!(tt.get(row, src), &big(expected));
                }
            }
        }
        assert!(tt.pow(3).unwrap().is_identity());
    }

    #[test]
    fn exterior_power_extremes() {
        let a = IntegerMatrix::from_rows(&[[2, 1, 0], [1, 3, 4], [0, 5, 7]]);
        assert_eq!(exterior_power_matrix(&a, 0).unwrap(), IntegerMatrix::from_rows(&[[1]]));
        assert_eq!(exterior_power_matrix(&a, 1).unwrap(), a);
        let det = a.determinant().unwrap();
        assert_eq!(exterior_power_matrix(&a, 3).unwrap().get(0, 0), &det);
        assert!(matches!(
            exterior_power_matrix(&a, 4),
            Err(Error::ExteriorDegree { r: 4, n: 3 })
        ));
        assert!(exterior_power_matrix(&IntegerMatrix::zeros(2, 3), 1).is_err());
    }

    #[test]
    fn exterior_square_of_companion_is_determinant() {
        let c = IntegerMatrix::from_rows(&[[0, -1], [1, -1]]);
        assert_eq!(exterior_power_matrix(&c, 2).unwrap(), IntegerMatrix::from_rows(&[[1]]));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = IntegerMatrix::from_rows(&[[2, -3, 1], [2, 0, -1], [1, 4, 5]]);
        // 2(0+4) + 3(10+1) + 1(8-0) = 8 + 33 + 8
        assert_eq!(a.determinant().unwrap(), big(49));
        let singular = IntegerMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(singular.determinant().unwrap(), big(0));
        let huge = IntegerMatrix::from_rows(&[[i64::MAX, 1], [1, i64::MAX]]);
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) - 1;
        assert_eq!(huge.determinant().unwrap(), expected);
    }
}
