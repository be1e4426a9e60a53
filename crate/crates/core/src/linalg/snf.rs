//! Smith normal form over the integers and the constructions built on it:
//! kernels, cokernels, subquotients and integer linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::AbelianGroupPresentation;
use super::matrix::IntegerMatrix;
use super::sparse::{diagonal_form, SparseMatrix};
use crate::error::{Error, Result};

/// `U · A · V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D` (length `min(rows, cols)`), including ones and zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

type Rows = Vec<Vec<BigInt>>;

/// Row/column reduction state. The optional pairs carry a transform and its
/// inverse so that both stay exact without a separate inversion.
struct Reduction {
    a: Rows,
    m: usize,
    n: usize,
    left: Option<(Rows, Rows)>,
    right: Option<(Rows, Rows)>,
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Reduction {
    fn new(a: Rows, n: usize, transforms: bool) -> Self {
        let m = a.len();
        Reduction {
            a,
            m,
            n,
            left: transforms.then(|| (identity_rows(m), identity_rows(m))),
            right: transforms.then(|| (identity_rows(n), identity_rows(n))),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some((u, u_inv)) = &mut self.left {
            u.swap(i, j);
            for row in u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some((v, v_inv)) = &mut self.right {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
            v_inv.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.a[t].clone();
        for (x, s) in self.a[i].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x -= q * s;
            }
        }
        if let Some((u, u_inv)) = &mut self.left {
            let src = u[t].clone();
            for (x, s) in u[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= q * s;
                }
            }
            for row in u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let add = q * &row[i];
                    row[t] += add;
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
        if let Some((v, v_inv)) = &mut self.right {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    let sub = q * &row[t];
                    row[j] -= sub;
                }
            }
            let src = v_inv[j].clone();
            for (x, s) in v_inv[t].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x += q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -&*x;
        }
        if let Some((u, u_inv)) = &mut self.left {
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }

    fn min_abs_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => {
                        if x.abs().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_abs_in(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&pivot);
                        self.row_sub(i, t, &q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&pivot);
                        self.col_sub(j, t, &q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a strictly smaller remainder sits in row t or column t
                    let mut best: Option<(bool, usize, BigInt)> = None;
                    for i in t + 1..self.m {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                            best = Some((true, i, x));
                        }
                    }
                    for j in t + 1..self.n {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                            best = Some((false, j, x));
                        }
                    }
                    if let Some((is_row, k, _)) = best {
                        if is_row {
                            self.swap_rows(t, k);
                        } else {
                            self.swap_cols(t, k);
                        }
                    }
                    continue;
                }
                let offender = (t + 1..self.m).find_map(|i| {
                    (t + 1..self.n)
                        .find(|&j| !self.a[i][j].is_multiple_of(&pivot))
                        .map(|_| i)
                });
                match offender {
                    Some(i) => self.row_sub(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.m.min(self.n)).map(|i| self.a[i][i].clone()).collect()
    }
}

pub fn snf(a: &IntegerMatrix) -> SmithDecomposition {
    let mut red = Reduction::new(a.to_rows(), a.cols(), true);
    red.run();
    let d = IntegerMatrix::from_big_rows(red.a, a.cols());
    let (u, _) = red.left.expect("transforms requested");
    let (v, _) = red.right.expect("transforms requested");
    SmithDecomposition {
        u: IntegerMatrix::from_big_rows(u, a.rows()),
        d,
        v: IntegerMatrix::from_big_rows(v, a.cols()),
    }
}

/// Diagonal of the Smith form of a dense matrix, without transforms.
pub(crate) fn smith_diagonal_rows(rows: Rows, ncols: usize) -> Vec<BigInt> {
    let mut red = Reduction::new(rows, ncols, false);
    red.run();
    red.diagonal()
}

/// Nonzero invariant factors `d_1 | d_2 | …` (ones included). Their count is
/// the rank.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let diag = diagonal_form(&SparseMatrix::from_dense(a));
    AbelianGroupPresentation::normalize_factors(diag)
}

pub fn rank(a: &IntegerMatrix) -> usize {
    diagonal_form(&SparseMatrix::from_dense(a)).len()
}

/// `Z^rows / colspan(A)`.
pub fn cokernel(a: &IntegerMatrix) -> AbelianGroupPresentation {
    let diag = diagonal_form(&SparseMatrix::from_dense(a));
    AbelianGroupPresentation::from_relations(a.rows(), diag)
}

/// Columns form a basis of `{x ∈ Z^cols : A x = 0}`. The basis is part of a
/// unimodular matrix, so it spans a direct summand.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let mut red = Reduction::new(a.to_rows(), a.cols(), true);
    red.run();
    let r = red.diagonal().iter().filter(|d| !d.is_zero()).count();
    let (v, _) = red.right.expect("transforms requested");
    IntegerMatrix::from_big_rows(v, a.cols()).column_range(r..a.cols())
}

/// `ker(A) / im(B)` for a composable pair with `A · B = 0`.
pub fn subquotient(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<AbelianGroupPresentation> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.mul(b)?.is_zero() {
        return Err(Error::MalformedComplex);
    }
    let n = a.cols();
    let mut red = Reduction::new(a.to_rows(), n, true);
    red.run();
    let r = red.diagonal().iter().filter(|d| !d.is_zero()).count();
    let (_, v_inv) = red.right.expect("transforms requested");
    // coordinates of im(B) in the kernel columns of V
    let v_inv = IntegerMatrix::from_big_rows(v_inv, n);
    let coords = v_inv.row_range(r..n).mul(b)?;
    Ok(cokernel(&coords))
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let SmithDecomposition { u, d, v } = snf(a);
    let rhs = IntegerMatrix::new(b.len(), 1, b.to_vec())?;
    let ub = u.mul(&rhs)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let c = ub.get(i, 0);
        let di = if i < a.cols() { d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !c.is_zero() {
                return Ok(None);
            }
        } else if !c.is_multiple_of(&di) {
            return Ok(None);
        } else {
            y[i] = c / &di;
        }
    }
    let y = IntegerMatrix::new(a.cols(), 1, y)?;
    Ok(Some(v.mul(&y)?.column(0)))
}
