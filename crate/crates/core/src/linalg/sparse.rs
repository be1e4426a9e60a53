//! Row-sparse integer matrices and a unimodular elimination that returns a
//! diagonal form (not necessarily a divisibility chain) of the matrix.
//!
//! Elimination first runs over `i64` with checked arithmetic and restarts in
//! `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_diagonal_rows;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    pub fn from_dense(a: &IntegerMatrix) -> Self {
        let data = (0..a.rows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: a.rows(),
            cols: a.cols(),
            data,
        }
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out.set(i, *j, x.clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    /// Kronecker product with the same left-major basis as the dense version.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a_row in &self.data {
            for b_row in &other.data {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (j, x) in a_row {
                    for (l, y) in b_row {
                        row.push((j * other.cols + l, x * y));
                    }
                }
                data.push(row);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            data,
        }
    }

    /// `self + scale * I` (square only).
    pub fn add_scaled_identity(&self, scale: i64) -> SparseMatrix {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut out = self.clone();
        for (i, row) in out.data.iter_mut().enumerate() {
            match row.binary_search_by_key(&i, |(j, _)| *j) {
                Ok(k) => {
                    row[k].1 += scale;
                    if row[k].1.is_zero() {
                        row.remove(k);
                    }
                }
                Err(k) => {
                    if scale != 0 {
                        row.insert(k, (i, BigInt::from(scale)));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for a_row in &self.data {
            for (k, x) in a_row {
                for (j, y) in &other.data[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += x * y;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut row = Vec::new();
            for &j in &touched {
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            touched.clear();
            data.push(row);
        }
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut k) = (0, 0);
                while i < a.len() || k < b.len() {
                    if k == b.len() || (i < a.len() && a[i].0 < b[k].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i == a.len() || b[k].0 < a[i].0 {
                        out.push(b[k].clone());
                        k += 1;
                    } else {
                        let v = &a[i].1 + &b[k].1;
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        k += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rank over `F_q` for a prime `q` that fits in a machine word.
    pub(crate) fn rank_mod(&self, q: u64) -> usize {
        let q = q as u128;
        let reduce = |x: &BigInt| -> u64 {
            let r = x.mod_floor(&BigInt::from(q));
            r.to_u64().expect("residue fits")
        };
        let mut rows: Vec<Vec<(usize, u64)>> = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, x)| (*j, reduce(x)))
                    .filter(|(_, x)| *x != 0)
                    .collect()
            })
            .collect();
        // pivot row for each leading column
        let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; self.cols];
        let mut rank = 0;
        let inv = |a: u64| -> u64 { mod_pow(a as u128, q - 2, q) as u64 };
        for row in rows.iter_mut() {
            let mut row = std::mem::take(row);
            while let Some(&(lead, x)) = row.first() {
                match &pivots[lead] {
                    Some(p) => {
                        // row -= x * p, where p is monic at lead
                        row = axpy_mod(&row, p, (q as u64) - x, q);
                    }
                    None => {
                        let s = inv(x);
                        let monic = row
                            .iter()
                            .map(|(j, v)| (*j, ((*v as u128 * s as u128) % q) as u64))
                            .collect();
                        pivots[lead] = Some(monic);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

fn mod_pow(mut b: u128, mut e: u128, q: u128) -> u128 {
    let mut acc = 1u128;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// `a + f * b` modulo `q` on sorted sparse rows.
fn axpy_mod(a: &[(usize, u64)], b: &[(usize, u64)], f: u64, q: u128) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    let scaled = |v: u64| ((v as u128 * f as u128) % q) as u64;
    while i < a.len() || k < b.len() {
        if k == b.len() || (i < a.len() && a[i].0 < b[k].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[k].0 < a[i].0 {
            let v = scaled(b[k].1);
            if v != 0 {
                out.push((b[k].0, v));
            }
            k += 1;
        } else {
            let v = ((a[i].1 as u128 + scaled(b[k].1) as u128) % q) as u64;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

trait Entry: Clone + Sized {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Compares absolute values.
    fn abs_lt(&self, other: &Self) -> bool;
    fn divides(&self, other: &Self) -> bool;
    fn exact_div(&self, d: &Self) -> Self;
    /// `self - f * x`
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self>;
    /// `-f * x`
    fn neg_mul(f: &Self, x: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && other.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*x)?)
    }
    fn neg_mul(f: &Self, x: &Self) -> Option<Self> {
        f.checked_mul(*x)?.checked_neg()
    }
}

impl Entry for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && other.is_multiple_of(self)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        Some(self - f * x)
    }
    fn neg_mul(f: &Self, x: &Self) -> Option<Self> {
        Some(-(f * x))
    }
}

struct Overflow;

struct Eliminator<E> {
    rows: Vec<Vec<(usize, E)>>,
    alive: Vec<bool>,
    col_rows: Vec<Vec<usize>>,
    col_count: Vec<usize>,
    pivots: Vec<BigInt>,
}

impl<E: Entry> Eliminator<E> {
    fn new(a: &SparseMatrix) -> Option<Self> {
        let mut rows = Vec::with_capacity(a.rows);
        for r in &a.data {
            let mut row = Vec::with_capacity(r.len());
            for (j, x) in r {
                row.push((*j, E::from_big(x)?));
            }
            rows.push(row);
        }
        let mut col_rows = vec![Vec::new(); a.cols];
        let mut col_count = vec![0; a.cols];
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j].push(i);
                col_count[*j] += 1;
            }
        }
        let alive = rows.iter().map(|r| !r.is_empty()).collect();
        Some(Eliminator {
            rows,
            alive,
            col_rows,
            col_count,
            pivots: Vec::new(),
        })
    }

    fn entry(&self, r: usize, c: usize) -> Option<&E> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(j, _)| *j)
            .ok()
            .map(|k| &row[k].1)
    }

    /// Uses `(r, c)` as a pivot that divides every entry of its column, then
    /// drops row `r` and column `c`. The caller guarantees the pivot also
    /// divides every entry of row `r`, so the column operations that clear
    /// the row touch nothing else.
    fn pivot(&mut self, r: usize, c: usize) -> Result<(), Overflow> {
        let prow = std::mem::take(&mut self.rows[r]);
        self.alive[r] = false;
        for (j, _) in &prow {
            self.col_count[*j] -= 1;
        }
        let k = prow.binary_search_by_key(&c, |(j, _)| *j).ok().unwrap();
        let piv = prow[k].1.clone();
        self.pivots.push(piv.to_big());
        let mut targets = std::mem::take(&mut self.col_rows[c]);
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            if t == r || !self.alive[t] {
                continue;
            }
            let Some(x) = self.entry(t, c) else { continue };
            let f = x.exact_div(&piv);
            let merged = self.merge(t, &prow, &f)?;
            self.rows[t] = merged;
            if self.rows[t].is_empty() {
                self.alive[t] = false;
            }
        }
        Ok(())
    }

    /// `rows[t] - f * prow`, with column bookkeeping.
    fn merge(&mut self, t: usize, prow: &[(usize, E)], f: &E) -> Result<Vec<(usize, E)>, Overflow> {
        let a = std::mem::take(&mut self.rows[t]);
        let mut out = Vec::with_capacity(a.len() + prow.len());
        let (mut i, mut k) = (0, 0);
        while i < a.len() || k < prow.len() {
            if k == prow.len() || (i < a.len() && a[i].0 < prow[k].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || prow[k].0 < a[i].0 {
                let j = prow[k].0;
                let v = E::neg_mul(f, &prow[k].1).ok_or(Overflow)?;
                self.col_count[j] += 1;
                self.col_rows[j].push(t);
                out.push((j, v));
                k += 1;
            } else {
                let j = a[i].0;
                let v = a[i].1.sub_mul(f, &prow[k].1).ok_or(Overflow)?;
                if v.vanishes() {
                    self.col_count[j] -= 1;
                } else {
                    out.push((j, v));
                }
                i += 1;
                k += 1;
            }
        }
        Ok(out)
    }

    fn live_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.rows.len()).filter(|&r| self.alive[r]).collect();
        order.sort_by_key(|&r| self.rows[r].len());
        order
    }

    fn unit_rounds(&mut self) -> Result<(), Overflow> {
        loop {
            let mut progress = false;
            for r in self.live_order() {
                if !self.alive[r] {
                    continue;
                }
                let best = self.rows[r]
                    .iter()
                    .filter(|(_, x)| x.is_unit())
                    .min_by_key(|(j, _)| self.col_count[*j])
                    .map(|(j, _)| *j);
                if let Some(c) = best {
                    self.pivot(r, c)?;
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    fn dividing_rounds(&mut self) -> Result<bool, Overflow> {
        let mut any = false;
        for r in self.live_order() {
            if !self.alive[r] {
                continue;
            }
            let row = &self.rows[r];
            let Some((c, piv)) = row
                .iter()
                .reduce(|a, b| if b.1.abs_lt(&a.1) { b } else { a })
                .map(|(c, x)| (*c, x.clone()))
            else {
                continue;
            };
            if !row.iter().all(|(_, x)| piv.divides(x)) {
                continue;
            }
            let column_ok = self.col_rows[c].iter().all(|&t| {
                !self.alive[t] || self.entry(t, c).is_none_or(|x| piv.divides(x))
            });
            if column_ok {
                self.pivot(r, c)?;
                any = true;
            }
        }
        Ok(any)
    }

    fn run(mut self, ncols: usize) -> Result<Vec<BigInt>, Overflow> {
        loop {
            self.unit_rounds()?;
            if !self.dividing_rounds()? {
                break;
            }
        }
        let rest: Vec<usize> = (0..self.rows.len()).filter(|&r| self.alive[r]).collect();
        if !rest.is_empty() {
            // compact the surviving columns and finish densely
            let mut cols: Vec<usize> = rest
                .iter()
                .flat_map(|&r| self.rows[r].iter().map(|(j, _)| *j))
                .collect();
            cols.sort_unstable();
            cols.dedup();
            let mut index = vec![usize::MAX; ncols];
            for (k, &j) in cols.iter().enumerate() {
                index[j] = k;
            }
            let dense: Vec<Vec<BigInt>> = rest
                .iter()
                .map(|&r| {
                    let mut row = vec![BigInt::zero(); cols.len()];
                    for (j, x) in &self.rows[r] {
                        row[index[*j]] = x.to_big();
                    }
                    row
                })
                .collect();
            for d in smith_diagonal_rows(dense, cols.len()) {
                if !Zero::is_zero(&d) {
                    self.pivots.push(d);
                }
            }
        }
        Ok(self.pivots)
    }
}

/// Nonzero entries (up to sign) of some diagonal matrix equivalent to `a`.
/// Their count is the rank and their multiset of elementary divisors is that
/// of the Smith form.
pub fn diagonal_form(a: &SparseMatrix) -> Vec<BigInt> {
    if let Some(e) = Eliminator::<i64>::new(a) {
        if let Ok(d) = e.run(a.cols) {
            return d.into_iter().map(|x| x.abs()).collect();
        }
    }
    let e = Eliminator::<BigInt>::new(a).expect("BigInt entries always convert");
    match e.run(a.cols) {
        Ok(d) => d.into_iter().map(|x| x.abs()).collect(),
        Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::abelian::AbelianGroupPresentation;
    use crate::linalg::functor::kron_tensor;
    use crate::linalg::snf::snf;

    fn chain(a: &IntegerMatrix) -> Vec<BigInt> {
        AbelianGroupPresentation::normalize_factors(diagonal_form(&SparseMatrix::from_dense(a)))
    }

    fn dense_chain(a: &IntegerMatrix) -> Vec<BigInt> {
        snf(a).diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    #[test]
    fn agrees_with_dense_smith_form() {
        let cases = [
            IntegerMatrix::from_rows(&[[2, 4], [6, 8]]),
            IntegerMatrix::from_rows(&[[0, 0], [0, 0]]),
            IntegerMatrix::from_rows(&[[6, 10, 15]]),
            IntegerMatrix::from_rows(&[[4, 6, 0], [6, 4, 2], [2, 2, 2], [0, 0, 8]]),
            IntegerMatrix::from_rows(&[[3, 0, 0], [0, 5, 0], [0, 0, 0]]),
        ];
        for a in &cases {
            assert_eq!(chain(a), dense_chain(a), "{a:?}");
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let a = IntegerMatrix::from_rows(&[[i64::MAX, 2], [3, i64::MAX]]);
        assert_eq!(chain(&a), dense_chain(&a));
    }

    #[test]
    fn kron_matches_dense() {
        let a = IntegerMatrix::from_rows(&[[0, -1], [1, -1]]);
        let b = IntegerMatrix::from_rows(&[[2, 0, 1], [0, 0, 3]]);
        let s = SparseMatrix::from_dense(&a).kron(&SparseMatrix::from_dense(&b));
        assert_eq!(s.to_dense(), kron_tensor(&a, &b));
    }

    #[test]
    fn products_and_identity_shift() {
        let a = IntegerMatrix::from_rows(&[[0, -1], [1, -1]]);
        let s = SparseMatrix::from_dense(&a);
        assert_eq!(s.mul(&s).to_dense(), a.mul(&a).unwrap());
        assert_eq!(s.add(&s).to_dense(), a.add(&a).unwrap());
        assert_eq!(
            s.add_scaled_identity(-1).to_dense(),
            a.minus_identity().unwrap()
        );
        assert_eq!(s.mul(&SparseMatrix::identity(2)), s);
    }

    #[test]
    fn rank_mod_small_primes() {
        let a = SparseMatrix::from_dense(&IntegerMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(a.rank_mod(2), 0);
        assert_eq!(a.rank_mod(3), 2);
        let b = SparseMatrix::from_dense(&IntegerMatrix::from_rows(&[[3, 6], [1, 2]]));
        assert_eq!(b.rank_mod(5), 1);
        assert_eq!(b.rank_mod(3), 1);
    }
}
