//! Integral representations of `Z/p`: lattices `Z^n` with the matrix of a
//! fixed generator `t`, their constructors, and classification by type.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology;
use crate::error::{Error, Result};
use crate::linalg::{
    exterior_power_matrix, is_prime, kron_tensor, solve, IntegerMatrix, SparseMatrix,
};

pub const DEFAULT_MAX_PRIME: u64 = 13;

/// Rejects anything but odd primes up to `max_prime`.
pub fn check_prime(p: u64, max_prime: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime {
            p,
            reason: "only odd primes are supported".into(),
        });
    }
    if p > max_prime {
        return Err(Error::UnsupportedPrime {
            p,
            reason: format!("exceeds the configured maximum {max_prime}"),
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZpLattice {
    p: u64,
    action: IntegerMatrix,
}

/// Multiplicities `(a, b, c)` of the cyclotomic, extension and trivial
/// indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeSignature {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    /// Conjugacy classes of maximal finite subgroups; a power of `p`.
    pub max_finite_classes: u64,
    pub normalizer_free_rank: usize,
    pub weyl_free_rank: usize,
}

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    p: u64,
    n: usize,
    action: Vec<Vec<i64>>,
}

impl TypeSignature {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        TypeSignature { a, b, c }
    }

    pub fn rank(&self, p: u64) -> usize {
        let p = p as usize;
        self.a * (p - 1) + self.b * p + self.c
    }

    pub fn free_part(&self) -> usize {
        self.b + self.c
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FromStr for TypeSignature {
    type Err = Error;

    /// Accepts `(a,b,c)` with or without parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || Error::InvalidParameter(format!("type signature {s:?}, expected (a,b,c)"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v = [0usize; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| bad())?;
        }
        Ok(TypeSignature::new(v[0], v[1], v[2]))
    }
}

impl ZpLattice {
    /// Validates `action^p = I` (which forces `det = 1` for odd `p`).
    pub fn from_matrix(p: u64, action: IntegerMatrix) -> Result<Self> {
        check_prime(p, u64::MAX)?;
        if !action.is_square() {
            return Err(Error::NotSquare {
                rows: action.rows(),
                cols: action.cols(),
            });
        }
        let lattice = ZpLattice { p, action };
        lattice.validate()?;
        Ok(lattice)
    }

    fn validate(&self) -> Result<()> {
        let t = SparseMatrix::from_dense(&self.action);
        let mut acc = SparseMatrix::identity(self.rank());
        let mut base = t;
        let mut e = self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if acc != SparseMatrix::identity(self.rank()) {
            return Err(Error::InvalidAction(format!(
                "the action matrix does not satisfy t^{} = I",
                self.p
            )));
        }
        Ok(())
    }

    pub fn trivial(p: u64, c: usize) -> Result<Self> {
        check_prime(p, u64::MAX)?;
        Ok(ZpLattice {
            p,
            action: IntegerMatrix::identity(c),
        })
    }

    /// `Z[ζ_p]` in the power basis: companion matrix of `1 + x + … + x^{p-1}`.
    pub fn cyclotomic(p: u64) -> Result<Self> {
        check_prime(p, u64::MAX)?;
        let n = (p - 1) as usize;
        let mut m = IntegerMatrix::zeros(n, n);
        for j in 0..n {
            if j + 1 < n {
                m.set(j + 1, j, BigInt::one());
            }
            m.set(j, n - 1, BigInt::from(-1));
        }
        Ok(ZpLattice { p, action: m })
    }

    /// The group ring `Z[Z/p]`: `t e_i = e_{i+1 mod p}`.
    pub fn regular(p: u64) -> Result<Self> {
        check_prime(p, u64::MAX)?;
        let n = p as usize;
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.set((i + 1) % n, i, BigInt::one());
        }
        Ok(ZpLattice { p, action: m })
    }

    /// `B ⊕ Z` with `t(x, m) = (t x + m b0, m)`. Requires `B` of cyclotomic
    /// type and `b0 ∉ (1 - t)B`.
    pub fn ideal_extension(base: &ZpLattice, b0: &[BigInt]) -> Result<Self> {
        let p = base.p;
        let n = base.rank();
        if base.detect_type()? != TypeSignature::new(1, 0, 0) {
            return Err(Error::InvalidAction(
                "the base of an ideal extension must be of cyclotomic type".into(),
            ));
        }
        if b0.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "b0 has {} coordinates, base has rank {n}",
                b0.len()
            )));
        }
        let one_minus_t = base.action.minus_identity()?.neg();
        if solve(&one_minus_t, b0)?.is_some() {
            return Err(Error::DecomposableExtension);
        }
        let mut m = IntegerMatrix::zeros(n + 1, n + 1);
        for (i, b) in b0.iter().enumerate() {
            for j in 0..n {
                m.set(i, j, base.action.get(i, j).clone());
            }
            m.set(i, n, b.clone());
        }
        m.set(n, n, BigInt::one());
        ZpLattice::from_matrix(p, m)
    }

    pub fn direct_sum(parts: &[ZpLattice]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidParameter("empty direct sum".into()));
        };
        if let Some(other) = parts.iter().find(|l| l.p != first.p) {
            return Err(Error::InvalidParameter(format!(
                "direct sum mixes p = {} and p = {}",
                first.p, other.p
            )));
        }
        let blocks: Vec<IntegerMatrix> = parts.iter().map(|l| l.action.clone()).collect();
        Ok(ZpLattice {
            p: first.p,
            action: IntegerMatrix::block_diagonal(&blocks),
        })
    }

    /// `cyclotomic^a ⊕ regular^b ⊕ trivial(c)`.
    pub fn canonical(p: u64, sig: TypeSignature) -> Result<Self> {
        let mut parts = Vec::new();
        for _ in 0..sig.a {
            parts.push(ZpLattice::cyclotomic(p)?);
        }
        for _ in 0..sig.b {
            parts.push(ZpLattice::regular(p)?);
        }
        parts.push(ZpLattice::trivial(p, sig.c)?);
        ZpLattice::direct_sum(&parts)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &IntegerMatrix {
        &self.action
    }

    /// Contragredient action `(t^{-1})^T`; `t^{-1} = t^{p-1}`.
    pub fn dual(&self) -> ZpLattice {
        let inv = self.action.pow(self.p - 1).expect("square");
        ZpLattice {
            p: self.p,
            action: inv.transpose(),
        }
    }

    pub fn exterior_power(&self, r: usize) -> Result<ZpLattice> {
        Ok(ZpLattice {
            p: self.p,
            action: exterior_power_matrix(&self.action, r)?,
        })
    }

    pub fn tensor(&self, other: &ZpLattice) -> Result<ZpLattice> {
        if self.p != other.p {
            return Err(Error::InvalidParameter(format!(
                "tensor product of lattices for p = {} and p = {}",
                self.p, other.p
            )));
        }
        Ok(ZpLattice {
            p: self.p,
            action: kron_tensor(&self.action, &other.action),
        })
    }

    /// Index sets of the connected components of the action's support. The
    /// lattice is the direct sum of the restrictions to these coordinates.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.action.get(i, j).is_zero() {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        groups
    }

    /// Action matrices of the components, in order of their first index.
    pub fn component_blocks(&self) -> Vec<IntegerMatrix> {
        self.components()
            .iter()
            .map(|idx| self.action.submatrix(idx, idx))
            .collect()
    }

    /// Type `(a, b, c)` from `dim H^1`, the fixed rank and the total rank.
    pub fn detect_type(&self) -> Result<TypeSignature> {
        let profile = cohomology::lattice_profile(self);
        let h1 = profile.tate(1);
        if !h1.is_elementary(self.p) {
            return Err(Error::Unclassifiable(format!(
                "H^1 = {h1} is not elementary abelian of exponent {}",
                self.p
            )));
        }
        let p = self.p as usize;
        let a = h1.torsion().len();
        let fixed = profile.fixed_rank();
        let n = self.rank();
        let rest = n as i64 - (a * (p - 1)) as i64 - fixed as i64;
        if rest < 0 || rest % (p as i64 - 1) != 0 {
            return Err(Error::Unclassifiable(format!(
                "rank {n}, H^1 of dimension {a} and fixed rank {fixed} fit no type"
            )));
        }
        let b = (rest / (p as i64 - 1)) as usize;
        if b > fixed {
            return Err(Error::Unclassifiable(format!(
                "fixed rank {fixed} is smaller than the {b} extension summands"
            )));
        }
        Ok(TypeSignature::new(a, b, fixed - b))
    }

    pub fn subgroup_structure(&self) -> Result<SubgroupReport> {
        let sig = self.detect_type()?;
        let classes = u32::try_from(sig.a)
            .ok()
            .and_then(|a| self.p.checked_pow(a))
            .ok_or_else(|| Error::OutOfScope(format!("{}^{} overflows", self.p, sig.a)))?;
        Ok(SubgroupReport {
            max_finite_classes: classes,
            normalizer_free_rank: sig.free_part(),
            weyl_free_rank: sig.free_part(),
        })
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let action = self.action.to_i64_rows().ok_or_else(|| {
            Error::OutOfScope("action entries exceed the 64-bit file format".into())
        })?;
        Ok(serde_json::to_value(LatticeFile {
            p: self.p,
            n: self.rank(),
            action,
        })?)
    }

    pub fn from_json_str(s: &str) -> Result<ZpLattice> {
        let file: LatticeFile = serde_json::from_str(s)?;
        if file.action.len() != file.n || file.action.iter().any(|r| r.len() != file.n) {
            return Err(Error::DimensionMismatch(format!(
                "lattice file declares n = {} but the action is not {0}x{0}",
                file.n
            )));
        }
        ZpLattice::from_matrix(file.p, IntegerMatrix::from_rows(&file.action))
    }

    pub fn read_json(path: &Path) -> Result<ZpLattice> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        ZpLattice::from_json_str(&text)
    }
}

impl fmt::Debug for ZpLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZpLattice")
            .field("p", &self.p)
            .field("n", &self.rank())
            .field("action", &self.action)
            .finish()
    }
}

/// Parses small integer coordinate lists such as `1,0,-2`.
pub fn parse_coords(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidParameter(format!("bad coordinate {x:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: usize, b: usize, c: usize) -> TypeSignature {
        TypeSignature::new(a, b, c)
    }

    #[test]
    fn basic_constructors() {
        let r = ZpLattice::regular(3).unwrap();
        assert_eq!(
            r.action(),
            &IntegerMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        );
        assert_eq!(r.detect_type().unwrap(), sig(0, 1, 0));
        let c = ZpLattice::cyclotomic(5).unwrap();
        assert_eq!(c.rank(), 4);
        assert_eq!(c.detect_type().unwrap(), sig(1, 0, 0));
        let t = ZpLattice::trivial(3, 2).unwrap();
        assert!(t.action().is_identity());
        assert_eq!(t.detect_type().unwrap(), sig(0, 0, 2));
    }

    #[test]
    fn rejects_bad_actions() {
        let m = IntegerMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert!(matches!(
            ZpLattice::from_matrix(3, m),
            Err(Error::InvalidAction(_))
        ));
        let m = IntegerMatrix::from_rows(&[[2]]);
        assert!(ZpLattice::from_matrix(3, m).is_err());
        assert!(matches!(ZpLattice::trivial(4, 1), Err(Error::NotPrime(4))));
        assert!(ZpLattice::trivial(2, 1).is_err());
        assert!(check_prime(17, DEFAULT_MAX_PRIME).is_err());
    }

    #[test]
    fn ideal_extension_examples() {
        let base = ZpLattice::cyclotomic(3).unwrap();
        let e1 = vec![BigInt::one(), BigInt::zero()];
        let ext = ZpLattice::ideal_extension(&base, &e1).unwrap();
        assert_eq!(
            ext.action(),
            &IntegerMatrix::from_rows(&[[0, -1, 1], [1, -1, 0], [0, 0, 1]])
        );
        assert_eq!(ext.detect_type().unwrap(), sig(0, 1, 0));
        // (1 - t) e_1 = (1, -1) gives a split extension
        let split = vec![BigInt::one(), BigInt::from(-1)];
        assert!(matches!(
            ZpLattice::ideal_extension(&base, &split),
            Err(Error::DecomposableExtension)
        ));
        let not_cyclotomic = ZpLattice::trivial(3, 2).unwrap();
        assert!(ZpLattice::ideal_extension(&not_cyclotomic, &e1).is_err());
    }

    #[test]
    fn detect_type_on_sums() {
        let l = ZpLattice::direct_sum(&[
            ZpLattice::cyclotomic(3).unwrap(),
            ZpLattice::regular(3).unwrap(),
            ZpLattice::trivial(3, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(l.detect_type().unwrap(), sig(1, 1, 1));
        let l = ZpLattice::canonical(5, sig(2, 0, 0)).unwrap();
        assert_eq!(l.detect_type().unwrap(), sig(2, 0, 0));
        for p in [3, 5] {
            for a in 0..=3 {
                for b in 0..=3 {
                    for c in 0..=3 {
                        let l = ZpLattice::canonical(p, sig(a, b, c)).unwrap();
                        assert_eq!(l.rank(), sig(a, b, c).rank(p));
                        assert_eq!(l.detect_type().unwrap(), sig(a, b, c));
                        assert_eq!(l.dual().detect_type().unwrap(), sig(a, b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn dual_and_powers() {
        let r = ZpLattice::regular(3).unwrap();
        let d = r.dual();
        // a permutation matrix is orthogonal, so its contragredient is itself
        assert_eq!(d.action(), &r.action().pow(2).unwrap().transpose());
        assert_eq!(d, r);
        let c = ZpLattice::cyclotomic(5).unwrap();
        assert_eq!(c.dual().dual(), c);
        assert_eq!(
            ZpLattice::cyclotomic(3).unwrap().exterior_power(2).unwrap(),
            ZpLattice::trivial(3, 1).unwrap()
        );
        assert_eq!(
            r.exterior_power(0).unwrap(),
            ZpLattice::trivial(3, 1).unwrap()
        );
        let t = r.tensor(&r).unwrap();
        assert_eq!(t.rank(), 9);
        assert!(ZpLattice::from_matrix(3, t.action().clone()).is_ok());
    }

    #[test]
    fn subgroup_reports() {
        let rep = ZpLattice::canonical(5, sig(2, 1, 0))
            .unwrap()
            .subgroup_structure()
            .unwrap();
        assert_eq!(rep.max_finite_classes, 25);
        assert_eq!(rep.normalizer_free_rank, 1);
        let rep = ZpLattice::trivial(3, 3).unwrap().subgroup_structure().unwrap();
        assert_eq!((rep.max_finite_classes, rep.weyl_free_rank), (1, 3));
        let rep = ZpLattice::regular(3).unwrap().subgroup_structure().unwrap();
        assert_eq!((rep.max_finite_classes, rep.weyl_free_rank), (1, 1));
    }

    #[test]
    fn components_split_block_sums() {
        let l = ZpLattice::canonical(3, sig(1, 1, 2)).unwrap();
        assert_eq!(
            l.components(),
            vec![vec![0, 1], vec![2, 3, 4], vec![5], vec![6]]
        );
    }

    #[test]
    fn json_round_trip() {
        let l = ZpLattice::canonical(3, sig(1, 1, 0)).unwrap();
        let text = l.to_json().unwrap().to_string();
        assert_eq!(ZpLattice::from_json_str(&text).unwrap(), l);
        assert!(ZpLattice::from_json_str(r#"{"p":3,"n":2,"action":[[1]]}"#).is_err());
        assert_eq!("(1, 2,3)".parse::<TypeSignature>().unwrap(), sig(1, 2, 3));
        assert!("(1,2)".parse::<TypeSignature>().is_err());
    }
}
