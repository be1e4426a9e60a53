//! Group (co)homology and Tate cohomology of `Z/p` with lattice coefficients,
//! and the equivariant homology of a free `Z/p`-sphere.
//!
//! Everything is read off an [`ActionProfile`]: diagonal forms of `t - 1` and
//! of the norm `N = 1 + t + … + t^{p-1}`. Since `ker N` is the saturation of
//! `im(t - 1)` and `M^G` is the saturation of `im N`, the Tate groups are the
//! torsion subgroups of `coker(t - 1)` and `coker N`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ZpLattice;
use crate::linalg::sparse::diagonal_form;
use crate::linalg::{
    exterior_power_matrix, is_prime, subquotient, AbelianGroupPresentation, IntegerMatrix,
    SparseMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Integral,
    Mod2,
}

/// Diagonal forms of `t - 1` and of the norm element acting on a lattice,
/// stored as multisets of their nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionProfile {
    p: u64,
    dim: usize,
    diff: BTreeMap<BigInt, usize>,
    norm: BTreeMap<BigInt, usize>,
}

fn count(entries: Vec<BigInt>) -> BTreeMap<BigInt, usize> {
    let mut out = BTreeMap::new();
    for d in entries {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

fn non_units(m: &BTreeMap<BigInt, usize>) -> Vec<BigInt> {
    m.iter()
        .filter(|(d, _)| !d.is_one())
        .flat_map(|(d, k)| std::iter::repeat_n(d.clone(), *k))
        .collect()
}

fn units_mod(m: &BTreeMap<BigInt, usize>, q: u64) -> usize {
    let q = BigInt::from(q);
    m.iter()
        .filter(|(d, _)| !d.is_multiple_of(&q))
        .map(|(_, k)| k)
        .sum()
}

fn elementary(q: u64, k: usize) -> AbelianGroupPresentation {
    AbelianGroupPresentation::new(0, std::iter::repeat_n(BigInt::from(q), k))
}

impl ActionProfile {
    /// The zero lattice.
    pub fn empty(p: u64) -> Self {
        ActionProfile {
            p,
            dim: 0,
            diff: BTreeMap::new(),
            norm: BTreeMap::new(),
        }
    }

    /// The trivial lattice `Z`.
    pub fn unit(p: u64) -> Self {
        ActionProfile {
            p,
            dim: 1,
            diff: BTreeMap::new(),
            norm: count(vec![BigInt::from(p)]),
        }
    }

    pub fn from_action(p: u64, t: &SparseMatrix) -> Self {
        let n = t.rows();
        let mut power = SparseMatrix::identity(n);
        let mut norm = SparseMatrix::identity(n);
        for _ in 1..p {
            power = power.mul(t);
            norm = norm.add(&power);
        }
        ActionProfile {
            p,
            dim: n,
            diff: count(diagonal_form(&t.add_scaled_identity(-1))),
            norm: count(diagonal_form(&norm)),
        }
    }

    /// Adds `mult` copies of `other` as direct summands.
    pub fn add_copies(&mut self, other: &ActionProfile, mult: usize) {
        if mult == 0 {
            return;
        }
        self.dim += other.dim * mult;
        for (d, k) in &other.diff {
            *self.diff.entry(d.clone()).or_insert(0) += k * mult;
        }
        for (d, k) in &other.norm {
            *self.norm.entry(d.clone()).or_insert(0) += k * mult;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the invariant sublattice `M^G`.
    pub fn fixed_rank(&self) -> usize {
        self.dim - self.diff.values().sum::<usize>()
    }

    /// `Ĥ^i(Z/p; M)`; 2-periodic in `i`.
    pub fn tate(&self, i: i64) -> AbelianGroupPresentation {
        let source = if i.rem_euclid(2) == 0 {
            &self.norm
        } else {
            &self.diff
        };
        AbelianGroupPresentation::new(0, non_units(source))
    }

    pub fn invariants(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::free(self.fixed_rank())
    }

    pub fn coinvariants(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::new(self.fixed_rank(), non_units(&self.diff))
    }

    /// `dim_{F_q} ker((t - 1) mod q)`.
    pub fn invariants_mod(&self, q: u64) -> usize {
        self.dim - units_mod(&self.diff, q)
    }

    pub fn group_homology_cohomology(&self, variant: Variant, i: usize) -> AbelianGroupPresentation {
        match (variant, i) {
            (Variant::Cohomology, 0) => self.invariants(),
            (Variant::Cohomology, i) => self.tate(i as i64),
            (Variant::Homology, 0) => self.coinvariants(),
            (Variant::Homology, i) => self.tate(-(i as i64) - 1),
        }
    }

    /// `H_i(Z/p; M/2)`.
    pub fn group_homology_mod2(&self, i: usize) -> AbelianGroupPresentation {
        let rd = units_mod(&self.diff, 2);
        if i == 0 {
            elementary(2, self.dim - rd)
        } else {
            elementary(2, self.dim - rd - units_mod(&self.norm, 2))
        }
    }

    /// Homology of `M ←(t-1)− M ←N− M ←(t-1)− … ← M` in degrees `0..=ell`.
    pub fn sphere_homology(&self, ell: usize, coeff: Coefficients) -> Vec<AbelianGroupPresentation> {
        let mut out = Vec::with_capacity(ell + 1);
        match coeff {
            Coefficients::Integral => {
                out.push(self.coinvariants());
                for i in 1..ell {
                    out.push(self.tate(i as i64 + 1));
                }
                out.push(self.invariants());
            }
            Coefficients::Mod2 => {
                let rd = units_mod(&self.diff, 2);
                let rn = units_mod(&self.norm, 2);
                // ker(t-1)/im N and ker N/im(t-1) have the same dimension
                let middle = self.dim - rd - rn;
                out.push(elementary(2, self.dim - rd));
                out.extend((1..ell).map(|_| elementary(2, middle)));
                out.push(elementary(2, self.dim - rd));
            }
        }
        out
    }
}

pub fn norm_matrix(l: &ZpLattice) -> IntegerMatrix {
    let t = l.action();
    let mut acc = IntegerMatrix::identity(l.rank());
    let mut power = IntegerMatrix::identity(l.rank());
    for _ in 1..l.p() {
        power = power.mul(t).expect("square");
        acc = acc.add(&power).expect("same shape");
    }
    acc
}

pub fn tate_cohomology(l: &ZpLattice, i: i64) -> AbelianGroupPresentation {
    lattice_profile(l).tate(i)
}

/// Reference route: `ker(t-1)/im N` in even degrees and `ker N/im(t-1)` in
/// odd degrees, each computed as a subquotient.
pub fn tate_cohomology_by_subquotient(l: &ZpLattice, i: i64) -> AbelianGroupPresentation {
    let diff = l.action().minus_identity().expect("square");
    let norm = norm_matrix(l);
    let result = if i.rem_euclid(2) == 0 {
        subquotient(&diff, &norm)
    } else {
        subquotient(&norm, &diff)
    };
    result.expect("N(t-1) = 0 for a valid action")
}

pub fn group_homology_cohomology(l: &ZpLattice, variant: Variant, i: usize) -> AbelianGroupPresentation {
    lattice_profile(l).group_homology_cohomology(variant, i)
}

pub fn invariants_rank_mod_q(l: &ZpLattice, q: u64) -> Result<usize> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(lattice_profile(l).invariants_mod(q))
}

pub fn check_sphere_dimension(ell: usize) -> Result<()> {
    if ell == 0 || ell.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "sphere dimension must be odd and positive, got {ell}"
        )));
    }
    Ok(())
}

pub fn sphere_equivariant_homology(
    l: &ZpLattice,
    ell: usize,
    coeff: Coefficients,
) -> Result<Vec<AbelianGroupPresentation>> {
    check_sphere_dimension(ell)?;
    Ok(lattice_profile(l).sphere_homology(ell, coeff))
}

type FactorKey = (u64, Vec<(IntegerMatrix, usize)>);

fn cache() -> &'static Mutex<HashMap<FactorKey, Arc<ActionProfile>>> {
    static CACHE: OnceLock<Mutex<HashMap<FactorKey, Arc<ActionProfile>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Profile of `⊗_k Λ^{r_k}(B_k)`.
fn tensor_profile(p: u64, factors: Vec<(IntegerMatrix, usize)>) -> Arc<ActionProfile> {
    let key = (p, factors);
    if let Some(hit) = cache().lock().expect("profile cache").get(&key) {
        return hit.clone();
    }
    let profile = if key.1.is_empty() {
        ActionProfile::unit(p)
    } else {
        let mut t = SparseMatrix::identity(1);
        for (block, r) in &key.1 {
            let power = exterior_power_matrix(block, *r).expect("degree within rank");
            t = t.kron(&SparseMatrix::from_dense(&power));
        }
        ActionProfile::from_action(p, &t)
    };
    let profile = Arc::new(profile);
    cache()
        .lock()
        .expect("profile cache")
        .insert(key, profile.clone());
    profile
}

/// Component blocks of `l` with multiplicities, in order of first appearance.
fn grouped_blocks(l: &ZpLattice) -> Vec<(IntegerMatrix, usize)> {
    let mut groups: Vec<(IntegerMatrix, usize)> = Vec::new();
    for block in l.component_blocks() {
        match groups.iter_mut().find(|(b, _)| *b == block) {
            Some(g) => g.1 += 1,
            None => groups.push((block, 1)),
        }
    }
    groups
}

pub fn lattice_profile(l: &ZpLattice) -> ActionProfile {
    let mut out = ActionProfile::empty(l.p());
    for (block, mult) in grouped_blocks(l) {
        let prof = tensor_profile(l.p(), vec![(block, 1)]);
        out.add_copies(&prof, mult);
    }
    out
}

/// Profile of `Λ^r L`, assembled from `Λ^r(⊕ B_k) ≅ ⊕ ⊗_k Λ^{r_k}(B_k)`.
/// Top and bottom exterior powers of a block are the trivial rank-one
/// lattice (the determinant of an odd-order action is 1) and drop out.
pub fn exterior_profile(l: &ZpLattice, r: usize) -> Result<ActionProfile> {
    if r > l.rank() {
        return Err(Error::ExteriorDegree { r, n: l.rank() });
    }
    let mut expansion = Expansion {
        p: l.p(),
        groups: grouped_blocks(l),
        factors: Vec::new(),
        out: ActionProfile::empty(l.p()),
    };
    expansion.group(0, r, 1);
    Ok(expansion.out)
}

pub fn exterior_profiles(l: &ZpLattice) -> Vec<ActionProfile> {
    (0..=l.rank())
        .map(|r| exterior_profile(l, r).expect("degree within rank"))
        .collect()
}

struct Expansion {
    p: u64,
    groups: Vec<(IntegerMatrix, usize)>,
    factors: Vec<(IntegerMatrix, usize)>,
    out: ActionProfile,
}

impl Expansion {
    /// Spreads the remaining degree over block groups `g..`.
    fn group(&mut self, g: usize, remaining: usize, mult: u128) {
        if g == self.groups.len() {
            if remaining == 0 {
                let prof = tensor_profile(self.p, self.factors.clone());
                let mult = usize::try_from(mult).expect("multiplicity bounded by the dimension");
                self.out.add_copies(&prof, mult);
            }
            return;
        }
        let (copies, size) = (self.groups[g].1, self.groups[g].0.rows());
        let mut counts = vec![0usize; size + 1];
        self.split(g, remaining, mult, copies, 0, 0, &mut counts);
    }

    /// Chooses how many of the identical blocks in group `g` take exterior
    /// degree `degree`, `degree + 1`, and so on.
    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        g: usize,
        remaining: usize,
        mult: u128,
        left: usize,
        degree: usize,
        used: usize,
        counts: &mut Vec<usize>,
    ) {
        let size = counts.len() - 1;
        if degree == size {
            let used = used + size * left;
            if used > remaining {
                return;
            }
            counts[size] = left;
            let mut ways = 1u128;
            let mut placed = 0usize;
            for &c in counts.iter() {
                placed += c;
                ways *= crate::linalg::binomial(placed, c);
            }
            let before = self.factors.len();
            let block = self.groups[g].0.clone();
            for (j, &c) in counts.iter().enumerate().take(size).skip(1) {
                for _ in 0..c {
                    self.factors.push((block.clone(), j));
                }
            }
            self.group(g + 1, remaining - used, mult * ways);
            self.factors.truncate(before);
            counts[size] = 0;
            return;
        }
        for c in 0..=left {
            if used + degree * c > remaining {
                break;
            }
            counts[degree] = c;
            self.split(g, remaining, mult, left - c, degree + 1, used + degree * c, counts);
        }
        counts[degree] = 0;
    }
}
