//! Closed-form K- and L-theoretic invariants of `Γ = Z^n ⋊ Z/p` and of the
//! bundles `M = T^n ×_{Z/p} S^ℓ`, evaluated as formal abelian groups.

use serde::Serialize;

use crate::cohomology::{check_sphere_dimension, exterior_profiles, ActionProfile};
use crate::error::{Error, Result};
use crate::formal::{Decoration, FormalAbelianGroup, Leaf};
use crate::lattice::{TypeSignature, ZpLattice};
use crate::linalg::binomial;

/// `Γ` for a lattice of known type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDescriptor {
    p: u64,
    type_sig: TypeSignature,
    lattice: ZpLattice,
}

/// `M` together with the sphere dimension `ℓ` (odd, at least 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDescriptor {
    gamma: GammaDescriptor,
    ell: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Periodic,
    Geometric,
}

/// Which group the Shaneson expansion iterates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionLeaf {
    /// reduced `L̃^⟨j⟩_m(Z[Z/p])`
    LGroupZp { p: u64 },
    /// `L^⟨j⟩_m(Z)`
    LGroupZ,
    /// `Wh_m(Z/p)`
    WhiteheadZp { p: u64 },
}

impl GammaDescriptor {
    pub fn canonical(p: u64, type_sig: TypeSignature) -> Result<Self> {
        let lattice = ZpLattice::canonical(p, type_sig)?;
        Ok(GammaDescriptor {
            p,
            type_sig,
            lattice,
        })
    }

    pub fn from_lattice(lattice: ZpLattice) -> Result<Self> {
        let type_sig = lattice.detect_type()?;
        Ok(GammaDescriptor {
            p: lattice.p(),
            type_sig,
            lattice,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn type_sig(&self) -> TypeSignature {
        self.type_sig
    }

    pub fn lattice(&self) -> &ZpLattice {
        &self.lattice
    }

    /// Number of conjugacy classes of maximal finite subgroups, `p^a`.
    pub fn classes(&self) -> Result<u64> {
        pow_checked(self.p, self.type_sig.a)
    }

    fn free_part(&self) -> u64 {
        self.type_sig.free_part() as u64
    }
}

impl BundleDescriptor {
    pub fn new(gamma: GammaDescriptor, ell: usize) -> Result<Self> {
        check_sphere_dimension(ell)?;
        if ell < 3 {
            return Err(Error::InvalidParameter(format!(
                "the sphere dimension must be at least 3, got {ell}"
            )));
        }
        Ok(BundleDescriptor { gamma, ell })
    }

    pub fn gamma(&self) -> &GammaDescriptor {
        &self.gamma
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Dimension `n + ℓ + 1` of `M`'s structure-set degree.
    pub fn top_degree(&self) -> i64 {
        (self.gamma.lattice.rank() + self.ell + 1) as i64
    }
}

fn pow_checked(base: u64, e: usize) -> Result<u64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::OutOfScope(format!("{base}^{e} does not fit in 64 bits")))
}

fn mul_checked(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::OutOfScope(format!("multiplicity {a} * {b} does not fit in 64 bits")))
}

fn binom64(n: u64, k: u64) -> Result<u64> {
    u64::try_from(binomial(n as usize, k as usize))
        .map_err(|_| Error::OutOfScope(format!("binomial({n}, {k}) does not fit in 64 bits")))
}

/// `L^⟨j⟩_m(Z)` for every decoration, period 4 in `m`.
const L_OF_Z: [LOfZ; 4] = [LOfZ::Integers, LOfZ::Zero, LOfZ::Two, LOfZ::Zero];

#[derive(Clone, Copy)]
enum LOfZ {
    Integers,
    Two,
    Zero,
}

/// Surgery obstruction groups of the integers (Kervaire–Milnor): `Z, 0, Z/2, 0`
/// in degrees `0, 1, 2, 3` mod 4, independent of the decoration.
pub fn l_group_z(_dec: Decoration, m: i64) -> FormalAbelianGroup {
    match L_OF_Z[m.rem_euclid(4) as usize] {
        LOfZ::Integers => FormalAbelianGroup::free(1),
        LOfZ::Two => FormalAbelianGroup::leaf(Leaf::Z2, 1),
        LOfZ::Zero => FormalAbelianGroup::zero(),
    }
}

/// Reduced `L̃^⟨j⟩_m(Z[Z/p])`.
pub fn l_group_zp(dec: Decoration, m: i64, p: u64) -> FormalAbelianGroup {
    if m.rem_euclid(2) == 1 {
        return FormalAbelianGroup::zero();
    }
    let mut g = FormalAbelianGroup::free((p - 1) / 2);
    if dec == Decoration::H && m.rem_euclid(4) == 2 {
        g.add_leaf(Leaf::H { p }, 1);
    }
    g
}

/// `Wh_m(Z/p)`: symbolic for `m ≥ 0`, zero below.
pub fn whitehead_zp(m: i64, p: u64) -> FormalAbelianGroup {
    if m <= -1 {
        FormalAbelianGroup::zero()
    } else {
        FormalAbelianGroup::leaf(Leaf::Whitehead { p, q: m }, 1)
    }
}

fn evaluate_leaf(leaf: ExpansionLeaf, dec: Decoration, m: i64) -> FormalAbelianGroup {
    match leaf {
        ExpansionLeaf::LGroupZp { p } => l_group_zp(dec, m, p),
        ExpansionLeaf::LGroupZ => l_group_z(dec, m),
        ExpansionLeaf::WhiteheadZp { p } => whitehead_zp(m, p),
    }
}

/// `⊕_{i=0}^{k} binom(k, i) · leaf(⟨j - i⟩, m - i)`: the value on `G × Z^k`.
pub fn shaneson_expand(k: u64, dec: Decoration, m: i64, leaf: ExpansionLeaf) -> Result<FormalAbelianGroup> {
    let mut out = FormalAbelianGroup::zero();
    for i in 0..=k {
        let term = evaluate_leaf(leaf, dec.shift_down(i), m - i as i64);
        out.add_scaled(&term, binom64(k, i)?);
    }
    Ok(out)
}

/// `L^⟨j⟩_m(Z[N_Γ P]) / L^⟨j⟩_m(Z[W_Γ P])` for one conjugacy class `P`.
pub fn nw_quotient(g: &GammaDescriptor, dec: Decoration, m: i64) -> Result<FormalAbelianGroup> {
    shaneson_expand(g.free_part(), dec, m, ExpansionLeaf::LGroupZp { p: g.p })
}

fn torus_terms(profiles: &[ActionProfile], m: i64, connective: bool) -> FormalAbelianGroup {
    let mut out = FormalAbelianGroup::zero();
    for (j, prof) in profiles.iter().enumerate() {
        let shift = m - j as i64;
        if connective && shift < 1 {
            continue;
        }
        match shift.rem_euclid(4) {
            0 => out.add_free(prof.fixed_rank() as u64),
            2 => out.add_leaf(Leaf::Z2, prof.invariants_mod(2) as u64),
            _ => {}
        }
    }
    out
}

/// `H_m(T^n; L(Z))^{Z/p}`, or with the 1-connective cover `L(Z)⟨1⟩` when
/// `connective` is set.
pub fn torus_l_homology_invariants(l: &ZpLattice, m: i64, connective: bool) -> FormalAbelianGroup {
    torus_terms(&exterior_profiles(l), m, connective)
}

/// Free rank of `K^m(T^n)^{Z/p}`: invariants of `Λ^j` of the dual lattice
/// over `j ≡ m (mod 2)`.
fn k_free_rank(g: &GammaDescriptor, m: i64) -> u64 {
    exterior_profiles(&g.lattice.dual())
        .iter()
        .enumerate()
        .filter(|(j, _)| (*j as i64 - m).rem_euclid(2) == 0)
        .map(|(_, prof)| prof.fixed_rank() as u64)
        .sum()
}

/// `(p - 1) p^a 2^{b+c-1}`; for `b = c = 0` the even/odd split applies.
fn p_adic_exponent(g: &GammaDescriptor, m: i64) -> Result<u64> {
    let base = mul_checked(g.p - 1, g.classes()?)?;
    let k = g.free_part();
    if k == 0 {
        return Ok(if m.rem_euclid(2) == 0 { base } else { 0 });
    }
    mul_checked(base, pow_checked(2, (k - 1) as usize)?)
}

pub fn k_theory_bgamma(g: &GammaDescriptor, m: i64) -> Result<FormalAbelianGroup> {
    let mut out = FormalAbelianGroup::free(k_free_rank(g, m));
    out.add_leaf(Leaf::PAdic { p: g.p }, p_adic_exponent(g, m)?);
    Ok(out)
}

pub fn k_homology_bgamma(g: &GammaDescriptor, m: i64) -> Result<FormalAbelianGroup> {
    if g.free_part() == 0 {
        return Err(Error::OutOfScope(
            "K-homology of BΓ is only evaluated when b + c > 0".into(),
        ));
    }
    let mut out = FormalAbelianGroup::free(k_free_rank(g, m));
    out.add_leaf(Leaf::Prufer { p: g.p }, p_adic_exponent(g, m)?);
    Ok(out)
}

pub fn l_groups_gamma(g: &GammaDescriptor, dec: Decoration, m: i64) -> Result<FormalAbelianGroup> {
    let mut out = torus_l_homology_invariants(&g.lattice, m, false);
    out.add_scaled(&nw_quotient(g, dec, m)?, g.classes()?);
    Ok(out)
}

pub fn structure_set(b: &BundleDescriptor, dec: Decoration, kind: StructureKind) -> Result<FormalAbelianGroup> {
    let g = &b.gamma;
    let n = g.lattice.rank() as i64;
    let mut out = torus_l_homology_invariants(&g.lattice, n, kind == StructureKind::Geometric);
    out.add_scaled(&nw_quotient(g, dec, b.top_degree())?, g.classes()?);
    Ok(out)
}

/// Periodic structure set of `BΓ` in degree `m`.
pub fn structure_set_bgamma(g: &GammaDescriptor, dec: Decoration, m: i64) -> Result<FormalAbelianGroup> {
    let k = g.free_part();
    let mut per_class = FormalAbelianGroup::zero();
    for i in 0..=k {
        let degree = m - i as i64;
        if degree.rem_euclid(2) == 1 {
            continue;
        }
        let ways = binom64(k, i)?;
        if dec.shift_down(i) == Decoration::H {
            per_class.add_leaf(
                Leaf::OpaqueL {
                    decoration: Decoration::H,
                    degree,
                },
                ways,
            );
        } else {
            per_class.add_leaf(Leaf::InvertP { p: g.p }, mul_checked(ways, (g.p - 1) / 2)?);
        }
    }
    Ok(per_class.scaled(g.classes()?))
}

pub fn whitehead_gamma(g: &GammaDescriptor, m: i64) -> Result<FormalAbelianGroup> {
    let per_class = shaneson_expand(g.free_part(), Decoration::S, m, ExpansionLeaf::WhiteheadZp { p: g.p })?;
    Ok(per_class.scaled(g.classes()?))
}

/// `Σ_{d=1}^{b-1} (-1)^{d+1} binom(b,d) 2^{b-1-d} + κ_{b,m}` with
/// `κ = (-1)^{b+1}` for even `m` and `0` for odd `m`.
pub fn nu_b_alternating(b: u32, m: i64) -> i128 {
    let mut acc: i128 = 0;
    for d in 1..b {
        let term = binomial(b as usize, d as usize) as i128 * (1i128 << (b - 1 - d));
        acc += if d % 2 == 1 { term } else { -term };
    }
    if m.rem_euclid(2) == 0 {
        acc += if b % 2 == 1 { 1 } else { -1 };
    }
    acc
}

/// `2^{b-1}` when `b ≢ m (mod 2)`, else `2^{b-1} - 1`; checked against the
/// alternating sum.
pub fn nu_b(b: u32, m: i64) -> Result<u64> {
    if b == 0 || b > 63 {
        return Err(Error::InvalidParameter(format!(
            "nu_b needs 1 <= b <= 63, got {b}"
        )));
    }
    let top = 1u64 << (b - 1);
    let closed = if (b as i64 - m).rem_euclid(2) == 1 {
        top
    } else {
        top - 1
    };
    assert_eq!(
        closed as i128,
        nu_b_alternating(b, m),
        "closed form and alternating sum disagree for b = {b}, m = {m}"
    );
    Ok(closed)
}
