//! E2 pages of the Atiyah–Hirzebruch–Serre spectral sequences for
//! `T^n → BΓ → BZ/p` and `T^n → M → S^ℓ/(Z/p)`, with consistency checks
//! against the closed forms.
//!
//! The sequences degenerate at E2, so no differentials are modelled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{check_sphere_dimension, exterior_profiles, ActionProfile, Coefficients};
use crate::error::{Error, Result};
use crate::invariants::{k_theory_bgamma, GammaDescriptor};
use crate::lattice::{TypeSignature, ZpLattice};
use crate::linalg::AbelianGroupPresentation;

pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum E2Variant {
    /// `H^i(Z/p; K^j(T^n))`
    KCohomology,
    /// `H_i(Z/p; K_j(T^n))`
    KHomology,
    /// `H_i(Z/p; H_j(T^n; L(Z)))`
    LHomologyBGamma,
    /// `H_i^{Z/p}(S^ℓ; H_j(T^n; L(Z)))`
    LHomologyM,
}

impl E2Variant {
    pub fn name(self) -> &'static str {
        match self {
            E2Variant::KCohomology => "k_cohomology",
            E2Variant::KHomology => "k_homology",
            E2Variant::LHomologyBGamma => "l_homology_bgamma",
            E2Variant::LHomologyM => "l_homology_M",
        }
    }
}

/// One total degree of an E2 page: entries `(i, m - i)` for `0 ≤ i ≤ max_column`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    variant: E2Variant,
    total_degree: i64,
    max_column: usize,
    entries: BTreeMap<(i64, i64), AbelianGroupPresentation>,
}

impl E2Page {
    pub fn variant(&self) -> E2Variant {
        self.variant
    }

    pub fn total_degree(&self) -> i64 {
        self.total_degree
    }

    pub fn max_column(&self) -> usize {
        self.max_column
    }

    /// Entries outside the computed columns are zero.
    pub fn entry(&self, i: i64, j: i64) -> AbelianGroupPresentation {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &AbelianGroupPresentation)> {
        self.entries.iter()
    }

    pub fn to_json(&self) -> Value {
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|((i, j), g)| (format!("{i},{j}"), g.to_json()))
            .collect();
        json!({
            "variant": self.variant.name(),
            "total_degree": self.total_degree,
            "max_column": self.max_column,
            "entries": entries,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "E2 page ({}), total degree {}\n",
            self.variant.name(),
            self.total_degree
        );
        let _ = writeln!(out, "| i | j | E2 |");
        let _ = writeln!(out, "|---|---|----|");
        for ((i, j), g) in &self.entries {
            let _ = writeln!(out, "| {i} | {j} | {g} |");
        }
        out
    }
}

fn sum_profiles<'a>(p: u64, parts: impl Iterator<Item = &'a ActionProfile>) -> ActionProfile {
    let mut acc = ActionProfile::empty(p);
    for prof in parts {
        acc.add_copies(prof, 1);
    }
    acc
}

/// `⊕ Λ^j` over `j ≡ q (mod 2)`.
fn parity_part(profiles: &[ActionProfile], p: u64, q: i64) -> ActionProfile {
    sum_profiles(
        p,
        profiles
            .iter()
            .enumerate()
            .filter(|(j, _)| (q - *j as i64).rem_euclid(2) == 0)
            .map(|(_, x)| x),
    )
}

/// Integral and mod-2 pieces of `H_q(T^n; L(Z)) = ⊕ Λ^j ⊗ L_{q-j}(Z)`.
fn l_pieces(profiles: &[ActionProfile], p: u64, q: i64) -> (ActionProfile, ActionProfile) {
    let pick = |r: i64| {
        sum_profiles(
            p,
            profiles
                .iter()
                .enumerate()
                .filter(move |(j, _)| (q - *j as i64).rem_euclid(4) == r)
                .map(|(_, x)| x),
        )
    };
    (pick(0), pick(2))
}

pub fn e2_page(l: &ZpLattice, total_degree: i64, variant: E2Variant, column_limit: usize) -> Result<E2Page> {
    if variant == E2Variant::LHomologyM {
        check_sphere_dimension(column_limit)?;
    } else if column_limit == 0 {
        return Err(Error::InvalidParameter(
            "the column cutoff must be at least 1".into(),
        ));
    }
    let p = l.p();
    let profiles = match variant {
        E2Variant::KCohomology => exterior_profiles(&l.dual()),
        _ => exterior_profiles(l),
    };
    let mut entries = BTreeMap::new();
    let sphere = |prof: &ActionProfile, coeff, i: usize| prof.sphere_homology(column_limit, coeff)[i].clone();
    for i in 0..=column_limit {
        let q = total_degree - i as i64;
        let group = match variant {
            E2Variant::KCohomology => {
                let coeff = parity_part(&profiles, p, q);
                if i == 0 {
                    coeff.invariants()
                } else {
                    coeff.tate(i as i64)
                }
            }
            E2Variant::KHomology => parity_part(&profiles, p, q)
                .group_homology_cohomology(crate::cohomology::Variant::Homology, i),
            E2Variant::LHomologyBGamma => {
                let (integral, mod2) = l_pieces(&profiles, p, q);
                integral
                    .group_homology_cohomology(crate::cohomology::Variant::Homology, i)
                    .direct_sum(&mod2.group_homology_mod2(i))
            }
            E2Variant::LHomologyM => {
                let (integral, mod2) = l_pieces(&profiles, p, q);
                sphere(&integral, Coefficients::Integral, i)
                    .direct_sum(&sphere(&mod2, Coefficients::Mod2, i))
            }
        };
        entries.insert((i as i64, q), group);
    }
    Ok(E2Page {
        variant,
        total_degree,
        max_column: column_limit,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Observed `F_p`-dimension (or free rank in column 0) of one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservedEntry {
    pub i: i64,
    pub j: i64,
    pub free_rank: usize,
    pub torsion_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub p: u64,
    pub type_sig: TypeSignature,
    pub total_degree: i64,
    pub depth: usize,
    pub checks: Vec<CheckOutcome>,
    pub observed: Vec<ObservedEntry>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "consistency of k_cohomology E2, p = {}, type {}, m = {}, depth {}\n",
            self.p, self.type_sig, self.total_degree, self.depth
        );
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "- {mark} {}: {}", c.name, c.detail);
        }
        let _ = writeln!(out, "\n| i | j | free rank | F_p-dim |");
        let _ = writeln!(out, "|---|---|-----------|---------|");
        for e in &self.observed {
            let _ = writeln!(out, "| {} | {} | {} | {} |", e.i, e.j, e.free_rank, e.torsion_dim);
        }
        out
    }
}

/// Checks the `k_cohomology` page of `l` in total degree `m` through column
/// `depth`. Failures are reported, not raised.
pub fn consistency_check(l: &ZpLattice, m: i64, depth: usize) -> Result<ConsistencyReport> {
    if depth < 2 {
        return Err(Error::InvalidParameter(format!(
            "consistency depth must be at least 2, got {depth}"
        )));
    }
    let p = l.p();
    let gamma = GammaDescriptor::from_lattice(l.clone())?;
    let sig = gamma.type_sig();
    let page = e2_page(l, m, E2Variant::KCohomology, depth)?;
    let mut checks = Vec::new();

    let column0 = page.entry(0, m);
    let expected = k_theory_bgamma(&gamma, m)?.free_rank();
    checks.push(CheckOutcome {
        name: "column-0 free rank".into(),
        passed: column0.free_rank() as u64 == expected && column0.is_free(),
        detail: format!("E2(0,{m}) = {column0}, closed form free rank {expected}"),
    });

    let bad: Vec<String> = page
        .entries()
        .filter(|((i, _), g)| *i >= 1 && !g.is_elementary(p))
        .map(|((i, j), g)| format!("({i},{j}) = {g}"))
        .collect();
    checks.push(CheckOutcome {
        name: "exponent p".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all columns 1..={depth} are elementary abelian of exponent {p}")
        } else {
            format!("not elementary: {}", bad.join(", "))
        },
    });

    // parity on the cyclotomic part: Ĥ^i(Λ^j) = 0 when i + j is odd
    let cyclotomic_part = ZpLattice::canonical(p, TypeSignature::new(sig.a, 0, 0))?;
    let cyc_profiles = exterior_profiles(&cyclotomic_part);
    let mut parity_bad = Vec::new();
    for (j, prof) in cyc_profiles.iter().enumerate() {
        for i in 1..=depth as i64 {
            if (i + j as i64) % 2 == 1 && !prof.tate(i).is_trivial() {
                parity_bad.push(format!("H^{i}(Λ^{j}) = {}", prof.tate(i)));
            }
        }
    }
    checks.push(CheckOutcome {
        name: "parity vanishing".into(),
        passed: parity_bad.is_empty(),
        detail: if parity_bad.is_empty() {
            format!("Ĥ^i(Λ^j) = 0 for i + j odd on cyclotomic^{}", sig.a)
        } else {
            parity_bad.join(", ")
        },
    });

    if sig.free_part() == 0 && m.rem_euclid(2) == 1 {
        let nonzero: Vec<String> = page
            .entries()
            .filter(|((i, _), g)| *i >= 1 && !g.is_trivial())
            .map(|((i, j), g)| format!("({i},{j}) = {g}"))
            .collect();
        checks.push(CheckOutcome {
            name: "odd degree vanishing".into(),
            passed: nonzero.is_empty(),
            detail: if nonzero.is_empty() {
                "b = c = 0 and m odd: columns i >= 1 vanish".into()
            } else {
                nonzero.join(", ")
            },
        });
    }

    let observed = page
        .entries()
        .map(|((i, j), g)| ObservedEntry {
            i: *i,
            j: *j,
            free_rank: g.free_rank(),
            torsion_dim: g.torsion().len(),
        })
        .collect();
    Ok(ConsistencyReport {
        p,
        type_sig: sig,
        total_degree: m,
        depth,
        checks,
        observed,
    })
}
