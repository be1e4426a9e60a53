use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` in
/// invariant-factor form: every `d_i > 1` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupPresentation {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Any list of cyclic orders; zeros count as free summands and units are
    /// dropped.
    pub fn new(free_rank: usize, cyclic_orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut finite = Vec::new();
        for d in cyclic_orders {
            if d.is_zero() {
                free_rank += 1;
            } else {
                finite.push(d);
            }
        }
        let torsion = Self::normalize_factors(finite)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroupPresentation { free_rank, torsion }
    }

    /// Cokernel of a map into `Z^generators` whose nonzero diagonal form is
    /// `diagonal`.
    pub fn from_relations(generators: usize, diagonal: Vec<BigInt>) -> Self {
        let free = generators - diagonal.len();
        Self::new(free, diagonal)
    }

    /// Rewrites nonzero integers as an invariant-factor chain with the same
    /// multiset of elementary divisors. Units are kept so the length is
    /// preserved.
    pub fn normalize_factors(factors: Vec<BigInt>) -> Vec<BigInt> {
        let mut units = 0usize;
        let mut rest: Vec<BigInt> = Vec::new();
        for d in factors {
            let d = d.abs();
            if d.is_one() {
                units += 1;
            } else {
                rest.push(d);
            }
        }
        rest.sort();
        let chained = rest.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !chained {
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if rest[j].is_multiple_of(&rest[i]) {
                        continue;
                    }
                    let g = rest[i].gcd(&rest[j]);
                    let l = rest[i].lcm(&rest[j]);
                    rest[i] = g;
                    rest[j] = l;
                }
            }
            units += rest.iter().filter(|d| d.is_one()).count();
            rest.retain(|d| !d.is_one());
        }
        let mut out = vec![BigInt::one(); units];
        out.extend(rest);
        out
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// True when the group is a (possibly empty) sum of copies of `Z/q`.
    pub fn is_elementary(&self, q: u64) -> bool {
        let q = BigInt::from(q);
        self.free_rank == 0 && self.torsion.iter().all(|d| *d == q)
    }

    /// Number of cyclic summands of order exactly `q`.
    pub fn count_cyclic(&self, q: u64) -> usize {
        let q = BigInt::from(q);
        self.torsion.iter().filter(|d| **d == q).count()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => json!(x),
                None => json!(d.to_string()),
            })
            .collect();
        json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}
