//! Formal abelian groups: a free part plus a multiset of named summands, some
//! of which (such as `H(Z/p)` or `Wh_q(Z/p)`) are kept symbolic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Decoration `⟨j⟩` on L-groups: `s = ⟨2⟩`, `h = ⟨1⟩`, then `⟨0⟩, ⟨-1⟩, …`
/// down to `⟨-∞⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decoration {
    MinusInfinity,
    Level(i64),
}

impl Decoration {
    pub const S: Decoration = Decoration::Level(2);
    pub const H: Decoration = Decoration::Level(1);

    pub fn level(j: i64) -> Result<Self> {
        if j > 2 {
            return Err(Error::InvalidParameter(format!(
                "decoration level {j} is above s = 2"
            )));
        }
        Ok(Decoration::Level(j))
    }

    /// `⟨j - i⟩`, with `-∞ - i = -∞`.
    pub fn shift_down(self, i: u64) -> Self {
        match self {
            Decoration::Level(j) => Decoration::Level(j - i as i64),
            Decoration::MinusInfinity => Decoration::MinusInfinity,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoration::Level(2) => write!(f, "s"),
            Decoration::Level(1) => write!(f, "h"),
            Decoration::Level(j) => write!(f, "<{j}>"),
            Decoration::MinusInfinity => write!(f, "-inf"),
        }
    }
}

impl FromStr for Decoration {
    type Err = Error;

    /// `s`, `h`, `j:<int>`, `<int>`, `-inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "s" => return Ok(Decoration::S),
            "h" => return Ok(Decoration::H),
            "-inf" | "−∞" | "-∞" => return Ok(Decoration::MinusInfinity),
            _ => {}
        }
        let digits = t
            .strip_prefix("j:")
            .or_else(|| t.strip_prefix('<').and_then(|x| x.strip_suffix('>')))
            .unwrap_or(t);
        let j: i64 = digits.parse().map_err(|_| {
            Error::InvalidParameter(format!("decoration {s:?}, expected s, h, j:<int> or -inf"))
        })?;
        Decoration::level(j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leaf {
    /// `Z/2`
    Z2,
    /// finite cyclic `Z/p^k`
    CyclicPrimePower { p: u64, k: u32 },
    /// p-adic integers
    PAdic { p: u64 },
    /// Prüfer group `Z/p^∞`
    Prufer { p: u64 },
    /// `Z[1/p]`
    InvertP { p: u64 },
    /// exponent-2 group `H(Z/p)`, symbolic
    H { p: u64 },
    /// `Wh_q(Z/p)` for `q ≥ 0`, symbolic
    Whitehead { p: u64, q: i64 },
    /// an L-group left unevaluated
    OpaqueL { decoration: Decoration, degree: i64 },
}

impl Leaf {
    fn kind(&self) -> &'static str {
        match self {
            Leaf::Z2 => "Z2",
            Leaf::CyclicPrimePower { .. } => "Zpk",
            Leaf::PAdic { .. } => "Zp_adic",
            Leaf::Prufer { .. } => "Zp_infty",
            Leaf::InvertP { .. } => "Z_inv_p",
            Leaf::H { .. } => "H_Zp",
            Leaf::Whitehead { .. } => "Wh_Zp",
            Leaf::OpaqueL { .. } => "OpaqueL",
        }
    }

    fn params(&self) -> Value {
        match self {
            Leaf::Z2 => json!({}),
            Leaf::CyclicPrimePower { p, k } => json!({ "p": p, "k": k }),
            Leaf::PAdic { p } | Leaf::Prufer { p } | Leaf::InvertP { p } | Leaf::H { p } => {
                json!({ "p": p })
            }
            Leaf::Whitehead { p, q } => json!({ "p": p, "q": q }),
            Leaf::OpaqueL { decoration, degree } => {
                json!({ "decoration": decoration.to_string(), "degree": degree })
            }
        }
    }

    fn from_parts(kind: &str, params: &Map<String, Value>) -> Result<Leaf> {
        let bad = |what: &str| Error::InvalidParameter(format!("leaf {kind}: {what}"));
        let int = |key: &str| -> Result<i64> {
            params
                .get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| bad(&format!("missing integer parameter {key:?}")))
        };
        let prime = || -> Result<u64> {
            u64::try_from(int("p")?).map_err(|_| bad("negative p"))
        };
        Ok(match kind {
            "Z2" => Leaf::Z2,
            "Zpk" => Leaf::CyclicPrimePower {
                p: prime()?,
                k: u32::try_from(int("k")?).map_err(|_| bad("bad exponent"))?,
            },
            "Zp_adic" => Leaf::PAdic { p: prime()? },
            "Zp_infty" => Leaf::Prufer { p: prime()? },
            "Z_inv_p" => Leaf::InvertP { p: prime()? },
            "H_Zp" => Leaf::H { p: prime()? },
            "Wh_Zp" => Leaf::Whitehead {
                p: prime()?,
                q: int("q")?,
            },
            "OpaqueL" => Leaf::OpaqueL {
                decoration: params
                    .get("decoration")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("missing decoration"))?
                    .parse()?,
                degree: int("degree")?,
            },
            other => return Err(bad(&format!("unknown kind {other:?}"))),
        })
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Z2 => write!(f, "Z/2"),
            Leaf::CyclicPrimePower { p, k: 1 } => write!(f, "Z/{p}"),
            Leaf::CyclicPrimePower { p, k } => write!(f, "Z/{p}^{k}"),
            Leaf::PAdic { p } => write!(f, "Ẑ_{p}"),
            Leaf::Prufer { p } => write!(f, "Z/{p}^∞"),
            Leaf::InvertP { p } => write!(f, "Z[1/{p}]"),
            Leaf::H { p } => write!(f, "H(Z/{p})"),
            Leaf::Whitehead { p, q } => write!(f, "Wh_{q}(Z/{p})"),
            Leaf::OpaqueL { decoration, degree } => write!(f, "OpaqueL({decoration},{degree})"),
        }
    }
}

/// `Z^free_rank ⊕ ⊕ leaf^mult`, kept in canonical (sorted) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalAbelianGroup {
    free_rank: u64,
    leaves: BTreeMap<Leaf, u64>,
}

impl FormalAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u64) -> Self {
        FormalAbelianGroup {
            free_rank: rank,
            leaves: BTreeMap::new(),
        }
    }

    pub fn leaf(leaf: Leaf, mult: u64) -> Self {
        let mut g = Self::zero();
        g.add_leaf(leaf, mult);
        g
    }

    pub fn add_free(&mut self, rank: u64) {
        self.free_rank += rank;
    }

    pub fn add_leaf(&mut self, leaf: Leaf, mult: u64) {
        if mult > 0 {
            *self.leaves.entry(leaf).or_insert(0) += mult;
        }
    }

    /// Direct sum.
    pub fn add(&mut self, other: &FormalAbelianGroup) {
        self.add_scaled(other, 1);
    }

    /// Adds `k` copies of `other`.
    pub fn add_scaled(&mut self, other: &FormalAbelianGroup, k: u64) {
        self.free_rank += other.free_rank * k;
        for (leaf, m) in &other.leaves {
            self.add_leaf(leaf.clone(), m * k);
        }
    }

    pub fn scaled(&self, k: u64) -> FormalAbelianGroup {
        let mut out = Self::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&Leaf, u64)> {
        self.leaves.iter().map(|(l, m)| (l, *m))
    }

    pub fn multiplicity(&self, leaf: &Leaf) -> u64 {
        self.leaves.get(leaf).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.leaves.is_empty()
    }

    /// True when some finite `Z/p^k` summand is present.
    pub fn has_finite_p_torsion(&self) -> bool {
        self.leaves
            .keys()
            .any(|l| matches!(l, Leaf::CyclicPrimePower { .. }))
    }

    pub fn to_json(&self) -> Value {
        let leaves: Vec<Value> = self
            .leaves
            .iter()
            .map(|(l, m)| json!({ "kind": l.kind(), "mult": m, "params": l.params() }))
            .collect();
        json!({ "free_rank": self.free_rank, "leaves": leaves })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidParameter(format!("formal group JSON: {what}"));
        let free_rank = v
            .get("free_rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing free_rank"))?;
        let mut out = Self::free(free_rank);
        let leaves = v
            .get("leaves")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing leaves"))?;
        for item in leaves {
            let kind = item
                .get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("leaf without kind"))?;
            let mult = item
                .get("mult")
                .and_then(Value::as_u64)
                .filter(|&m| m >= 1)
                .ok_or_else(|| bad("leaf multiplicity must be a positive integer"))?;
            let empty = Map::new();
            let params = item.get("params").and_then(Value::as_object).unwrap_or(&empty);
            out.add_leaf(Leaf::from_parts(kind, params)?, mult);
        }
        Ok(out)
    }
}

impl fmt::Display for FormalAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (leaf, m) in &self.leaves {
            if *m == 1 {
                parts.push(leaf.to_string());
            } else {
                parts.push(format!("({leaf})^{m}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}
