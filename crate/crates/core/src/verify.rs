//! Named verification suites run by `tbi verify`. Each case records its
//! inputs, so a failing report says exactly what broke.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{exterior_profile, lattice_profile};
use crate::error::{Error, Result};
use crate::invariants::{k_theory_bgamma, nu_b_alternating, GammaDescriptor};
use crate::formal::Leaf;
use crate::lattice::{TypeSignature, ZpLattice};
use crate::linalg::{AbelianGroupPresentation, IntegerMatrix};
use crate::spectral::consistency_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Suite {
    TateDuality,
    TypeInvariance,
    ParityDimensions,
    RegularFreeness,
    NuIdentity,
    DetectRoundtrip,
    E2Consistency,
    ProductConsistency,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::TateDuality,
        Suite::TypeInvariance,
        Suite::ParityDimensions,
        Suite::RegularFreeness,
        Suite::NuIdentity,
        Suite::DetectRoundtrip,
        Suite::E2Consistency,
        Suite::ProductConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TateDuality => "tate-duality",
            Suite::TypeInvariance => "prop43",
            Suite::ParityDimensions => "prop44-dims",
            Suite::RegularFreeness => "lemma45-freeness",
            Suite::NuIdentity => "nu-identity",
            Suite::DetectRoundtrip => "detect-roundtrip",
            Suite::E2Consistency => "e2-consistency",
            Suite::ProductConsistency => "product-consistency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidParameter(format!("unknown suite {s:?}; known: {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub primes: Vec<u64>,
    /// Upper bound for each of `a`, `b`, `c`.
    pub max: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            primes: vec![3, 5],
            max: 2,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub input: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn to_markdown(&self) -> String {
        let failed = self.cases.iter().filter(|c| !c.passed).count();
        let mut out = format!(
            "## {} ({} cases, {} failed): {}\n\n",
            self.suite,
            self.cases.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        );
        for c in &self.cases {
            let mark = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("- {mark} [{}] {}\n", c.input, c.detail));
        }
        out
    }
}

fn case(input: impl Into<String>, passed: bool, detail: impl Into<String>) -> CaseResult {
    CaseResult {
        input: input.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn signatures(max: usize) -> Vec<TypeSignature> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                out.push(TypeSignature::new(a, b, c));
            }
        }
    }
    out
}

/// `cyclotomic^a ⊕ E^b ⊕ trivial(c)` where `E` is the extension of the
/// cyclotomic lattice by `b0 = e_1`.
pub fn extension_realization(p: u64, sig: TypeSignature) -> Result<ZpLattice> {
    let cyc = ZpLattice::cyclotomic(p)?;
    let mut b0 = vec![BigInt::from(0); cyc.rank()];
    b0[0] = BigInt::from(1);
    let ext = ZpLattice::ideal_extension(&cyc, &b0)?;
    let mut parts = vec![cyc; sig.a];
    parts.extend(std::iter::repeat_n(ext, sig.b));
    parts.push(ZpLattice::trivial(p, sig.c)?);
    ZpLattice::direct_sum(&parts)
}

/// `g t g^{-1}` for a random product of elementary matrices `g`.
pub fn conjugated(l: &ZpLattice, rng: &mut impl Rng) -> Result<ZpLattice> {
    let n = l.rank();
    let mut g = IntegerMatrix::identity(n);
    let mut g_inv = IntegerMatrix::identity(n);
    if n >= 2 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut e = IntegerMatrix::identity(n);
            e.set(i, j, BigInt::from(s));
            let mut e_inv = IntegerMatrix::identity(n);
            e_inv.set(i, j, BigInt::from(-s));
            g = e.mul(&g)?;
            g_inv = g_inv.mul(&e_inv)?;
        }
    }
    let action = g.mul(l.action())?.mul(&g_inv)?;
    ZpLattice::from_matrix(l.p(), action)
}

/// Different lattices of the same type.
pub fn realizations(p: u64, sig: TypeSignature, rng: &mut impl Rng) -> Result<Vec<(String, ZpLattice)>> {
    let canonical = ZpLattice::canonical(p, sig)?;
    let mut out = vec![
        ("dual of dual".to_string(), canonical.dual().dual()),
        ("extension".to_string(), extension_realization(p, sig)?),
    ];
    if canonical.rank() <= 8 {
        out.push(("conjugated".to_string(), conjugated(&canonical, rng)?));
    }
    out.insert(0, ("canonical".to_string(), canonical));
    Ok(out)
}

fn order_text(g: &AbelianGroupPresentation) -> String {
    g.order().map_or("infinite".into(), |o| o.to_string())
}

fn tate_duality(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for sig in signatures(opts.max) {
            for (label, l) in realizations(p, sig, &mut rng)? {
                let direct = lattice_profile(&l);
                let dual = lattice_profile(&l.dual());
                let mut ok = true;
                let mut detail = Vec::new();
                for i in [0i64, 1] {
                    let lhs = direct.tate(i);
                    let rhs = dual.tate(-i);
                    ok &= lhs.order() == rhs.order();
                    detail.push(format!("|H^{i}| = {}, |H^{}(dual)| = {}", order_text(&lhs), -i, order_text(&rhs)));
                }
                cases.push(case(format!("p={p} type={sig} {label}"), ok, detail.join("; ")));
            }
        }
    }
    Ok(cases)
}

fn type_invariance(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for sig in signatures(opts.max) {
            let real = realizations(p, sig, &mut rng)?;
            let top = sig.rank(p).min(6);
            let reference: Vec<_> = (0..=top)
                .map(|r| exterior_profile(&real[0].1, r))
                .collect::<Result<_>>()?;
            for (label, l) in &real {
                let mut problems = Vec::new();
                for (r, base) in reference.iter().enumerate() {
                    let prof = exterior_profile(l, r)?;
                    for i in [0i64, 1] {
                        let g = prof.tate(i);
                        if !g.is_elementary(p) {
                            problems.push(format!("Λ^{r} H^{i} = {g} is not elementary"));
                        }
                        if g != base.tate(i) {
                            problems.push(format!("Λ^{r} H^{i} = {g}, canonical {}", base.tate(i)));
                        }
                    }
                }
                let detail = if problems.is_empty() {
                    format!("Λ^r for r <= {top}: Tate groups elementary and equal to the canonical ones")
                } else {
                    problems.join("; ")
                };
                cases.push(case(format!("p={p} type={sig} {label}"), problems.is_empty(), detail));
            }
        }
    }
    Ok(cases)
}

/// Observed `F_p`-dimensions of `Ĥ^0` and `Ĥ^1` of `Λ^j(cyclotomic^a)`.
pub fn parity_dimension_table(p: u64, a: usize) -> Result<Vec<(usize, usize, usize)>> {
    let l = ZpLattice::canonical(p, TypeSignature::new(a, 0, 0))?;
    let top = (a * (p as usize - 1)).min(5);
    (0..=top)
        .map(|j| {
            let prof = exterior_profile(&l, j)?;
            Ok((j, prof.tate(0).torsion().len(), prof.tate(1).torsion().len()))
        })
        .collect()
}

fn parity_dimensions(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for a in 1..=2 {
            let table = parity_dimension_table(p, a)?;
            for (j, h0, h1) in table {
                // i + j odd: Ĥ^0 must vanish for odd j, Ĥ^1 for even j
                let ok = if j % 2 == 1 { h0 == 0 } else { h1 == 0 };
                cases.push(case(
                    format!("p={p} a={a} j={j}"),
                    ok,
                    format!("dim H^0 = {h0}, dim H^1 = {h1}"),
                ));
            }
        }
    }
    Ok(cases)
}

fn regular_freeness(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for &p in &opts.primes {
        let reg = ZpLattice::regular(p)?;
        for m in 1..p as usize {
            let prof = exterior_profile(&reg, m)?;
            let (h0, h1) = (prof.tate(0), prof.tate(1));
            cases.push(case(
                format!("p={p} m={m}"),
                h0.is_trivial() && h1.is_trivial(),
                format!("H^0 = {h0}, H^1 = {h1}"),
            ));
        }
    }
    Ok(cases)
}

fn nu_identity() -> Vec<CaseResult> {
    let mut cases = Vec::new();
    for b in 2..=12u32 {
        for m in [0i64, 1] {
            let top = 1i128 << (b - 1);
            let closed = if (b as i64 - m) % 2 != 0 { top } else { top - 1 };
            let alternating = nu_b_alternating(b, m);
            cases.push(case(
                format!("b={b} m={m}"),
                closed == alternating,
                format!("closed form {closed}, alternating sum {alternating}"),
            ));
        }
    }
    cases
}

fn detect_roundtrip(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for sig in signatures(opts.max) {
            let canonical = ZpLattice::canonical(p, sig)?;
            let found = [
                canonical.detect_type(),
                canonical.dual().detect_type(),
                extension_realization(p, sig)?.detect_type(),
            ];
            let ok = found.iter().all(|f| matches!(f, Ok(s) if *s == sig));
            let shown: Vec<String> = found
                .iter()
                .map(|f| match f {
                    Ok(s) => s.to_string(),
                    Err(e) => e.to_string(),
                })
                .collect();
            cases.push(case(
                format!("p={p} type={sig}"),
                ok,
                format!("canonical, dual, extension -> {}", shown.join(", ")),
            ));
        }
    }
    Ok(cases)
}

fn e2_consistency(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for sig in signatures(opts.max) {
            let l = ZpLattice::canonical(p, sig)?;
            for m in [0i64, 1] {
                let report = consistency_check(&l, m, 6)?;
                let failed: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                let detail = if failed.is_empty() {
                    format!("{} checks passed", report.checks.len())
                } else {
                    failed.join("; ")
                };
                cases.push(case(format!("p={p} type={sig} m={m}"), failed.is_empty(), detail));
            }
        }
    }
    Ok(cases)
}

fn p_adic_rank(g: &crate::formal::FormalAbelianGroup, p: u64) -> u64 {
    g.multiplicity(&Leaf::PAdic { p })
}

fn product_consistency(opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for &p in &opts.primes {
        for sig in signatures(opts.max) {
            let g = GammaDescriptor::canonical(p, sig)?;
            let wider = GammaDescriptor::canonical(p, TypeSignature::new(sig.a, sig.b, sig.c + 1))?;
            for m in [0i64, 1] {
                let (k_m, k_prev) = (k_theory_bgamma(&g, m)?, k_theory_bgamma(&g, m - 1)?);
                let k_wide = k_theory_bgamma(&wider, m)?;
                let k_susp = k_theory_bgamma(&g, m + 2)?;
                let free_ok = k_wide.free_rank() == k_m.free_rank() + k_prev.free_rank();
                let adic_ok = p_adic_rank(&k_wide, p) == p_adic_rank(&k_m, p) + p_adic_rank(&k_prev, p);
                let susp_ok = k_susp == k_m;
                cases.push(case(
                    format!("p={p} type={sig} m={m}"),
                    free_ok && adic_ok && susp_ok,
                    format!(
                        "K^m(G x Z) = {k_wide}; K^m(G) = {k_m}; K^(m-1)(G) = {k_prev}; K^(m+2)(G) = {k_susp}"
                    ),
                ));
            }
        }
    }
    Ok(cases)
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    for &p in &opts.primes {
        crate::lattice::check_prime(p, u64::MAX)?;
    }
    let cases = match suite {
        Suite::TateDuality => tate_duality(opts)?,
        Suite::TypeInvariance => type_invariance(opts)?,
        Suite::ParityDimensions => parity_dimensions(opts)?,
        Suite::RegularFreeness => regular_freeness(opts)?,
        Suite::NuIdentity => nu_identity(),
        Suite::DetectRoundtrip => detect_roundtrip(opts)?,
        Suite::E2Consistency => e2_consistency(opts)?,
        Suite::ProductConsistency => product_consistency(opts)?,
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteOptions {
        SuiteOptions {
            primes: vec![3],
            max: 1,
            seed: 7,
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let report = run_suite(s, &small()).unwrap();
            assert!(!report.cases.is_empty(), "{s}");
            assert!(report.passed(), "{}", report.to_markdown());
        }
    }

    #[test]
    fn conjugation_preserves_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = ZpLattice::canonical(3, TypeSignature::new(1, 1, 1)).unwrap();
        let c = conjugated(&l, &mut rng).unwrap();
        assert_ne!(c.action(), l.action());
        assert_eq!(c.detect_type().unwrap(), TypeSignature::new(1, 1, 1));
    }

    #[test]
    fn rejects_bad_primes() {
        let opts = SuiteOptions {
            primes: vec![4],
            ..SuiteOptions::default()
        };
        assert!(run_suite(Suite::NuIdentity, &opts).is_err());
    }
}
