//! The `tbi` command line. Parsing and dispatch live here so the whole
//! surface can be driven from tests through [`run`].

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cohomology::{exterior_profile, lattice_profile, ActionProfile, Coefficients, Variant};
use crate::error::{Error, Result};
use crate::formal::{Decoration, FormalAbelianGroup};
use crate::invariants::{
    k_homology_bgamma, k_theory_bgamma, l_groups_gamma, nw_quotient, structure_set, structure_set_bgamma,
    torus_l_homology_invariants, whitehead_gamma, BundleDescriptor, GammaDescriptor, StructureKind,
};
use crate::lattice::{check_prime, TypeSignature, ZpLattice, DEFAULT_MAX_PRIME};
use crate::linalg::{is_prime, AbelianGroupPresentation};
use crate::spectral::{consistency_check, e2_page, E2Variant, DEFAULT_DEPTH};
use crate::verify::{run_suite, Suite, SuiteOptions};

pub const MAX_RANK_VAR: &str = "TBI_MAX_RANK";
pub const DEFAULT_MAX_RANK: usize = 24;
pub const MAX_DEGREES: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "tbi", version, about = "Invariants of Z^n ⋊ Z/p and its torus bundles over spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a lattice and report its type and decomposition
    Lattice(LatticeArgs),
    /// Tate, group and equivariant sphere (co)homology
    Cohomology(CohomologyArgs),
    /// K-theory, L-groups, Whitehead groups and structure sets
    Invariants(InvariantsArgs),
    /// E2 pages and their consistency checks
    Spectral(SpectralArgs),
    /// Run the named verification suites
    Verify(VerifyArgs),
    /// Write a lattice file, an E2 page or an L-group table
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct InputSource {
    /// Inline lattice, e.g. "p=5;type=(1,1,0)" or "p=3;sum=cyclotomic+regular+trivial:2"
    #[arg(long)]
    pub spec: Option<String>,
    /// Lattice JSON file with keys p, n, action
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: InputSource,
    #[arg(long, default_value_t = DEFAULT_MAX_PRIME)]
    pub max_prime: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Inclusive integer range written `a..b`, `a..=b` or `a`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: i64,
    pub end: i64,
}

impl DegreeRange {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for DegreeRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("degree range {s:?}, expected a..b"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
            }
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if end < start {
            return Err(Error::InvalidParameter(format!("degree range {s:?} is empty")));
        }
        if (end as i128 - start as i128 + 1) > MAX_DEGREES as i128 {
            return Err(Error::InvalidParameter(format!(
                "degree range {s:?} has more than {MAX_DEGREES} values"
            )));
        }
        Ok(DegreeRange { start, end })
    }
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Replace the lattice by its dual
    #[arg(long)]
    pub dual: bool,
    /// Replace the lattice by its r-th exterior power
    #[arg(long)]
    pub exterior: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CohomologyWhat {
    Tate,
    Homology,
    Cohomology,
    InvariantsMod,
    Sphere,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    Integral,
    Mod2,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = CohomologyWhat::Tate)]
    pub what: CohomologyWhat,
    #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
    pub degrees: DegreeRange,
    /// Use the r-th exterior power of the lattice as coefficients
    #[arg(long)]
    pub exterior: Option<usize>,
    /// Prime for `invariants-mod`
    #[arg(long)]
    pub q: Option<u64>,
    /// Odd sphere dimension for `sphere`
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, value_enum, default_value_t = CoeffArg::Integral)]
    pub coeff: CoeffArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantsWhat {
    Subgroups,
    KTheory,
    KHomology,
    LGroups,
    NwQuotient,
    TorusL,
    Whitehead,
    StructureBgamma,
    Structure,
}

impl InvariantsWhat {
    fn heading(self) -> &'static str {
        match self {
            InvariantsWhat::Subgroups => "subgroups",
            InvariantsWhat::KTheory => "K^m(BΓ)",
            InvariantsWhat::KHomology => "K_m(BΓ)",
            InvariantsWhat::LGroups => "L_m(ZΓ)",
            InvariantsWhat::NwQuotient => "N/W quotient",
            InvariantsWhat::TorusL => "torus L-homology",
            InvariantsWhat::Whitehead => "Wh_m(Γ)",
            InvariantsWhat::StructureBgamma => "S_m(BΓ)",
            InvariantsWhat::Structure => "S(M)",
        }
    }

    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Periodic,
    Geometric,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub what: InvariantsWhat,
    #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
    pub degrees: DegreeRange,
    /// s, h, -inf or j:<int>
    #[arg(long, default_value = "s", allow_hyphen_values = true)]
    pub decoration: Decoration,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, value_enum, default_value_t = KindArg::Periodic)]
    pub kind: KindArg,
    /// Connective version of the torus L-homology invariants
    #[arg(long)]
    pub connective: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    KCohomology,
    KHomology,
    LBgamma,
    #[value(name = "l-m")]
    LM,
}

impl From<VariantArg> for E2Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::KCohomology => E2Variant::KCohomology,
            VariantArg::KHomology => E2Variant::KHomology,
            VariantArg::LBgamma => E2Variant::LHomologyBGamma,
            VariantArg::LM => E2Variant::LHomologyM,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectralWhat {
    Page,
    Check,
}

#[derive(Args, Debug)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = SpectralWhat::Page)]
    pub what: SpectralWhat,
    #[arg(long, value_enum, default_value_t = VariantArg::KCohomology)]
    pub variant: VariantArg,
    /// Total degrees
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub degrees: DegreeRange,
    /// Column cutoff for pages over BZ/p
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Sphere dimension for the `l-m` variant
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite names, comma separated, or "all"
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<String>,
    #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
    pub primes: Vec<u64>,
    /// Bound on each of a, b, c
    #[arg(long, default_value_t = 2)]
    pub max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_PRIME)]
    pub max_prime: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Lattice,
    E2,
    LTable,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub kind: ExportKind,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
    pub degrees: DegreeRange,
    #[arg(long, value_enum, default_value_t = VariantArg::KCohomology)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    #[arg(long)]
    pub ell: Option<usize>,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok((stdout, code)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(command: &Command) -> Result<(String, i32)> {
    match command {
        Command::Lattice(a) => cmd_lattice(a).map(|s| (s, 0)),
        Command::Cohomology(a) => cmd_cohomology(a).map(|s| (s, 0)),
        Command::Invariants(a) => cmd_invariants(a).map(|s| (s, 0)),
        Command::Spectral(a) => cmd_spectral(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a).map(|s| (s, 0)),
    }
}

pub fn max_rank() -> Result<usize> {
    match std::env::var(MAX_RANK_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{MAX_RANK_VAR}={v:?} is not a rank"))),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

fn check_rank(l: &ZpLattice) -> Result<()> {
    let cap = max_rank()?;
    if l.rank() > cap {
        return Err(Error::OutOfScope(format!(
            "lattice rank {} exceeds {MAX_RANK_VAR} = {cap}",
            l.rank()
        )));
    }
    Ok(())
}

/// Parses `p=<prime>;type=(a,b,c)` or `p=<prime>;sum=<summand>+...` where a
/// summand is `cyclotomic`, `regular`, `trivial` or `extension`, optionally
/// followed by `:<count>`.
pub fn parse_spec(spec: &str, max_prime: u64) -> Result<ZpLattice> {
    let mut p = None;
    let mut body = None;
    for field in spec.split(';').map(str::trim).filter(|f| !f.is_empty()) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("spec field {field:?} has no '='")))?;
        match key.trim() {
            "p" => {
                let v: u64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("p = {value:?} is not an integer")))?;
                p = Some(v);
            }
            k @ ("type" | "sum") if body.is_none() => body = Some((k.to_string(), value.trim().to_string())),
            k => {
                return Err(Error::InvalidParameter(format!(
                    "unexpected spec field {k:?}; expected p and one of type, sum"
                )))
            }
        }
    }
    let p = p.ok_or_else(|| Error::InvalidParameter("spec is missing p=<prime>".into()))?;
    check_prime(p, max_prime)?;
    let (key, value) = body.ok_or_else(|| Error::InvalidParameter("spec needs type=(a,b,c) or sum=...".into()))?;
    if key == "type" {
        return ZpLattice::canonical(p, value.parse()?);
    }
    let mut parts = Vec::new();
    for summand in value.split('+').map(str::trim) {
        let (name, count) = match summand.split_once(':') {
            Some((n, c)) => (
                n.trim(),
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad multiplicity in {summand:?}")))?,
            ),
            None => (summand, 1),
        };
        let block = match name {
            "cyclotomic" => ZpLattice::cyclotomic(p)?,
            "regular" => ZpLattice::regular(p)?,
            "trivial" => ZpLattice::trivial(p, 1)?,
            "extension" => {
                let cyc = ZpLattice::cyclotomic(p)?;
                let mut b0 = vec![BigInt::from(0); cyc.rank()];
                b0[0] = BigInt::from(1);
                ZpLattice::ideal_extension(&cyc, &b0)?
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown summand {other:?}; expected cyclotomic, regular, trivial or extension"
                )))
            }
        };
        parts.extend(std::iter::repeat_n(block, count));
    }
    if parts.is_empty() {
        return ZpLattice::trivial(p, 0);
    }
    ZpLattice::direct_sum(&parts)
}

pub fn load_lattice(input: &InputArgs) -> Result<ZpLattice> {
    let l = match (&input.source.spec, &input.source.input) {
        (Some(spec), None) => parse_spec(spec, input.max_prime)?,
        (None, Some(path)) => {
            let l = ZpLattice::read_json(path)?;
            check_prime(l.p(), input.max_prime)?;
            l
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --spec and --input".into(),
            ))
        }
    };
    check_rank(&l)?;
    Ok(l)
}

fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", headers.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn type_json(sig: TypeSignature) -> Value {
    json!({ "a": sig.a, "b": sig.b, "c": sig.c })
}

fn cmd_lattice(args: &LatticeArgs) -> Result<String> {
    let mut l = load_lattice(&args.input)?;
    if args.dual {
        l = l.dual();
    }
    if let Some(r) = args.exterior {
        l = l.exterior_power(r)?;
        check_rank(&l)?;
    }
    let sig = l.detect_type()?;
    let components: Vec<usize> = l.components().iter().map(Vec::len).collect();
    match args.output {
        OutputFormat::Json => pretty(&json!({
            "lattice": l.to_json()?,
            "type": type_json(sig),
            "component_ranks": components,
        })),
        OutputFormat::Table => {
            let mut out = format!("p = {}, rank = {}, type = {sig}\n", l.p(), l.rank());
            out.push_str(&format!(
                "component ranks: {}\n\naction:\n",
                components.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
            ));
            for row in l.action().to_rows() {
                let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
                out.push_str(&format!("[{}]\n", cells.join(", ")));
            }
            Ok(out)
        }
    }
}

fn group_rows(
    label: &str,
    heading: &str,
    rows: Vec<(i64, AbelianGroupPresentation)>,
    output: OutputFormat,
    meta: Value,
) -> Result<String> {
    match output {
        OutputFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(d, g)| json!({ "degree": d, "group": g.to_json() }))
                .collect();
            let mut v = meta;
            v["rows"] = Value::Array(items);
            pretty(&v)
        }
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(|(d, g)| vec![d.to_string(), g.to_string()]).collect();
            Ok(markdown_table(&[label, heading], &body))
        }
    }
}

fn nonnegative(d: i64) -> Result<usize> {
    usize::try_from(d).map_err(|_| Error::InvalidParameter(format!("degree {d} must be non-negative")))
}

fn cmd_cohomology(args: &CohomologyArgs) -> Result<String> {
    let l = load_lattice(&args.input)?;
    let profile: ActionProfile = match args.exterior {
        Some(r) => exterior_profile(&l, r)?,
        None => lattice_profile(&l),
    };
    let what = args.what.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut meta = json!({ "what": what, "p": l.p(), "rank": l.rank() });
    if let Some(r) = args.exterior {
        meta["exterior"] = json!(r);
    }
    match args.what {
        CohomologyWhat::Tate => {
            let rows = args.degrees.values().map(|i| (i, profile.tate(i))).collect();
            group_rows("i", "Ĥ^i", rows, args.output, meta)
        }
        CohomologyWhat::Homology | CohomologyWhat::Cohomology => {
            let (variant, heading) = if args.what == CohomologyWhat::Homology {
                (Variant::Homology, "H_i")
            } else {
                (Variant::Cohomology, "H^i")
            };
            let rows = args
                .degrees
                .values()
                .map(|i| Ok((i, profile.group_homology_cohomology(variant, nonnegative(i)?))))
                .collect::<Result<_>>()?;
            group_rows("i", heading, rows, args.output, meta)
        }
        CohomologyWhat::InvariantsMod => {
            let q = args
                .q
                .ok_or_else(|| Error::InvalidParameter("--what invariants-mod needs --q".into()))?;
            if !is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            let dim = profile.invariants_mod(q);
            match args.output {
                OutputFormat::Json => {
                    meta["q"] = json!(q);
                    meta["dimension"] = json!(dim);
                    pretty(&meta)
                }
                OutputFormat::Table => Ok(format!("dim_F{q} (L/{q})^G = {dim}\n")),
            }
        }
        CohomologyWhat::Sphere => {
            let ell = args
                .ell
                .ok_or_else(|| Error::InvalidParameter("--what sphere needs --ell".into()))?;
            crate::cohomology::check_sphere_dimension(ell)?;
            let coeff = match args.coeff {
                CoeffArg::Integral => Coefficients::Integral,
                CoeffArg::Mod2 => Coefficients::Mod2,
            };
            let rows = profile
                .sphere_homology(ell, coeff)
                .into_iter()
                .enumerate()
                .map(|(i, g)| (i as i64, g))
                .collect();
            meta["ell"] = json!(ell);
            group_rows("i", "H_i^G(S^ℓ)", rows, args.output, meta)
        }
    }
}

fn formal_rows(
    label: &str,
    heading: &str,
    rows: Vec<(String, FormalAbelianGroup)>,
    output: OutputFormat,
    meta: Value,
) -> Result<String> {
    match output {
        OutputFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(k, g)| {
                    let key = k.parse::<i64>().map_or_else(|_| json!(k), |d| json!(d));
                    json!({ label: key, "group": g.to_json() })
                })
                .collect();
            let mut v = meta;
            v["rows"] = Value::Array(items);
            pretty(&v)
        }
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(|(k, g)| vec![k.clone(), g.to_string()]).collect();
            Ok(markdown_table(&[label, heading], &body))
        }
    }
}

fn cmd_invariants(args: &InvariantsArgs) -> Result<String> {
    let l = load_lattice(&args.input)?;
    let gamma = GammaDescriptor::from_lattice(l.clone())?;
    let sig = gamma.type_sig();
    let mut meta = json!({ "what": args.what.name(), "p": l.p(), "type": type_json(sig) });
    let dec = args.decoration;
    let per_degree = |f: &dyn Fn(i64) -> Result<FormalAbelianGroup>| -> Result<Vec<(String, FormalAbelianGroup)>> {
        args.degrees.values().map(|m| Ok((m.to_string(), f(m)?))).collect()
    };
    let rows = match args.what {
        InvariantsWhat::Subgroups => {
            let report = l.subgroup_structure()?;
            return match args.output {
                OutputFormat::Json => {
                    meta["subgroups"] = serde_json::to_value(report)?;
                    pretty(&meta)
                }
                OutputFormat::Table => Ok(markdown_table(
                    &["quantity", "value"],
                    &[
                        vec!["conjugacy classes of order-p subgroups".into(), report.max_finite_classes.to_string()],
                        vec!["normalizer free rank".into(), report.normalizer_free_rank.to_string()],
                        vec!["Weyl group free rank".into(), report.weyl_free_rank.to_string()],
                    ],
                )),
            };
        }
        InvariantsWhat::KTheory => per_degree(&|m| k_theory_bgamma(&gamma, m))?,
        InvariantsWhat::KHomology => per_degree(&|m| k_homology_bgamma(&gamma, m))?,
        InvariantsWhat::Whitehead => per_degree(&|m| whitehead_gamma(&gamma, m))?,
        InvariantsWhat::LGroups => {
            meta["decoration"] = json!(dec.to_string());
            per_degree(&|m| l_groups_gamma(&gamma, dec, m))?
        }
        InvariantsWhat::NwQuotient => {
            meta["decoration"] = json!(dec.to_string());
            per_degree(&|m| nw_quotient(&gamma, dec, m))?
        }
        InvariantsWhat::StructureBgamma => {
            meta["decoration"] = json!(dec.to_string());
            per_degree(&|m| structure_set_bgamma(&gamma, dec, m))?
        }
        InvariantsWhat::TorusL => {
            meta["connective"] = json!(args.connective);
            per_degree(&|m| Ok(torus_l_homology_invariants(&l, m, args.connective)))?
        }
        InvariantsWhat::Structure => {
            let ell = args
                .ell
                .ok_or_else(|| Error::InvalidParameter("--what structure needs --ell".into()))?;
            let bundle = BundleDescriptor::new(gamma.clone(), ell)?;
            let (kind, name) = match args.kind {
                KindArg::Periodic => (StructureKind::Periodic, "periodic"),
                KindArg::Geometric => (StructureKind::Geometric, "geometric"),
            };
            meta["decoration"] = json!(dec.to_string());
            meta["ell"] = json!(ell);
            vec![(name.to_string(), structure_set(&bundle, dec, kind)?)]
        }
    };
    let label = if args.what == InvariantsWhat::Structure { "kind" } else { "m" };
    formal_rows(label, args.what.heading(), rows, args.output, meta)
}

fn page_column_limit(variant: VariantArg, depth: usize, ell: Option<usize>) -> Result<usize> {
    if variant == VariantArg::LM {
        ell.ok_or_else(|| Error::InvalidParameter("--variant l-m needs --ell".into()))
    } else {
        Ok(depth)
    }
}

fn cmd_spectral(args: &SpectralArgs) -> Result<(String, i32)> {
    let l = load_lattice(&args.input)?;
    match args.what {
        SpectralWhat::Page => {
            let limit = page_column_limit(args.variant, args.depth, args.ell)?;
            let pages = args
                .degrees
                .values()
                .map(|m| e2_page(&l, m, args.variant.into(), limit))
                .collect::<Result<Vec<_>>>()?;
            let text = match args.output {
                OutputFormat::Json if pages.len() == 1 => pretty(&pages[0].to_json())?,
                OutputFormat::Json => pretty(&Value::Array(pages.iter().map(|p| p.to_json()).collect()))?,
                OutputFormat::Table => pages.iter().map(|p| p.to_markdown()).collect::<Vec<_>>().join("\n"),
            };
            Ok((text, 0))
        }
        SpectralWhat::Check => {
            let reports = args
                .degrees
                .values()
                .map(|m| consistency_check(&l, m, args.depth))
                .collect::<Result<Vec<_>>>()?;
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            let text = match args.output {
                OutputFormat::Json => pretty(&serde_json::to_value(&reports)?)?,
                OutputFormat::Table => reports.iter().map(|r| r.to_markdown()).collect::<Vec<_>>().join("\n"),
            };
            Ok((text, code))
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32)> {
    for &p in &args.primes {
        check_prime(p, args.max_prime)?;
    }
    let mut suites = Vec::new();
    for name in &args.suite {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>()?);
        }
    }
    suites.sort_by_key(|s| s.name());
    suites.dedup();
    let opts = SuiteOptions {
        primes: args.primes.clone(),
        max: args.max,
        seed: args.seed,
    };
    let reports = suites
        .into_iter()
        .map(|s| run_suite(s, &opts))
        .collect::<Result<Vec<_>>>()?;
    let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
    let text = match args.output {
        OutputFormat::Json => pretty(&json!(reports
            .iter()
            .map(|r| json!({ "suite": r.suite, "passed": r.passed(), "cases": r.cases }))
            .collect::<Vec<_>>()))?,
        OutputFormat::Table => reports.iter().map(|r| r.to_markdown()).collect::<Vec<_>>().join("\n"),
    };
    Ok((text, code))
}

/// Markdown table of `L_m(ZΓ)` with one column per decoration `s`, `h`, `-inf`.
pub fn l_table_markdown(gamma: &GammaDescriptor, degrees: DegreeRange) -> Result<String> {
    let decorations = [Decoration::S, Decoration::H, Decoration::MinusInfinity];
    let rows = degrees
        .values()
        .map(|m| {
            let mut row = vec![m.to_string()];
            for dec in decorations {
                row.push(l_groups_gamma(gamma, dec, m)?.to_string());
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(format!(
        "L-groups of Z^{} ⋊ Z/{}, type {}\n\n{}",
        gamma.lattice().rank(),
        gamma.p(),
        gamma.type_sig(),
        markdown_table(&["m", "s", "h", "-inf"], &rows)
    ))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_export(args: &ExportArgs) -> Result<String> {
    let l = load_lattice(&args.input)?;
    let contents = match args.kind {
        ExportKind::Lattice => pretty(&l.to_json()?)?,
        ExportKind::E2 => {
            let limit = page_column_limit(args.variant, args.depth, args.ell)?;
            let pages = args
                .degrees
                .values()
                .map(|m| e2_page(&l, m, args.variant.into(), limit).map(|p| p.to_json()))
                .collect::<Result<Vec<_>>>()?;
            if pages.len() == 1 {
                pretty(&pages[0])?
            } else {
                pretty(&Value::Array(pages))?
            }
        }
        ExportKind::LTable => l_table_markdown(&GammaDescriptor::from_lattice(l)?, args.degrees)?,
    };
    write_file(&args.out, &contents)?;
    Ok(format!("wrote {}\n", args.out.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tbi(args: &[&str]) -> Outcome {
        run(std::iter::once("tbi").chain(args.iter().copied()))
    }

    #[test]
    fn degree_ranges() {
        assert_eq!("0..3".parse::<DegreeRange>().unwrap().values().count(), 4);
        assert_eq!("-3..-1".parse::<DegreeRange>().unwrap().start, -3);
        assert_eq!("2".parse::<DegreeRange>().unwrap(), DegreeRange { start: 2, end: 2 });
        assert!("3..1".parse::<DegreeRange>().is_err());
        assert!("0..64".parse::<DegreeRange>().is_err());
        assert!("0..63".parse::<DegreeRange>().is_ok());
    }

    #[test]
    fn inline_specs() {
        let l = parse_spec("p=3;sum=cyclotomic+regular+trivial:2", 13).unwrap();
        assert_eq!(l.rank(), 7);
        assert_eq!(l.detect_type().unwrap(), TypeSignature::new(1, 1, 2));
        let e = parse_spec("p=5; sum=extension", 13).unwrap();
        assert_eq!(e.detect_type().unwrap(), TypeSignature::new(0, 1, 0));
        assert!(parse_spec("p=9;type=(1,0,0)", 13).is_err());
        assert!(parse_spec("p=17;type=(1,0,0)", 13).is_err());
        assert!(parse_spec("p=17;type=(1,0,0)", 17).is_ok());
        assert!(parse_spec("p=3;sum=weird", 13).is_err());
        assert!(parse_spec("type=(1,0,0)", 13).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(tbi(&["cohomology"]).code, 2);
        assert_eq!(tbi(&["cohomology", "--spec", "p=3;type=(1,0,0)", "--input", "x.json"]).code, 2);
        assert_eq!(tbi(&["verify", "--suite", "nope"]).code, 2);
        assert_eq!(tbi(&["--help"]).code, 0);
    }

    #[test]
    fn l_groups_row() {
        let out = tbi(&[
            "invariants", "--spec", "p=3;type=(1,0,0)", "--what", "l-groups", "--decoration", "-inf", "--degrees",
            "0..3",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("| 0 | Z^4 ⊕ Z/2 |"), "{}", out.stdout);
    }
}
