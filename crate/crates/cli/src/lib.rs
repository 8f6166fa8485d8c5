//! Command-line front end for `repdecomp`.
//!
//! Every command writes one JSON document (CSV for `bench`) to stdout or
//! to `--output`. Exit codes: 0 on success, 1 on a domain error, 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use repdecomp::alt::{decompose_alternate, satisfies_intertwining, IntertwinerStrategy};
use repdecomp::centralizer::{centralizer_from_decomposition, orbital_centralizer_basis, verify_centralizer};
use repdecomp::perm::orbitals;
use repdecomp::rep::random::{default_pool, random_rep, RandomRepConfig};
use repdecomp::rep::RepresentationJson;
use repdecomp::sdp::{crossing_instance, crossing_instance_uncapped, limit_ratio, reduce, solve_external, write_sdpa};
use repdecomp::serre::{irreducible_decomposition, DecomposeOptions};
use repdecomp::sum::{sum_chain, sum_naive, SumStats, SumStrategy};
use repdecomp::unitarize::unitarize;
use repdecomp::{Config, Error, Family, Group, IrrepList, PermGroup, Representation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "repdecomp", version, about = "Exact decomposition of group representations and symmetry reduction of SDPs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for every randomised step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON file with configuration overrides.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// External SDPA solver command, e.g. `csdp`.
    #[arg(long, global = true)]
    pub solver: Option<String>,
    #[arg(long, global = true)]
    pub memory_budget: Option<u64>,
    #[arg(long, global = true)]
    pub enumeration_bound: Option<u64>,
    /// Omit wall-clock timings so that output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a representation into irreducible subspaces.
    Decompose(DecomposeArgs),
    /// A basis of the commutant of a representation.
    Centralizer(CentralizerArgs),
    /// An intertwiner to the block-diagonal model.
    BlockDiagonalize(BlockArgs),
    /// An equivalent unitary representation.
    Unitarize(RepArgs),
    /// Orbitals of a permutation group.
    Orbitals(OrbitalArgs),
    /// Build, reduce and optionally solve the crossing-number SDP.
    Crossing(CrossingArgs),
    /// A seeded random representation with known decomposition.
    RandomRep(RandomArgs),
    /// Compare the naive and chain group sums on permutation representations.
    Bench(BenchArgs),
    /// Quick internal consistency checks.
    Selftest,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    /// Representation JSON file.
    #[arg(long)]
    pub rep: PathBuf,
    /// Complete list of irreducibles (JSON array) when the group is not built in.
    #[arg(long)]
    pub irreps: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Serre,
    Alternate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    Chain,
    Kronecker,
    Orbit,
    ClassSum,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: RepArgs,
    #[arg(long, value_enum, default_value = "serre")]
    pub method: Method,
    /// Group-sum strategy (serre) or intertwiner strategy (alternate).
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Naive sums over all group elements only.
    #[arg(long)]
    pub no_optimisations: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Auto,
    Orbital,
    Decomposition,
}

#[derive(Args, Debug)]
pub struct CentralizerArgs {
    #[command(flatten)]
    pub input: RepArgs,
    /// Return the basis in block form, commuting with the block-diagonal model.
    #[arg(long)]
    pub blocks: bool,
    #[arg(long, value_enum, default_value = "auto")]
    pub via: Via,
}

#[derive(Args, Debug)]
pub struct BlockArgs {
    #[command(flatten)]
    pub input: RepArgs,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
}

#[derive(Args, Debug)]
pub struct OrbitalArgs {
    /// Group such as `S5`, `D10` or `S3xC2`.
    #[arg(long, conflicts_with = "rep", required_unless_present = "rep")]
    pub group: Option<String>,
    /// A permutation representation.
    #[arg(long)]
    pub rep: Option<PathBuf>,
    /// Include the 0/1 adjacency matrix of every orbital.
    #[arg(long)]
    pub matrices: bool,
}

#[derive(Args, Debug)]
pub struct CrossingArgs {
    #[arg(long)]
    pub m: usize,
    /// Where to write the reduced program in SDPA sparse format.
    #[arg(long)]
    pub sdpa: Option<PathBuf>,
    /// Run the external solver on the reduced program.
    #[arg(long)]
    pub solve: bool,
    /// One variable per orbital instead of per pair of paired orbitals.
    #[arg(long)]
    pub no_merge: bool,
    /// Allow m above the default cap.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 12)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 4)]
    pub max_distinct: usize,
    /// Restrict the group to this one, e.g. `S4` or `C3xC4`.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated groups; each acts by its defining permutation representation.
    #[arg(long, default_value = "S3,S4,S5,S6,C10,C20,C50,D20")]
    pub groups: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Domain(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Serialize, Debug)]
pub struct Meta {
    pub version: &'static str,
    pub seed: u64,
    pub config: Config,
    /// Wall-clock time of the command in nanoseconds; `null` with `--no-timing`.
    pub timing: Option<Timing>,
}

#[derive(Serialize, Debug)]
pub struct Timing {
    pub nanos: u128,
}

struct Ctx {
    config: Config,
    no_timing: bool,
    start: Instant,
}

impl Ctx {
    fn meta(&self) -> Meta {
        Meta {
            version: env!("CARGO_PKG_VERSION"),
            seed: self.config.seed,
            config: self.config.clone(),
            timing: (!self.no_timing).then(|| Timing { nanos: self.start.elapsed().as_nanos() }),
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads a representation file; errors name the file and the offending field
/// or generator.
pub fn parse_rep(path: &Path) -> CliResult<Representation> {
    let text = read_file(path)?;
    let j: RepresentationJson =
        serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    j.into_rep().map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// Parses `S5`, `D10`, `C4xS3`, ... into the matching product group.
pub fn parse_group_spec(spec: &str) -> CliResult<(Vec<Family>, PermGroup)> {
    let families = spec
        .split(['x', 'X', '*'])
        .map(|s| Family::parse(s.trim()))
        .collect::<repdecomp::Result<Vec<_>>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut group: Option<PermGroup> = None;
    for f in &families {
        let g = f.group().map_err(|e| CliError::Usage(e.to_string()))?;
        group = Some(match group {
            None => g,
            Some(h) => PermGroup::direct_product(&h, &g),
        });
    }
    Ok((families, group.expect("split yields at least one part")))
}

fn load_config(g: &GlobalOpts) -> CliResult<Config> {
    let mut config = match &g.config {
        Some(p) => serde_json::from_str(&read_file(p)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => Config::default(),
    };
    if let Some(s) = g.seed {
        config.seed = s;
    }
    if let Some(s) = &g.solver {
        config.solver_command = Some(s.clone());
    }
    if let Some(b) = g.memory_budget {
        config.memory_budget_bytes = b;
    }
    if let Some(b) = g.enumeration_bound {
        config.enumeration_bound = b;
    }
    Ok(config)
}

fn load_irreps(rep: &Representation, args: &RepArgs, config: &Config) -> CliResult<IrrepList> {
    match &args.irreps {
        Some(p) => IrrepList::from_json(&read_file(p)?, config).map_err(|e| CliError::Domain(format!("{}: {e}", p.display()))),
        None => Ok(IrrepList::for_group(rep.group().clone(), config)?),
    }
}

fn serre_strategy(s: StrategyArg) -> SumStrategy {
    match s {
        StrategyArg::Naive => SumStrategy::Naive,
        StrategyArg::Chain | StrategyArg::Kronecker => SumStrategy::Chain,
        StrategyArg::Orbit => SumStrategy::Orbit,
        StrategyArg::ClassSum => SumStrategy::ClassSum,
    }
}

fn intertwiner_strategy(s: StrategyArg) -> CliResult<IntertwinerStrategy> {
    match s {
        StrategyArg::Naive => Ok(IntertwinerStrategy::Naive),
        StrategyArg::Chain => Ok(IntertwinerStrategy::Chain),
        StrategyArg::Kronecker => Ok(IntertwinerStrategy::Kronecker),
        StrategyArg::Orbit => Ok(IntertwinerStrategy::Orbit),
        StrategyArg::ClassSum => Err(CliError::Usage("class-sum is not an intertwiner strategy".into())),
    }
}

fn irrep_table(irreps: &IrrepList, mult: &[usize]) -> Value {
    let degrees = irreps.degrees();
    Value::Array(
        (0..irreps.len())
            .map(|i| json!({"index": i, "label": irreps.labels()[i], "degree": degrees[i], "multiplicity": mult[i]}))
            .collect(),
    )
}

fn decompose(args: &DecomposeArgs, ctx: &Ctx) -> CliResult<Value> {
    let rep = parse_rep(&args.input.rep)?;
    let irreps = load_irreps(&rep, &args.input, &ctx.config)?;
    let mut opts = DecomposeOptions { no_optimisations: args.no_optimisations, ..Default::default() };
    if args.method == Method::Serre {
        opts.strategy = args.strategy.map(serre_strategy);
    }
    let (dec, extra) = match args.method {
        Method::Serre => (irreducible_decomposition(&rep, &irreps, &opts, &ctx.config)?, Value::Null),
        Method::Alternate => {
            let strategy = args.strategy.map(intertwiner_strategy).transpose()?;
            let alt = decompose_alternate(&rep, &irreps, &opts, strategy, ctx.config.seed, &ctx.config)?;
            let extra = json!({"strategy": alt.strategy.name(), "a": alt.intertwiner.a, "a_inv": alt.intertwiner.a_inv});
            (alt.decomposition, extra)
        }
    };
    let subspaces: Vec<Value> = dec
        .subspaces()
        .map(|(i, s)| json!({"irrep": i, "label": irreps.labels()[i], "dimension": s.dim(), "basis": s.basis()}))
        .collect();
    let strategies: Vec<Value> =
        dec.strategies.iter().map(|(i, s)| json!({"irrep": i, "strategy": s.map(|s| s.name())})).collect();
    Ok(json!({
        "method": match args.method { Method::Serre => "serre", Method::Alternate => "alternate" },
        "degree": rep.degree(),
        "group_order": rep.group().order().to_string(),
        "irreps": irrep_table(&irreps, &dec.multiplicities),
        "dimensions": dec.dimensions(),
        "subspaces": subspaces,
        "strategies": strategies,
        "stats": dec.stats,
        "intertwiner": extra,
        "meta": ctx.meta(),
    }))
}

fn centralizer(args: &CentralizerArgs, ctx: &Ctx) -> CliResult<Value> {
    let rep = parse_rep(&args.input.rep)?;
    let orbital = match args.via {
        Via::Orbital => {
            if args.blocks {
                return Err(CliError::Usage("--blocks needs the decomposition route".into()));
            }
            true
        }
        Via::Decomposition => false,
        Via::Auto => !args.blocks && rep.as_permutation_rep().is_ok(),
    };
    let (basis, target, method) = if orbital {
        (orbital_centralizer_basis(&rep)?, rep.clone(), "orbital")
    } else {
        let irreps = load_irreps(&rep, &args.input, &ctx.config)?;
        let alt = decompose_alternate(&rep, &irreps, &DecomposeOptions::default(), None, ctx.config.seed, &ctx.config)?;
        let basis = centralizer_from_decomposition(&rep, &alt.model, &alt.intertwiner, args.blocks)?;
        let target = if args.blocks { alt.model.tau.clone() } else { rep.clone() };
        (basis, target, if args.blocks { "blocks" } else { "decomposition" })
    };
    let report = verify_centralizer(&target, &basis);
    if !report.passed() {
        return Err(CliError::Domain(format!("centraliser check failed: {}", report.failures.join("; "))));
    }
    Ok(json!({
        "method": method,
        "dimension": basis.len(),
        "orthonormal": basis.orthonormal,
        "star_closed": basis.star_closed,
        "elements": basis.elements,
        "report": report,
        "meta": ctx.meta(),
    }))
}

fn block_diagonalize(args: &BlockArgs, ctx: &Ctx) -> CliResult<Value> {
    let rep = parse_rep(&args.input.rep)?;
    let irreps = load_irreps(&rep, &args.input, &ctx.config)?;
    let strategy = args.strategy.map(intertwiner_strategy).transpose()?;
    let alt = decompose_alternate(&rep, &irreps, &DecomposeOptions::default(), strategy, ctx.config.seed, &ctx.config)?;
    if !satisfies_intertwining(&rep, &alt.model.tau, &alt.intertwiner.a) {
        return Err(CliError::Domain("intertwiner check failed".into()));
    }
    let layout: Vec<Value> = alt
        .model
        .layout
        .iter()
        .map(|e| json!({"irrep": e.irrep, "label": irreps.labels()[e.irrep], "multiplicity": e.multiplicity, "degree": e.degree}))
        .collect();
    Ok(json!({
        "strategy": alt.strategy.name(),
        "layout": layout,
        "a": alt.intertwiner.a,
        "a_inv": alt.intertwiner.a_inv,
        "tau": alt.model.tau.to_json(),
        "meta": ctx.meta(),
    }))
}

fn unitarize_cmd(args: &RepArgs, ctx: &Ctx) -> CliResult<Value> {
    let rep = parse_rep(&args.rep)?;
    let u = unitarize(&rep, &ctx.config)?;
    if !u.tau.is_unitary() {
        return Err(CliError::Domain("result is not unitary".into()));
    }
    Ok(json!({
        "tau": u.tau.to_json(),
        "basis": u.basis,
        "gram": u.gram,
        "stats": u.stats,
        "meta": ctx.meta(),
    }))
}

fn orbitals_cmd(args: &OrbitalArgs, ctx: &Ctx) -> CliResult<Value> {
    let group = match (&args.group, &args.rep) {
        (Some(spec), _) => parse_group_spec(spec)?.1,
        (None, Some(path)) => {
            let rep = parse_rep(path)?.as_permutation_rep().map_err(|_| Error::NotPermutation)?;
            let perms = rep.generator_permutations().ok_or(Error::NotPermutation)?;
            PermGroup::new(rep.degree(), perms.to_vec())?
        }
        (None, None) => return Err(CliError::Usage("give --group or --rep".into())),
    };
    let orb = orbitals(&group);
    let list: Vec<Value> = orb
        .orbitals
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let mut v = json!({
                "index": k,
                "representative": [o.representative.0 + 1, o.representative.1 + 1],
                "size": o.len(),
                "paired": o.paired,
                "symmetric": o.is_symmetric(k),
            });
            if args.matrices {
                v["adjacency"] = serde_json::to_value(o.adjacency(orb.degree())).expect("matrix serialises");
            }
            v
        })
        .collect();
    Ok(json!({
        "degree": orb.degree(),
        "group_order": group.order().to_string(),
        "transitive": group.is_transitive(),
        "count": orb.len(),
        "orbitals": list,
        "meta": ctx.meta(),
    }))
}

fn crossing(args: &CrossingArgs, ctx: &Ctx) -> CliResult<Value> {
    let (inst, sdp) = if args.allow_large { crossing_instance_uncapped(args.m)? } else { crossing_instance(args.m)? };
    let r = reduce(&sdp, !args.no_merge)?;
    let path = match (&args.sdpa, args.solve) {
        (Some(p), _) => Some(p.clone()),
        (None, true) => Some(std::env::temp_dir().join(format!("crossing-m{}-{}.dat-s", args.m, std::process::id()))),
        (None, false) => None,
    };
    if let Some(p) = &path {
        write_sdpa(&r, p)?;
    }
    let mut out = json!({
        "m": args.m,
        "cycles": inst.cycles.len(),
        "orbitals": r.dim,
        "d": r.d,
        "dim": r.dim,
        "merged": r.merged,
        "nonneg": r.nonneg,
        "sdpa": path.as_ref().filter(|_| args.sdpa.is_some()).map(|p| p.display().to_string()),
        "solver_status": "not run",
        "alpha": Value::Null,
        "limit_ratio": Value::Null,
    });
    if args.solve {
        let command = ctx
            .config
            .solver_command
            .clone()
            .ok_or_else(|| CliError::Usage("--solve needs --solver or solver_command in the config".into()))?;
        let p = path.as_ref().expect("path set when solving");
        let result = solve_external(p, &command);
        if args.sdpa.is_none() {
            let _ = std::fs::remove_file(p);
        }
        let result = result?;
        out["solver_status"] = json!(result.status);
        out["alpha"] = json!(result.objective);
        out["primal"] = json!(result.primal);
        out["dual"] = json!(result.dual);
        out["limit_ratio"] = json!(limit_ratio(args.m as u64, result.objective, None));
    }
    out["meta"] = serde_json::to_value(ctx.meta()).expect("meta serialises");
    Ok(out)
}

fn random_rep_cmd(args: &RandomArgs, ctx: &Ctx) -> CliResult<Value> {
    let pool = match &args.group {
        Some(spec) => vec![parse_group_spec(spec)?.0],
        None => default_pool(),
    };
    let opts = RandomRepConfig { max_degree: args.max_degree, max_distinct: args.max_distinct, pool: Some(pool) };
    let r = random_rep(ctx.config.seed, &opts, &ctx.config)?;
    let mut out = serde_json::to_value(r.rep.to_json()).map_err(Error::from)?;
    let group_name: Vec<String> = r.families.iter().map(Family::name).collect();
    let constituents: Vec<Value> = (0..r.irreps.len())
        .filter(|&i| r.multiplicities[i] > 0)
        .map(|i| json!({"irrep": i, "label": r.irreps.labels()[i], "degree": r.irreps.degrees()[i], "multiplicity": r.multiplicities[i]}))
        .collect();
    out["construction"] = json!({
        "group": group_name.join("x"),
        "constituents": constituents,
        "conjugator": r.conjugator,
    });
    out["meta"] = serde_json::to_value(ctx.meta()).map_err(Error::from)?;
    Ok(out)
}

#[derive(Serialize)]
struct BenchRow {
    strategy: &'static str,
    group: String,
    degree: usize,
    images_computed: u64,
    ring_ops: u64,
    nanos: u128,
}

fn bench(args: &BenchArgs, ctx: &Ctx) -> CliResult<String> {
    let mut rows = Vec::new();
    for spec in args.groups.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (_, pg) = parse_group_spec(spec)?;
        let n = pg.degree();
        let group = Group::new(pg.clone());
        let rep = Representation::from_permutations(group.clone(), n, pg.generators().to_vec())?;
        let mut naive_stats = SumStats::default();
        let t = Instant::now();
        let naive = sum_naive(&rep, ctx.config.enumeration_bound, &mut naive_stats)?;
        let naive_ns = t.elapsed().as_nanos();
        let mut chain_stats = SumStats::default();
        let t = Instant::now();
        let chained = sum_chain(&rep, &mut chain_stats);
        let chain_ns = t.elapsed().as_nanos();
        if naive != chained {
            return Err(CliError::Domain(format!("{spec}: chain and naive sums differ")));
        }
        let limit = (group.transversal_total() + group.chain().strong_generators().len()) as u64;
        if chain_stats.images > limit {
            return Err(CliError::Domain(format!(
                "{spec}: chain sum formed {} images, above the transversal bound {limit}",
                chain_stats.images
            )));
        }
        for (strategy, s, ns) in [("naive", naive_stats, naive_ns), ("chain", chain_stats, chain_ns)] {
            rows.push(BenchRow {
                strategy,
                group: spec.to_string(),
                degree: n,
                images_computed: s.images,
                ring_ops: s.ring_ops,
                nanos: if ctx.no_timing { 0 } else { ns },
            });
        }
    }
    let mut out = format!("# {}\n", serde_json::to_string(&ctx.meta()).map_err(Error::from)?);
    out.push_str("strategy,group,degree,images_computed,ring_ops,nanos\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{}\n", r.strategy, r.group, r.degree, r.images_computed, r.ring_ops, r.nanos));
    }
    Ok(out)
}

fn check(name: &str, f: impl FnOnce() -> repdecomp::Result<bool>) -> Value {
    match f() {
        Ok(true) => json!({"name": name, "passed": true}),
        Ok(false) => json!({"name": name, "passed": false}),
        Err(e) => json!({"name": name, "passed": false, "error": e.to_string()}),
    }
}

fn defining_rep(n: usize) -> repdecomp::Result<Representation> {
    let pg = PermGroup::symmetric(n);
    Representation::from_permutations(Group::new(pg.clone()), n, pg.generators().to_vec())
}

fn selftest(ctx: &Ctx) -> CliResult<(Value, bool)> {
    let config = &ctx.config;
    let checks = vec![
        check("serre S4 defining", || {
            let rep = defining_rep(4)?;
            let irreps = IrrepList::for_group(rep.group().clone(), config)?;
            let d = irreducible_decomposition(&rep, &irreps, &DecomposeOptions::default(), config)?;
            let mut dims = d.dimensions();
            dims.sort();
            Ok(dims == vec![1, 3] && d.basis_matrix()?.rank() == 4)
        }),
        check("alternate S4 defining", || {
            let rep = defining_rep(4)?;
            let irreps = IrrepList::for_group(rep.group().clone(), config)?;
            let a = decompose_alternate(&rep, &irreps, &DecomposeOptions::default(), None, config.seed, config)?;
            Ok(satisfies_intertwining(&rep, &a.model.tau, &a.intertwiner.a))
        }),
        check("chain sum equals naive sum", || {
            let rep = defining_rep(5)?;
            let mut s = SumStats::default();
            Ok(sum_naive(&rep, config.enumeration_bound, &mut s)? == sum_chain(&rep, &mut s))
        }),
        check("orbital centraliser", || {
            let rep = defining_rep(5)?;
            Ok(verify_centralizer(&rep, &orbital_centralizer_basis(&rep)?).passed())
        }),
        check("unitarize random rep", || {
            let opts = RandomRepConfig { max_degree: 4, max_distinct: 2, pool: Some(vec![vec![Family::Symmetric(3)]]) };
            let r = random_rep(config.seed, &opts, config)?;
            Ok(unitarize(&r.rep, config)?.tau.is_unitary())
        }),
        check("crossing m=4 reduction", || {
            let (_, sdp) = crossing_instance(4)?;
            let r = reduce(&sdp, true)?;
            Ok(r.dim > 0 && r.d <= r.dim)
        }),
    ];
    let ok = checks.iter().all(|c| c["passed"] == json!(true));
    Ok((json!({"passed": ok, "checks": checks, "meta": ctx.meta()}), ok))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Domain(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Domain(e.to_string()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

/// Runs a parsed command line and returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    let result = (|| -> CliResult<bool> {
        let config = load_config(&cli.global)?;
        let ctx = Ctx { config, no_timing: cli.global.no_timing, start: Instant::now() };
        let (text, ok) = match &cli.command {
            Command::Decompose(a) => (pretty(&decompose(a, &ctx)?), true),
            Command::Centralizer(a) => (pretty(&centralizer(a, &ctx)?), true),
            Command::BlockDiagonalize(a) => (pretty(&block_diagonalize(a, &ctx)?), true),
            Command::Unitarize(a) => (pretty(&unitarize_cmd(a, &ctx)?), true),
            Command::Orbitals(a) => (pretty(&orbitals_cmd(a, &ctx)?), true),
            Command::Crossing(a) => (pretty(&crossing(a, &ctx)?), true),
            Command::RandomRep(a) => (pretty(&random_rep_cmd(a, &ctx)?), true),
            Command::Bench(a) => (bench(a, &ctx)?, true),
            Command::Selftest => {
                let (v, ok) = selftest(&ctx)?;
                (pretty(&v), ok)
            }
        };
        emit(&text, cli.global.output.as_deref())?;
        Ok(ok)
    })();
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("error: self-test failed");
            EXIT_DOMAIN
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            EXIT_DOMAIN
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
