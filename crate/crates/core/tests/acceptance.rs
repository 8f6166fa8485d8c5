//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so that the lines are always printed. The
//! extended part of criterion 7 (solving the m = 7 program) runs only with
//! `--ignored` or `--include-ignored`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repdecomp::alt::{block_diag_rep, decompose_alternate, model_from_multiplicities, satisfies_intertwining, AlternateDecomposition};
use repdecomp::centralizer::{brute_force_centralizer, centralizer_from_decomposition, orbital_centralizer_basis, verify_centralizer};
use repdecomp::irreps::Family;
use repdecomp::perm::orbitals;
use repdecomp::rep::random::{default_pool, random_rep, RandomRep, RandomRepConfig};
use repdecomp::sdp::{check_invariance, crossing_instance, reduce, solve_external, write_sdpa, InvariantSDP, Surd};
use repdecomp::serre::{irreducible_decomposition, DecomposeOptions, IrreducibleDecomposition};
use repdecomp::sum::{class_sum_projection, projection_naive, sum_chain, sum_naive, SumStats};
use repdecomp::unitarize::unitarize;
use repdecomp::{Config, Cyclotomic, Group, IrrepList, Matrix, PermGroup, Rational, Representation};

const SEEDS: u64 = 50;
const ALPHA5: f64 = 1.9472133720059;
const ALPHA7: f64 = 4.3693933617464;
const ALPHA_TOL: f64 = 1e-6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail: summary }
    } else {
        let shown: Vec<&String> = failures.iter().take(5).collect();
        Outcome { passed: false, detail: format!("{summary}; {} failure(s): {shown:?}", failures.len()) }
    }
}

fn within(limit: Duration, started: Instant, failures: &mut Vec<String>) {
    let spent = started.elapsed();
    if spent > limit {
        failures.push(format!("took {spent:.1?}, limit {limit:?}"));
    }
}

fn defining(pg: PermGroup) -> Representation {
    let n = pg.degree();
    Representation::from_permutations(Group::new(pg.clone()), n, pg.generators().to_vec()).unwrap()
}

fn family_group(families: &[Family]) -> PermGroup {
    let mut it = families.iter().map(|f| f.group().unwrap());
    let first = it.next().unwrap();
    it.fold(first, |g, h| PermGroup::direct_product(&g, &h))
}

fn vectorised(ms: &[Matrix]) -> Matrix {
    let cols: Vec<Matrix> = ms.iter().map(|m| Matrix::from_fn(m.rows() * m.cols(), 1, |r, _| m.entries()[r].clone())).collect();
    Matrix::hcat(&cols).unwrap()
}

fn same_span(a: &[Matrix], b: &[Matrix]) -> bool {
    let (va, vb) = (vectorised(a), vectorised(b));
    let both = Matrix::hcat(&[va.clone(), vb.clone()]).unwrap();
    let r = va.rank();
    r == vb.rank() && r == both.rank()
}

/// Results shared by criteria 1, 3 and 4.
struct Case {
    seed: u64,
    random: RandomRep,
    serre: Result<IrreducibleDecomposition, String>,
    alternate: Result<AlternateDecomposition, String>,
}

fn build_cases(config: &Config) -> Vec<Case> {
    let opts = RandomRepConfig::default();
    (0..SEEDS)
        .map(|seed| {
            let random = random_rep(seed, &opts, config).unwrap();
            let d = DecomposeOptions::default();
            let serre = irreducible_decomposition(&random.rep, &random.irreps, &d, config).map_err(|e| e.to_string());
            let alternate =
                decompose_alternate(&random.rep, &random.irreps, &d, None, seed, config).map_err(|e| e.to_string());
            Case { seed, random, serre, alternate }
        })
        .collect()
}

fn check_decomposition(
    case: &Case,
    method: &str,
    dec: &IrreducibleDecomposition,
    config: &Config,
    failures: &mut Vec<String>,
) {
    let r = &case.random;
    if dec.multiplicities != r.multiplicities {
        failures.push(format!("seed {} {method}: multiplicities {:?} != {:?}", case.seed, dec.multiplicities, r.multiplicities));
    }
    let mut total = 0;
    for (i, space) in dec.subspaces() {
        total += space.dim();
        match r.rep.restrict(space) {
            Ok(sub) => {
                let chi = sub.character(config.enumeration_bound).unwrap();
                if chi != r.irreps.characters()[i] {
                    failures.push(format!("seed {} {method}: character of a summand differs from irrep {i}", case.seed));
                }
            }
            Err(e) => failures.push(format!("seed {} {method}: summand for irrep {i} not invariant: {e}", case.seed)),
        }
    }
    if total != r.rep.degree() {
        failures.push(format!("seed {} {method}: summands cover {total} of {}", case.seed, r.rep.degree()));
    }
}

fn criterion1(cases: &[Case], config: &Config, started: Instant) -> Outcome {
    let mut failures = Vec::new();
    for case in cases {
        match &case.serre {
            Ok(d) => check_decomposition(case, "serre", d, config, &mut failures),
            Err(e) => failures.push(format!("seed {} serre: {e}", case.seed)),
        }
        match &case.alternate {
            Ok(a) => check_decomposition(case, "alternate", &a.decomposition, config, &mut failures),
            Err(e) => failures.push(format!("seed {} alternate: {e}", case.seed)),
        }
    }
    within(Duration::from_secs(600), started, &mut failures);
    outcome(failures, format!("{SEEDS} random representations, both methods, in {:.1?}", started.elapsed()))
}

/// Unitary irreducibles of a random pool group, summed and then
/// conjugated by a random permutation matrix.
fn random_unitary(seed: u64, config: &Config) -> (Representation, IrrepList, Vec<usize>, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
    let pool = default_pool();
    loop {
        let families = pool.choose(&mut rng).unwrap().clone();
        let irreps = IrrepList::for_families(&families, config).unwrap();
        let unitary: Vec<usize> = (0..irreps.len()).filter(|&i| irreps.irreps()[i].is_unitary()).collect();
        let mut mult = vec![0usize; irreps.len()];
        let mut degree = 0;
        for _ in 0..rng.gen_range(1..=4) {
            let i = *unitary.choose(&mut rng).unwrap();
            if degree + irreps.degrees()[i] <= 8 {
                mult[i] += 1;
                degree += irreps.degrees()[i];
            }
        }
        if degree == 0 {
            continue;
        }
        let model = model_from_multiplicities(&irreps, &mult).unwrap();
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(&mut rng);
        let p = Matrix::permutation(&images);
        let rho = model.tau.conjugate_by(&p).unwrap();
        return (rho, irreps, mult, p);
    }
}

fn criterion2(config: &Config) -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let groups: Vec<(String, PermGroup)> = (3..=6)
        .map(|n| (format!("S{n}"), PermGroup::symmetric(n)))
        .chain((2..=50).map(|n| (format!("C{n}"), PermGroup::cyclic(n))))
        .collect();
    for (name, pg) in &groups {
        let rep = defining(pg.clone());
        let mut stats = SumStats::default();
        if sum_chain(&rep, &mut stats) != sum_naive(&rep, config.enumeration_bound, &mut stats).unwrap() {
            failures.push(format!("{name}: chain sum differs from naive sum"));
        }
    }
    for seed in 0..20 {
        let (rho, irreps, mult, p) = random_unitary(seed, config);
        let model = model_from_multiplicities(&irreps, &mult).unwrap();
        let inter = repdecomp::alt::Intertwiner { a: p.clone(), a_inv: p.invert().unwrap() };
        let raw = centralizer_from_decomposition(&rho, &model, &inter, false).unwrap();
        // E_jk ⊗ I_d has norm √d; rescale to an orthonormal basis
        let mut basis = Vec::new();
        let mut k = 0;
        for e in &model.layout {
            let s = Cyclotomic::sqrt_rational(&Rational::from_int(e.degree as i64)).unwrap().inv().unwrap();
            for _ in 0..e.multiplicity * e.multiplicity {
                basis.push(raw.elements[k].scale(&s));
                k += 1;
            }
        }
        for i in 0..irreps.len() {
            let chi = &irreps.characters()[i];
            let d = irreps.degrees()[i] as u64;
            let mut stats = SumStats::default();
            let fast = class_sum_projection(&rho, &basis, chi, d, config.enumeration_bound, &mut stats);
            let slow = projection_naive(&rho, chi, d, config.enumeration_bound, &mut stats).unwrap();
            match fast {
                Ok(f) if f == slow => {}
                Ok(_) => failures.push(format!("unitary case {seed}, irrep {i}: class-sum projection differs")),
                Err(e) => failures.push(format!("unitary case {seed}, irrep {i}: {e}")),
            }
        }
    }
    within(Duration::from_secs(120), started, &mut failures);
    outcome(failures, format!("{} permutation groups, 20 unitary class-sum cases, in {:.1?}", groups.len(), started.elapsed()))
}

fn criterion3(cases: &[Case], started: Instant) -> Outcome {
    let mut failures = Vec::new();
    let mut brute_checked = 0;
    for case in cases {
        let Ok(alt) = &case.alternate else { continue };
        let rep = &case.random.rep;
        let basis = match centralizer_from_decomposition(rep, &alt.model, &alt.intertwiner, false) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("seed {}: {e}", case.seed));
                continue;
            }
        };
        let expected: usize = case.random.multiplicities.iter().map(|m| m * m).sum();
        if basis.len() != expected {
            failures.push(format!("seed {}: dimension {} != {expected}", case.seed, basis.len()));
        }
        let report = verify_centralizer(rep, &basis);
        if !report.commutes || !report.independent {
            failures.push(format!("seed {}: {:?}", case.seed, report.failures));
        }
        if rep.degree() <= 6 && rep.group().order() <= 60 {
            brute_checked += 1;
            if !same_span(&basis.elements, &brute_force_centralizer(rep)) {
                failures.push(format!("seed {}: span differs from the brute-force commutant", case.seed));
            }
        }
    }
    let mut orbital_checked = 0;
    let mut perm_groups: Vec<PermGroup> = default_pool().iter().map(|f| family_group(f)).collect();
    perm_groups.push(PermGroup::symmetric(6));
    for pg in perm_groups {
        let rep = defining(pg);
        let basis = orbital_centralizer_basis(&rep).unwrap();
        orbital_checked += 1;
        if !verify_centralizer(&rep, &basis).passed() {
            failures.push(format!("orbital basis of degree {} fails verification", rep.degree()));
        }
        if rep.degree() <= 6 && rep.group().order() <= 60 {
            brute_checked += 1;
            if !same_span(&basis.elements, &brute_force_centralizer(&rep)) {
                failures.push(format!("orbital span of degree {} differs from brute force", rep.degree()));
            }
        }
    }
    let (inst, _) = crossing_instance(5).unwrap();
    let action = inst.action_representation().unwrap();
    if !verify_centralizer(&action, &orbital_centralizer_basis(&action).unwrap()).passed() {
        failures.push("crossing m=5 orbital basis fails verification".into());
    }
    within(Duration::from_secs(300), started, &mut failures);
    outcome(
        failures,
        format!(
            "{} decomposition bases, {} orbital bases, {brute_checked} brute-force comparisons, in {:.1?}",
            cases.len(),
            orbital_checked + 1,
            started.elapsed()
        ),
    )
}

fn criterion4(cases: &[Case]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for case in cases {
        let Ok(alt) = &case.alternate else {
            failures.push(format!("seed {}: no intertwiner", case.seed));
            continue;
        };
        checked += 1;
        let (a, a_inv) = (&alt.intertwiner.a, &alt.intertwiner.a_inv);
        let rep = &case.random.rep;
        if !a.mul(a_inv).is_identity() {
            failures.push(format!("seed {}: A A^-1 != I", case.seed));
        }
        if !satisfies_intertwining(rep, &alt.model.tau, a) {
            failures.push(format!("seed {}: A^-1 tau A != rho", case.seed));
        }
        let blocks = alt.model.block_offsets();
        let block_of = |i: usize| blocks.iter().position(|&(_, at, d)| at <= i && i < at + d).unwrap();
        for (g, (rho, tau)) in rep.generator_images().iter().zip(alt.model.tau.generator_images()).enumerate() {
            let conj = a.mul(rho).mul(a_inv);
            if &conj != tau {
                failures.push(format!("seed {}: A rho(g{g}) A^-1 differs from the model", case.seed));
            }
            let n = conj.rows();
            let off = (0..n).any(|i| (0..n).any(|j| block_of(i) != block_of(j) && !conj[(i, j)].is_zero()));
            if off {
                failures.push(format!("seed {}: nonzero entry outside the layout blocks for g{g}", case.seed));
            }
        }
    }
    outcome(failures, format!("{checked} intertwiners"))
}

/// `δ` patterns per block dimension whose mean `δ²` is a square.
fn deltas(d: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let options: &[&[i64]] = match d {
        1 => &[&[1], &[2], &[3]],
        2 => &[&[1, 7], &[7, 1], &[2, 2], &[1, 1]],
        3 => &[&[1, 1, 5], &[5, 1, 1], &[1, 5, 1]],
        4 => &[&[1, 1, 7, 7], &[7, 1, 7, 1], &[1, 7, 1, 7]],
        5 => &[&[1, 1, 1, 1, 4], &[4, 1, 1, 1, 1]],
        6 => &[&[1, 1, 1, 1, 2, 4], &[4, 2, 1, 1, 1, 1]],
        _ => &[],
    };
    options.choose(rng).map(|o| o.to_vec()).unwrap_or_else(|| vec![1; d])
}

fn criterion5(config: &Config) -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        // multiplicity-free sum of unitary irreducibles
        let (_, irreps, _, _) = random_unitary(seed, config);
        let unitary: Vec<usize> = (0..irreps.len()).filter(|&i| irreps.irreps()[i].is_unitary()).collect();
        let mut chosen: Vec<usize> = unitary.choose_multiple(&mut rng, unitary.len().min(3)).cloned().collect();
        chosen.sort();
        let parts: Vec<Representation> = chosen.iter().map(|&i| irreps.irreps()[i].clone()).collect();
        let tau = Representation::direct_sum(&parts).unwrap();
        let n = tau.degree();
        // M = Δ U with U a signed permutation: S = |G| Uᵀ Λ Δ⁻² U, where Λ is
        // the blockwise mean of Δ² (a square)
        let mut delta = Vec::new();
        let mut lambda = Vec::new();
        for p in &parts {
            let ds = deltas(p.degree(), &mut rng);
            let mean = Rational::new(ds.iter().map(|x| x * x).sum::<i64>(), ds.len() as i64);
            lambda.extend(std::iter::repeat_n(mean, ds.len()));
            delta.extend(ds);
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut rng);
        let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let u = Matrix::permutation(&images).mul(&Matrix::diagonal(&signs.iter().map(|&s| Cyclotomic::from_int(s)).collect::<Vec<_>>()));
        let dmat = Matrix::diagonal(&delta.iter().map(|&x| Cyclotomic::from_int(x)).collect::<Vec<_>>());
        let m = dmat.mul(&u);
        let rho = tau.conjugate_by(&m).unwrap();
        let order = Rational::from_bigints((tau.group().order() as u64).into(), 1u64.into());
        let inner: Vec<Cyclotomic> = (0..n)
            .map(|i| Cyclotomic::from_rational(&order * &lambda[i] * Rational::new(1, delta[i] * delta[i])))
            .collect();
        let expected_s = u.transpose().mul(&Matrix::diagonal(&inner)).mul(&u);
        match unitarize(&rho, config) {
            Ok(out) => {
                if out.gram != expected_s {
                    failures.push(format!("case {seed}: invariant form differs from the constructed S"));
                }
                if !out.tau.generator_images().iter().all(|g| g.mul(&g.adjoint()).is_identity()) {
                    failures.push(format!("case {seed}: tau(g) tau(g)* != I"));
                }
                let b = config.enumeration_bound;
                if out.tau.character(b).unwrap() != rho.character(b).unwrap() {
                    failures.push(format!("case {seed}: characters differ"));
                }
            }
            Err(e) => failures.push(format!("case {seed} (degree {n}): {e}")),
        }
    }
    within(Duration::from_secs(120), started, &mut failures);
    outcome(failures, format!("20 conjugated unitary representations in {:.1?}", started.elapsed()))
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// `REPDECOMP_SOLVER`, else the bundled cvxpy shim when cvxpy imports.
fn solver_command() -> Option<String> {
    if let Ok(s) = std::env::var("REPDECOMP_SOLVER") {
        return Some(s);
    }
    let shim = workspace_root().join("tools/sdpa_solve.py");
    let ok = Command::new("python3").args(["-c", "import cvxpy, numpy"]).output().map(|o| o.status.success()).unwrap_or(false);
    (ok && shim.exists()).then(|| format!("python3 {}", shim.display()))
}

fn solve(sdp: &InvariantSDP, merge: bool, solver: &str, tag: &str) -> Result<f64, String> {
    let r = reduce(sdp, merge).map_err(|e| e.to_string())?;
    let path = std::env::temp_dir().join(format!("acceptance-{tag}-{}.dat-s", std::process::id()));
    write_sdpa(&r, &path).map_err(|e| e.to_string())?;
    let out = solve_external(&path, solver).map_err(|e| e.to_string());
    let _ = std::fs::remove_file(&path);
    out.map(|s| s.objective)
}

/// `E_k E_j = Σ_i p^i_{kj} E_i`, with `p` read back from the scaled `L_k`.
fn reconstruction_failures(sdp: &InvariantSDP) -> Vec<String> {
    let mut failures = Vec::new();
    let r = reduce(sdp, false).unwrap();
    let orb = orbitals(&sdp.action);
    let n = sdp.action.degree();
    let e: Vec<Matrix> = r
        .orbital_representatives
        .iter()
        .map(|&(a, b)| orb.orbitals[orb.index_of(a, b)].adjacency(n))
        .collect();
    let sizes: Vec<i64> = r.orbital_sizes.iter().map(|&s| s as i64).collect();
    for (v, members) in r.variables.iter().enumerate() {
        let k = members[0];
        for j in 0..r.dim {
            let mut rebuilt = Matrix::zeros(n, n);
            for i in 0..r.dim {
                let scale = Surd::sqrt(&Rational::new(sizes[k] * sizes[j], sizes[i])).unwrap();
                let p = (r.l[v].get(i, j) * &scale).as_rational();
                match p {
                    Some(p) if !p.is_zero() => rebuilt.add_scaled_assign(&Cyclotomic::from_rational(p), &e[i]),
                    Some(_) => {}
                    None => failures.push(format!("L_{k}[{i}][{j}] does not give a rational intersection number")),
                }
            }
            if rebuilt != e[k].mul(&e[j]) {
                failures.push(format!("E_{k} E_{j} is not reproduced"));
            }
        }
    }
    failures
}

fn criterion6(solver: Option<&str>) -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let (inst, sdp) = crossing_instance(5).unwrap();
    if let Err(e) = check_invariance(&sdp) {
        failures.push(format!("C is not invariant: {e}"));
    }
    let r = reduce(&sdp, false).unwrap();
    if r.dim != 8 || r.d != 8 || inst.cycles.len() != 24 {
        failures.push(format!("m=5: {} cycles, {} orbitals, {} variables", inst.cycles.len(), r.dim, r.d));
    }
    failures.extend(reconstruction_failures(&sdp));
    let reduction = format!("reduction checks (d = {})", r.dim);
    let Some(solver) = solver else {
        return outcome(failures, format!("{reduction}; no solver available, alpha_5 not checked"));
    };
    let alpha = match solve(&sdp, true, solver, "m5") {
        Ok(a) => {
            if (a - ALPHA5).abs() > ALPHA_TOL {
                failures.push(format!("alpha_5 = {a:.10}, expected {ALPHA5} within {ALPHA_TOL}"));
            }
            a
        }
        Err(e) => {
            failures.push(e);
            f64::NAN
        }
    };
    within(Duration::from_secs(60), started, &mut failures);
    // the program with a trivial action is the unreduced one
    let (_, small) = crossing_instance(4).unwrap();
    let full = InvariantSDP { action: PermGroup::trivial(small.action.degree()), ..small.clone() };
    match (solve(&small, true, solver, "m4r"), solve(&full, false, solver, "m4f")) {
        (Ok(a), Ok(b)) if (a - b).abs() <= ALPHA_TOL => {}
        (Ok(a), Ok(b)) => failures.push(format!("m=4: reduced {a} vs unreduced {b}")),
        (Err(e), _) | (_, Err(e)) => failures.push(e),
    }
    outcome(failures, format!("{reduction}; alpha_5 = {alpha:.10} in {:.1?}", started.elapsed()))
}

/// The expected multiset: irreducible degree and total multiplicity.
const BLOCKS7: [(usize, usize); 6] = [(1, 2), (14, 8), (15, 6), (20, 2), (21, 6), (35, 10)];

fn criterion7(config: &Config, extended: bool, solver: Option<&str>) -> (Option<bool>, String) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let (inst, sdp) = crossing_instance(7).unwrap();
    let r = reduce(&sdp, false).unwrap();
    if r.dim != 78 {
        failures.push(format!("d = {}, expected 78", r.dim));
    }
    let rep = inst.action_representation().unwrap();
    let irreps =
        IrrepList::product(&IrrepList::symmetric(7, config).unwrap(), &IrrepList::symmetric(2, config).unwrap(), config)
            .unwrap();
    let model = block_diag_rep(&rep, &irreps, config).unwrap();
    let mut by_degree = std::collections::BTreeMap::new();
    for e in &model.layout {
        *by_degree.entry(e.degree).or_insert(0) += e.multiplicity;
    }
    let got: Vec<(usize, usize)> = by_degree.into_iter().collect();
    if got != BLOCKS7 {
        failures.push(format!("block sizes {got:?}, expected {BLOCKS7:?}"));
    }
    let mut detail = format!("d = {}, block sizes (degree, multiplicity) {got:?}", r.dim);
    if !extended {
        let ok = failures.is_empty();
        let o = outcome(failures, detail);
        return (
            if ok { None } else { Some(false) },
            format!("{}; alpha_7 solve is extended, run with --ignored", o.detail),
        );
    }
    match solver {
        None => failures.push("no solver available for alpha_7".into()),
        Some(s) => match solve(&sdp, true, s, "m7") {
            Ok(a) => {
                detail.push_str(&format!("; alpha_7 = {a:.10}"));
                if (a - ALPHA7).abs() > ALPHA_TOL {
                    failures.push(format!("alpha_7 = {a:.10}, expected {ALPHA7} within {ALPHA_TOL}"));
                }
            }
            Err(e) => failures.push(e),
        },
    }
    let o = outcome(failures, format!("{detail} in {:.1?}", started.elapsed()));
    (Some(o.passed), o.detail)
}

fn criterion8(config: &Config) -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=6 {
        let rep = defining(PermGroup::symmetric(n));
        let irreps = IrrepList::for_group(rep.group().clone(), config).unwrap();
        let mult = irreps.multiplicities(&rep, config).unwrap();
        let mut constituents: Vec<(usize, usize)> =
            (0..mult.len()).filter(|&i| mult[i] > 0).map(|i| (irreps.degrees()[i], mult[i])).collect();
        constituents.sort();
        if constituents != vec![(1, 1), (n - 1, 1)] {
            failures.push(format!("S{n}: constituents {constituents:?}"));
        }
        match irreducible_decomposition(&rep, &irreps, &DecomposeOptions::default(), config) {
            Ok(d) => {
                let mut dims = d.dimensions();
                dims.sort();
                if dims != vec![1, n - 1] {
                    failures.push(format!("S{n}: subspace dimensions {dims:?}"));
                }
            }
            Err(e) => failures.push(format!("S{n}: {e}")),
        }
    }
    outcome(failures, "defining representations of S3..S6".into())
}

fn report(n: u32, o: &Outcome) {
    println!("criterion {n}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // listing for `cargo test -- --list`
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let extended = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let config = Config::default();
    let solver = solver_command();
    let mut all = true;

    let started = Instant::now();
    let cases = build_cases(&config);
    let results = [
        (1, criterion1(&cases, &config, started)),
        (2, criterion2(&config)),
        (3, criterion3(&cases, Instant::now())),
        (4, criterion4(&cases)),
        (5, criterion5(&config)),
        (6, criterion6(solver.as_deref())),
    ];
    for (n, o) in &results {
        report(*n, o);
        all &= o.passed;
    }
    match criterion7(&config, extended, solver.as_deref()) {
        (None, detail) => println!("criterion 7: NOT RUN (extended; {detail})"),
        (Some(passed), detail) => {
            report(7, &Outcome { passed, detail });
            all &= passed;
        }
    }
    let o = criterion8(&config);
    report(8, &o);
    all &= o.passed;
    if !all {
        std::process::exit(1);
    }
}
