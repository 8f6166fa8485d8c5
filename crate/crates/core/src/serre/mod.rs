//! Projection-based decomposition: canonical summands from characters, then
//! irreducible subspaces from the `p_{αβ}` maps of one irrep at a time.

use crate::centralizer::{orbital_centralizer_basis, CentralizerBasis};
use crate::config::{Config, ENTRY_BYTES_ESTIMATE};
use crate::cyclo::Rational;
use crate::error::{Error, Result};
use crate::irreps::IrrepList;
use crate::linalg::{Matrix, Subspace};
use crate::rep::Representation;
use crate::sum::{class_sum_projection, projection_naive, sum_chain, SumStats, SumStrategy};

#[derive(Clone, Debug, Default)]
pub struct DecomposeOptions {
    /// Plain character-formula evaluation: every irrep is projected by naive
    /// summation, no character filter and no shortcuts.
    pub no_optimisations: bool,
    /// Forces the strategy for `p_i` (`Chain` means the Kronecker block sum).
    pub strategy: Option<SumStrategy>,
    /// Orthonormal, *-closed centraliser basis for the class-sum trick.
    pub centralizer: Option<CentralizerBasis>,
}

#[derive(Clone, Debug)]
pub struct CanonicalSummand {
    pub irrep: usize,
    pub space: Subspace,
    pub multiplicity: usize,
    /// `None` when the summand was the whole space and nothing was summed.
    pub strategy: Option<SumStrategy>,
    /// Blocks already computed on the full space by the Kronecker path.
    pub blocks: Option<ProjectionBlocks>,
}

#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    pub summands: Vec<CanonicalSummand>,
    pub multiplicities: Vec<usize>,
    pub stats: SumStats,
}

/// `p_{αβ}` for `α, β < degree`, stored row-major in `(α, β)`.
#[derive(Clone, Debug)]
pub struct ProjectionBlocks {
    pub degree: usize,
    pub blocks: Vec<Matrix>,
}

impl ProjectionBlocks {
    pub fn get(&self, alpha: usize, beta: usize) -> &Matrix {
        &self.blocks[alpha * self.degree + beta]
    }

    /// `Σ_α p_{αα}`.
    pub fn trace_sum(&self) -> Matrix {
        let mut acc = self.get(0, 0).clone();
        for a in 1..self.degree {
            acc.add_assign(self.get(a, a));
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibleDecomposition {
    /// Per irrep index with nonzero multiplicity, its irreducible subspaces.
    pub collected: Vec<(usize, Vec<Subspace>)>,
    pub multiplicities: Vec<usize>,
    pub stats: SumStats,
    pub strategies: Vec<(usize, Option<SumStrategy>)>,
}

impl IrreducibleDecomposition {
    /// `(irrep index, subspace)` in (irrep, copy) order.
    pub fn subspaces(&self) -> impl Iterator<Item = (usize, &Subspace)> {
        self.collected.iter().flat_map(|(i, spaces)| spaces.iter().map(move |s| (*i, s)))
    }

    /// All subspace bases side by side.
    pub fn basis_matrix(&self) -> Result<Matrix> {
        let parts: Vec<Matrix> = self.subspaces().map(|(_, s)| s.basis().clone()).collect();
        Matrix::hcat(&parts)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.subspaces().map(|(_, s)| s.dim()).collect()
    }
}

fn check_group(rep: &Representation, irreps: &IrrepList) -> Result<()> {
    if rep.group().perm_group() != irreps.group().perm_group() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

fn kronecker_bytes(rep: &Representation, irrep: &Representation) -> u64 {
    let n = (rep.degree() * irrep.degree()) as u64;
    n * n * ENTRY_BYTES_ESTIMATE
}

/// `p_{αβ} = (d/|G|) Σ_t r_{βα}(t⁻¹) ρ(t)` read off as the `(α, β)` block of
/// `(d/|G|) Σ_t (r* ⊗ ρ)(t)`, the sum taken along the stabiliser chain.
pub fn projections_pab(rep: &Representation, irrep: &Representation, config: &Config, stats: &mut SumStats) -> Result<ProjectionBlocks> {
    let needed = kronecker_bytes(rep, irrep);
    if needed > config.memory_budget_bytes {
        return Err(Error::MemoryBudget { needed, budget: config.memory_budget_bytes });
    }
    let tensor = irrep.dual().tensor(rep)?;
    let total = sum_chain(&tensor, stats);
    Ok(split_blocks(&total, irrep.degree(), rep.degree(), rep.group().order()))
}

fn split_blocks(total: &Matrix, d: usize, n: usize, order: u128) -> ProjectionBlocks {
    let scale = Rational::from_bigints((d as u64).into(), (order as u64).into());
    let blocks = (0..d * d).map(|k| total.submatrix((k / d) * n, (k % d) * n, n, n).scale_rational(&scale)).collect();
    ProjectionBlocks { degree: d, blocks }
}

/// The same blocks by enumerating the group, one `n × n` accumulator per block.
pub fn projections_pab_naive(
    rep: &Representation,
    irrep: &Representation,
    config: &Config,
    stats: &mut SumStats,
) -> Result<ProjectionBlocks> {
    let (n, d) = (rep.degree(), irrep.degree());
    let mut acc = vec![Matrix::zeros(n, n); d * d];
    for g in rep.group().elements(config.enumeration_bound)? {
        let big = rep.image(&g)?;
        let small = irrep.image(&g.inverse())?;
        stats.images += 2;
        for a in 0..d {
            for b in 0..d {
                let w = &small[(b, a)];
                if !w.is_zero() {
                    stats.ring_ops += (n * n) as u64;
                    acc[a * d + b].add_scaled_assign(w, &big);
                }
            }
        }
    }
    let scale = Rational::from_bigints((d as u64).into(), (rep.group().order() as u64).into());
    Ok(ProjectionBlocks { degree: d, blocks: acc.into_iter().map(|m| m.scale_rational(&scale)).collect() })
}

fn available_basis(rep: &Representation, options: &DecomposeOptions) -> Option<CentralizerBasis> {
    options.centralizer.clone().or_else(|| if rep.is_permutation() { orbital_centralizer_basis(rep).ok() } else { None })
}

/// `p_i` through the cascade: Kronecker block sum if it fits the memory
/// budget, class sums if a centraliser basis is usable, else naive.
fn projection(
    rep: &Representation,
    irreps: &IrrepList,
    i: usize,
    options: &DecomposeOptions,
    basis: &mut Option<Option<CentralizerBasis>>,
    config: &Config,
    stats: &mut SumStats,
) -> Result<(Matrix, SumStrategy, Option<ProjectionBlocks>)> {
    let irrep = &irreps.irreps()[i];
    let chi = &irreps.characters()[i];
    let d = irrep.degree() as u64;
    let bound = config.enumeration_bound;
    if options.no_optimisations {
        return Ok((projection_naive(rep, chi, d, bound, stats)?, SumStrategy::Naive, None));
    }
    let fits = kronecker_bytes(rep, irrep) <= config.memory_budget_bytes;
    let chosen = match options.strategy {
        Some(s) => s,
        None if fits => SumStrategy::Chain,
        None => {
            let usable = basis.get_or_insert_with(|| available_basis(rep, options)).is_some();
            if usable && rep.is_unitary() {
                SumStrategy::ClassSum
            } else {
                SumStrategy::Naive
            }
        }
    };
    match chosen {
        SumStrategy::Chain => {
            let blocks = projections_pab(rep, irrep, config, stats)?;
            Ok((blocks.trace_sum(), SumStrategy::Chain, Some(blocks)))
        }
        SumStrategy::ClassSum => {
            let b = basis
                .get_or_insert_with(|| available_basis(rep, options))
                .as_ref()
                .ok_or_else(|| Error::BadBasis("no centraliser basis available for the class-sum strategy".into()))?;
            Ok((class_sum_projection(rep, &b.elements, chi, d, bound, stats)?, SumStrategy::ClassSum, None))
        }
        SumStrategy::Naive | SumStrategy::Orbit => Ok((projection_naive(rep, chi, d, bound, stats)?, SumStrategy::Naive, None)),
    }
}

/// Splits the space into isotypic summands `V_i = im p_i`.
pub fn canonical_decomposition(
    rep: &Representation,
    irreps: &IrrepList,
    options: &DecomposeOptions,
    config: &Config,
) -> Result<CanonicalDecomposition> {
    check_group(rep, irreps)?;
    let n = rep.degree();
    let multiplicities = irreps.multiplicities(rep, config)?;
    let degrees = irreps.degrees();
    let mut stats = SumStats::default();
    let present: Vec<usize> = (0..irreps.len()).filter(|&i| multiplicities[i] > 0).collect();
    if !options.no_optimisations && present.len() == 1 {
        let i = present[0];
        let summand =
            CanonicalSummand { irrep: i, space: Subspace::full(n), multiplicity: multiplicities[i], strategy: None, blocks: None };
        return Ok(CanonicalDecomposition { summands: vec![summand], multiplicities, stats });
    }
    let candidates: Vec<usize> = if options.no_optimisations { (0..irreps.len()).collect() } else { present };
    let mut basis = None;
    let mut summands = Vec::new();
    for i in candidates {
        let (p, strategy, blocks) = projection(rep, irreps, i, options, &mut basis, config, &mut stats)?;
        let space = Subspace::span(&p);
        if space.dim() == 0 && multiplicities[i] == 0 {
            continue;
        }
        if space.dim() != multiplicities[i] * degrees[i] {
            return Err(Error::Inconsistent(format!(
                "summand for irrep {i} has dimension {}, expected {}",
                space.dim(),
                multiplicities[i] * degrees[i]
            )));
        }
        summands.push(CanonicalSummand { irrep: i, space, multiplicity: multiplicities[i], strategy: Some(strategy), blocks });
    }
    let total: usize = summands.iter().map(|s| s.space.dim()).sum();
    if total != n {
        return Err(Error::Inconsistent(format!("canonical summands have total dimension {total}, rep has degree {n}")));
    }
    Ok(CanonicalDecomposition { summands, multiplicities, stats })
}

/// Irreducible subspaces: a basis `x_j` of `im p_11` per summand, and
/// `W(x_j) = span{p_α1 x_j}`.
pub fn irreducible_decomposition(
    rep: &Representation,
    irreps: &IrrepList,
    options: &DecomposeOptions,
    config: &Config,
) -> Result<IrreducibleDecomposition> {
    let canonical = canonical_decomposition(rep, irreps, options, config)?;
    let mut stats = canonical.stats;
    let mut collected = Vec::new();
    let mut strategies = Vec::new();
    for summand in &canonical.summands {
        let irrep = &irreps.irreps()[summand.irrep];
        let d = irrep.degree();
        let m = summand.multiplicity;
        strategies.push((summand.irrep, summand.strategy));
        let spaces = if !options.no_optimisations && m == 1 {
            vec![summand.space.clone()]
        } else if !options.no_optimisations && d == 1 {
            // a 1-dimensional irrep acts by scalars on its summand
            let b = summand.space.basis();
            (0..b.cols()).map(|c| Subspace::from_basis(b.select_columns(&[c]))).collect::<Result<Vec<_>>>()?
        } else {
            let (blocks, embed) = if let Some(blocks) = &summand.blocks {
                (blocks.clone(), None)
            } else if options.no_optimisations {
                (projections_pab_naive(rep, irrep, config, &mut stats)?, None)
            } else {
                // work inside the summand: degree m·d instead of n
                let inner = rep.restrict(&summand.space)?;
                let blocks = match projections_pab(&inner, irrep, config, &mut stats) {
                    Err(Error::MemoryBudget { .. }) => projections_pab_naive(&inner, irrep, config, &mut stats)?,
                    r => r?,
                };
                (blocks, Some(summand.space.basis()))
            };
            split_summand(&blocks, embed, m, summand.irrep)?
        };
        collected.push((summand.irrep, spaces));
    }
    Ok(IrreducibleDecomposition { collected, multiplicities: canonical.multiplicities, stats, strategies })
}

fn split_summand(blocks: &ProjectionBlocks, embed: Option<&Matrix>, m: usize, irrep: usize) -> Result<Vec<Subspace>> {
    let p11 = blocks.get(0, 0);
    let xs = p11.row_reduce().column_space.into_basis();
    if xs.cols() != m {
        return Err(Error::Inconsistent(format!("rank of p_11 for irrep {irrep} is {}, expected multiplicity {m}", xs.cols())));
    }
    (0..m)
        .map(|j| {
            let x = xs.select_columns(&[j]);
            let cols: Vec<Matrix> = (0..blocks.degree).map(|a| blocks.get(a, 0).mul(&x)).collect();
            let w = Matrix::hcat(&cols)?;
            let w = match embed {
                Some(e) => e.mul(&w),
                None => w,
            };
            Subspace::from_basis(w)
        })
        .collect()
}

/// `Σ_α p_αα` must reproduce `p_i`; exposed for oracle checks.
pub fn projection_from_character(rep: &Representation, irreps: &IrrepList, i: usize, config: &Config) -> Result<Matrix> {
    let mut stats = SumStats::default();
    projection_naive(rep, &irreps.characters()[i], irreps.irreps()[i].degree() as u64, config.enumeration_bound, &mut stats)
}
