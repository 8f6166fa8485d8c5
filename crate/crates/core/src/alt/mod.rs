//! Decomposition through a block-diagonal model `τ` with the same character
//! and an intertwiner `A` with `A⁻¹ τ(g) A = ρ(g)`, obtained by averaging a
//! random matrix over the group.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Config, ENTRY_BYTES_ESTIMATE};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::irreps::IrrepList;
use crate::linalg::{Matrix, Subspace};
use crate::rep::{Character, Representation};
use crate::serre::{canonical_decomposition, DecomposeOptions, IrreducibleDecomposition};
use crate::sum::{orbit_sum, sum_chain, SumStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayoutEntry {
    pub irrep: usize,
    pub multiplicity: usize,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct BlockDiagonalModel {
    pub tau: Representation,
    pub layout: Vec<LayoutEntry>,
}

impl BlockDiagonalModel {
    /// Offsets of the `(irrep, copy)` blocks along the diagonal.
    pub fn block_offsets(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut at = 0;
        for e in &self.layout {
            for _ in 0..e.multiplicity {
                out.push((e.irrep, at, e.degree));
                at += e.degree;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub a: Matrix,
    pub a_inv: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntertwinerStrategy {
    /// `Σ_g (τ ⊗ ρ*)(g)` along the stabiliser chain, applied to `vec(B)`.
    Kronecker,
    /// `Σ_g τ(g) B ρ(g⁻¹)` over every element.
    Naive,
    /// Sum of the orbit of `B` under `B ↦ τ(g) B ρ(g⁻¹)`.
    Orbit,
    /// The chain sum applied level by level to `B`, without Kronecker products.
    Chain,
}

impl IntertwinerStrategy {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "kronecker" => Ok(Self::Kronecker),
            "naive" => Ok(Self::Naive),
            "orbit" => Ok(Self::Orbit),
            "chain" => Ok(Self::Chain),
            _ => Err(Error::InvalidInput(format!("unknown strategy {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Kronecker => "kronecker",
            Self::Naive => "naive",
            Self::Orbit => "orbit",
            Self::Chain => "chain",
        }
    }
}

/// `⊕_i m_i ρ_i` ordered by irrep index.
pub fn block_diag_rep(rep: &Representation, irreps: &IrrepList, config: &Config) -> Result<BlockDiagonalModel> {
    let mult = irreps.multiplicities(rep, config)?;
    model_from_multiplicities(irreps, &mult)
}

pub fn model_from_multiplicities(irreps: &IrrepList, mult: &[usize]) -> Result<BlockDiagonalModel> {
    let mut parts = Vec::new();
    let mut layout = Vec::new();
    for (i, &m) in mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let irrep = &irreps.irreps()[i];
        layout.push(LayoutEntry { irrep: i, multiplicity: m, degree: irrep.degree() });
        parts.extend(std::iter::repeat_n(irrep.clone(), m));
    }
    let tau = Representation::direct_sum(&parts)?;
    Ok(BlockDiagonalModel { tau, layout })
}

/// Kronecker strategy unless its `n⁴` matrix would exceed the memory budget,
/// in which case the level-by-level chain sum is used.
pub fn default_strategy(degree: usize, config: &Config) -> IntertwinerStrategy {
    let n2 = (degree * degree) as u64;
    if n2 * n2 * ENTRY_BYTES_ESTIMATE <= config.memory_budget_bytes {
        IntertwinerStrategy::Kronecker
    } else {
        IntertwinerStrategy::Chain
    }
}

/// `vec(X)` row-major as a column.
fn vec_row(x: &Matrix) -> Matrix {
    Matrix::from_fn(x.rows() * x.cols(), 1, |r, _| x.entries()[r].clone())
}

fn unvec_row(v: &Matrix, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |i, j| v[(i * cols + j, 0)].clone())
}

/// Averages `B` into `Σ τ(g) B ρ(g⁻¹)` (or a multiple of it).
struct Averager<'a> {
    rho: &'a Representation,
    tau: &'a Representation,
    strategy: IntertwinerStrategy,
    kronecker_sum: Option<Matrix>,
}

impl Averager<'_> {
    fn apply(&mut self, b: &Matrix, config: &Config, stats: &mut SumStats) -> Result<Matrix> {
        let n = b.rows();
        match self.strategy {
            IntertwinerStrategy::Kronecker => {
                if self.kronecker_sum.is_none() {
                    let n2 = (n * n) as u64;
                    let needed = n2 * n2 * ENTRY_BYTES_ESTIMATE;
                    if needed > config.memory_budget_bytes {
                        return Err(Error::MemoryBudget { needed, budget: config.memory_budget_bytes });
                    }
                    let alpha = self.tau.tensor(&self.rho.dual())?;
                    self.kronecker_sum = Some(sum_chain(&alpha, stats));
                }
                let p = self.kronecker_sum.as_ref().unwrap();
                stats.ring_ops += (n * n * n * n) as u64;
                Ok(unvec_row(&p.mul(&vec_row(b)), n, n))
            }
            IntertwinerStrategy::Naive => {
                let mut acc = Matrix::zeros(n, n);
                for g in self.rho.group().elements(config.enumeration_bound)? {
                    let t = self.tau.image(&g)?;
                    let r = self.rho.image(&g.inverse())?;
                    stats.images += 2;
                    stats.ring_ops += 2 * (n * n * n) as u64;
                    acc.add_assign(&t.mul(b).mul(&r));
                }
                Ok(acc)
            }
            IntertwinerStrategy::Orbit => {
                let pairs: Vec<(Matrix, Matrix)> = self
                    .tau
                    .generator_images()
                    .iter()
                    .zip(self.rho.dual().generator_images())
                    .map(|(t, r)| (t.clone(), r.clone()))
                    .collect();
                orbit_sum(&pairs, b, config.memory_budget_bytes, stats)
            }
            IntertwinerStrategy::Chain => {
                // with g = u_k ⋯ u_1 the map is S_k ∘ ⋯ ∘ S_1, S_l(X) = Σ_u τ(u) X ρ(u⁻¹)
                let mut x = b.clone();
                let levels = self.rho.group().chain().levels().len();
                for l in 0..levels {
                    let size = self.rho.group().chain().levels()[l].len();
                    let mut acc = Matrix::zeros(n, n);
                    for k in 0..size {
                        let (t, _) = self.tau.transversal_pair(l, k);
                        let (_, r_inv) = self.rho.transversal_pair(l, k);
                        stats.images += 2;
                        stats.ring_ops += 2 * (n * n * n) as u64;
                        acc.add_assign(&t.mul(&x).mul(&r_inv));
                    }
                    x = acc;
                }
                Ok(x)
            }
        }
    }
}

/// Checks `τ(g) A = A ρ(g)` on every generator.
pub fn satisfies_intertwining(rho: &Representation, tau: &Representation, a: &Matrix) -> bool {
    rho.generator_images().iter().zip(tau.generator_images()).all(|(r, t)| t.mul(a) == a.mul(r))
}

/// An invertible `A` with `A⁻¹ τ(g) A = ρ(g)`, from averaging seeded random
/// integer matrices with entries in `[-10, 10]`; at most `retry_cap` tries.
pub fn intertwiner(
    rho: &Representation,
    tau: &Representation,
    strategy: IntertwinerStrategy,
    seed: u64,
    config: &Config,
    stats: &mut SumStats,
) -> Result<Intertwiner> {
    if rho.degree() != tau.degree() {
        return Err(Error::Shape(format!("degrees {} and {} differ", rho.degree(), tau.degree())));
    }
    if rho.group().perm_group() != tau.group().perm_group() {
        return Err(Error::GroupMismatch);
    }
    let bound = config.enumeration_bound;
    if Character::of(rho, bound)? != Character::of(tau, bound)? {
        return Err(Error::Inconsistent("representations have different characters".into()));
    }
    let n = rho.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut averager = Averager { rho, tau, strategy, kronecker_sum: None };
    for _ in 0..config.retry_cap.max(1) {
        let b = Matrix::from_fn(n, n, |_, _| Cyclotomic::from_int(rng.gen_range(-10..=10)));
        let a = averager.apply(&b, config, stats)?;
        let Ok(a_inv) = a.invert() else { continue };
        if satisfies_intertwining(rho, tau, &a) {
            return Ok(Intertwiner { a, a_inv });
        }
    }
    Err(Error::RetriesExhausted(config.retry_cap))
}

#[derive(Clone, Debug)]
pub struct AlternateDecomposition {
    pub decomposition: IrreducibleDecomposition,
    pub intertwiner: Intertwiner,
    pub model: BlockDiagonalModel,
    pub strategy: IntertwinerStrategy,
}

/// Canonical summands first, then one intertwiner per summand on the
/// restricted representation; the global `A` is assembled from the pieces.
pub fn decompose_alternate(
    rep: &Representation,
    irreps: &IrrepList,
    options: &DecomposeOptions,
    strategy: Option<IntertwinerStrategy>,
    seed: u64,
    config: &Config,
) -> Result<AlternateDecomposition> {
    let canonical = canonical_decomposition(rep, irreps, options, config)?;
    let mut stats = canonical.stats;
    let n = rep.degree();
    let model = model_from_multiplicities(irreps, &canonical.multiplicities)?;
    let mut collected = Vec::new();
    let mut a_blocks = Vec::new();
    let mut a_inv_blocks = Vec::new();
    let mut summand_bases = Vec::new();
    let mut used = strategy.unwrap_or(IntertwinerStrategy::Kronecker);
    for summand in &canonical.summands {
        let whole = summand.space.dim() == n;
        let inner = if whole { rep.clone() } else { rep.restrict(&summand.space)? };
        let single = model_from_multiplicities(irreps, &unit_vector(irreps.len(), summand.irrep, summand.multiplicity))?;
        let chosen = strategy.unwrap_or_else(|| default_strategy(inner.degree(), config));
        used = chosen;
        let local = intertwiner(&inner, &single.tau, chosen, seed, config, &mut stats)?;
        // columns of A⁻¹ in block j span the j-th copy, in summand coordinates
        let d = irreps.irreps()[summand.irrep].degree();
        let spaces = (0..summand.multiplicity)
            .map(|j| {
                let cols: Vec<usize> = (j * d..(j + 1) * d).collect();
                let local_basis = local.a_inv.select_columns(&cols);
                Subspace::from_basis(if whole { local_basis } else { summand.space.basis().mul(&local_basis) })
            })
            .collect::<Result<Vec<_>>>()?;
        collected.push((summand.irrep, spaces));
        a_blocks.push(local.a);
        a_inv_blocks.push(local.a_inv);
        summand_bases.push(summand.space.basis().clone());
    }
    // Q = [V_1 | V_2 | …] carries ρ to ⊕ inner_i, so A = (⊕ A_i) Q⁻¹ and A⁻¹ = Q (⊕ A_i⁻¹)
    let q = Matrix::hcat(&summand_bases)?;
    let q_inv = if q.is_identity() { q.clone() } else { q.invert()? };
    let a = Matrix::block_diag(&a_blocks).mul(&q_inv);
    let a_inv = q.mul(&Matrix::block_diag(&a_inv_blocks));
    if !satisfies_intertwining(rep, &model.tau, &a) {
        return Err(Error::Inconsistent("assembled intertwiner fails verification".into()));
    }
    let decomposition = IrreducibleDecomposition {
        collected,
        multiplicities: canonical.multiplicities,
        stats,
        strategies: canonical.summands.iter().map(|s| (s.irrep, s.strategy)).collect(),
    };
    Ok(AlternateDecomposition { decomposition, intertwiner: Intertwiner { a, a_inv }, model, strategy: used })
}

fn unit_vector(len: usize, i: usize, value: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    v[i] = value;
    v
}

#[cfg(test)]
mod tests;
