//! Seeded random test representations with known decompositions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Representation;
use crate::config::Config;
use crate::cyclo::Cyclotomic;
use crate::error::Result;
use crate::irreps::{Family, IrrepList};
use crate::linalg::Matrix;

/// Knobs for [`random_rep`].
#[derive(Clone, Debug)]
pub struct RandomRepConfig {
    pub max_degree: usize,
    pub max_distinct: usize,
    /// Group pool; `None` uses the built-in pool.
    pub pool: Option<Vec<Vec<Family>>>,
}

impl Default for RandomRepConfig {
    fn default() -> Self {
        RandomRepConfig { max_degree: 12, max_distinct: 4, pool: None }
    }
}

/// Cyclic `n ≤ 30`, dihedral of order `≤ 30`, `S_n` for `n ≤ 5`, and direct
/// products of two small factors.
pub fn default_pool() -> Vec<Vec<Family>> {
    let mut pool: Vec<Vec<Family>> = Vec::new();
    pool.extend((2..=30).map(|n| vec![Family::Cyclic(n)]));
    pool.extend((3..=15).map(|n| vec![Family::Dihedral(n)]));
    pool.extend((2..=5).map(|n| vec![Family::Symmetric(n)]));
    let small = [
        Family::Cyclic(2),
        Family::Cyclic(3),
        Family::Cyclic(4),
        Family::Cyclic(5),
        Family::Dihedral(3),
        Family::Dihedral(4),
        Family::Symmetric(3),
        Family::Symmetric(4),
    ];
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            if a.order() * b.order() <= 120 {
                pool.push(vec![*a, *b]);
            }
        }
    }
    pool
}

/// A random representation together with its construction data.
#[derive(Clone, Debug)]
pub struct RandomRep {
    pub families: Vec<Family>,
    pub irreps: IrrepList,
    /// Ground-truth multiplicity of each irreducible.
    pub multiplicities: Vec<usize>,
    /// The block-diagonal model before conjugation.
    pub model: Representation,
    pub conjugator: Matrix,
    pub rep: Representation,
}

/// Picks a group from the pool, a few irreducibles with multiplicities,
/// forms their direct sum and conjugates by a random unimodular integer
/// matrix. Deterministic in `seed`.
pub fn random_rep(seed: u64, opts: &RandomRepConfig, config: &Config) -> Result<RandomRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = opts.pool.clone().unwrap_or_else(default_pool);
    let families = pool.choose(&mut rng).expect("non-empty pool").clone();
    let irreps = IrrepList::for_families(&families, config)?;
    let degrees = irreps.degrees();
    let mut multiplicities = vec![0usize; irreps.len()];
    let mut chosen = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(1..=opts.max_distinct.max(1) * 2);
    for _ in 0..target * 4 {
        if chosen.len() >= target {
            break;
        }
        let i = rng.gen_range(0..irreps.len());
        if total + degrees[i] > opts.max_degree {
            continue;
        }
        let distinct = multiplicities.iter().filter(|&&m| m > 0).count();
        if multiplicities[i] == 0 && distinct >= opts.max_distinct {
            continue;
        }
        multiplicities[i] += 1;
        total += degrees[i];
        chosen.push(i);
    }
    if chosen.is_empty() {
        let i = degrees.iter().position(|&d| d <= opts.max_degree).unwrap_or(0);
        multiplicities[i] += 1;
        chosen.push(i);
    }
    let parts: Vec<Representation> = chosen.iter().map(|&i| irreps.irreps()[i].clone()).collect();
    let model = Representation::direct_sum(&parts)?;
    let conjugator = random_unimodular(&mut rng, model.degree());
    let rep = model.conjugate_by(&conjugator)?;
    Ok(RandomRep { families, irreps, multiplicities, model, conjugator, rep })
}

/// `P · L · U` with unit-triangular `L`, `U` (entries in `{-1, 0, 1}`) and a
/// random permutation `P`; integer with integer inverse.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let entry = |rng: &mut dyn rand::RngCore| Cyclotomic::from_int(rng.gen_range(-1..=1));
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = entry(rng);
            u[(j, i)] = entry(rng);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Matrix::permutation(&perm).mul(&l).mul(&u)
}
