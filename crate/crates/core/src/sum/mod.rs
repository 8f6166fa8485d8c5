//! Summing a representation (or a class-function weighted version of it)
//! over its group.
//!
//! Four strategies: naive enumeration, a product of transversal sums along
//! the stabiliser chain, coordinates in an orthonormal centraliser basis
//! from one trace per class, and the orbit of a seed matrix under a pair
//! action.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::config::{Config, ENTRY_BYTES_ESTIMATE};
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::{trace_inner_product, Matrix};
use crate::perm::Permutation;
use crate::rep::{Character, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumStrategy {
    Naive,
    Chain,
    ClassSum,
    Orbit,
}

impl SumStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SumStrategy::Naive => "naive",
            SumStrategy::Chain => "chain",
            SumStrategy::ClassSum => "class_sum",
            SumStrategy::Orbit => "orbit",
        }
    }
}

/// Instrumentation: group-element images formed and entry-level ring operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SumStats {
    pub images: u64,
    pub ring_ops: u64,
}

impl SumStats {
    pub fn absorb(&mut self, other: SumStats) {
        self.images += other.images;
        self.ring_ops += other.ring_ops;
    }

    fn mul(&mut self, a: &Matrix, b: &Matrix) -> Matrix {
        self.ring_ops += (a.rows() * a.cols() * b.cols()) as u64;
        a.mul(b)
    }

    fn add(&mut self, acc: &mut Matrix, b: &Matrix) {
        self.ring_ops += (b.rows() * b.cols()) as u64;
        acc.add_assign(b);
    }
}

/// Row `i` of the result counts `g` with `g(i) = j`; one pass per element.
fn accumulate_perm(counts: &mut [i64], degree: usize, p: &Permutation, weight: i64) {
    for i in 0..degree {
        counts[i * degree + p.apply(i)] += weight;
    }
}

fn counts_to_matrix(counts: &[i64], degree: usize) -> Matrix {
    Matrix::from_fn(degree, degree, |i, j| Cyclotomic::from_int(counts[i * degree + j]))
}

/// Elements of the group in breadth-first order from the identity, each with
/// its image, built by one multiplication per element.
fn enumerate_images(rep: &Representation, bound: u64, stats: &mut SumStats) -> Result<Vec<(Permutation, Matrix)>> {
    let group = rep.group();
    let order = group.order();
    if order > bound as u128 {
        return Err(Error::GroupTooLarge { order, bound });
    }
    let gens = group.generators();
    let images = rep.generator_images();
    let id = Permutation::identity(group.degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![(id, Matrix::identity(rep.degree()))];
    stats.images += 1;
    let mut head = 0;
    while head < out.len() {
        for (g, m) in gens.iter().zip(images) {
            let next = out[head].0.mul(g);
            if seen.insert(next.clone()) {
                let img = stats.mul(&out[head].1, m);
                stats.images += 1;
                out.push((next, img));
            }
        }
        head += 1;
    }
    Ok(out)
}

/// `Σ_g ρ(g)` by enumerating every element.
pub fn sum_naive(rep: &Representation, bound: u64, stats: &mut SumStats) -> Result<Matrix> {
    if rep.is_permutation() {
        let elements = rep.group().elements(bound)?;
        let d = rep.degree();
        let mut counts = vec![0i64; d * d];
        for g in &elements {
            let p = rep.image_permutation(g)?.expect("permutation representation");
            accumulate_perm(&mut counts, d, &p, 1);
            stats.images += 1;
            stats.ring_ops += d as u64;
        }
        return Ok(counts_to_matrix(&counts, d));
    }
    let mut acc = Matrix::zeros(rep.degree(), rep.degree());
    for (_, m) in enumerate_images(rep, bound, stats)? {
        stats.add(&mut acc, &m);
    }
    Ok(acc)
}

/// `Σ_g c(g) ρ(g)` for a class function `c` given by its class values.
pub fn sum_naive_weighted(rep: &Representation, weights: &Character, bound: u64, stats: &mut SumStats) -> Result<Matrix> {
    let classes = rep.group().classes(bound)?;
    if weights.values.len() != classes.len() {
        return Err(Error::Shape("class function length differs from class count".into()));
    }
    let mut acc = Matrix::zeros(rep.degree(), rep.degree());
    for (g, m) in enumerate_images(rep, bound, stats)? {
        let w = &weights.values[classes.class_of(&g).expect("element lies in a class")];
        if w.is_zero() {
            continue;
        }
        stats.ring_ops += (m.rows() * m.cols()) as u64;
        acc.add_scaled_assign(w, &m);
    }
    Ok(acc)
}

/// `Σ_g ρ(g)` as `S_k ⋯ S_1`, where `S_l` sums the images of the level-`l`
/// transversal of the stabiliser chain.
pub fn sum_chain(rep: &Representation, stats: &mut SumStats) -> Matrix {
    let chain = rep.group().chain();
    let d = rep.degree();
    let sums: Vec<Matrix> = if let Some(perms) = rep.generator_permutations() {
        let id = Permutation::identity(d);
        chain
            .levels()
            .iter()
            .map(|l| {
                let values =
                    chain.evaluate_nodes(l.nodes(), &id, &mut |i| (perms[i].clone(), perms[i].inverse()), &mut |a, b| a.mul(b));
                let mut counts = vec![0i64; d * d];
                for (u, _) in &values {
                    accumulate_perm(&mut counts, d, u, 1);
                    stats.images += 1;
                    stats.ring_ops += d as u64;
                }
                counts_to_matrix(&counts, d)
            })
            .collect()
    } else {
        let images = rep.generator_images();
        let id = Matrix::identity(d);
        let mut ops = 0u64;
        let mut generator_cache: Vec<Option<(Matrix, Matrix)>> = vec![None; images.len()];
        let sums = chain
            .levels()
            .iter()
            .map(|l| {
                let values = chain.evaluate_nodes(
                    l.nodes(),
                    &id,
                    &mut |i| generator_cache[i].get_or_insert_with(|| (images[i].clone(), rep.generator_inverse(i))).clone(),
                    &mut |a, b| {
                        ops += (d * d * d) as u64;
                        a.mul(b)
                    },
                );
                let mut acc = Matrix::zeros(d, d);
                for (u, _) in &values {
                    ops += (d * d) as u64;
                    acc.add_assign(u);
                }
                stats.images += values.len() as u64;
                acc
            })
            .collect();
        stats.images += generator_cache.iter().flatten().count() as u64;
        stats.ring_ops += ops;
        sums
    };
    let mut acc: Option<Matrix> = None;
    for s in sums.iter().rev() {
        acc = Some(match acc {
            None => s.clone(),
            Some(a) => stats.mul(&a, s),
        });
    }
    acc.unwrap_or_else(|| Matrix::identity(d))
}

/// Checks `⟨B_i, B_j⟩ = δ_ij` for the trace inner product.
pub fn check_orthonormal(basis: &[Matrix]) -> Result<()> {
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let ip = trace_inner_product(a, b)?;
            let ok = if i == j { ip.is_one() } else { ip.is_zero() };
            if !ok {
                return Err(Error::BadBasis(format!("basis not orthonormal at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Checks that `B_j*` lies in the span for every `j` (basis assumed orthonormal).
pub fn check_star_closed(basis: &[Matrix]) -> Result<()> {
    for (j, b) in basis.iter().enumerate() {
        let star = b.adjoint();
        let mut rebuilt = Matrix::zeros(star.rows(), star.cols());
        for c in basis {
            let coeff = trace_inner_product(&star, c)?;
            if !coeff.is_zero() {
                rebuilt.add_scaled_assign(&coeff, c);
            }
        }
        if rebuilt != star {
            return Err(Error::BadBasis(format!("adjoint of basis element {j} is not in the span")));
        }
    }
    Ok(())
}

/// `p = (deg/|G|) Σ_g conj(χ(g)) ρ(g)` from one trace per (class, basis
/// element): `Σ_{g ∈ C} ρ(g) = Σ_j |C| Tr(ρ(t_C) B_j*) B_j` for an
/// orthonormal, *-closed basis `B_j` of the centraliser.
pub fn class_sum_projection(
    rep: &Representation,
    basis: &[Matrix],
    chi: &Character,
    degree: u64,
    bound: u64,
    stats: &mut SumStats,
) -> Result<Matrix> {
    check_orthonormal(basis)?;
    check_star_closed(basis)?;
    let classes = rep.group().classes(bound)?;
    if chi.values.len() != classes.len() {
        return Err(Error::Shape("character length differs from class count".into()));
    }
    let d = rep.degree();
    let mut coords = vec![Cyclotomic::zero(); basis.len()];
    for (c, t) in classes.representatives.iter().enumerate() {
        let weight = chi.values[c].conj();
        if weight.is_zero() {
            continue;
        }
        let weight = weight.scale(&Rational::from_int(classes.sizes[c] as i64));
        let image = rep.image(t)?;
        stats.images += 1;
        for (j, b) in basis.iter().enumerate() {
            stats.ring_ops += (d * d) as u64;
            let tr = trace_inner_product(&image, b)?;
            if !tr.is_zero() {
                coords[j] = &coords[j] + &(&tr * &weight);
            }
        }
    }
    let mut out = Matrix::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        if !coords[j].is_zero() {
            stats.ring_ops += (d * d) as u64;
            out.add_scaled_assign(&coords[j], b);
        }
    }
    let scale = Rational::from_bigints(degree.into(), classes.group_order().into());
    Ok(out.scale_rational(&scale))
}

/// The same projection evaluated term by term over every element.
pub fn projection_naive(rep: &Representation, chi: &Character, degree: u64, bound: u64, stats: &mut SumStats) -> Result<Matrix> {
    let s = sum_naive_weighted(rep, &chi.conj(), bound, stats)?;
    let order = rep.group().order();
    let scale = Rational::from_bigints(degree.into(), order.into());
    Ok(s.scale_rational(&scale))
}

/// Canonical key for a matrix: entries in their minimal fields.
fn canonical_key(m: &Matrix) -> Vec<(u32, Vec<Rational>)> {
    m.entries()
        .iter()
        .map(|x| {
            let r = x.clone().reduced();
            (r.order(), r.coeffs().to_vec())
        })
        .collect()
}

/// Sum of the orbit of `seed` under `X ↦ τ(g) X ρ*(g)ᵀ`, given the pairs
/// `(τ(g), ρ*(g))` for the generators. The result is fixed by each pair.
pub fn orbit_sum(pairs: &[(Matrix, Matrix)], seed: &Matrix, budget_bytes: u64, stats: &mut SumStats) -> Result<Matrix> {
    for (t, r) in pairs {
        if t.rows() != seed.rows() || r.rows() != seed.cols() || !t.is_square() || !r.is_square() {
            return Err(Error::Shape("pair action does not match the seed".into()));
        }
    }
    let right: Vec<Matrix> = pairs.iter().map(|(_, r)| r.transpose()).collect();
    let per_matrix = (seed.rows() * seed.cols()) as u64 * ENTRY_BYTES_ESTIMATE;
    let mut seen: HashMap<Vec<(u32, Vec<Rational>)>, ()> = HashMap::new();
    seen.insert(canonical_key(seed), ());
    let mut queue = VecDeque::from([seed.clone()]);
    let mut acc = seed.clone();
    stats.images += 1;
    while let Some(x) = queue.pop_front() {
        for ((t, _), r) in pairs.iter().zip(&right) {
            let tx = stats.mul(t, &x);
            let y = stats.mul(&tx, r);
            let key = canonical_key(&y);
            if seen.contains_key(&key) {
                continue;
            }
            let needed = (seen.len() as u64 + 1) * per_matrix;
            if needed > budget_bytes {
                return Err(Error::MemoryBudget { needed, budget: budget_bytes });
            }
            seen.insert(key, ());
            stats.add(&mut acc, &y);
            stats.images += 1;
            queue.push_back(y);
        }
    }
    Ok(acc)
}

/// Strategy for `Σ_g ρ(g)`: the chain when the group is much larger than
/// its transversals, the class-sum trick when a unitary rep comes with a
/// usable centraliser basis, naive otherwise. The ratio is a tunable of ours.
pub fn select_strategy(rep: &Representation, have_star_closed_basis: bool, config: &Config) -> SumStrategy {
    let transversals = rep.group().transversal_total() as u128;
    if rep.group().order() > config.chain_ratio as u128 * transversals {
        SumStrategy::Chain
    } else if have_star_closed_basis && rep.is_unitary() {
        SumStrategy::ClassSum
    } else {
        SumStrategy::Naive
    }
}
