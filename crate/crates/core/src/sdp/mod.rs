//! Symmetry reduction of invariant semidefinite programs and the
//! crossing-number instances for complete bipartite graphs.
//!
//! An invariant program `min tr(CX)` over PSD `X` with `tr(A_j X) = b_j` is
//! restricted to the centraliser of the action, spanned by the normalised
//! orbital matrices `B_i = E_i / ‖E_i‖`. The left regular representation
//! `B_k ↦ L_k` of that algebra turns `X ⪰ 0` into `Σ x_i L_i ⪰ 0`.

mod sdpa;
pub mod surd;
#[cfg(test)]
mod tests;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm::{orbitals, Orbitals};
use crate::perm::{PermGroup, Permutation};
use crate::rep::{Group, Representation};

pub use sdpa::{parse_sdpa, parse_solver_output, sdpa_problem, solve_external, write_sdpa, write_sdpa_to, SdpaProblem, SolverResult};
pub use surd::Surd;

/// Largest `m` accepted by [`crossing_instance`] unless the caller opts in.
pub const MAX_CROSSING_M: usize = 7;

#[derive(Clone, Debug)]
pub struct InvariantSDP {
    pub c: Matrix,
    pub constraints: Vec<(Matrix, Rational)>,
    /// Entrywise `X ≥ 0`.
    pub nonneg: bool,
    pub action: PermGroup,
}

#[derive(Clone, Debug)]
pub struct CrossingInstance {
    pub m: usize,
    /// Cycle words, 1-based, each starting with 1.
    pub cycles: Vec<Vec<usize>>,
    pub c: Matrix,
    pub j: Matrix,
    /// Action of the generators of `S_m × S_2` (transposition, long cycle,
    /// inversion) on the cycle list.
    pub generators: Vec<Permutation>,
}

/// A square matrix of exact real surds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurdMatrix {
    pub n: usize,
    pub entries: Vec<Surd>,
}

impl SurdMatrix {
    pub fn zeros(n: usize) -> SurdMatrix {
        SurdMatrix { n, entries: vec![Surd::zero(); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Surd {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Surd) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> SurdMatrix {
        let mut t = SurdMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Surd::to_f64).collect()
    }

    fn add_scaled(&mut self, w: &Surd, other: &SurdMatrix) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + &(w * b);
            }
        }
    }
}

/// Reduced program `min Σ c_i x_i` subject to `Σ x_i L_i ⪰ 0` and the
/// equality rows.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedSDP {
    /// Number of variables.
    pub d: usize,
    /// Number of orbitals, the size of each `L_i`.
    pub dim: usize,
    pub c: Vec<Surd>,
    pub l: Vec<SurdMatrix>,
    pub eq_constraints: Vec<(Vec<Surd>, Rational)>,
    /// `i ↦ i*` on variables.
    pub pairing: Vec<usize>,
    pub merged: bool,
    pub nonneg: bool,
    /// Orbitals making up each variable.
    pub variables: Vec<Vec<usize>>,
    pub orbital_sizes: Vec<usize>,
    pub orbital_representatives: Vec<(usize, usize)>,
}

impl ReducedSDP {
    /// `tr(C X)` for `X = Σ x_i B_i`.
    pub fn objective(&self, x: &[Surd]) -> Surd {
        self.c.iter().zip(x).fold(Surd::zero(), |acc, (c, x)| &acc + &(c * x))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_m(m: usize) -> Result<()> {
    if !(3..=8).contains(&m) {
        return Err(Error::InvalidInput(format!("m = {m} is outside 3..=8")));
    }
    Ok(())
}

/// The `m`-cycles of `S_m` as 1-based words starting with 1, in
/// lexicographic order.
pub fn cycle_set(m: usize) -> Result<Vec<Vec<usize>>> {
    check_m(m)?;
    let mut tail: Vec<usize> = (2..=m).collect();
    let mut out = Vec::new();
    loop {
        let mut w = vec![1];
        w.extend_from_slice(&tail);
        out.push(w);
        if !next_permutation(&mut tail) {
            break;
        }
    }
    Ok(out)
}

/// Rotates a cyclic word so it starts with its smallest entry.
fn normalise(word: &[usize]) -> Vec<usize> {
    let p = (0..word.len()).min_by_key(|&i| word[i]).unwrap();
    let mut w = word[p..].to_vec();
    w.extend_from_slice(&word[..p]);
    w
}

fn inverse_word(word: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = word.to_vec();
    w.reverse();
    normalise(&w)
}

fn word_index(cycles: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    cycles.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
}

/// Shortest-path distances between cycles, where a move swaps two
/// cyclically adjacent entries of the cycle word.
pub fn interchange_distances(m: usize) -> Result<Vec<Vec<u32>>> {
    let cycles = cycle_set(m)?;
    let index = word_index(&cycles);
    let n = cycles.len();
    let neighbours: Vec<Vec<usize>> = cycles
        .iter()
        .map(|w| {
            let mut out: Vec<usize> = (0..m)
                .map(|p| {
                    let mut v = w.clone();
                    v.swap(p, (p + 1) % m);
                    index[&normalise(&v)]
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let mut dist = vec![vec![u32::MAX; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &neighbours[u] {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(dist)
}

/// `C_{σ,τ}` = number of adjacent interchanges taking `σ` to `τ⁻¹`.
pub fn interchange_distance_matrix(m: usize) -> Result<Matrix> {
    let cycles = cycle_set(m)?;
    let index = word_index(&cycles);
    let dist = interchange_distances(m)?;
    let inv: Vec<usize> = cycles.iter().map(|w| index[&inverse_word(w)]).collect();
    let n = cycles.len();
    Ok(Matrix::from_fn(n, n, |s, t| Cyclotomic::from_int(dist[s][inv[t]] as i64)))
}

/// Permutations of the cycle list induced by conjugation with `(1 2)` and
/// `(1 2 … m)` and by inversion.
fn action_generators(m: usize, cycles: &[Vec<usize>]) -> Result<Vec<Permutation>> {
    let index = word_index(cycles);
    let relabel = |f: &dyn Fn(usize) -> usize| -> Result<Permutation> {
        let images = cycles.iter().map(|w| index[&normalise(&w.iter().map(|&a| f(a)).collect::<Vec<_>>())]).collect();
        Permutation::from_images(images)
    };
    let swap = relabel(&|a| match a {
        1 => 2,
        2 => 1,
        a => a,
    })?;
    let rot = relabel(&|a| a % m + 1)?;
    let inv = Permutation::from_images(cycles.iter().map(|w| index[&inverse_word(w)]).collect())?;
    Ok(vec![swap, rot, inv])
}

/// The α_m program: `min tr(CX)` with `tr(JX) = 1`, `X ⪰ 0` and `X ≥ 0`.
/// Without the entrywise bound the program is unbounded below from `m = 5`
/// on, since `C` is indefinite on the complement of the all-ones vector.
pub fn crossing_instance(m: usize) -> Result<(CrossingInstance, InvariantSDP)> {
    if m > MAX_CROSSING_M {
        return Err(Error::InvalidInput(format!("m = {m} exceeds the cap {MAX_CROSSING_M}")));
    }
    crossing_instance_uncapped(m)
}

pub fn crossing_instance_uncapped(m: usize) -> Result<(CrossingInstance, InvariantSDP)> {
    let cycles = cycle_set(m)?;
    let n = cycles.len();
    let c = interchange_distance_matrix(m)?;
    let j = Matrix::from_fn(n, n, |_, _| Cyclotomic::one());
    let generators = action_generators(m, &cycles)?;
    let action = PermGroup::new(n, generators.clone())?;
    let sdp = InvariantSDP { c: c.clone(), constraints: vec![(j.clone(), Rational::one())], nonneg: true, action };
    check_invariance(&sdp)?;
    Ok((CrossingInstance { m, cycles, c, j, generators }, sdp))
}

impl CrossingInstance {
    /// The action as a representation of the abstract group `S_m × S_2`.
    pub fn action_representation(&self) -> Result<Representation> {
        let pg = PermGroup::direct_product(&PermGroup::symmetric(self.m), &PermGroup::symmetric(2));
        Representation::from_permutations(Group::new(pg), self.cycles.len(), self.generators.clone())
    }
}

fn first_violation(a: &Matrix, g: &Permutation) -> Option<(usize, usize)> {
    let n = a.rows();
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)] != a[(g.apply(i), g.apply(j))] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Every data matrix must commute with every generator image.
pub fn check_invariance(sdp: &InvariantSDP) -> Result<()> {
    let n = sdp.action.degree();
    let named = std::iter::once(("C".to_string(), &sdp.c))
        .chain(sdp.constraints.iter().enumerate().map(|(k, (a, _))| (format!("A_{k}"), a)));
    for (name, a) in named {
        if a.rows() != n || a.cols() != n {
            return Err(Error::Shape(format!("{name} is {}x{}, the action has degree {n}", a.rows(), a.cols())));
        }
        for (gi, g) in sdp.action.generators().iter().enumerate() {
            if let Some((row, col)) = first_violation(a, g) {
                return Err(Error::SdpNotInvariant { matrix: name, generator: gi, row, col });
            }
        }
    }
    Ok(())
}

/// `tr(A B_i)` for every orbital, with `B_i = E_i/√n_i`.
fn orbital_traces(a: &Matrix, orb: &Orbitals, what: &str) -> Result<Vec<Surd>> {
    orb.orbitals
        .iter()
        .map(|o| {
            let mut s = Cyclotomic::zero();
            for &(x, y) in &o.pairs {
                s = &s + &a[(y, x)];
            }
            let q = s.as_rational().ok_or_else(|| Error::InvalidInput(format!("{what} has non-real trace against an orbital")))?;
            Surd::sqrt_times(q, &Rational::new(1, o.len() as i64))
                .ok_or_else(|| Error::InvalidInput("orbital too large".into()))
        })
        .collect()
}

/// Intersection numbers `p[i][k][j] = #{y : (x,y) ∈ O_k, (y,z) ∈ O_j}` for a
/// representative `(x,z)` of `O_i`.
fn intersection_numbers(orb: &Orbitals) -> Vec<Vec<u32>> {
    let d = orb.len();
    let n = orb.degree();
    orb.orbitals
        .iter()
        .map(|o| {
            let (x, z) = o.representative;
            let mut p = vec![0u32; d * d];
            for y in 0..n {
                p[orb.index_of(x, y) * d + orb.index_of(y, z)] += 1;
            }
            p
        })
        .collect()
}

/// Checks `E_k E_j = Σ_i p^i_{kj} E_i` entry by entry on the given rows.
fn verify_intersections(orb: &Orbitals, p: &[Vec<u32>], rows: &[usize]) -> Result<()> {
    let d = orb.len();
    let n = orb.degree();
    let mut cnt = vec![0u32; n * d * d];
    for &x in rows {
        cnt.iter_mut().for_each(|c| *c = 0);
        for y in 0..n {
            let k = orb.index_of(x, y);
            for z in 0..n {
                cnt[(z * d + k) * d + orb.index_of(y, z)] += 1;
            }
        }
        for z in 0..n {
            let i = orb.index_of(x, z);
            if cnt[z * d * d..(z + 1) * d * d] != p[i][..] {
                return Err(Error::Reconstruction(format!("product of orbital matrices differs at ({x}, {z})")));
            }
        }
    }
    Ok(())
}

/// Left multiplication by `B_k`: `(L_k)_{ij} = p^i_{kj} √(n_i / (n_k n_j))`.
fn multiplication_matrices(p: &[Vec<u32>], sizes: &[usize]) -> Vec<SurdMatrix> {
    let d = sizes.len();
    (0..d)
        .map(|k| {
            let mut l = SurdMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    let c = p[i][k * d + j];
                    if c != 0 {
                        let r = Rational::new(sizes[i] as i64, (sizes[k] * sizes[j]) as i64);
                        l.set(i, j, Surd::sqrt_times(Rational::from_int(c as i64), &r).unwrap());
                    }
                }
            }
            l
        })
        .collect()
}

/// `B_v = Σ_l w_l B_l` for a merged variable: `w_l = √(n_l / Σ n)`.
fn merge_weights(members: &[usize], sizes: &[usize]) -> Vec<Surd> {
    let total: usize = members.iter().map(|&l| sizes[l]).sum();
    members.iter().map(|&l| Surd::sqrt(&Rational::new(sizes[l] as i64, total as i64)).unwrap()).collect()
}

/// Re-derives `B_v B_j` at each orbital representative from the intersection
/// numbers and compares with `Σ_i (L_v)_{ij} B_i`.
fn verify_merged(l: &SurdMatrix, members: &[usize], weights: &[Surd], p: &[Vec<u32>], sizes: &[usize]) -> Result<()> {
    let d = sizes.len();
    let inv_root = |n: usize| Surd::sqrt(&Rational::new(1, n as i64)).unwrap();
    for i in 0..d {
        for j in 0..d {
            let mut lhs = Surd::zero();
            for (&k, w) in members.iter().zip(weights) {
                let c = p[i][k * d + j];
                if c != 0 {
                    let f = &(w * &inv_root(sizes[k])) * &inv_root(sizes[j]);
                    lhs = &lhs + &f.scale(&Rational::from_int(c as i64));
                }
            }
            let rhs = l.get(i, j) * &inv_root(sizes[i]);
            if lhs != rhs {
                return Err(Error::Reconstruction(format!("merged variable {members:?}: entry ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Orbital reduction. With `merge`, each pair `{i, i*}` becomes one variable
/// with basis `(E_i + E_{i*})/√(2 n_i)`; otherwise every orbital is a variable
/// and `x_i = x_{i*}` is added as explicit equality rows.
pub fn reduce(sdp: &InvariantSDP, merge: bool) -> Result<ReducedSDP> {
    check_invariance(sdp)?;
    let orb = orbitals(&sdp.action);
    let dim = orb.len();
    let sizes: Vec<usize> = orb.orbitals.iter().map(|o| o.len()).collect();
    let p = intersection_numbers(&orb);
    let n = orb.degree();
    let rows: Vec<usize> = if n <= 200 { (0..n).collect() } else { sdp.action.orbits().iter().map(|o| o[0]).collect() };
    verify_intersections(&orb, &p, &rows)?;
    let base = multiplication_matrices(&p, &sizes);
    let c_base = orbital_traces(&sdp.c, &orb, "C")?;
    let a_base: Vec<Vec<Surd>> = sdp
        .constraints
        .iter()
        .enumerate()
        .map(|(k, (a, _))| orbital_traces(a, &orb, &format!("A_{k}")))
        .collect::<Result<_>>()?;

    let paired: Vec<usize> = orb.orbitals.iter().map(|o| o.paired).collect();
    let variables: Vec<Vec<usize>> = if merge {
        (0..dim).filter(|&i| paired[i] >= i).map(|i| if paired[i] == i { vec![i] } else { vec![i, paired[i]] }).collect()
    } else {
        (0..dim).map(|i| vec![i]).collect()
    };
    let d = variables.len();
    let mut l = Vec::with_capacity(d);
    let mut c = Vec::with_capacity(d);
    let mut eq_rows: Vec<Vec<Surd>> = vec![Vec::with_capacity(d); a_base.len()];
    for members in &variables {
        let weights = merge_weights(members, &sizes);
        let mut lv = SurdMatrix::zeros(dim);
        let mut cv = Surd::zero();
        for (&k, w) in members.iter().zip(&weights) {
            lv.add_scaled(w, &base[k]);
            cv = &cv + &(w * &c_base[k]);
        }
        for (row, a) in eq_rows.iter_mut().zip(&a_base) {
            row.push(members.iter().zip(&weights).fold(Surd::zero(), |acc, (&k, w)| &acc + &(w * &a[k])));
        }
        verify_merged(&lv, members, &weights, &p, &sizes)?;
        l.push(lv);
        c.push(cv);
    }
    let mut eq_constraints: Vec<(Vec<Surd>, Rational)> =
        eq_rows.into_iter().zip(sdp.constraints.iter().map(|(_, b)| b.clone())).collect();
    let pairing: Vec<usize> = if merge { (0..d).collect() } else { paired.clone() };
    if !merge {
        for i in 0..dim {
            if paired[i] > i {
                let mut row = vec![Surd::zero(); d];
                row[i] = Surd::from_int(1);
                row[paired[i]] = Surd::from_int(-1);
                eq_constraints.push((row, Rational::zero()));
            }
        }
    }
    Ok(ReducedSDP {
        d,
        dim,
        c,
        l,
        eq_constraints,
        pairing,
        merged: merge,
        nonneg: sdp.nonneg,
        variables,
        orbital_sizes: sizes,
        orbital_representatives: orb.orbitals.iter().map(|o| o.representative).collect(),
    })
}

/// `⌊(m−1)²/4⌋ ⌊(n−1)²/4⌋`, the conjectured crossing number of `K_{m,n}`.
pub fn zarankiewicz(m: u64, n: u64) -> u64 {
    let f = |k: u64| k.saturating_sub(1).pow(2) / 4;
    f(m) * f(n)
}

/// Lower bound on `cr(K_{m,n})` from `α_k`:
/// `m(m−1)/(k(k−1)) · (n²α_k/2 − n⌈(k−1)²/4⌉/2)`.
pub fn crossing_bound(m: u64, n: u64, k: u64, alpha_k: f64) -> Result<f64> {
    if k < 3 || k > m {
        return Err(Error::InvalidInput(format!("need 3 <= k <= m, got k = {k}, m = {m}")));
    }
    let (m, n, kf) = (m as f64, n as f64, k as f64);
    let ceil = (k - 1).pow(2).div_ceil(4) as f64;
    Ok(m * (m - 1.0) / (kf * (kf - 1.0)) * (0.5 * n * n * alpha_k - 0.5 * n * ceil))
}

/// `8 α_k m / (k(k−1)(m−1))`; as `m, n → ∞` the bound over `Z(m,n)` tends to
/// `8 α_k / (k(k−1))`, returned for `m = None`.
pub fn limit_ratio(k: u64, alpha_k: f64, m: Option<u64>) -> f64 {
    let kk = (k * (k - 1)) as f64;
    match m {
        Some(m) => 8.0 * alpha_k * m as f64 / (kk * (m - 1) as f64),
        None => 8.0 * alpha_k / kk,
    }
}
