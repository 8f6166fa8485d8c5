use serde::Serialize;

use super::{PermGroup, StabilizerChain};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// An orbit of the group on ordered pairs of points.
#[derive(Clone, Debug, Serialize)]
pub struct Orbital {
    /// Lexicographically smallest pair.
    pub representative: (usize, usize),
    pub pairs: Vec<(usize, usize)>,
    /// Index of the orbital containing the reversed pairs.
    pub paired: usize,
}

impl Orbital {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_symmetric(&self, own_index: usize) -> bool {
        self.paired == own_index
    }

    pub fn adjacency(&self, degree: usize) -> Matrix {
        let mut m = Matrix::zeros(degree, degree);
        for &(i, j) in &self.pairs {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }
}

/// All orbitals of a group, ordered by their smallest pair.
#[derive(Clone, Debug)]
pub struct Orbitals {
    degree: usize,
    index: Vec<u32>,
    pub orbitals: Vec<Orbital>,
}

impl Orbitals {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.orbitals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbitals.is_empty()
    }

    /// Orbital containing the pair `(i, j)`.
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        self.index[i * self.degree + j] as usize
    }
}

pub fn orbitals(group: &PermGroup) -> Orbitals {
    let n = group.degree();
    let mut index = vec![u32::MAX; n * n];
    let mut orbitals: Vec<Orbital> = Vec::new();
    for start in 0..n * n {
        if index[start] != u32::MAX {
            continue;
        }
        let id = orbitals.len() as u32;
        index[start] = id;
        let mut pairs = vec![(start / n, start % n)];
        let mut k = 0;
        while k < pairs.len() {
            let (a, b) = pairs[k];
            for g in group.generators() {
                let (x, y) = (g.apply(a), g.apply(b));
                if index[x * n + y] == u32::MAX {
                    index[x * n + y] = id;
                    pairs.push((x, y));
                }
            }
            k += 1;
        }
        pairs.sort_unstable();
        orbitals.push(Orbital { representative: pairs[0], pairs, paired: 0 });
    }
    for k in 0..orbitals.len() {
        let (i, j) = orbitals[k].representative;
        orbitals[k].paired = index[j * n + i] as usize;
    }
    Orbitals { degree: n, index, orbitals }
}

/// Suborbit-indexed compression of an orbital graph.
#[derive(Clone, Debug, Serialize)]
pub struct CollapsedAdjacency {
    pub alpha: usize,
    /// Orbits of the point stabiliser, ordered by minimal point.
    pub suborbits: Vec<Vec<usize>>,
    pub matrix: Vec<Vec<u64>>,
}

impl CollapsedAdjacency {
    pub fn to_matrix(&self) -> Matrix {
        let r = self.suborbits.len();
        Matrix::from_fn(r, r, |i, j| Cyclotomic::from_int(self.matrix[i][j] as i64))
    }
}

/// `A_ij = |Γ(α_i) ∩ X_j|` where `X_1, …, X_r` are the suborbits of `G_α` and
/// `α_i` is the smallest point of `X_i`.
pub fn collapsed_adjacency(group: &PermGroup, orbital: &Orbital, alpha: usize) -> Result<CollapsedAdjacency> {
    let n = group.degree();
    if alpha >= n {
        return Err(Error::InvalidInput(format!("point {} outside 1..={n}", alpha + 1)));
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let chain = StabilizerChain::new(group, &[alpha]);
    let stab = PermGroup::new(n, chain.stabilizer_generators(1))?;
    let suborbits = stab.orbits();
    let mut which = vec![0usize; n];
    for (k, orb) in suborbits.iter().enumerate() {
        for &x in orb {
            which[x] = k;
        }
    }
    let mut out_neighbours = vec![Vec::new(); n];
    for &(x, y) in &orbital.pairs {
        out_neighbours[x].push(y);
    }
    let r = suborbits.len();
    let mut matrix = vec![vec![0u64; r]; r];
    for (i, orb) in suborbits.iter().enumerate() {
        for &y in &out_neighbours[orb[0]] {
            matrix[i][which[y]] += 1;
        }
    }
    Ok(CollapsedAdjacency { alpha, suborbits, matrix })
}
