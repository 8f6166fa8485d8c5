//! Deterministic Schreier–Sims with straight-line programs for every strong
//! generator and transversal element, so that any homomorphism defined on
//! the group generators can be evaluated on them.

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Straight-line program node; operands always refer to earlier nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slp {
    Identity,
    Gen(usize),
    /// First operand applied first.
    Mul(usize, usize),
    Inv(usize),
}

/// One level of the chain: `G_i`, its base point and a transversal of
/// `G_i / G_{i+1}`.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    /// Indices into the chain's strong generator list.
    generators: Vec<usize>,
    orbit: Vec<usize>,
    reps: Vec<Permutation>,
    rep_invs: Vec<Permutation>,
    nodes: Vec<usize>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl Level {
    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    /// Coset representatives `u` with `u(base_point) = orbit[k]`; `reps[0]` is the identity.
    pub fn transversal(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn transversal_inverses(&self) -> &[Permutation] {
        &self.rep_invs
    }

    /// Program node of each transversal element.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn strong_generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn position(&self, point: usize) -> Option<usize> {
        match self.position[point] {
            ABSENT => None,
            k => Some(k as usize),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    num_generators: usize,
    strong: Vec<(Permutation, usize)>,
    levels: Vec<Level>,
    program: Vec<Slp>,
}

impl StabilizerChain {
    /// Builds a chain whose base starts with `base_prefix` and is then
    /// extended by first moved points.
    pub fn new(group: &PermGroup, base_prefix: &[usize]) -> Self {
        let degree = group.degree();
        let mut program = vec![Slp::Identity];
        let mut strong = Vec::new();
        for (i, g) in group.generators().iter().enumerate() {
            program.push(Slp::Gen(i));
            if !g.is_identity() && !strong.iter().any(|(s, _)| s == g) {
                strong.push((g.clone(), program.len() - 1));
            }
        }
        let mut chain = StabilizerChain {
            degree,
            num_generators: group.generators().len(),
            strong,
            levels: Vec::new(),
            program,
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        for k in 0..chain.strong.len() {
            let g = chain.strong[k].0.clone();
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                chain.push_level(g.first_moved_point().unwrap());
            }
        }
        for i in 0..chain.levels.len() {
            chain.levels[i].generators = (0..chain.strong.len())
                .filter(|&k| chain.fixes_prefix(&chain.strong[k].0, i))
                .collect();
            chain.rebuild_orbit(i);
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, base_point: usize) {
        self.levels.push(Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            reps: Vec::new(),
            rep_invs: Vec::new(),
            nodes: Vec::new(),
            position: vec![ABSENT; self.degree],
        });
    }

    fn fixes_prefix(&self, g: &Permutation, level: usize) -> bool {
        self.levels[..level].iter().all(|l| g.apply(l.base_point) == l.base_point)
    }

    fn node(&mut self, s: Slp) -> usize {
        if let Slp::Mul(a, b) = s {
            if self.program[a] == Slp::Identity {
                return b;
            }
            if self.program[b] == Slp::Identity {
                return a;
            }
        }
        self.program.push(s);
        self.program.len() - 1
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let degree = self.degree;
        let beta = self.levels[i].base_point;
        let gens: Vec<(Permutation, usize)> =
            self.levels[i].generators.iter().map(|&k| self.strong[k].clone()).collect();
        let mut orbit = vec![beta];
        let mut reps = vec![Permutation::identity(degree)];
        let mut nodes = vec![0usize];
        let mut position = vec![ABSENT; degree];
        position[beta] = 0;
        let mut k = 0;
        while k < orbit.len() {
            let gamma = orbit[k];
            for (s, s_node) in &gens {
                let delta = s.apply(gamma);
                if position[delta] == ABSENT {
                    position[delta] = orbit.len() as u32;
                    orbit.push(delta);
                    reps.push(reps[k].mul(s));
                    let n = self.node(Slp::Mul(nodes[k], *s_node));
                    nodes.push(n);
                }
            }
            k += 1;
        }
        let level = &mut self.levels[i];
        level.rep_invs = reps.iter().map(Permutation::inverse).collect();
        level.orbit = orbit;
        level.reps = reps;
        level.nodes = nodes;
        level.position = position;
    }

    /// Sifts `g` starting at `from`; returns the residue, the level where
    /// sifting stopped and the transversal indices used.
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize, Vec<(usize, usize)>) {
        let mut h = g.clone();
        let mut word = Vec::new();
        for i in from..self.levels.len() {
            let l = &self.levels[i];
            let gamma = h.apply(l.base_point);
            let Some(k) = l.position(gamma) else {
                return (h, i, word);
            };
            if k != 0 {
                h = h.mul(&l.rep_invs[k]);
                word.push((i, k));
            }
        }
        (h, self.levels.len(), word)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lv = i as usize;
            let orbit_len = self.levels[lv].orbit.len();
            for k in 0..orbit_len {
                let gens = self.levels[lv].generators.clone();
                for sk in gens {
                    let (s, s_node) = self.strong[sk].clone();
                    let l = &self.levels[lv];
                    let delta = s.apply(l.orbit[k]);
                    let kd = l.position(delta).expect("orbit closed");
                    let h = l.reps[k].mul(&s).mul(&l.rep_invs[kd]);
                    if h.is_identity() {
                        continue;
                    }
                    let (r, j, word) = self.strip(&h, lv + 1);
                    if j == self.levels.len() && r.is_identity() {
                        continue;
                    }
                    let (uk, ud) = (self.levels[lv].nodes[k], self.levels[lv].nodes[kd]);
                    let a = self.node(Slp::Mul(uk, s_node));
                    let inv_ud = self.node(Slp::Inv(ud));
                    let mut n = self.node(Slp::Mul(a, inv_ud));
                    for (wl, wk) in word {
                        let u = self.levels[wl].nodes[wk];
                        let inv_u = self.node(Slp::Inv(u));
                        n = self.node(Slp::Mul(n, inv_u));
                    }
                    self.strong.push((r.clone(), n));
                    let new_idx = self.strong.len() - 1;
                    if j == self.levels.len() {
                        self.push_level(r.first_moved_point().expect("nontrivial residue"));
                    }
                    for l in lv + 1..=j {
                        self.levels[l].generators.push(new_idx);
                        self.rebuild_orbit(l);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn program(&self) -> &[Slp] {
        &self.program
    }

    /// Strong generators with their program nodes.
    pub fn strong_generators(&self) -> &[(Permutation, usize)] {
        &self.strong
    }

    /// Strong generators of the stabiliser of the first `i` base points.
    pub fn stabilizer_generators(&self, i: usize) -> Vec<Permutation> {
        match self.levels.get(i) {
            Some(l) => l.generators.iter().map(|&k| self.strong[k].0.clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn transversals(&self) -> Vec<&[Permutation]> {
        self.levels.iter().map(|l| l.transversal()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (r, j, _) = self.strip(g, 0);
            j == self.levels.len() && r.is_identity()
        }
    }

    /// Writes `g = u_k ⋯ u_1` with `u_i` from level `i`'s transversal.
    /// Returns `(level, index)` pairs in product order (deepest level first);
    /// identity factors are omitted.
    pub fn factorize(&self, g: &Permutation) -> Result<Vec<(usize, usize)>> {
        if g.degree() != self.degree {
            return Err(Error::NotInGroup);
        }
        let (r, j, mut word) = self.strip(g, 0);
        if j != self.levels.len() || !r.is_identity() {
            return Err(Error::NotInGroup);
        }
        word.reverse();
        Ok(word)
    }

    /// Multiplies a factorisation back together.
    pub fn evaluate_word(&self, word: &[(usize, usize)]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(self.degree), |acc, &(l, k)| acc.mul(&self.levels[l].reps[k]))
    }

    /// All group elements, deterministic order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > bound as u128 {
            return Err(Error::GroupTooLarge { order, bound });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.len());
            for u in &l.reps {
                for g in &out {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Uniformly random element.
    pub fn random_element(&self, rng: &mut impl rand::Rng) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in self.levels.iter().rev() {
            g = g.mul(&l.reps[rng.gen_range(0..l.len())]);
        }
        g
    }

    /// Evaluates all program nodes needed for `targets` with a user
    /// supplied domain; returns `(value, inverse value)` per requested node.
    pub fn evaluate_nodes<T: Clone>(
        &self,
        targets: &[usize],
        identity: &T,
        generator: &mut dyn FnMut(usize) -> (T, T),
        mul: &mut dyn FnMut(&T, &T) -> T,
    ) -> Vec<(T, T)> {
        let mut needed = vec![false; self.program.len()];
        for &t in targets {
            needed[t] = true;
        }
        for n in (0..self.program.len()).rev() {
            if !needed[n] {
                continue;
            }
            match self.program[n] {
                Slp::Mul(a, b) => {
                    needed[a] = true;
                    needed[b] = true;
                }
                Slp::Inv(a) => needed[a] = true,
                _ => {}
            }
        }
        let mut values: Vec<Option<(T, T)>> = vec![None; self.program.len()];
        let mut gen_cache: Vec<Option<(T, T)>> = vec![None; self.num_generators];
        for n in 0..self.program.len() {
            if !needed[n] {
                continue;
            }
            let v = match self.program[n] {
                Slp::Identity => (identity.clone(), identity.clone()),
                Slp::Gen(i) => gen_cache[i].get_or_insert_with(|| generator(i)).clone(),
                Slp::Mul(a, b) => {
                    let (va, ia) = values[a].as_ref().unwrap();
                    let (vb, ib) = values[b].as_ref().unwrap();
                    (mul(va, vb), mul(ib, ia))
                }
                Slp::Inv(a) => {
                    let (va, ia) = values[a].as_ref().unwrap();
                    (ia.clone(), va.clone())
                }
            };
            values[n] = Some(v);
        }
        targets.iter().map(|&t| values[t].clone().unwrap()).collect()
    }
}
