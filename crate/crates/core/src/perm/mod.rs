//! Finite permutation groups.

mod chain;
mod classes;
mod orbital;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{Level, Slp, StabilizerChain};
pub use classes::ConjugacyClasses;
pub use orbital::{collapsed_adjacency, orbitals, CollapsedAdjacency, Orbital, Orbitals};

/// A bijection of `{0, …, n-1}`; 1-based in JSON.
///
/// Products act left to right: `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInput("permutation points are 1-based".into()));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// From disjoint cycles written with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::InvalidInput(format!("cycle point out of range 1..={degree}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// `self * other⁻¹` without materialising the inverse.
    pub fn mul_inv(&self, other_inv_of: &Permutation) -> Permutation {
        let mut inv = vec![0u32; other_inv_of.degree()];
        for (i, &x) in other_inv_of.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: self.images.iter().map(|&x| inv[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().mul(self).mul(g)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    /// Disjoint cycles (1-based), fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / crate::cyclo::gcd(acc, l) * l
        })
    }

    /// Embeds into a larger degree, shifting every point by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("group degree must be positive".into()));
        }
        if let Some(i) = generators.iter().position(|g| g.degree() != degree) {
            return Err(Error::InvalidInput(format!(
                "generator {i} has degree {} but the group has degree {degree}",
                generators[i].degree()
            )));
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new() }
    }

    /// Cyclic group generated by one `n`-cycle.
    pub fn cyclic(n: usize) -> Self {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup { degree: n, generators: vec![Permutation::from_images(images).unwrap()] }
    }

    /// Dihedral group of order `2n` on the vertices of an `n`-gon: a rotation
    /// and the reflection `i ↦ n + 2 − i` (1-based).
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput("dihedral groups need n >= 3".into()));
        }
        let rot = (0..n).map(|i| (i + 1) % n).collect();
        let refl = (0..n).map(|i| (n - i) % n).collect();
        Ok(PermGroup {
            degree: n,
            generators: vec![Permutation::from_images(rot)?, Permutation::from_images(refl)?],
        })
    }

    /// Symmetric group on `n` points generated by `(1 2)` and `(1 2 … n)`.
    pub fn symmetric(n: usize) -> Self {
        match n {
            0 | 1 => PermGroup { degree: 1, generators: vec![Permutation::identity(1)] },
            2 => PermGroup { degree: 2, generators: vec![Permutation::from_images(vec![1, 0]).unwrap()] },
            _ => {
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(0, 1);
                let c = (0..n).map(|i| (i + 1) % n).collect();
                PermGroup {
                    degree: n,
                    generators: vec![Permutation::from_images(t).unwrap(), Permutation::from_images(c).unwrap()],
                }
            }
        }
    }

    /// `G × H` acting on disjoint point sets; generators of `G` come first.
    pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
        let degree = g.degree + h.degree;
        let mut generators: Vec<Permutation> = g.generators.iter().map(|x| x.shifted(0, degree)).collect();
        generators.extend(h.generators.iter().map(|x| x.shifted(g.degree, degree)));
        PermGroup { degree, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> StabilizerChain {
        StabilizerChain::new(self, &[])
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Orbits on points, each sorted, ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// A random word in the generators; used for test sampling.
    pub fn random_word(&self, rng: &mut impl Rng, len: usize) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        if self.generators.is_empty() {
            return g;
        }
        for _ in 0..len {
            g = g.mul(&self.generators[rng.gen_range(0..self.generators.len())]);
        }
        g
    }
}

#[derive(Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Permutation>,
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GroupJson::deserialize(d)?;
        PermGroup::new(j.degree, j.generators).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_convention() {
        let p = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        // apply p then q: 1 -> 2 -> 3
        assert_eq!(p.mul(&q).apply(0), 2);
        assert!(p.mul(&p.inverse()).is_identity());
        assert_eq!(p.mul_inv(&q), p.mul(&q.inverse()));
    }

    #[test]
    fn cycles_and_order() {
        let g = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.to_string(), "(1 2 3)(4 5)");
        assert!(g.pow(6).is_identity());
    }

    #[test]
    fn json_is_one_based() {
        let g = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
        let grp: PermGroup = serde_json::from_str(r#"{"degree":3,"generators":[[2,3,1]]}"#).unwrap();
        assert_eq!(grp.generators()[0], g);
        assert!(serde_json::from_str::<PermGroup>(r#"{"degree":4,"generators":[[2,3,1]]}"#).is_err());
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(PermGroup::cyclic(7).order(), 7);
        assert_eq!(PermGroup::dihedral(5).unwrap().order(), 10);
        assert_eq!(PermGroup::symmetric(5).order(), 120);
        let p = PermGroup::direct_product(&PermGroup::symmetric(3), &PermGroup::cyclic(4));
        assert_eq!(p.degree(), 7);
        assert_eq!(p.order(), 24);
        assert_eq!(p.orbits(), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
    }
}
