//! Complete lists of irreducible representations and multiplicities.

pub mod specht;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm::{PermGroup, Permutation};
use crate::rep::{inner_product, Character, Group, Representation, RepresentationJson};

/// Group families with built-in irreducible lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
}

impl Family {
    pub fn group(&self) -> Result<PermGroup> {
        match *self {
            Family::Cyclic(n) if n >= 1 => Ok(PermGroup::cyclic(n)),
            Family::Dihedral(n) => PermGroup::dihedral(n),
            Family::Symmetric(n) if n >= 1 => Ok(PermGroup::symmetric(n)),
            _ => Err(Error::InvalidInput(format!("{self:?} is not a valid group"))),
        }
    }

    pub fn order(&self) -> u128 {
        match *self {
            Family::Cyclic(n) => n as u128,
            Family::Dihedral(n) => 2 * n as u128,
            Family::Symmetric(n) => (1..=n as u128).product(),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Cyclic(n) => format!("C{n}"),
            Family::Dihedral(n) => format!("D{}", 2 * n),
            Family::Symmetric(n) => format!("S{n}"),
        }
    }

    /// Parses `C5`, `D10` (order 10), `S4`.
    pub fn parse(s: &str) -> Result<Family> {
        let bad = || Error::InvalidInput(format!("unknown group family {s:?}; expected e.g. C5, D10, S4"));
        let (head, num) = s.split_at(1.min(s.len()));
        let n: usize = num.parse().map_err(|_| bad())?;
        match head {
            "C" | "c" => Ok(Family::Cyclic(n)),
            "D" | "d" if n.is_multiple_of(2) => Ok(Family::Dihedral(n / 2)),
            "S" | "s" => Ok(Family::Symmetric(n)),
            _ => Err(bad()),
        }
    }

    /// Generator images of every irreducible, with labels.
    fn irreducible_images(&self, config: &Config) -> Result<Vec<(String, usize, Vec<Matrix>)>> {
        let group = self.group()?;
        match *self {
            Family::Cyclic(n) => Ok((0..n)
                .map(|j| {
                    let z = Cyclotomic::root_of_unity(n as u32, j as i64);
                    (format!("C{n}:chi{j}"), 1, vec![Matrix::diagonal(&[z])])
                })
                .collect()),
            Family::Dihedral(n) => {
                let one = |x: i64| Matrix::diagonal(&[Cyclotomic::from_int(x)]);
                let mut out = vec![
                    ("trivial".to_string(), 1, vec![one(1), one(1)]),
                    ("reflection-sign".to_string(), 1, vec![one(1), one(-1)]),
                ];
                if n % 2 == 0 {
                    out.push(("rotation-sign".to_string(), 1, vec![one(-1), one(1)]));
                    out.push(("both-signs".to_string(), 1, vec![one(-1), one(-1)]));
                }
                let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
                for k in 1..=(n - 1) / 2 {
                    let r = Matrix::diagonal(&[
                        Cyclotomic::root_of_unity(n as u32, k as i64),
                        Cyclotomic::root_of_unity(n as u32, -(k as i64)),
                    ]);
                    out.push((format!("rho{k}"), 2, vec![r, swap.clone()]));
                }
                Ok(out)
            }
            Family::Symmetric(n) => {
                if n > config.symmetric_bound {
                    return Err(Error::InvalidInput(format!(
                        "S{n} exceeds the configured Specht bound {}",
                        config.symmetric_bound
                    )));
                }
                Ok(specht::partitions(n)
                    .into_iter()
                    .map(|p| {
                        let d = specht::hook_dimension(&p) as usize;
                        let label = format!("{p:?}");
                        (label, d, specht::specht_images(&p, group.generators()))
                    })
                    .collect())
            }
        }
    }
}

/// A complete list of irreducibles of one group, with characters.
#[derive(Clone, Debug)]
pub struct IrrepList {
    group: Arc<Group>,
    irreps: Vec<Representation>,
    characters: Vec<Character>,
    labels: Vec<String>,
}

impl IrrepList {
    pub fn cyclic(n: usize) -> Result<IrrepList> {
        Self::for_families(&[Family::Cyclic(n)], &Config::default())
    }

    pub fn dihedral(n: usize) -> Result<IrrepList> {
        Self::for_families(&[Family::Dihedral(n)], &Config::default())
    }

    pub fn symmetric(n: usize, config: &Config) -> Result<IrrepList> {
        Self::for_families(&[Family::Symmetric(n)], config)
    }

    /// Irreducibles of the direct product of the given families, realised on
    /// the product permutation group (generators of earlier factors first).
    pub fn for_families(families: &[Family], config: &Config) -> Result<IrrepList> {
        let group = product_group(families)?;
        Self::for_families_on(families, Group::new(group), config)
    }

    /// As [`IrrepList::for_families`], but on an existing group object.
    pub fn for_families_on(families: &[Family], group: Arc<Group>, config: &Config) -> Result<IrrepList> {
        if group.perm_group() != &product_group(families)? {
            return Err(Error::GroupMismatch);
        }
        let mut combined: Vec<(String, usize, Vec<Matrix>)> = vec![(String::new(), 1, Vec::new())];
        for f in families {
            let factor = f.irreducible_images(config)?;
            let mut next = Vec::new();
            for (la, da, ia) in &combined {
                for (lb, db, ib) in &factor {
                    let id_a = Matrix::identity(*da);
                    let id_b = Matrix::identity(*db);
                    let mut images: Vec<Matrix> = ia.iter().map(|m| m.kronecker(&id_b)).collect();
                    images.extend(ib.iter().map(|m| id_a.kronecker(m)));
                    let label = if la.is_empty() { lb.clone() } else { format!("{la} x {lb}") };
                    next.push((label, da * db, images));
                }
            }
            combined = next;
        }
        let mut irreps = Vec::new();
        let mut labels = Vec::new();
        for (label, d, images) in combined {
            let rep = if images.is_empty() {
                Representation::identity_rep(group.clone(), d)
            } else {
                Representation::new(group.clone(), images)?
            };
            irreps.push(rep);
            labels.push(label);
        }
        let characters = irreps
            .iter()
            .map(|r| r.character(config.enumeration_bound))
            .collect::<Result<Vec<_>>>()?;
        Ok(IrrepList { group, irreps, characters, labels })
    }

    /// Pairwise tensor products `ρ_i ⊠ σ_j` on the product group.
    pub fn product(a: &IrrepList, b: &IrrepList, config: &Config) -> Result<IrrepList> {
        let pg = PermGroup::direct_product(a.group.perm_group(), b.group.perm_group());
        let group = Group::new(pg);
        let mut irreps = Vec::new();
        let mut labels = Vec::new();
        for (ra, la) in a.irreps.iter().zip(&a.labels) {
            for (rb, lb) in b.irreps.iter().zip(&b.labels) {
                let id_a = Matrix::identity(ra.degree());
                let id_b = Matrix::identity(rb.degree());
                let mut images: Vec<Matrix> = ra.generator_images().iter().map(|m| m.kronecker(&id_b)).collect();
                images.extend(rb.generator_images().iter().map(|m| id_a.kronecker(m)));
                let rep = if images.is_empty() {
                    Representation::identity_rep(group.clone(), ra.degree() * rb.degree())
                } else {
                    Representation::new(group.clone(), images)?
                };
                irreps.push(rep);
                labels.push(format!("{la} x {lb}"));
            }
        }
        let characters = irreps
            .iter()
            .map(|r| r.character(config.enumeration_bound))
            .collect::<Result<Vec<_>>>()?;
        Ok(IrrepList { group, irreps, characters, labels })
    }

    /// Built-in list for a group produced by the family constructors (or
    /// direct products of them), bound to `group`.
    pub fn for_group(group: Arc<Group>, config: &Config) -> Result<IrrepList> {
        if group.generators().is_empty() {
            let rep = Representation::identity_rep(group.clone(), 1);
            let characters = vec![rep.character(config.enumeration_bound)?];
            return Ok(IrrepList { group, irreps: vec![rep], characters, labels: vec!["trivial".into()] });
        }
        let families = recognise(group.perm_group()).ok_or_else(|| {
            Error::InvalidInput(
                "no built-in irreducibles for this group; supply a complete list with --irreps".into(),
            )
        })?;
        Self::for_families_on(&families, group, config)
    }

    /// Validates a user-supplied list: same group, orthonormal characters
    /// and `Σ deg² = |G|`.
    pub fn from_reps(irreps: Vec<Representation>, config: &Config) -> Result<IrrepList> {
        let group = irreps
            .first()
            .ok_or_else(|| Error::InvalidInput("empty irreducible list".into()))?
            .group()
            .clone();
        let irreps = irreps
            .into_iter()
            .map(|r| {
                if r.group().perm_group() != group.perm_group() {
                    return Err(Error::GroupMismatch);
                }
                // rebind onto the shared group object
                if r.generator_images().is_empty() {
                    Ok(Representation::identity_rep(group.clone(), r.degree()))
                } else {
                    Representation::new(group.clone(), r.generator_images().to_vec())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let characters = irreps
            .iter()
            .map(|r| r.character(config.enumeration_bound))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..irreps.len()).map(|i| format!("irrep{i}")).collect();
        let list = IrrepList { group, irreps, characters, labels };
        list.validate(config)?;
        Ok(list)
    }

    pub fn from_json(text: &str, config: &Config) -> Result<IrrepList> {
        let items: Vec<RepresentationJson> = serde_json::from_str(text)?;
        let reps = items.into_iter().map(RepresentationJson::into_rep).collect::<Result<Vec<_>>>()?;
        Self::from_reps(reps, config)
    }

    pub fn to_json(&self) -> Vec<RepresentationJson> {
        self.irreps.iter().map(Representation::to_json).collect()
    }

    /// Orthonormality of characters and completeness.
    pub fn validate(&self, config: &Config) -> Result<()> {
        let classes = self.group.classes(config.enumeration_bound)?;
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let ip = inner_product(a, b, classes);
                let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != expected {
                    return Err(Error::Inconsistent(format!("<chi{i}, chi{j}> = {ip}, expected {expected}")));
                }
            }
        }
        let total: u128 = self.irreps.iter().map(|r| (r.degree() as u128).pow(2)).sum();
        if total != self.group.order() {
            return Err(Error::Inconsistent(format!(
                "sum of squared degrees {total} differs from the group order {}",
                self.group.order()
            )));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(Representation::degree).collect()
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Exact multiplicities `m_i = ⟨χ_ρ, χ_i⟩`.
    pub fn multiplicities(&self, rep: &Representation, config: &Config) -> Result<Vec<usize>> {
        let chi = rep.character(config.enumeration_bound)?;
        self.multiplicities_of_character(&chi, rep.degree(), config)
    }

    pub fn multiplicities_of_character(&self, chi: &Character, degree: usize, config: &Config) -> Result<Vec<usize>> {
        let classes = self.group.classes(config.enumeration_bound)?;
        let mut out = Vec::with_capacity(self.len());
        for (i, c) in self.characters.iter().enumerate() {
            let ip = inner_product(chi, c, classes);
            let m = ip
                .as_rational()
                .filter(Rational::is_integer)
                .and_then(|r| r.to_i64_pair().map(|(n, _)| n))
                .filter(|&n| n >= 0)
                .ok_or_else(|| Error::Inconsistent(format!("<chi, chi{i}> = {ip} is not a non-negative integer")))?;
            out.push(m as usize);
        }
        let total: usize = out.iter().zip(self.degrees()).map(|(m, d)| m * d).sum();
        if total != degree {
            return Err(Error::Inconsistent(format!(
                "multiplicities account for degree {total}, representation has degree {degree}"
            )));
        }
        Ok(out)
    }

    /// Character value of irrep `i` on class `c`, as a scalar.
    pub fn character_value(&self, i: usize, c: usize) -> &Cyclotomic {
        &self.characters[i].values[c]
    }

    /// `deg_i / |G|` as a rational.
    pub fn degree_over_order(&self, i: usize) -> Rational {
        Rational::from_bigints((self.irreps[i].degree() as u64).into(), self.group.order().into())
    }
}

fn product_group(families: &[Family]) -> Result<PermGroup> {
    let mut it = families.iter();
    let first = it.next().ok_or_else(|| Error::InvalidInput("no group families given".into()))?;
    let mut g = first.group()?;
    for f in it {
        g = PermGroup::direct_product(&g, &f.group()?);
    }
    Ok(g)
}

/// Recognises groups built by the family constructors and their direct
/// products (by comparing generators exactly).
pub fn recognise(group: &PermGroup) -> Option<Vec<Family>> {
    recognise_gens(group.degree(), group.generators())
}

fn recognise_gens(degree: usize, gens: &[Permutation]) -> Option<Vec<Family>> {
    for f in [Family::Cyclic(degree), Family::Dihedral(degree), Family::Symmetric(degree)] {
        if let Ok(g) = f.group() {
            if g.degree() == degree && g.generators() == gens {
                return Some(vec![f]);
            }
        }
    }
    for a in 1..gens.len() {
        for k in 1..degree {
            let (pre, post) = gens.split_at(a);
            if pre.iter().all(|g| (k..degree).all(|x| g.apply(x) == x))
                && post.iter().all(|g| (0..k).all(|x| g.apply(x) == x))
            {
                let pre_r: Vec<Permutation> = pre
                    .iter()
                    .map(|g| Permutation::from_images((0..k).map(|x| g.apply(x)).collect()).unwrap())
                    .collect();
                let post_r: Vec<Permutation> = post
                    .iter()
                    .map(|g| Permutation::from_images((k..degree).map(|x| g.apply(x) - k).collect()).unwrap())
                    .collect();
                if let (Some(mut l), Some(r)) = (recognise_gens(k, &pre_r), recognise_gens(degree - k, &post_r)) {
                    l.extend(r);
                    return Some(l);
                }
            }
        }
    }
    None
}
