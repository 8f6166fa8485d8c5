//! Representations of permutation groups by cyclotomic matrices.

mod character;
mod json;
pub mod random;

use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::perm::{ConjugacyClasses, PermGroup, Permutation, StabilizerChain};

pub use character::{inner_product, Character};
pub use json::RepresentationJson;

/// A permutation group with its stabiliser chain and (lazily) its classes.
#[derive(Debug)]
pub struct Group {
    perm: PermGroup,
    chain: StabilizerChain,
    classes: OnceLock<ConjugacyClasses>,
}

impl Group {
    pub fn new(perm: PermGroup) -> Arc<Group> {
        let chain = perm.chain();
        Arc::new(Group { perm, chain, classes: OnceLock::new() })
    }

    /// Uses a caller-built chain (e.g. with a chosen base).
    pub fn with_chain(perm: PermGroup, chain: StabilizerChain) -> Arc<Group> {
        Arc::new(Group { perm, chain, classes: OnceLock::new() })
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perm
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn generators(&self) -> &[Permutation] {
        self.perm.generators()
    }

    pub fn classes(&self, bound: u64) -> Result<&ConjugacyClasses> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let c = ConjugacyClasses::new(&self.perm, bound)?;
        Ok(self.classes.get_or_init(|| c))
    }

    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        self.chain.elements(bound)
    }

    /// Sum of all transversal sizes.
    pub fn transversal_total(&self) -> usize {
        self.chain.levels().iter().map(|l| l.len()).sum()
    }
}

#[derive(Clone, Debug)]
enum Source {
    Matrices,
    /// Action by permutations of `{0..degree}`; images are permutation matrices.
    Perm(Arc<Vec<Permutation>>),
    Tensor(Box<Representation>, Box<Representation>),
    Dual(Box<Representation>),
}

#[derive(Debug)]
enum Table {
    Matrices(Vec<Vec<(Matrix, Matrix)>>),
    Perms(Vec<Vec<(Permutation, Permutation)>>),
}

/// A homomorphism from a permutation group into invertible matrices, given
/// by generator images.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<Group>,
    degree: usize,
    gen_images: Arc<OnceLock<Vec<Matrix>>>,
    source: Source,
    table: Arc<OnceLock<Table>>,
}

impl Representation {
    /// Wraps generator images; checks shapes and invertibility but not
    /// the homomorphism property (see [`Representation::check_homomorphism`]).
    pub fn new(group: Arc<Group>, images: Vec<Matrix>) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let degree = images.first().map_or(0, Matrix::rows);
        if images.is_empty() {
            return Err(Error::InvalidInput(
                "a group without generators needs an explicit degree; use Representation::trivial_group".into(),
            ));
        }
        for (i, m) in images.iter().enumerate() {
            if m.rows() != degree || m.cols() != degree {
                return Err(Error::Shape(format!(
                    "image of generator {i} is {}x{}, expected {degree}x{degree}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self::from_parts(group, degree, images, Source::Matrices))
    }

    /// The degree-`d` identity representation of a group without generators.
    pub fn identity_rep(group: Arc<Group>, degree: usize) -> Self {
        let images = vec![Matrix::identity(degree); group.generators().len()];
        Self::from_parts(group, degree, images, Source::Matrices)
    }

    fn from_parts(group: Arc<Group>, degree: usize, images: Vec<Matrix>, source: Source) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(images);
        Representation { group, degree, gen_images: Arc::new(cell), source, table: Arc::new(OnceLock::new()) }
    }

    /// Representation by the given permutations of `{0..degree}`, one per
    /// group generator.
    pub fn from_permutations(group: Arc<Group>, degree: usize, perms: Vec<Permutation>) -> Result<Self> {
        if perms.len() != group.generators().len() {
            return Err(Error::Shape(format!("{} permutations for {} generators", perms.len(), group.generators().len())));
        }
        if let Some(i) = perms.iter().position(|p| p.degree() != degree) {
            return Err(Error::Shape(format!("permutation {i} acts on {} points, expected {degree}", perms[i].degree())));
        }
        Ok(Representation {
            group,
            degree,
            gen_images: Arc::new(OnceLock::new()),
            source: Source::Perm(Arc::new(perms)),
            table: Arc::new(OnceLock::new()),
        })
    }

    /// The defining permutation representation: `ρ(σ)_{ij} = 1` iff `j = σ(i)`.
    pub fn perm_rep(group: Arc<Group>) -> Self {
        let perms = group.generators().to_vec();
        let n = group.degree();
        Self::from_permutations(group, n, perms).expect("generators act on the group's points")
    }

    /// Right regular representation on the enumerated elements.
    pub fn regular_rep(group: Arc<Group>, bound: u64) -> Result<Self> {
        let elements = group.elements(bound)?;
        let index: std::collections::HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let perms = group
            .generators()
            .iter()
            .map(|s| Permutation::from_images(elements.iter().map(|x| index[&x.mul(s)]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_permutations(group, elements.len(), perms)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> &[Matrix] {
        self.gen_images.get_or_init(|| match &self.source {
            Source::Perm(perms) => perms.iter().map(perm_matrix).collect(),
            _ => unreachable!("matrix sources store their images"),
        })
    }

    /// Generator permutations if this is a permutation representation.
    pub fn generator_permutations(&self) -> Option<&[Permutation]> {
        match &self.source {
            Source::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.source, Source::Perm(_))
    }

    /// Tries to read the generator images as permutation matrices.
    pub fn as_permutation_rep(&self) -> Result<Representation> {
        if self.is_permutation() {
            return Ok(self.clone());
        }
        let perms = self
            .generator_images()
            .iter()
            .map(matrix_to_perm)
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotPermutation)?;
        Self::from_permutations(self.group.clone(), self.degree, perms)
    }

    fn table(&self) -> &Table {
        self.table.get_or_init(|| self.build_table())
    }

    fn build_table(&self) -> Table {
        let chain = self.group.chain();
        match &self.source {
            Source::Perm(perms) => {
                let id = Permutation::identity(self.degree);
                let levels = chain
                    .levels()
                    .iter()
                    .map(|l| {
                        chain.evaluate_nodes(
                            l.nodes(),
                            &id,
                            &mut |i| (perms[i].clone(), perms[i].inverse()),
                            &mut |a, b| a.mul(b),
                        )
                    })
                    .collect();
                Table::Perms(levels)
            }
            Source::Tensor(a, b) => {
                let levels = chain
                    .levels()
                    .iter()
                    .enumerate()
                    .map(|(li, l)| {
                        (0..l.len())
                            .map(|k| {
                                let (x, xi) = a.transversal_pair(li, k);
                                let (y, yi) = b.transversal_pair(li, k);
                                (x.kronecker(&y), xi.kronecker(&yi))
                            })
                            .collect()
                    })
                    .collect();
                Table::Matrices(levels)
            }
            Source::Dual(a) => {
                let levels = chain
                    .levels()
                    .iter()
                    .enumerate()
                    .map(|(li, l)| {
                        (0..l.len())
                            .map(|k| {
                                let (x, xi) = a.transversal_pair(li, k);
                                (xi.transpose(), x.transpose())
                            })
                            .collect()
                    })
                    .collect();
                Table::Matrices(levels)
            }
            Source::Matrices => {
                let images = self.generator_images();
                let id = Matrix::identity(self.degree);
                let levels = chain
                    .levels()
                    .iter()
                    .map(|l| {
                        chain.evaluate_nodes(
                            l.nodes(),
                            &id,
                            &mut |i| (images[i].clone(), self.generator_inverse(i)),
                            &mut |a, b| a.mul(b),
                        )
                    })
                    .collect();
                Table::Matrices(levels)
            }
        }
    }

    /// Image and inverse image of transversal element `k` of level `level`.
    pub fn transversal_pair(&self, level: usize, k: usize) -> (Matrix, Matrix) {
        match self.table() {
            Table::Matrices(t) => t[level][k].clone(),
            Table::Perms(t) => (perm_matrix(&t[level][k].0), perm_matrix(&t[level][k].1)),
        }
    }

    pub fn transversal_image(&self, level: usize, k: usize) -> Matrix {
        match self.table() {
            Table::Matrices(t) => t[level][k].0.clone(),
            Table::Perms(t) => perm_matrix(&t[level][k].0),
        }
    }

    /// Borrowing access for matrix-backed representations.
    pub fn transversal_matrices(&self, level: usize) -> Option<&[(Matrix, Matrix)]> {
        match self.table() {
            Table::Matrices(t) => Some(&t[level]),
            Table::Perms(_) => None,
        }
    }

    pub fn transversal_permutations(&self, level: usize) -> Option<&[(Permutation, Permutation)]> {
        match self.table() {
            Table::Perms(t) => Some(&t[level]),
            Table::Matrices(_) => None,
        }
    }

    /// Image of a permutation representation's element as a permutation.
    pub fn image_permutation(&self, g: &Permutation) -> Result<Option<Permutation>> {
        let Table::Perms(t) = self.table() else { return Ok(None) };
        let word = self.group.chain().factorize(g)?;
        let mut p = Permutation::identity(self.degree);
        for (l, k) in word {
            p = p.mul(&t[l][k].0);
        }
        Ok(Some(p))
    }

    /// `ρ(g)`, extended from the generators through the stabiliser chain.
    pub fn image(&self, g: &Permutation) -> Result<Matrix> {
        if let Some(p) = self.image_permutation(g)? {
            return Ok(perm_matrix(&p));
        }
        let word = self.group.chain().factorize(g)?;
        let Table::Matrices(t) = self.table() else { unreachable!() };
        let mut acc: Option<Matrix> = None;
        for (l, k) in word {
            let u = &t[l][k].0;
            acc = Some(match acc {
                None => u.clone(),
                Some(a) => a.mul(u),
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::identity(self.degree)))
    }

    /// `Trace(ρ(g))`.
    pub fn trace_of(&self, g: &Permutation) -> Result<Cyclotomic> {
        match &self.source {
            Source::Perm(_) => {
                let p = self.image_permutation(g)?.unwrap();
                Ok(Cyclotomic::from_int((0..p.degree()).filter(|&i| p.apply(i) == i).count() as i64))
            }
            Source::Tensor(a, b) => Ok(&a.trace_of(g)? * &b.trace_of(g)?),
            Source::Dual(a) => Ok(a.trace_of(g)?.conj()),
            Source::Matrices => Ok(self.image(g)?.trace()),
        }
    }

    fn same_group(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.perm == other.group.perm {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn direct_sum(parts: &[Representation]) -> Result<Representation> {
        let first = parts.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        for p in parts {
            first.same_group(p)?;
        }
        let ngens = first.group.generators().len();
        let images = (0..ngens)
            .map(|i| Matrix::block_diag(&parts.iter().map(|p| p.generator_images()[i].clone()).collect::<Vec<_>>()))
            .collect();
        let degree = parts.iter().map(|p| p.degree).sum();
        Ok(Self::from_parts(first.group.clone(), degree, images, Source::Matrices))
    }

    /// `(ρ ⊗ σ)(g) = ρ(g) ⊗ σ(g)`.
    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        self.same_group(other)?;
        let images = self
            .generator_images()
            .iter()
            .zip(other.generator_images())
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(Self::from_parts(
            self.group.clone(),
            self.degree * other.degree,
            images,
            Source::Tensor(Box::new(self.clone()), Box::new(other.clone())),
        ))
    }

    /// `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> Representation {
        if self.is_permutation() {
            return self.clone();
        }
        let images = (0..self.group.generators().len()).map(|i| self.generator_inverse(i).transpose()).collect();
        Self::from_parts(self.group.clone(), self.degree, images, Source::Dual(Box::new(self.clone())))
    }

    pub fn generator_inverse(&self, i: usize) -> Matrix {
        match &self.source {
            Source::Perm(p) => return perm_matrix(&p[i].inverse()),
            Source::Tensor(a, b) => return a.generator_inverse(i).kronecker(&b.generator_inverse(i)),
            Source::Dual(a) => return a.generator_images()[i].transpose(),
            Source::Matrices => {}
        }
        // ρ(g)⁻¹ = ρ(g)^(ord g - 1) avoids elimination over large fields
        let g = &self.generator_images()[i];
        let order = self.group.generators()[i].order();
        let candidate = g.pow(order - 1);
        if g.mul(&candidate).is_identity() {
            candidate
        } else {
            g.invert().expect("generator images are invertible")
        }
    }

    /// `g ↦ M⁻¹ ρ(g) M`.
    pub fn conjugate_by(&self, m: &Matrix) -> Result<Representation> {
        if m.rows() != self.degree || m.cols() != self.degree {
            return Err(Error::Shape(format!("conjugator must be {0}x{0}", self.degree)));
        }
        let m_inv = m.invert()?;
        let images = self.generator_images().iter().map(|a| m_inv.mul(a).mul(m)).collect();
        Ok(Self::from_parts(self.group.clone(), self.degree, images, Source::Matrices))
    }

    /// Entrywise complex conjugate representation.
    pub fn complex_conjugate(&self) -> Representation {
        let images = self.generator_images().iter().map(Matrix::conj).collect();
        Self::from_parts(self.group.clone(), self.degree, images, Source::Matrices)
    }

    /// Action on an invariant subspace, in the coordinates of `w`'s basis.
    pub fn restrict(&self, w: &Subspace) -> Result<Representation> {
        if w.ambient_dim() != self.degree {
            return Err(Error::Shape(format!("subspace lives in dimension {}, rep has degree {}", w.ambient_dim(), self.degree)));
        }
        let basis = w.basis();
        let mut images = Vec::new();
        for (i, g) in self.generator_images().iter().enumerate() {
            let moved = g_apply(self, i, g, basis);
            match basis.solve(&moved)? {
                Some(x) => images.push(x),
                None => return Err(Error::NotInvariant { generator: i }),
            }
        }
        if images.is_empty() {
            return Ok(Self::identity_rep(self.group.clone(), w.dim()));
        }
        Ok(Self::from_parts(self.group.clone(), w.dim(), images, Source::Matrices))
    }

    /// `ρ(g)* = ρ(g)⁻¹` on every generator.
    pub fn is_unitary(&self) -> bool {
        if self.is_permutation() {
            return true;
        }
        self.generator_images().iter().all(|a| a.mul(&a.adjoint()).is_identity())
    }

    /// Samples `pairs` random element pairs and checks `ρ(xy) = ρ(x)ρ(y)`,
    /// and that every generator's image is reproduced through the chain.
    pub fn check_homomorphism(&self, pairs: usize, seed: u64) -> Result<()> {
        let chain = self.group.chain();
        for (i, g) in self.group.generators().iter().enumerate() {
            let via_chain = self.image(g)?;
            let declared = match &self.source {
                Source::Perm(p) => perm_matrix(&p[i]),
                _ => self.generator_images()[i].clone(),
            };
            if via_chain != declared {
                return Err(Error::NotHomomorphism(format!("relations fail for generator {i}")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let x = chain.random_element(&mut rng);
            let y = chain.random_element(&mut rng);
            let lhs = self.image(&x.mul(&y))?;
            let rhs = self.image(&x)?.mul(&self.image(&y)?);
            if lhs != rhs {
                return Err(Error::NotHomomorphism(format!("image({x} * {y}) differs from the product of images")));
            }
        }
        Ok(())
    }

    /// Least common multiple of the cyclotomic orders in the generator images.
    pub fn cyclotomic_order(&self) -> u32 {
        if self.is_permutation() {
            return 1;
        }
        self.generator_images().iter().fold(1, |acc, m| crate::cyclo::lcm(acc, m.field_order()))
    }

    pub fn character(&self, bound: u64) -> Result<Character> {
        Character::of(self, bound)
    }
}

fn g_apply(rep: &Representation, i: usize, g: &Matrix, basis: &Matrix) -> Matrix {
    if let Source::Perm(p) = &rep.source {
        // row j of ρ(g)·B is row p(j) of B
        let p = &p[i];
        return Matrix::from_fn(basis.rows(), basis.cols(), |r, c| basis[(p.apply(r), c)].clone());
    }
    g.mul(basis)
}

/// Permutation matrix with `M[i][p(i)] = 1`.
pub fn perm_matrix(p: &Permutation) -> Matrix {
    Matrix::permutation(&p.images().collect::<Vec<_>>())
}

fn matrix_to_perm(m: &Matrix) -> Option<Permutation> {
    let mut images = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut hit = None;
        for j in 0..m.cols() {
            let e = &m[(i, j)];
            if e.is_one() {
                if hit.is_some() {
                    return None;
                }
                hit = Some(j);
            } else if !e.is_zero() {
                return None;
            }
        }
        images.push(hit?);
    }
    Permutation::from_images(images).ok()
}
