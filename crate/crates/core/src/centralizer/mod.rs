//! Bases of the centraliser ring `{X : X ρ(g) = ρ(g) X}`.

use serde::Serialize;

use crate::alt::{BlockDiagonalModel, Intertwiner};
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::{trace_inner_product, Matrix, Subspace};
use crate::perm::{orbitals, PermGroup};
use crate::rep::Representation;

#[derive(Clone, Debug)]
pub struct CentralizerBasis {
    pub elements: Vec<Matrix>,
    pub orthonormal: bool,
    pub star_closed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CentralizerReport {
    pub commutes: bool,
    pub orthonormal: bool,
    pub star_closed: bool,
    pub independent: bool,
    /// One line per failed check, naming a witness.
    pub failures: Vec<String>,
}

impl CentralizerReport {
    /// True when every property the basis claims actually holds.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CentralizerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The elements flattened into columns of one `n² × k` matrix.
    pub fn as_columns(&self) -> Matrix {
        vectorised(&self.elements)
    }
}

fn vectorised(elements: &[Matrix]) -> Matrix {
    let n2 = elements.first().map_or(0, |m| m.rows() * m.cols());
    Matrix::from_fn(n2, elements.len(), |r, c| elements[c].entries()[r].clone())
}

/// `Σ m_i²` matrices, one per `(summand, copy j, copy k)`, each an identity
/// block at copy position `(j, k)` of the block-diagonal model. With
/// `blocks` they are returned as such (commuting with `τ`); otherwise
/// conjugated into the original basis as `A⁻¹ E A`.
pub fn centralizer_from_decomposition(
    rep: &Representation,
    model: &BlockDiagonalModel,
    intertwiner: &Intertwiner,
    blocks: bool,
) -> Result<CentralizerBasis> {
    let n = rep.degree();
    if model.tau.degree() != n || intertwiner.a.rows() != n || intertwiner.a.cols() != n {
        return Err(Error::Inconsistent("model, intertwiner and rep disagree in degree".into()));
    }
    let mut elements = Vec::new();
    let mut at = 0;
    for e in &model.layout {
        for j in 0..e.multiplicity {
            for k in 0..e.multiplicity {
                let mut m = Matrix::zeros(n, n);
                for t in 0..e.degree {
                    m[(at + j * e.degree + t, at + k * e.degree + t)] = Cyclotomic::one();
                }
                elements.push(if blocks { m } else { intertwiner.a_inv.mul(&m).mul(&intertwiner.a) });
            }
        }
        at += e.multiplicity * e.degree;
    }
    if at != n {
        return Err(Error::Inconsistent(format!("layout covers {at} of {n} dimensions")));
    }
    // the block form is *-closed; conjugates are when the rep is unitary
    let star_closed = blocks || rep.is_unitary();
    Ok(CentralizerBasis { elements, orthonormal: false, star_closed })
}

/// Orbital matrices `E_i / √(#ones)` of a permutation representation.
pub fn orbital_centralizer_basis(rep: &Representation) -> Result<CentralizerBasis> {
    let perms = match rep.generator_permutations() {
        Some(p) => p.to_vec(),
        None => {
            let p = rep.as_permutation_rep().map_err(|_| Error::NotPermutation)?;
            p.generator_permutations().ok_or(Error::NotPermutation)?.to_vec()
        }
    };
    let action = PermGroup::new(rep.degree(), perms)?;
    let elements = orbitals(&action)
        .orbitals
        .iter()
        .map(|o| {
            let norm = Cyclotomic::sqrt_rational(&Rational::from_int(o.len() as i64))?;
            Ok(o.adjacency(rep.degree()).scale(&norm.inv()?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralizerBasis { elements, orthonormal: true, star_closed: true })
}

/// Exact solution space of `X ρ(g) = ρ(g) X` over the generators, as
/// matrices (row-major unknowns). Test oracle; quadratic in `degree²`.
pub fn brute_force_centralizer(rep: &Representation) -> Vec<Matrix> {
    let n = rep.degree();
    let images = rep.generator_images();
    let mut system = Matrix::zeros(images.len() * n * n, n * n);
    for (k, g) in images.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = k * n * n + i * n + j;
                for l in 0..n {
                    // (Xρ)_{ij} = Σ_l X_{il} ρ_{lj};  (ρX)_{ij} = Σ_l ρ_{il} X_{lj}
                    let a = &g[(l, j)];
                    if !a.is_zero() {
                        system[(row, i * n + l)] = &system[(row, i * n + l)] + a;
                    }
                    let b = &g[(i, l)];
                    if !b.is_zero() {
                        system[(row, l * n + j)] = &system[(row, l * n + j)] - b;
                    }
                }
            }
        }
    }
    let kernel = system.row_reduce().kernel;
    let basis = kernel.basis();
    (0..basis.cols()).map(|c| Matrix::from_fn(n, n, |i, j| basis[(i * n + j, c)].clone())).collect()
}

/// Checks commutation, independence, orthonormality and *-closure; claims
/// the basis does not make are reported but not counted as failures.
pub fn verify_centralizer(rep: &Representation, basis: &CentralizerBasis) -> CentralizerReport {
    let mut report = CentralizerReport { commutes: true, orthonormal: true, star_closed: true, independent: true, failures: Vec::new() };
    let n = rep.degree();
    for (k, b) in basis.elements.iter().enumerate() {
        if b.rows() != n || b.cols() != n {
            report.commutes = false;
            report.failures.push(format!("element {k} is {}x{}, expected {n}x{n}", b.rows(), b.cols()));
            return report;
        }
    }
    'outer: for (k, b) in basis.elements.iter().enumerate() {
        for (i, g) in rep.generator_images().iter().enumerate() {
            if b.mul(g) != g.mul(b) {
                report.commutes = false;
                report.failures.push(format!("element {k} does not commute with generator {i}"));
                break 'outer;
            }
        }
    }
    let cols = basis.as_columns();
    if cols.rank() != basis.len() {
        report.independent = false;
        report.failures.push("elements are linearly dependent".into());
    }
    'gram: for (i, a) in basis.elements.iter().enumerate() {
        for (j, b) in basis.elements.iter().enumerate().skip(i) {
            let ip = trace_inner_product(a, b).expect("shapes checked");
            let ok = if i == j { ip.is_one() } else { ip.is_zero() };
            if !ok {
                report.orthonormal = false;
                if basis.orthonormal {
                    report.failures.push(format!("inner product of elements {i} and {j} is {ip}"));
                }
                break 'gram;
            }
        }
    }
    let span = Subspace::span(&cols);
    for (k, b) in basis.elements.iter().enumerate() {
        let star = vectorised(&[b.adjoint()]);
        if !span.contains(&star).expect("shapes checked") {
            report.star_closed = false;
            if basis.star_closed {
                report.failures.push(format!("adjoint of element {k} is outside the span"));
            }
            break;
        }
    }
    report
}
