//! Exact unitarisation: `S = Σ_g ρ(g) ρ(g)*`, `S = L D L*`, and conjugation
//! by `L √D`.

use crate::config::{Config, ENTRY_BYTES_ESTIMATE};
use crate::cyclo::{gcd, Cyclotomic};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::sum::{sum_chain, SumStats};

#[derive(Clone, Debug)]
pub struct Unitarized {
    pub tau: Representation,
    /// `L √D`; `τ(g) = basis⁻¹ ρ(g) basis`.
    pub basis: Matrix,
    pub gram: Matrix,
    pub stats: SumStats,
}

/// `Σ_g ρ(g) X ρ(g)*` with `X = I`, as `(ρ ⊗ ρ̄)` summed along the chain when
/// the `n⁴` matrix fits the budget, otherwise level by level.
pub fn invariant_form(rep: &Representation, config: &Config, stats: &mut SumStats) -> Result<Matrix> {
    let n = rep.degree();
    let n2 = (n * n) as u64;
    if n2 * n2 * ENTRY_BYTES_ESTIMATE <= config.memory_budget_bytes {
        let pair = rep.tensor(&rep.complex_conjugate())?;
        let total = sum_chain(&pair, stats);
        let id: Vec<Cyclotomic> = Matrix::identity(n).entries().to_vec();
        return Ok(Matrix::from_fn(n, n, |i, j| {
            let row = i * n + j;
            let mut acc = Cyclotomic::zero();
            for (k, e) in id.iter().enumerate() {
                if e.is_one() && !total[(row, k)].is_zero() {
                    acc = &acc + &total[(row, k)];
                }
            }
            acc
        }));
    }
    // g = u_k ⋯ u_1 gives Σ_g ρ(g) X ρ(g)* = S_k(⋯S_1(X)), S_l(X) = Σ_u ρ(u) X ρ(u)*
    let chain = rep.group().chain();
    let mut x = Matrix::identity(n);
    for l in 0..chain.levels().len() {
        let mut acc = Matrix::zeros(n, n);
        for k in 0..chain.levels()[l].len() {
            let (u, _) = rep.transversal_pair(l, k);
            stats.images += 1;
            stats.ring_ops += 2 * (n * n * n) as u64;
            acc.add_assign(&u.mul(&x).mul(&u.adjoint()));
        }
        x = acc;
    }
    Ok(x)
}

/// Largest field order the square roots of the pivots may jointly need;
/// beyond it exact arithmetic in `τ` becomes impractically slow.
pub const MAX_ROOT_ORDER: u64 = 840;

pub fn unitarize(rep: &Representation, config: &Config) -> Result<Unitarized> {
    let mut stats = SumStats::default();
    let s = invariant_form(rep, config, &mut stats)?;
    for (i, g) in rep.generator_images().iter().enumerate() {
        if g.mul(&s).mul(&g.adjoint()) != s {
            return Err(Error::Inconsistent(format!("invariant form is not fixed by generator {i}")));
        }
    }
    let (l, d) = s.ldl_hermitian()?;
    let n = rep.degree();
    let mut pivots = Vec::with_capacity(n);
    let mut order = 1u64;
    for j in 0..n {
        let dj = &d[(j, j)];
        let q = dj.as_rational().ok_or_else(|| Error::NonRationalPivot { index: j, value: dj.to_string() })?;
        let c = Cyclotomic::sqrt_conductor(&q).ok_or(Error::NegativePivot { index: j })?;
        order = order / gcd(order, c) * c;
        if order > MAX_ROOT_ORDER {
            return Err(Error::FieldTooLarge { order, bound: MAX_ROOT_ORDER });
        }
        pivots.push(q);
    }
    let mut roots = Vec::with_capacity(n);
    let mut inv_roots = Vec::with_capacity(n);
    for q in &pivots {
        let r = Cyclotomic::sqrt_rational(q)?;
        inv_roots.push(r.inv()?);
        roots.push(r);
    }
    let basis = l.mul(&Matrix::diagonal(&roots));
    let basis_inv = Matrix::diagonal(&inv_roots).mul(&l.invert()?);
    let images: Vec<Matrix> = rep.generator_images().iter().map(|g| basis_inv.mul(g).mul(&basis)).collect();
    let tau = Representation::new(rep.group().clone(), images)?;
    if !tau.is_unitary() {
        return Err(Error::Inconsistent("conjugated representation is not unitary".into()));
    }
    Ok(Unitarized { tau, basis, gram: s, stats })
}
