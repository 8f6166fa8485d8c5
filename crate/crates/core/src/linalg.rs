//! Dense exact linear algebra over [`Cyclotomic`].

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::cyclo::{lcm, Cyclotomic, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of cyclotomic numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Term count, then coefficient size; ties keep the earliest row.
fn pivot_cost(x: &Cyclotomic) -> (usize, u64) {
    let mut bits = 0u64;
    for (_, c) in x.terms() {
        bits += match c.to_i64_pair() {
            Some((n, d)) => (64 - n.unsigned_abs().leading_zeros() + 64 - d.leading_zeros()) as u64,
            None => 256,
        };
    }
    (x.terms().count(), bits)
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Cyclotomic>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| Cyclotomic::from_int(rows[i][j]))
    }

    pub fn diagonal(entries: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Permutation matrix with `M[i][images[i]] = 1`.
    pub fn permutation(images: &[usize]) -> Self {
        let n = images.len();
        let mut m = Self::zeros(n, n);
        for (i, &j) in images.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Side-by-side concatenation.
    pub fn hcat(parts: &[Matrix]) -> Result<Matrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Shape("hcat: row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + &self[(i, i)];
        }
        t
    }

    pub fn scale(&self, s: &Cyclotomic) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_rational(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale(s)).collect() }
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add_assign shape");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled_assign(&mut self, s: &Cyclotomic, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add_scaled_assign shape");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + &(b * s);
            }
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        if n * m * p >= 8 {
            if let Some(data) = crate::cyclo::dense_matmul(&self.data, &other.data, n, m, p) {
                return Ok(Matrix { rows: n, cols: p, data });
            }
        }
        let mut out = Matrix::zeros(n, p);
        for i in 0..n {
            let out_row = &mut out.data[i * p..(i + 1) * p];
            for k in 0..m {
                let a = &self.data[i * m + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * p..(k + 1) * p];
                if a.is_one() {
                    for (o, b) in out_row.iter_mut().zip(b_row) {
                        if !b.is_zero() {
                            *o = &*o + b;
                        }
                    }
                } else {
                    for (o, b) in out_row.iter_mut().zip(b_row) {
                        if !b.is_zero() {
                            *o = &*o + &(a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.try_sub(other).expect("matrix difference shape")
    }

    /// Kronecker product: block `(x, y)` of the result is `A[x][y] · B`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(r, c);
        for x in 0..self.rows {
            for y in 0..self.cols {
                let a = &self[(x, y)];
                if a.is_zero() {
                    continue;
                }
                for i in 0..other.rows {
                    for j in 0..other.cols {
                        let b = &other[(i, j)];
                        if !b.is_zero() {
                            out[(x * other.rows + i, y * other.cols + j)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Least common multiple of the entries' cyclotomic orders.
    pub fn field_order(&self) -> u32 {
        self.data.iter().fold(1, |acc, x| lcm(acc, x.order()))
    }

    /// Moves every entry to its minimal field.
    pub fn reduce_orders(&mut self) {
        for x in &mut self.data {
            x.reduce_order();
        }
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            kernel[(f, k)] = Cyclotomic::one();
            for (i, &p) in pivots.iter().enumerate() {
                kernel[(p, k)] = -&m[(i, f)];
            }
        }
        let column_space = self.select_columns(&pivots);
        RowReduction {
            rref: m,
            rank,
            kernel: Subspace { ambient_dim: self.cols, basis: kernel },
            column_space: Subspace { ambient_dim: self.rows, basis: column_space },
            pivots,
        }
    }

    /// Gauss–Jordan on the first `ncols` columns (the rest ride along);
    /// the pivot is the simplest nonzero entry of the column. Returns pivot columns.
    fn rref_in_place(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let w = self.cols;
        for col in 0..ncols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !self.data[i * w + col].is_zero())
                .min_by_key(|&i| pivot_cost(&self.data[i * w + col]))
            else {
                continue;
            };
            if p != r {
                for j in 0..w {
                    self.data.swap(p * w + j, r * w + j);
                }
            }
            let inv = self.data[r * w + col].inv().expect("nonzero pivot");
            for j in col..w {
                let e = &self.data[r * w + j];
                if !e.is_zero() {
                    self.data[r * w + j] = e * &inv;
                }
            }
            let pivot_row: Vec<Cyclotomic> = self.data[r * w..(r + 1) * w].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * w + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..w {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let t = &pivot_row[j] * &factor;
                    self.data[i * w + j] = &self.data[i * w + j] - &t;
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place(self.cols).len()
    }

    /// Solves `self · X = rhs`; `None` if inconsistent. Free variables are 0.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::Shape(format!(
                "solve: {} rows vs rhs {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut aug = Matrix::hcat(&[self.clone(), rhs.clone()])?;
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            for j in 0..rhs.cols {
                if !aug[(i, self.cols + j)].is_zero() {
                    return Ok(None);
                }
            }
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = aug[(i, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// `self^e` by repeated squaring; square matrices only.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::hcat(&[self.clone(), Matrix::identity(n)])?;
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(aug.submatrix(0, n, n, n))
    }

    /// Hermitian `A = L D L*` with unit lower-triangular `L` and real diagonal `D`.
    pub fn ldl_hermitian(&self) -> Result<(Matrix, Matrix)> {
        if !self.is_square() {
            return Err(Error::Shape("ldl: matrix not square".into()));
        }
        if !self.is_hermitian() {
            return Err(Error::InvalidInput("ldl: matrix is not Hermitian".into()));
        }
        let n = self.rows;
        let mut l = Matrix::identity(n);
        let mut d: Vec<Cyclotomic> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                let ljk = &l[(j, k)];
                if ljk.is_zero() {
                    continue;
                }
                let t = &(ljk * &ljk.conj()) * &d[k];
                dj = &dj - &t;
            }
            dj.reduce_order();
            if dj.is_zero() {
                return Err(Error::ZeroPivot { index: j });
            }
            if dj.to_complex().re < 0.0 {
                return Err(Error::NegativePivot { index: j });
            }
            let dj_inv = dj.inv()?;
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    let (lik, ljk) = (&l[(i, k)], &l[(j, k)]);
                    if lik.is_zero() || ljk.is_zero() {
                        continue;
                    }
                    let t = &(lik * &ljk.conj()) * &d[k];
                    s = &s - &t;
                }
                l[(i, j)] = &s * &dj_inv;
            }
            d.push(dj);
        }
        Ok((l, Matrix::diagonal(&d)))
    }
}

/// `⟨A, B⟩ = Trace(A B*)`.
pub fn trace_inner_product(a: &Matrix, b: &Matrix) -> Result<Cyclotomic> {
    a.check_same_shape(b)?;
    let mut acc = Cyclotomic::zero();
    for (x, y) in a.data.iter().zip(&b.data) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * &y.conj());
    }
    Ok(acc)
}

/// Result of [`Matrix::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Subspace,
    pub column_space: Subspace,
}

/// A subspace given by linearly independent basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `m` (dependent columns are dropped).
    pub fn span(m: &Matrix) -> Subspace {
        m.row_reduce().column_space
    }

    /// Wraps `basis` whose columns must be linearly independent.
    pub fn from_basis(basis: Matrix) -> Result<Subspace> {
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidInput("subspace basis is linearly dependent".into()));
        }
        Ok(Subspace { ambient_dim: basis.rows(), basis })
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn into_basis(self) -> Matrix {
        self.basis
    }

    /// Coordinates of the columns of `v` in this basis, if they all lie in it.
    pub fn coordinates(&self, v: &Matrix) -> Result<Option<Matrix>> {
        self.basis.solve(v)
    }

    pub fn contains(&self, v: &Matrix) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { rows: self.rows, cols: self.cols, entries: self.data.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        Matrix::from_vec(j.rows, j.cols, j.entries).map_err(serde::de::Error::custom)
    }
}
