//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element of order `n` is stored by its coordinates in the power basis
//! `1, ζ_n, …, ζ_n^{φ(n)-1}` of Q(ζ_n) = Q[x]/Φ_n(x), trailing zeros
//! trimmed. Orders congruent to 2 mod 4 never occur (Q(ζ_{2k}) = Q(ζ_k) for
//! odd `k`), and any element whose only coordinate is the constant term is
//! stored at order 1. Arithmetic works in the compositum Q(ζ_lcm) and does not
//! otherwise shrink the order; [`Cyclotomic::reduce_order`] moves an element
//! to its minimal field, after which the stored data is canonical.

mod dense;
mod field;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
pub use rational::Rational;

pub(crate) use dense::matmul as dense_matmul;
pub(crate) use field::{gcd, lcm, prime_factors};
use field::{field, normalise_order};

type Coeffs = SmallVec<[Rational; 1]>;

/// An exact element of some cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Coeffs,
}

fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { order: 1, coeffs: smallvec![r] }
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let mut m = BTreeMap::new();
        m.insert(k.rem_euclid(n as i64) as u64, Rational::one());
        Self::from_exponents(&m, n).expect("n > 0")
    }

    /// Canonical element `Σ c_e ζ_n^e`, reduced to its minimal field.
    pub fn canonicalize(coeffs: &BTreeMap<u64, Rational>, n: u32) -> Result<Self> {
        let mut z = Self::from_exponents(coeffs, n)?;
        z.reduce_order();
        Ok(z)
    }

    /// Builds `Σ c_e ζ_n^e` in Q(ζ_n) without shrinking the order.
    pub fn from_exponents(coeffs: &BTreeMap<u64, Rational>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        let target = normalise_order(n);
        let f = field(target);
        let mut dense = vec![Rational::zero(); f.phi];
        for (&e, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let e = e % n as u64;
            // ζ_{2k} = -ζ_k^{(k+1)/2} for odd k
            let (e, c) = if target != n {
                let k = target as u64;
                let sign_neg = e % 2 == 1;
                let e2 = (e * k.div_ceil(2)) % k;
                (e2, if sign_neg { -c } else { c.clone() })
            } else {
                (e, c.clone())
            };
            for &(j, t) in &f.reduce[e as usize] {
                dense[j as usize].add_mul_assign(&c, &Rational::from_int(t));
            }
        }
        Ok(Self::from_dense(target, dense.into_iter().collect()))
    }

    pub(crate) fn from_dense(order: u32, mut coeffs: Coeffs) -> Self {
        trim(&mut coeffs);
        if coeffs.len() <= 1 {
            Cyclotomic { order: 1, coeffs }
        } else {
            Cyclotomic { order, coeffs }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs in the power basis.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.order != 1 {
            return None;
        }
        Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
    }

    /// Dense power-basis coordinates of `self` viewed inside Q(ζ_target);
    /// `target` must be a multiple of the current order.
    pub fn coords_in(&self, target: u32) -> Vec<Rational> {
        let target = normalise_order(target);
        assert!(target.is_multiple_of(self.order), "order {} does not divide {}", self.order, target);
        let f = field(target);
        let mut out = vec![Rational::zero(); f.phi];
        if self.order == target {
            for (i, c) in self.coeffs.iter().enumerate() {
                out[i] = c.clone();
            }
            return out;
        }
        let step = (target / self.order) as usize;
        for (k, c) in self.terms() {
            let e = (k as usize * step) % target as usize;
            for &(j, t) in &f.reduce[e] {
                out[j as usize].add_mul_assign(c, &Rational::from_int(t));
            }
        }
        out
    }

    /// Re-express `self` in Q(ζ_target) (which must contain the current field).
    pub fn embed(&self, target: u32) -> Self {
        let target = normalise_order(target);
        if target == self.order || self.order == 1 {
            return self.clone();
        }
        Self::from_dense(target, self.coords_in(target).into_iter().collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn combine_add(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let order = lcm(self.order, other.order);
        let mut a: Coeffs = if self.order == order {
            self.coeffs.clone()
        } else {
            self.coords_in(order).into_iter().collect()
        };
        let b_dense;
        let b: &[Rational] = if other.order == order {
            &other.coeffs
        } else {
            b_dense = other.coords_in(order);
            &b_dense
        };
        if a.len() < b.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            if y.is_zero() {
                continue;
            }
            *x = if negate { &*x - y } else { &*x + y };
        }
        Self::from_dense(order, a)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let order = lcm(self.order, other.order);
        let f = field(order);
        let a_dense;
        let a: &[Rational] = if self.order == order {
            &self.coeffs
        } else {
            a_dense = self.coords_in(order);
            &a_dense
        };
        let b_dense;
        let b: &[Rational] = if other.order == order {
            &other.coeffs
        } else {
            b_dense = other.coords_in(order);
            &b_dense
        };
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j].add_mul_assign(x, y);
                }
            }
        }
        let phi = f.phi;
        if prod.len() > phi {
            let high: Vec<Rational> = prod.drain(phi..).collect();
            for (k, c) in high.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = (phi + k) % order as usize;
                for &(j, t) in &f.reduce[e] {
                    prod[j as usize].add_mul_assign(c, &Rational::from_int(t));
                }
            }
        }
        Self::from_dense(order, prod.into_iter().collect())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].inv().unwrap()));
        }
        // Solve (multiplication-by-self) · y = 1 in the power basis.
        let f = field(self.order);
        let phi = f.phi;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let basis = Cyclotomic::from_dense(self.order, {
                let mut v: Coeffs = smallvec![Rational::zero(); j + 1];
                v[j] = Rational::one();
                v
            });
            let p = self.mul_impl(&basis);
            cols.push(p.coords_in(self.order));
        }
        // row-major augmented matrix
        let mut m: Vec<Vec<Rational>> =
            (0..phi).map(|i| (0..phi).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::one();
        let y = solve_dense(&mut m, &mut rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_dense(self.order, y.into_iter().collect()))
    }

    /// The field automorphism ζ ↦ ζ^a (`gcd(a, order) = 1`).
    pub fn galois(&self, a: i64) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as i64;
        let a = a.rem_euclid(n) as u64;
        let f = field(self.order);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in self.terms() {
            let e = (k as u64 * a) % n as u64;
            for &(j, t) in &f.reduce[e as usize] {
                out[j as usize].add_mul_assign(c, &Rational::from_int(t));
            }
        }
        Self::from_dense(self.order, out.into_iter().collect())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Numerical value under ζ_n ↦ exp(2πi/n).
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.terms()
            .map(|(k, c)| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n) * c.to_f64()
            })
            .sum()
    }

    /// Moves `self` into the smallest cyclotomic field containing it.
    pub fn reduce_order(&mut self) {
        'outer: loop {
            if self.order == 1 {
                return;
            }
            let n = self.order;
            for p in prime_factors(n as u64) {
                let m = normalise_order(n / p as u32);
                if m == n {
                    continue;
                }
                if let Some(z) = self.restrict_to(m) {
                    *self = z;
                    continue 'outer;
                }
            }
            return;
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce_order();
        self
    }

    /// Returns `self` expressed in Q(ζ_m) if it lies there.
    fn restrict_to(&self, m: u32) -> Option<Self> {
        let n = self.order;
        debug_assert!(n.is_multiple_of(m));
        // fixed by every σ_a with a ≡ 1 (mod m)?
        let mut a = 1 + m as u64;
        while a < n as u64 {
            if gcd(a, n as u64) == 1 && self.galois(a as i64) != *self {
                return None;
            }
            a += m as u64;
        }
        // Solve for coordinates in the subfield basis.
        let fm = field(m);
        let phi_n = field(n).phi;
        let cols: Vec<Vec<Rational>> = (0..fm.phi)
            .map(|j| Cyclotomic::root_of_unity(m, j as i64).coords_in(n))
            .collect();
        let target = self.coords_in(n);
        // overdetermined but consistent: eliminate on the normal equations of a
        // square subsystem picked by pivoting
        let mut rows: Vec<Vec<Rational>> = (0..phi_n)
            .map(|i| {
                let mut r: Vec<Rational> = (0..fm.phi).map(|j| cols[j][i].clone()).collect();
                r.push(target[i].clone());
                r
            })
            .collect();
        let sol = solve_consistent(&mut rows, fm.phi)?;
        Some(Self::from_dense(m, sol.into_iter().collect()))
    }

    /// Order of the cyclotomic field generated by `sqrt(r)` for positive `r`.
    pub fn sqrt_conductor(r: &Rational) -> Option<u64> {
        if !r.is_positive() {
            return None;
        }
        let (num, den) = (r.numer().to_u64()?, r.denom().to_u64()?);
        let (_, qn) = square_split(num);
        let (_, qd) = square_split(den);
        let g = gcd(qn, qd);
        let squarefree = (qn / g) * (qd / g);
        Some(if squarefree % 4 == 1 { squarefree } else { 4 * squarefree })
    }

    /// Positive square root of a positive rational, exact.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidInput(format!("sqrt of non-positive rational {r}")));
        }
        let (num, den) = (r.numer(), r.denom());
        let (num, den) = match (num.to_u64(), den.to_u64()) {
            (Some(n), Some(d)) => (n, d),
            _ => return Err(Error::InvalidInput(format!("radicand {r} too large to factor"))),
        };
        // sqrt(n/d) = sqrt(n d) / d = (s / d) sqrt(N) with N squarefree
        let (sn, qn) = square_split(num);
        let (sd, qd) = square_split(den);
        // sqrt(qn * qd) with qn, qd squarefree: pull out gcd
        let g = gcd(qn, qd);
        let squarefree = (qn / g) * (qd / g);
        let conductor = if squarefree % 4 == 1 { squarefree } else { 4 * squarefree };
        if conductor > MAX_SQRT_CONDUCTOR {
            return Err(Error::InvalidInput(format!(
                "sqrt({r}) needs cyclotomic order {conductor}, above {MAX_SQRT_CONDUCTOR}"
            )));
        }
        let scale = Rational::from_bigints(
            num_bigint::BigInt::from(sn) * num_bigint::BigInt::from(g),
            num_bigint::BigInt::from(sd) * num_bigint::BigInt::from(qd),
        );
        let mut root = Cyclotomic::one();
        for p in prime_factors(squarefree) {
            root = &root * &sqrt_prime(p);
        }
        let mut root = root.scale(&scale);
        if root.to_complex().re < 0.0 {
            root = -&root;
        }
        root.reduce_order();
        Ok(root)
    }
}

/// Largest field order `sqrt_rational` will build.
const MAX_SQRT_CONDUCTOR: u64 = 4096;

/// Writes `n = s^2 * q` with `q` squarefree; returns `(s, q)`.
fn square_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut q = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            q *= p;
        }
        p += 1;
    }
    q *= n;
    (s, q)
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    if result == 1 {
        1
    } else if result == 0 {
        0
    } else {
        -1
    }
}

/// √p via the quadratic Gauss sum (√2 = ζ_8 + ζ_8^7).
fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, 7);
    }
    let mut m = BTreeMap::new();
    for a in 1..p {
        m.insert(a, Rational::from_int(legendre(a, p)));
    }
    let g = Cyclotomic::from_exponents(&m, p as u32).expect("p > 0");
    let r = if p % 4 == 1 { g } else { &Cyclotomic::root_of_unity(4, 3) * &g };
    if r.to_complex().re < 0.0 {
        -&r
    } else {
        r
    }
}

/// Gaussian elimination on a square system; `None` if singular.
fn solve_dense(m: &mut [Vec<Rational>], rhs: &mut [Rational]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv().unwrap();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..n {
                let t = &m[col][j] * &factor;
                m[r][j] = &m[r][j] - &t;
            }
            let t = &rhs[col] * &factor;
            rhs[r] = &rhs[r] - &t;
        }
    }
    Some(rhs.to_vec())
}

/// Solves an augmented (rows × (k+1)) system known to have full column rank;
/// `None` if inconsistent.
fn solve_consistent(rows: &mut [Vec<Rational>], k: usize) -> Option<Vec<Rational>> {
    let nrows = rows.len();
    let mut r = 0;
    for col in 0..k {
        let piv = (r..nrows).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(r, piv);
        let inv = rows[r][col].inv().unwrap();
        for j in col..=k {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..nrows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..=k {
                let t = &rows[r][j] * &factor;
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.order == 1 || other.order == 1 {
            // a non-rational stored at order > 1 always has a nonconstant coordinate
            return false;
        }
        let l = lcm(self.order, other.order);
        self.coords_in(l) == other.coords_in(l)
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine_add(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine_add(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.order)?,
                _ => write!(f, "{c}*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn int_to_json(v: num_bigint::BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn json_to_int(v: &serde_json::Value) -> std::result::Result<num_bigint::BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(num_bigint::BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient part {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
        other => Err(format!("expected integer, got {other}")),
    }
}

impl Serialize for Cyclotomic {
    /// Written in the smallest field containing the value, so equal values
    /// serialise identically.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let z = self.clone().reduced();
        let coeffs: Vec<serde_json::Value> = z
            .terms()
            .map(|(k, c)| serde_json::json!([k, int_to_json(c.numer()), int_to_json(c.denom())]))
            .collect();
        serde_json::json!({ "order": z.order, "coeffs": coeffs }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        // bare integers and rationals are accepted as shorthand
        match &v {
            serde_json::Value::Number(_) => {
                return Ok(Cyclotomic::from_rational(
                    json_to_int(&v).map_err(D::Error::custom)?.into(),
                ))
            }
            serde_json::Value::String(s) => {
                return Ok(Cyclotomic::from_rational(s.parse().map_err(D::Error::custom)?))
            }
            _ => {}
        }
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| D::Error::custom("cyclotomic: missing or invalid \"order\""))?;
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| D::Error::custom("cyclotomic: missing \"coeffs\" array"))?;
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for term in coeffs {
            let t = term
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| D::Error::custom("cyclotomic: each term must be [exp, num, den]"))?;
            let e = t[0].as_u64().ok_or_else(|| D::Error::custom("cyclotomic: bad exponent"))?;
            let num = json_to_int(&t[1]).map_err(D::Error::custom)?;
            let den = json_to_int(&t[2]).map_err(D::Error::custom)?;
            if num_traits::Zero::is_zero(&den) {
                return Err(D::Error::custom("cyclotomic: zero denominator"));
            }
            let entry = map.entry(e % order.max(1)).or_insert_with(Rational::zero);
            *entry = &*entry + &Rational::from_bigints(num, den);
        }
        let order = u32::try_from(order).map_err(|_| D::Error::custom("order too large"))?;
        Cyclotomic::canonicalize(&map, order).map_err(D::Error::custom)
    }
}
