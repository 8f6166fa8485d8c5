//! Per-order tables for the power basis of Q(ζ_n) modulo the n-th cyclotomic
//! polynomial.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Reduction data for one cyclotomic field.
#[derive(Debug)]
pub(crate) struct Field {
    #[allow(dead_code)]
    pub n: u32,
    pub phi: usize,
    /// `reduce[e]` is `x^e mod Φ_n` for `e < n`, as sparse `(index, coeff)`.
    pub reduce: Vec<Vec<(u32, i64)>>,
}

/// Field tables are memoised process-wide; entries are immutable once built.
static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();

pub(crate) fn field(n: u32) -> Arc<Field> {
    let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let f = Arc::new(build(n));
    cache.write().unwrap().entry(n).or_insert(f).clone()
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    let g = gcd(a as u64, b as u64);
    let l = (a as u64 / g) * b as u64;
    u32::try_from(l).expect("cyclotomic order overflow")
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut phi = n as u64;
    for p in prime_factors(n as u64) {
        phi = phi / p * (p - 1);
    }
    phi as usize
}

/// Q(ζ_{2k}) = Q(ζ_k) for odd k; orders ≡ 2 (mod 4) are never used.
pub(crate) fn normalise_order(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= c * y;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients of Φ_n, lowest degree first.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut den = vec![1i64];
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    poly_div_exact(&num, &den)
}

fn build(n: u32) -> Field {
    let phi = euler_phi(n);
    let cyc = cyclotomic_polynomial(n);
    debug_assert_eq!(cyc.len(), phi + 1);
    let mut reduce = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    if phi > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        reduce.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i as u32, *c))
                .collect(),
        );
        // multiply by x and reduce the overflowing x^phi term
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] = cur[i].checked_sub(top * cyc[i]).expect("reduction overflow");
            }
        }
    }
    Field { n, phi, reduce }
}
