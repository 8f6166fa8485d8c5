//! Matrix products over a common cyclotomic field using machine integers.
//!
//! Both operands are scaled to integer power-basis coordinates over one
//! denominator; products are accumulated unreduced in `i128` and folded
//! modulo Φ_n once per output entry. Returns `None` whenever the entries are
//! too large for that to be safe, and the caller falls back to exact
//! arithmetic.

use super::field::{field, normalise_order};
use super::{lcm, Cyclotomic, Rational};

const ENTRY_BOUND: i64 = 1 << 40;

struct Scaled {
    phi: usize,
    den: i64,
    coeffs: Vec<i64>,
    nonzero: Vec<bool>,
}

fn scale(entries: &[Cyclotomic], order: u32, phi: usize) -> Option<Scaled> {
    let mut den: i64 = 1;
    for x in entries {
        for c in x.coeffs() {
            let (_, d) = c.to_i64_pair()?;
            if d != 1 {
                let g = super::gcd(den as u64, d as u64) as i64;
                den = den.checked_mul(d / g)?;
                if den >= ENTRY_BOUND {
                    return None;
                }
            }
        }
    }
    let mut coeffs = vec![0i64; entries.len() * phi];
    let mut nonzero = vec![false; entries.len()];
    for (idx, x) in entries.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        nonzero[idx] = true;
        let dense;
        let cs: &[Rational] = if x.order() == order || x.order() == 1 {
            x.coeffs()
        } else {
            dense = x.coords_in(order);
            &dense
        };
        for (j, c) in cs.iter().enumerate() {
            let (n, d) = c.to_i64_pair()?;
            let v = n.checked_mul(den / d)?;
            if v.abs() >= ENTRY_BOUND {
                return None;
            }
            coeffs[idx * phi + j] = v;
        }
    }
    Some(Scaled { phi, den, coeffs, nonzero })
}

/// `a (n×m) · b (m×p)` in row-major order, or `None` if out of range.
pub(crate) fn matmul(a: &[Cyclotomic], b: &[Cyclotomic], n: usize, m: usize, p: usize) -> Option<Vec<Cyclotomic>> {
    let order = normalise_order(a.iter().chain(b).fold(1, |acc, x| lcm(acc, x.order())));
    let f = field(order);
    let phi = f.phi;
    if (m as u64) * (phi as u64).pow(2) >= 1 << 40 {
        return None;
    }
    let sa = scale(a, order, phi)?;
    let sb = scale(b, order, phi)?;
    let den = sa.den as i128 * sb.den as i128;
    let width = 2 * phi - 1;
    let mut acc = vec![0i128; p * width];
    let mut out = Vec::with_capacity(n * p);
    for i in 0..n {
        acc.iter_mut().for_each(|v| *v = 0);
        for k in 0..m {
            if !sa.nonzero[i * m + k] {
                continue;
            }
            let x = &sa.coeffs[(i * m + k) * sa.phi..(i * m + k + 1) * sa.phi];
            for j in 0..p {
                if !sb.nonzero[k * p + j] {
                    continue;
                }
                let y = &sb.coeffs[(k * p + j) * phi..(k * p + j + 1) * phi];
                let slot = &mut acc[j * width..(j + 1) * width];
                for (s, &xs) in x.iter().enumerate() {
                    if xs == 0 {
                        continue;
                    }
                    let xs = xs as i128;
                    for (t, &yt) in y.iter().enumerate() {
                        slot[s + t] += xs * yt as i128;
                    }
                }
            }
        }
        for j in 0..p {
            let slot = &mut acc[j * width..(j + 1) * width];
            for e in phi..width {
                let c = slot[e];
                if c == 0 {
                    continue;
                }
                slot[e] = 0;
                for &(idx, t) in &f.reduce[e % order as usize] {
                    let v = c.checked_mul(t as i128)?;
                    slot[idx as usize] = slot[idx as usize].checked_add(v)?;
                }
            }
            let coeffs = slot[..phi].iter().map(|&c| Rational::from_i128(c, den)).collect();
            out.push(Cyclotomic::from_dense(order, coeffs));
        }
    }
    Some(out)
}
