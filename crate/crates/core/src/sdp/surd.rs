use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::cyclo::rational::to_decimal_string;
use crate::cyclo::Rational;

/// An exact real number `Σ q_s √s` with distinct squarefree radicands `s`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

/// Splits `n = f² s` with `s` squarefree.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    let (mut f, mut s) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, s * n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Surd {
    pub fn zero() -> Surd {
        Surd::default()
    }

    pub fn from_rational(q: Rational) -> Surd {
        let mut s = Surd::zero();
        s.push(1, q);
        s
    }

    pub fn from_int(n: i64) -> Surd {
        Surd::from_rational(Rational::from_int(n))
    }

    /// `q √r` for a non-negative rational `r` whose numerator and denominator
    /// fit in 64 bits.
    pub fn sqrt_times(q: Rational, r: &Rational) -> Option<Surd> {
        if r.is_zero() || q.is_zero() {
            return Some(Surd::zero());
        }
        let (num, den) = r.to_i64_pair()?;
        if num < 0 {
            return None;
        }
        // √(a/b) = √(ab)/b
        let ab = (num as u64).checked_mul(den as u64)?;
        let (f, s) = squarefree_split(ab);
        let coeff = q * Rational::new(f as i64, den);
        let mut out = Surd::zero();
        out.push(s, coeff);
        Some(out)
    }

    pub fn sqrt(r: &Rational) -> Option<Surd> {
        Surd::sqrt_times(Rational::one(), r)
    }

    fn push(&mut self, radicand: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(radicand).or_insert_with(Rational::zero);
        *e = &*e + &q;
        if e.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(s, q)| (*s, q))
    }

    pub fn scale(&self, q: &Rational) -> Surd {
        let mut out = Surd::zero();
        for (s, c) in &self.terms {
            out.push(*s, c * q);
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(s, q)| q.to_f64() * (*s as f64).sqrt()).sum()
    }

    /// `⌊|x| · 10^k⌋` up to one unit per radical term, and the sign.
    fn scaled_floor(&self, k: u32) -> (BigInt, bool) {
        let scale = BigInt::from(10).pow(k);
        let mut acc = BigInt::from(0);
        for (s, q) in &self.terms {
            // q√s·10^k = sign(q)·√(q² s 10^{2k})
            let sq = q * q * Rational::from_int(*s as i64);
            let root = if *s == 1 {
                (q.abs().numer() * &scale) / q.denom()
            } else {
                ((sq.numer() * &scale * &scale) / sq.denom()).sqrt()
            };
            if q.signum() < 0 {
                acc -= root;
            } else {
                acc += root;
            }
        }
        let neg = acc < BigInt::from(0);
        (if neg { -acc } else { acc }, neg)
    }

    /// Decimal string with at least `digits` significant digits, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(q) = self.as_rational() {
            return to_decimal_string(&q, digits);
        }
        // two guard digits beyond the requested relative precision
        let mag = self.to_f64().abs().max(1e-300).log10().floor() as i64;
        let k = (digits as i64 - mag + 2).max(1) as u32;
        let (n, neg) = self.scaled_floor(k);
        let mut text = n.to_string();
        if text.len() <= k as usize {
            text = "0".repeat(k as usize + 1 - text.len()) + &text;
        }
        let (int, frac) = text.split_at(text.len() - k as usize);
        format!("{}{int}.{frac}", if neg { "-" } else { "" })
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (s, q) in &rhs.terms {
            out.push(*s, q.clone());
        }
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                // √a √b = g √((a/g)(b/g)) with g = gcd(a, b)
                let g = gcd(*a, *b);
                let s = (a / g) * (b / g);
                out.push(s, p * q * Rational::from_int(g as i64));
            }
        }
        out
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *s == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({s})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
