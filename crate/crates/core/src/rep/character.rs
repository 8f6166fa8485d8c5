use std::ops::{Add, Mul};

use serde::Serialize;

use super::Representation;
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::Result;
use crate::perm::ConjugacyClasses;

/// Class function values aligned with the group's conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub values: Vec<Cyclotomic>,
}

impl Character {
    pub fn of(rep: &Representation, bound: u64) -> Result<Character> {
        let classes = rep.group().classes(bound)?;
        let values = classes
            .representatives
            .iter()
            .map(|t| rep.trace_of(t).map(|mut v| {
                v.reduce_order();
                v
            }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { values })
    }

    /// Value on the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn conj(&self) -> Character {
        Character { values: self.values.iter().map(Cyclotomic::conj).collect() }
    }

    pub fn scale(&self, k: i64) -> Character {
        let k = Cyclotomic::from_int(k);
        Character { values: self.values.iter().map(|v| v * &k).collect() }
    }

    pub fn zero(len: usize) -> Character {
        Character { values: vec![Cyclotomic::zero(); len] }
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() }
    }
}

/// `⟨χ, ψ⟩ = (1/|G|) Σ_j |t_jᴳ| χ(t_j) conj(ψ(t_j))`.
pub fn inner_product(chi: &Character, psi: &Character, classes: &ConjugacyClasses) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for ((a, b), &size) in chi.values.iter().zip(&psi.values).zip(&classes.sizes) {
        let t = (a * &b.conj()).scale(&Rational::from_int(size as i64));
        acc = &acc + &t;
    }
    let mut r = acc.scale(&Rational::from_bigints(1.into(), classes.group_order().into()));
    r.reduce_order();
    r
}
