use std::collections::HashMap;

use serde::Serialize;

use super::{PermGroup, Permutation};
use crate::error::Result;

/// Conjugacy classes found by full enumeration. Class 0 is the identity.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    #[serde(skip)]
    class_of: HashMap<Permutation, u32>,
}

impl ConjugacyClasses {
    pub fn new(group: &PermGroup, bound: u64) -> Result<Self> {
        let chain = group.chain();
        let elements = chain.elements(bound)?;
        let mut class_of: HashMap<Permutation, u32> = HashMap::with_capacity(elements.len());
        let gens: Vec<(Permutation, Permutation)> =
            group.generators().iter().map(|g| (g.inverse(), g.clone())).collect();
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for e in elements {
            if class_of.contains_key(&e) {
                continue;
            }
            let id = representatives.len() as u32;
            class_of.insert(e.clone(), id);
            let mut queue = vec![e.clone()];
            let mut size = 1u64;
            while let Some(x) = queue.pop() {
                for (gi, g) in &gens {
                    let y = gi.mul(&x).mul(g);
                    if let std::collections::hash_map::Entry::Vacant(v) = class_of.entry(y.clone()) {
                        v.insert(id);
                        size += 1;
                        queue.push(y);
                    }
                }
            }
            representatives.push(e);
            sizes.push(size);
        }
        Ok(ConjugacyClasses { representatives, sizes, class_of })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.class_of.get(g).map(|&c| c as usize)
    }

    /// Index of the class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(&self.representatives[c].inverse()).expect("closed under inverses")
    }
}
