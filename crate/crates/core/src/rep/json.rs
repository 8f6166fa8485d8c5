use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Group, Representation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm::PermGroup;

/// Interchange form of a [`Representation`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub cyclotomic_order: u32,
    pub group: PermGroup,
    pub degree: usize,
    pub images: Vec<Matrix>,
}

impl RepresentationJson {
    pub fn from_rep(rep: &Representation) -> Self {
        RepresentationJson {
            cyclotomic_order: rep.cyclotomic_order(),
            group: rep.group().perm_group().clone(),
            degree: rep.degree(),
            images: rep.generator_images().to_vec(),
        }
    }

    /// Validates and builds the representation on a fresh group.
    pub fn into_rep(self) -> Result<Representation> {
        let group = Group::new(self.group.clone());
        self.into_rep_on(group)
    }

    /// Validates against an existing group object (shared chain and classes).
    pub fn into_rep_on(self, group: Arc<Group>) -> Result<Representation> {
        if group.perm_group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        for (i, m) in self.images.iter().enumerate() {
            if m.rows() != self.degree || m.cols() != self.degree {
                return Err(Error::Shape(format!(
                    "image of generator {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.degree,
                    self.degree
                )));
            }
        }
        if self.images.len() != self.group.generators().len() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                self.images.len(),
                self.group.generators().len()
            )));
        }
        for (i, m) in self.images.iter().enumerate() {
            if m.rank() != self.degree {
                return Err(Error::InvalidInput(format!("image of generator {i} is not invertible")));
            }
        }
        let rep = if self.images.is_empty() {
            Representation::identity_rep(group, self.degree)
        } else {
            Representation::new(group, self.images)?
        };
        rep.check_homomorphism(10, 0)?;
        Ok(rep)
    }

    pub fn parse(text: &str) -> Result<Representation> {
        let j: RepresentationJson = serde_json::from_str(text)?;
        j.into_rep()
    }
}

impl Representation {
    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson::from_rep(self)
    }
}
