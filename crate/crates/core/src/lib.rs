//! Exact symmetry reduction of group representations and semidefinite programs.

pub mod config;
pub mod alt;
pub mod centralizer;
pub mod cyclo;
pub mod error;
pub mod irreps;
pub mod linalg;
pub mod perm;
pub mod rep;
pub mod sdp;
pub mod serre;
pub mod sum;
pub mod unitarize;

pub use config::Config;
pub use cyclo::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use irreps::{Family, IrrepList};
pub use linalg::{Matrix, Subspace};
pub use perm::{PermGroup, Permutation, StabilizerChain};
pub use rep::{Character, Group, Representation};
