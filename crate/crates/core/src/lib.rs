pub mod aabb;
pub mod autocorr;
pub mod constructions;
pub mod error;
pub mod extraction;
pub mod io;
pub mod lattice;
pub mod polybox;
pub mod rational;
pub mod spectral;
pub mod tiling;

pub use aabb::Aabb;
pub use error::{Error, Result};
pub use lattice::{Lattice, TranslationSystem};
pub use polybox::PolyBox;
pub use rational::{Rational, Vector};
