//! Finite group machinery for counting weights in solvable-type fusion systems.

pub mod cli;
pub mod cohomology;
pub mod element;
pub mod error;
pub mod field;
pub mod fusion_data;
pub mod group;
pub mod linalg;
pub mod perm;
pub mod poset;
pub mod robinson;
pub mod solmodel;
pub mod util;
pub mod zoo;

pub use error::{Error, Result};
