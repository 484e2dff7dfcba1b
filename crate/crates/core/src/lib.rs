pub mod bitset;
pub mod cache;
pub mod catalog;
pub mod claims;
pub mod cli;
pub mod degree;
pub mod error;
pub mod exceptional;
pub mod formats;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod pc;
pub mod word;

pub use error::{Error, Result};
