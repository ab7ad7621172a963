//! Skein-algebra toolkit: quantum tori, Dehn-Thurston coordinates on pants
//! decompositions, quantum traces of curves and the lattices describing the
//! centre at roots of unity.

pub mod arith;
pub mod error;
pub mod pants;
pub mod qtorus;
pub mod qtrace;
pub mod ring;
pub mod surface;

pub use error::{Error, Result};
