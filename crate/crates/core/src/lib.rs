//! Exact homological algebra for the torsion model of rational
//! torus-equivariant spectra, for tori of rank at most two.

pub mod acceptance;
pub mod adams;
pub mod error;
pub mod atcat;
pub mod gmod;
pub mod homalg;
pub mod exec;
pub mod qlinalg;
pub mod resolve;
pub mod rings;
pub mod text;

pub use error::{Error, Result};
pub use exec::Exec;
