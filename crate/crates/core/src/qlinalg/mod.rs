//! Exact rational linear algebra and windowed graded spaces.

mod graded;
mod matrix;

pub use graded::{combine_tails, homology_at, Cokernel, GradedMap, GradedSpace, Homology, Loc, Tail};
pub use matrix::{q, qf, Matrix, Rref, Q};
