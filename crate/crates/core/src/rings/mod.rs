//! Polynomial rings, the subgroup lattice and free resolutions.
mod frac;
mod lattice;
mod poly;
mod syzygy;

pub use frac::{Denoms, Frac};
pub use lattice::{char_nontrivial_on, inflate, inflation, ConnSubgroup, EulerClass, LinearForm, MultSet, Subgroup};
pub use poly::{free_basis, Mono, Poly, PolyMatrix, Ring};
pub use syzygy::{
    column_coords, column_from_coords, generic_rank, minimal_generators, minimal_resolution, prune_units,
    span_in_degree, syzygy_basis, FreeResolution, DEGREE_CAP,
};
