//! Homological algebra over polynomial rings: complexes, injective
//! resolutions over k[c], local cohomology and residues.

mod complex;
mod gorenstein;
mod laurent;
mod kc;
mod lcoh;
mod residue;

pub use complex::{cohomology_dim, probe_degrees, ChainComplex};
pub use kc::{decisive_degrees, dual_sum, ext_tate, inj_res_kc, ExtTate, KcResolution};
pub use lcoh::{lcoh_floor, lcoh_polynomial, polynomial_ring, stable_koszul_lcoh, LocalCohomology};
pub use gorenstein::{box_exponents, gorenstein_embed, next_form, Coordinates, Enlargement, GorensteinDegree, GorensteinReport, POLE_CAP};
pub use laurent::{inverse_form, Laurent};
pub use residue::{koszul_self_duality, relative_residue, residue_datum, total_residue, RelativeResidue, ResidueDatum, SelfDuality};
