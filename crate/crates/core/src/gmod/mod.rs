//! Graded torsion modules: windowed realizations, duals, Hom and towers.
mod atoms;
mod hom;
mod module;
mod presented;
mod table;
mod tower;

pub use atoms::{box_monomials, monomial_quotient, ring_name, Atom, DEFAULT_TOP};
pub use hom::{hom_degree, hom_dims, kron, HomSpace};
pub use module::{ModMap, Module};
pub use presented::{free_dual, monomial, MatlisPresented, RealizedResolution};
pub use table::TABLE_TAG;
pub use tower::{
    completion, completion_by, witness_module, witness_tower, Completion, CompletionDegree, LimReport, Tower,
    TowerAt,
};
