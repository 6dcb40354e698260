//! Injective resolutions in the torsion model, Ext, and the bounds on
//! injective dimension.

mod ext;
mod general;
mod recipe;
mod witness;

pub use ext::{ext_at, ExtMethod, ExtTable};
pub use general::{inj_res_general, GeneralResolution, StageCert, VertexState, SAMPLE_CIRCLES};
pub use recipe::{inj_res_explicit, inj_res_sf_rank1, InjResolution, Shuffle};
pub use witness::{id_lower_witness, WitnessReport, WitnessRow, WITNESS_DEGREE};

#[cfg(test)]
mod tests;
