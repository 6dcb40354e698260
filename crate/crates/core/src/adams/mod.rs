//! Spectra catalogue and Adams `E₂` pages.

mod catalogue;
mod page;

pub use catalogue::{catalogue, Entry, RANK1, RANK2};
pub use page::{adams_e2, grid, table_tsv, Collapse, E2Page, StemBound, FORMAT_TAG};

#[cfg(test)]
mod tests;
