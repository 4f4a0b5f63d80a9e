//! Littlewood-Paley decomposition, Besov and Chemin-Lerner norms, Bony
//! paraproducts.

pub mod besov;
pub mod bony;
pub mod chemin_lerner;
mod field_like;
pub mod partition;

pub use besov::{
    bernstein_ratio, besov_block_table, besov_norm, block_norms, frequency_split, interpolation_check, lq_norm,
    write_block_table, Band, BesovSpec, BlockRow, InterpolationReport,
};
pub use bony::{bony_decompose, dealiased_product, BonyParts};
pub use chemin_lerner::{chemin_lerner_norm, plain_time_besov_norm, time_norm, NormSeries};
pub use field_like::FieldLike;
pub use partition::{chi, phi, DyadicPartition};
