//! Classical complexity metrics of a numeric dataset.

pub mod compression;
pub mod cumulant;
pub mod entropy;
pub mod kernel;
pub mod spectrum;

pub use compression::{compression_ratio, compression_ratio_bytes};
pub use cumulant::{interaction_order, interaction_scan, joint_cumulant, CumulantValue, InteractionScan};
pub use entropy::distributional_entropy;
pub use kernel::kernel_gram;
pub use spectrum::{
    covariance_spectrum, effective_dimension_lower_bound, effective_rank, intrinsic_dimension,
    kernel_effective_dimension, Spectrum, SpectrumSource,
};
