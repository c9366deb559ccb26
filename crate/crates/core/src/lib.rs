//! Data-complexity metrics for classical and quantum-embedded datasets.

pub mod classical;
pub mod composite;
pub mod config;
pub mod dataset;
pub mod error;
pub mod partition;
pub mod qmetrics;
pub mod qsim;
pub mod report;
pub mod rng;
pub mod synthetic;
pub mod tda;

pub use config::{validate_config, ConfigProfile, KernelKind};
pub use dataset::{load_dataset, standardize, Dataset, InputFormat};
pub use error::{Error, Result};
pub use rng::SeededRng;
