//! Run configuration: every weight and threshold used by the composite scores.
//!
//! The on-disk form is TOML; any omitted field takes its default. The config
//! hash is FNV-1a (64-bit) over the compact JSON serialization of the
//! validated profile, fields in declaration order.

use std::hash::Hasher;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Linear,
    #[default]
    Rbf,
}

/// Coefficients of the qubit/depth resource heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResourceCoefficients {
    pub q0: f64,
    pub q1: f64,
    pub d0: f64,
    pub d1: f64,
}

impl Default for ResourceCoefficients {
    fn default() -> Self {
        Self {
            q0: 2.0,
            q1: 8.0,
            d0: 1.0,
            d1: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigProfile {
    /// Weights of entropy, interaction order, compression and topology in C_data.
    pub lambda_weights: [f64; 4],
    /// Weights of the six C_quant terms. The nonclassicality slot defaults to 0.
    pub alpha_weights: [f64; 6],
    /// Weights of M1..M6 in C_ind.
    pub beta_weights: [f64; 6],
    /// Weights of TEE, Euler characteristic and persistence in the quantum topological term.
    pub gamma_weights: [f64; 3],
    /// Per-homology-dimension weights of C_top.
    pub w_topology: Vec<f64>,
    /// Rescale each weight group onto the simplex.
    pub normalize_weights: bool,
    pub epsilon_cumulant: f64,
    pub epsilon_quantum: f64,
    pub epsilon_grad: f64,
    pub lambda_penalty: f64,
    pub delta_topo: f64,
    pub kernel_kind: KernelKind,
    pub bandwidth: f64,
    /// Regularization used for the reported kernel effective dimension.
    pub kernel_ridge: f64,
    /// `None` means the diameter of the point cloud.
    pub rips_max_scale: Option<f64>,
    pub max_homology_dim: usize,
    pub rips_point_cap: usize,
    /// Rows used for Rips persistence; larger datasets are subsampled with the run seed.
    pub tda_sample_size: usize,
    /// Rows used for the kernel Gram matrix.
    pub kernel_sample_size: usize,
    /// Rows embedded for the induced (quantum-embedded) metrics.
    pub quantum_sample_size: usize,
    pub bins_entropy: usize,
    pub bins_fidelity: usize,
    pub standardize: bool,
    pub compression_level: u32,
    pub resources: ResourceCoefficients,
    /// Euler characteristic of the state cloud is read at this fraction of its max scale.
    pub euler_scale_fraction: f64,
    pub seed: u64,
}

impl Default for ConfigProfile {
    fn default() -> Self {
        Self {
            lambda_weights: [0.25; 4],
            alpha_weights: [0.2, 0.2, 0.2, 0.0, 0.2, 0.2],
            beta_weights: [1.0 / 6.0; 6],
            gamma_weights: [1.0 / 3.0; 3],
            w_topology: vec![0.5, 0.5],
            normalize_weights: true,
            epsilon_cumulant: 0.1,
            epsilon_quantum: 0.1,
            epsilon_grad: 1e-4,
            lambda_penalty: 1.0,
            delta_topo: 1.0,
            kernel_kind: KernelKind::Rbf,
            bandwidth: 1.0,
            kernel_ridge: 1.0,
            rips_max_scale: None,
            max_homology_dim: 1,
            rips_point_cap: 512,
            tda_sample_size: 128,
            kernel_sample_size: 512,
            quantum_sample_size: 256,
            bins_entropy: 16,
            bins_fidelity: 75,
            standardize: true,
            compression_level: 9,
            resources: ResourceCoefficients::default(),
            euler_scale_fraction: 0.5,
            seed: 42,
        }
    }
}

fn check_group(name: &str, weights: &[f64]) -> Result<()> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidConfig(format!("{name} contains a negative or non-finite weight")));
    }
    if weights.iter().all(|w| *w == 0.0) {
        return Err(Error::InvalidConfig(format!("{name} has no positive weight")));
    }
    Ok(())
}

fn normalize_group(weights: &mut [f64]) {
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        weights.iter_mut().for_each(|w| *w /= sum);
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be a positive finite number")))
    }
}

/// Validates a profile and, when `normalize_weights` is set, rescales each
/// weight group to sum to 1.
pub fn validate_config(c: &ConfigProfile) -> Result<ConfigProfile> {
    let mut c = c.clone();
    check_group("lambda_weights", &c.lambda_weights)?;
    check_group("alpha_weights", &c.alpha_weights)?;
    check_group("beta_weights", &c.beta_weights)?;
    check_group("gamma_weights", &c.gamma_weights)?;
    check_group("w_topology", &c.w_topology)?;
    if c.max_homology_dim > 2 {
        return Err(Error::InvalidConfig("max_homology_dim must be 0, 1 or 2".into()));
    }
    if c.w_topology.len() != c.max_homology_dim + 1 {
        return Err(Error::InvalidConfig(format!(
            "w_topology needs {} entries for max_homology_dim {}",
            c.max_homology_dim + 1,
            c.max_homology_dim
        )));
    }
    check_positive("epsilon_cumulant", c.epsilon_cumulant)?;
    check_positive("epsilon_quantum", c.epsilon_quantum)?;
    check_positive("epsilon_grad", c.epsilon_grad)?;
    check_positive("bandwidth", c.bandwidth)?;
    check_positive("euler_scale_fraction", c.euler_scale_fraction)?;
    if !(c.lambda_penalty >= 0.0 && c.delta_topo >= 0.0 && c.kernel_ridge >= 0.0) {
        return Err(Error::InvalidConfig(
            "lambda_penalty, delta_topo and kernel_ridge must be non-negative".into(),
        ));
    }
    if let Some(s) = c.rips_max_scale {
        check_positive("rips_max_scale", s)?;
    }
    if c.bins_entropy < 1 || c.bins_fidelity < 1 {
        return Err(Error::InvalidConfig("bin counts must be at least 1".into()));
    }
    if c.tda_sample_size < 1 || c.rips_point_cap < 1 || c.kernel_sample_size < 1 || c.quantum_sample_size < 2 {
        return Err(Error::InvalidConfig("sample sizes too small (tda and kernel >= 1, quantum >= 2)".into()));
    }
    if c.compression_level > 9 {
        return Err(Error::InvalidConfig("compression_level must be 0..=9".into()));
    }
    let r = c.resources;
    if [r.q0, r.q1, r.d0, r.d1].iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidConfig("resource coefficients must be non-negative".into()));
    }
    if c.normalize_weights {
        normalize_group(&mut c.lambda_weights);
        normalize_group(&mut c.alpha_weights);
        normalize_group(&mut c.beta_weights);
        normalize_group(&mut c.gamma_weights);
    }
    Ok(c)
}

impl ConfigProfile {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// `fnv1a64:` followed by 16 lowercase hex digits.
    pub fn hash(&self) -> String {
        let mut h = fnv::FnvHasher::default();
        h.write(self.canonical_json().as_bytes());
        format!("fnv1a64:{:016x}", h.finish())
    }
}
