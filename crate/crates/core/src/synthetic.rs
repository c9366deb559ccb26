//! Seeded synthetic datasets for demos and acceptance runs.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Rows of eight f64 values make 64-byte records.
const RECORD_COLS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum SyntheticSpec {
    /// Standard normal cloud.
    GaussianBlob { n: usize, dim: usize, seed: u64 },
    /// Columns x1, x2 uniform on {−1, 1} and x3 = x1·x2.
    Parity { n: usize, seed: u64 },
    /// Independent uniform ±1 columns.
    Signs { n: usize, dim: usize, seed: u64 },
    /// Evenly spaced points on the unit circle with Gaussian noise.
    Circle { n: usize, noise: f64, seed: u64 },
    /// Gaussian clusters around centers drawn in [−5, 5]^dim.
    Clusters { n: usize, k: usize, dim: usize, spread: f64, seed: u64 },
    /// Finite f64 values from uniformly random bit patterns, `bytes / 8` rows.
    RandomBytes { bytes: usize, seed: u64 },
    /// Records drawn from sixteen fixed patterns in shuffled order.
    Structured { bytes: usize, seed: u64 },
    /// All zeros.
    Constant { bytes: usize },
    /// (cos(πj/n), sin(πj/n)) with angle jitter: under amplitude encoding on
    /// one qubit this is a closed loop of states.
    PhaseRing { n: usize, jitter: f64, seed: u64 },
}

pub const GENERATORS: [&str; 9] = [
    "gaussian_blob",
    "parity",
    "signs",
    "circle",
    "clusters",
    "random_bytes",
    "structured",
    "constant",
    "phase_ring",
];

const MIB: usize = 1 << 20;

impl SyntheticSpec {
    /// Default parameters for a generator id, optionally overriding the size.
    pub fn from_name(name: &str, n: Option<usize>, seed: u64) -> Result<Self> {
        Ok(match name {
            "gaussian_blob" => SyntheticSpec::GaussianBlob { n: n.unwrap_or(200), dim: 3, seed },
            "parity" => SyntheticSpec::Parity { n: n.unwrap_or(2000), seed },
            "signs" => SyntheticSpec::Signs { n: n.unwrap_or(50_000), dim: 3, seed },
            "circle" => SyntheticSpec::Circle { n: n.unwrap_or(100), noise: 0.05, seed },
            "clusters" => SyntheticSpec::Clusters { n: n.unwrap_or(200), k: 3, dim: 2, spread: 0.3, seed },
            "random_bytes" => SyntheticSpec::RandomBytes { bytes: n.unwrap_or(MIB), seed },
            "structured" => SyntheticSpec::Structured { bytes: n.unwrap_or(MIB), seed },
            "constant" => SyntheticSpec::Constant { bytes: n.unwrap_or(MIB) },
            "phase_ring" => SyntheticSpec::PhaseRing { n: n.unwrap_or(20), jitter: 0.02, seed },
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown generator {other:?}; expected one of {}",
                    GENERATORS.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SyntheticSpec::GaussianBlob { .. } => "gaussian_blob",
            SyntheticSpec::Parity { .. } => "parity",
            SyntheticSpec::Signs { .. } => "signs",
            SyntheticSpec::Circle { .. } => "circle",
            SyntheticSpec::Clusters { .. } => "clusters",
            SyntheticSpec::RandomBytes { .. } => "random_bytes",
            SyntheticSpec::Structured { .. } => "structured",
            SyntheticSpec::Constant { .. } => "constant",
            SyntheticSpec::PhaseRing { .. } => "phase_ring",
        }
    }

    pub fn generate(&self) -> Result<Dataset> {
        let source = format!("synthetic:{}", self.name());
        match *self {
            SyntheticSpec::GaussianBlob { n, dim, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let v = (0..n * dim).map(|_| r.sample(StandardNormal)).collect();
                Dataset::from_flat(n, dim, v, source)
            }
            SyntheticSpec::Parity { n, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let mut v = Vec::with_capacity(3 * n);
                for _ in 0..n {
                    let a = sign(&mut r);
                    let b = sign(&mut r);
                    v.extend_from_slice(&[a, b, a * b]);
                }
                Dataset::from_flat(n, 3, v, source)
            }
            SyntheticSpec::Signs { n, dim, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let v = (0..n * dim).map(|_| sign(&mut r)).collect();
                Dataset::from_flat(n, dim, v, source)
            }
            SyntheticSpec::Circle { n, noise, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let mut v = Vec::with_capacity(2 * n);
                for j in 0..n {
                    let t = 2.0 * PI * j as f64 / n as f64;
                    let (ex, ey): (f64, f64) = (r.sample(StandardNormal), r.sample(StandardNormal));
                    v.push(t.cos() + noise * ex);
                    v.push(t.sin() + noise * ey);
                }
                Dataset::from_flat(n, 2, v, source)
            }
            SyntheticSpec::Clusters { n, k, dim, spread, seed } => {
                if k == 0 {
                    return Err(Error::InvalidConfig("clusters needs k >= 1".into()));
                }
                let mut r = SeededRng::new(seed).stream();
                let centers: Vec<f64> = (0..k * dim).map(|_| r.random_range(-5.0..5.0)).collect();
                let mut v = Vec::with_capacity(n * dim);
                for i in 0..n {
                    let c = i % k;
                    for j in 0..dim {
                        let e: f64 = r.sample(StandardNormal);
                        v.push(centers[c * dim + j] + spread * e);
                    }
                }
                Dataset::from_flat(n, dim, v, source)
            }
            SyntheticSpec::RandomBytes { bytes, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let rows = records(bytes)?;
                let mut v = Vec::with_capacity(rows * RECORD_COLS);
                while v.len() < rows * RECORD_COLS {
                    let x = f64::from_bits(r.next_u64());
                    if x.is_finite() {
                        v.push(x);
                    }
                }
                Dataset::from_flat(rows, RECORD_COLS, v, source)
            }
            SyntheticSpec::Structured { bytes, seed } => {
                let rows = records(bytes)?;
                let patterns: Vec<[f64; RECORD_COLS]> = (0..16)
                    .map(|p| std::array::from_fn(|j| ((p * RECORD_COLS + j) as f64 * 0.37).sin() * (p + 1) as f64))
                    .collect();
                let mut order: Vec<usize> = (0..rows).map(|i| i % patterns.len()).collect();
                order.shuffle(&mut SeededRng::new(seed).stream());
                let v = order.iter().flat_map(|&p| patterns[p]).collect();
                Dataset::from_flat(rows, RECORD_COLS, v, source)
            }
            SyntheticSpec::Constant { bytes } => {
                let rows = records(bytes)?;
                Dataset::from_flat(rows, RECORD_COLS, vec![0.0; rows * RECORD_COLS], source)
            }
            SyntheticSpec::PhaseRing { n, jitter, seed } => {
                let mut r = SeededRng::new(seed).stream();
                let mut v = Vec::with_capacity(2 * n);
                for j in 0..n {
                    let e: f64 = r.sample(StandardNormal);
                    let t = PI * j as f64 / n as f64 + jitter * e;
                    v.push(t.cos());
                    v.push(t.sin());
                }
                Dataset::from_flat(n, 2, v, source)
            }
        }
    }
}

fn sign(r: &mut impl Rng) -> f64 {
    if r.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

fn records(bytes: usize) -> Result<usize> {
    let rows = bytes / (8 * RECORD_COLS);
    if rows == 0 {
        return Err(Error::InvalidConfig(format!("need at least {} bytes", 8 * RECORD_COLS)));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_generator_is_deterministic() {
        for name in GENERATORS {
            let spec = SyntheticSpec::from_name(name, Some(4096), 11).unwrap();
            assert_eq!(spec.name(), name);
            assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        }
    }

    #[test]
    fn parity_rows() {
        let d = SyntheticSpec::Parity { n: 50, seed: 3 }.generate().unwrap();
        for r in d.rows() {
            assert_eq!(r[2], r[0] * r[1]);
        }
    }

    #[test]
    fn byte_sizes() {
        let d = SyntheticSpec::Constant { bytes: MIB }.generate().unwrap();
        assert_eq!(d.to_le_bytes().len(), MIB);
        let d = SyntheticSpec::RandomBytes { bytes: MIB, seed: 1 }.generate().unwrap();
        assert_eq!(d.to_le_bytes().len(), MIB);
    }

    #[test]
    fn unknown_generator() {
        assert!(SyntheticSpec::from_name("spiral", None, 0).is_err());
    }
}
